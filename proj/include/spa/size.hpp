#pragma once

// Symbolic sizes of t-terms.
//
// A normalized SizeExpr is either a single size atom (|r|, |n|, |k|, |m|,
// S_hash, S_asym(x)) or a flat Sum of (coefficient, atom) entries in
// canonical order, each coefficient >= 1. The empty Sum is size zero.
// S_asym arguments are normalized but never distributed.

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spa/error.hpp"
#include "spa/term.hpp"

namespace spa {

class SizeExpr {
 public:
  enum class Kind : std::uint8_t { TypeSize, HashSize, AsymSize, Sum };
  using Entry = std::pair<std::uint64_t, SizeExpr>;

  SizeExpr() : kind_(Kind::Sum) {}

  static SizeExpr type_size(BasicTT b) {
    SizeExpr e;
    e.kind_ = Kind::TypeSize;
    e.basic_ = b;
    return e;
  }
  static SizeExpr hash_size() {
    SizeExpr e;
    e.kind_ = Kind::HashSize;
    return e;
  }
  static SizeExpr asym(SizeExpr arg) {
    SizeExpr e;
    e.kind_ = Kind::AsymSize;
    e.entries_ = std::make_shared<std::vector<Entry>>(std::vector<Entry>{{1, std::move(arg)}});
    return e;
  }
  /// Raw (possibly nested, unsorted) sum; see normalize().
  static SizeExpr sum(std::vector<Entry> entries) {
    SizeExpr e;
    e.kind_ = Kind::Sum;
    if (!entries.empty()) e.entries_ = std::make_shared<std::vector<Entry>>(std::move(entries));
    return e;
  }
  static SizeExpr zero() { return SizeExpr(); }

  Kind kind() const { return kind_; }
  BasicTT basic() const { return basic_; }
  const SizeExpr& asym_arg() const { return entries_->front().second; }
  const std::vector<Entry>& entries() const {
    static const std::vector<Entry> none;
    return kind_ == Kind::Sum && entries_ ? *entries_ : none;
  }
  bool is_atom() const { return kind_ != Kind::Sum; }
  bool is_zero() const { return kind_ == Kind::Sum && entries().empty(); }

  friend std::strong_ordering operator<=>(const SizeExpr& a, const SizeExpr& b) {
    if (auto c = rank(a) <=> rank(b); c != 0) return c;
    switch (a.kind_) {
      case Kind::TypeSize:
      case Kind::HashSize: return std::strong_ordering::equal;
      case Kind::AsymSize: return a.asym_arg() <=> b.asym_arg();
      case Kind::Sum: {
        const auto& x = a.entries();
        const auto& y = b.entries();
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
          if (auto c = x[i].second <=> y[i].second; c != 0) return c;
          if (auto c = x[i].first <=> y[i].first; c != 0) return c;
        }
        return x.size() <=> y.size();
      }
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const SizeExpr& a, const SizeExpr& b) { return (a <=> b) == 0; }

 private:
  // Canonical atom order: |n| < |k| < |r| < |m| < S_hash < S_asym(..) < sums.
  static int rank(const SizeExpr& e) {
    switch (e.kind_) {
      case Kind::TypeSize:
        switch (e.basic_) {
          case BasicTT::n: return 0;
          case BasicTT::k: return 1;
          case BasicTT::r: return 2;
          case BasicTT::m: return 3;
        }
        return 3;
      case Kind::HashSize: return 4;
      case Kind::AsymSize: return 5;
      case Kind::Sum: return 6;
    }
    return 6;
  }

  Kind kind_;
  BasicTT basic_ = BasicTT::r;
  std::shared_ptr<const std::vector<Entry>> entries_;
};

namespace detail {

inline void flatten(const SizeExpr& e, std::uint64_t scale, std::map<SizeExpr, std::uint64_t>& acc);

inline SizeExpr normalize_impl(const SizeExpr& e) {
  if (e.kind() == SizeExpr::Kind::AsymSize) return SizeExpr::asym(normalize_impl(e.asym_arg()));
  if (e.is_atom()) return e;
  std::map<SizeExpr, std::uint64_t> acc;
  flatten(e, 1, acc);
  if (acc.size() == 1 && acc.begin()->second == 1) return acc.begin()->first;
  std::vector<SizeExpr::Entry> entries;
  for (auto& [atom, c] : acc) entries.emplace_back(c, atom);
  return SizeExpr::sum(std::move(entries));
}

inline void flatten(const SizeExpr& e, std::uint64_t scale, std::map<SizeExpr, std::uint64_t>& acc) {
  if (scale == 0) return;
  if (e.is_atom()) {
    acc[normalize_impl(e)] += scale;
    return;
  }
  for (const auto& [c, sub] : e.entries()) flatten(sub, scale * c, acc);
}

}  // namespace detail

inline SizeExpr normalize(const SizeExpr& e) { return detail::normalize_impl(e); }

inline SizeExpr operator+(const SizeExpr& a, const SizeExpr& b) { return normalize(SizeExpr::sum({{1, a}, {1, b}})); }

/// (coefficient, atom) pairs of a normalized expression.
inline std::vector<SizeExpr::Entry> addends(const SizeExpr& e) {
  if (e.is_atom()) return {{1, e}};
  return e.entries();
}

/// Sum of coefficients: the number of addends the additivity rewrite splits into.
inline std::uint64_t addend_count(const SizeExpr& e) {
  std::uint64_t k = 0;
  for (const auto& [c, atom] : addends(e)) k += c;
  return k;
}

inline bool contains_hash(const SizeExpr& e) {
  switch (e.kind()) {
    case SizeExpr::Kind::HashSize: return true;
    case SizeExpr::Kind::AsymSize: return contains_hash(e.asym_arg());
    case SizeExpr::Kind::TypeSize: return false;
    case SizeExpr::Kind::Sum:
      for (const auto& [c, sub] : e.entries()) {
        if (contains_hash(sub)) return true;
      }
      return false;
  }
  return false;
}

/// True when normalized `small` is a proper sub-sum of normalized `big`.
inline bool proper_subsum(const SizeExpr& small, const SizeExpr& big) {
  std::map<SizeExpr, std::uint64_t> have;
  for (const auto& [c, atom] : addends(big)) have[atom] += c;
  std::uint64_t small_total = 0;
  for (const auto& [c, atom] : addends(small)) {
    auto it = have.find(atom);
    if (it == have.end() || it->second < c) return false;
    small_total += c;
  }
  return small_total < addend_count(big);
}

inline std::string to_string(const SizeExpr& e) {
  switch (e.kind()) {
    case SizeExpr::Kind::TypeSize: return "|" + std::string(to_string(e.basic())) + "|";
    case SizeExpr::Kind::HashSize: return "S_hash";
    case SizeExpr::Kind::AsymSize: return "S_asym(" + to_string(e.asym_arg()) + ")";
    case SizeExpr::Kind::Sum: {
      if (e.entries().empty()) return "0";
      std::string out;
      for (const auto& [c, sub] : e.entries()) {
        if (!out.empty()) out += " + ";
        std::string s = to_string(sub);
        if (!sub.is_atom()) s = "(" + s + ")";
        if (c != 1) s = std::to_string(c) + (sub.kind() == SizeExpr::Kind::TypeSize ? "" : "*") + s;
        out += s;
      }
      return out;
    }
  }
  return "?";
}

// --- Sizes of t-terms ---

inline SizeExpr delta(const TTerm& t);

/// Symmetric ciphertext follows its cleartext.
inline SizeExpr lambda_s(const TTerm& t) { return delta(t); }
/// Asymmetric ciphertext size is a function of the cleartext size.
inline SizeExpr lambda_a(const TTerm& t) { return SizeExpr::asym(delta(t)); }
/// Hash output has constant size.
inline SizeExpr lambda_h(const TTerm&) { return SizeExpr::hash_size(); }

inline SizeExpr delta(const TTerm& t) {
  switch (t.tag()) {
    case TTerm::Tag::Empty: return SizeExpr::zero();
    case TTerm::Tag::Leaf: return SizeExpr::type_size(t.basic());
    case TTerm::Tag::Pair: return delta(t.first()) + delta(t.second());
    case TTerm::Tag::Enc:
      switch (t.func()) {
        case FuncName::sk: return lambda_s(t.body());
        case FuncName::pk:
        case FuncName::pvk: return lambda_a(t.body());
        case FuncName::h: return lambda_h(t.body());
      }
  }
  return SizeExpr::zero();
}

/// Numeric sizes in bytes. Asymmetric ciphertext is block-rounded:
/// ceil((x + pad) / blk_in) * blk_out.
struct SizeModel {
  double r = 16;
  double n = 16;
  double k = 16;
  double m = 64;
  double s_hash = 32;
  double blk_in = 128;
  double blk_out = 128;
  double pad = 11;

  double type_size(BasicTT b) const {
    switch (b) {
      case BasicTT::r: return r;
      case BasicTT::n: return n;
      case BasicTT::k: return k;
      case BasicTT::m: return m;
    }
    return 0;
  }

  double s_asym(double x) const { return std::ceil((x + pad) / blk_in) * blk_out; }

  void validate() const {
    for (double v : {r, n, k, m, s_hash, blk_in, blk_out, pad}) {
      if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorKind::ConfigError, "size model values must be positive");
    }
    if (!(blk_in > pad)) throw Error(ErrorKind::ConfigError, "s_asym.blk_in must exceed s_asym.pad");
  }
};

inline double eval_size(const SizeExpr& e, const SizeModel& model) {
  switch (e.kind()) {
    case SizeExpr::Kind::TypeSize: return model.type_size(e.basic());
    case SizeExpr::Kind::HashSize: return model.s_hash;
    case SizeExpr::Kind::AsymSize: return model.s_asym(eval_size(e.asym_arg(), model));
    case SizeExpr::Kind::Sum: {
      double total = 0;
      for (const auto& [c, sub] : e.entries()) total += static_cast<double>(c) * eval_size(sub, model);
      return total;
    }
  }
  return 0;
}

}  // namespace spa
