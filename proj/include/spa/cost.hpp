#pragma once

// Symbolic cost expressions over t-strand spaces.
//
// A CostExpr is a canonical multiset of cost terms: applications of a cost
// function to symbolic sizes, the constant concatenation and processing
// costs L_C and L_P, and the preparation overhead Ov_h. Only Ov_h may carry a
// negative multiplicity (it appears with a minus sign after the additivity
// rewrite).

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spa/error.hpp"
#include "spa/extract.hpp"
#include "spa/size.hpp"
#include "spa/strand.hpp"

namespace spa {

enum class CostFunc : std::uint8_t { f_sk, f_pk, f_h, f_kg, f_ng, f_s, f_p, f_c };

inline constexpr CostFunc kAllCostFuncs[] = {CostFunc::f_sk, CostFunc::f_pk, CostFunc::f_h, CostFunc::f_kg,
                                             CostFunc::f_ng, CostFunc::f_s,  CostFunc::f_p, CostFunc::f_c};

/// Functions with a per-byte model; the additivity rewrite applies to these.
inline constexpr CostFunc kSizedFuncs[] = {CostFunc::f_sk, CostFunc::f_pk, CostFunc::f_h,
                                           CostFunc::f_kg, CostFunc::f_ng, CostFunc::f_s};

inline constexpr bool is_sized(CostFunc f) { return f != CostFunc::f_p && f != CostFunc::f_c; }

inline std::string_view to_string(CostFunc f) {
  switch (f) {
    case CostFunc::f_sk: return "f_sk";
    case CostFunc::f_pk: return "f_pk";
    case CostFunc::f_h: return "f_h";
    case CostFunc::f_kg: return "f_kg";
    case CostFunc::f_ng: return "f_ng";
    case CostFunc::f_s: return "f_s";
    case CostFunc::f_p: return "f_p";
    case CostFunc::f_c: return "f_c";
  }
  return "?";
}

inline std::optional<CostFunc> parse_cost_func(std::string_view s) {
  for (CostFunc f : kAllCostFuncs) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

class CostTerm {
 public:
  enum class Kind : std::uint8_t { App, LambdaC, LambdaP, Overhead };

  static CostTerm app(CostFunc f, SizeExpr x) {
    if (f == CostFunc::f_c) throw std::invalid_argument("f_c takes two size arguments");
    return CostTerm(Kind::App, f, {normalize(x)});
  }
  static CostTerm concat(SizeExpr x, SizeExpr y) {
    return CostTerm(Kind::App, CostFunc::f_c, {normalize(x), normalize(y)});
  }
  static CostTerm lambda_c() { return CostTerm(Kind::LambdaC, CostFunc::f_c, {}); }
  static CostTerm lambda_p() { return CostTerm(Kind::LambdaP, CostFunc::f_p, {}); }
  static CostTerm overhead() { return CostTerm(Kind::Overhead, CostFunc::f_sk, {}); }

  Kind kind() const { return kind_; }
  bool is_app() const { return kind_ == Kind::App; }
  CostFunc func() const { return func_; }
  const std::vector<SizeExpr>& args() const { return args_; }
  const SizeExpr& arg() const { return args_.front(); }

  // Canonical order. Terms fall into bands: functions of one basic size,
  // concatenation, functions of composite sizes, functions of sizes that
  // involve a hash, processing, overhead. Within a band applications come
  // first, by function then argument.
  friend std::strong_ordering operator<=>(const CostTerm& a, const CostTerm& b) {
    if (auto c = a.band() <=> b.band(); c != 0) return c;
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.func_ <=> b.func_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(), b.args_.end());
  }
  friend bool operator==(const CostTerm& a, const CostTerm& b) { return (a <=> b) == 0; }

  int band() const {
    switch (kind_) {
      case Kind::LambdaC: return 1;
      case Kind::LambdaP: return 4;
      case Kind::Overhead: return 5;
      case Kind::App: break;
    }
    if (func_ == CostFunc::f_c) return 1;
    if (func_ == CostFunc::f_p) return 4;
    const SizeExpr& x = args_.front();
    if (x.kind() == SizeExpr::Kind::TypeSize) return 0;
    return contains_hash(x) ? 3 : 2;
  }

 private:
  CostTerm(Kind k, CostFunc f, std::vector<SizeExpr> args) : kind_(k), func_(f), args_(std::move(args)) {}

  Kind kind_;
  CostFunc func_;
  std::vector<SizeExpr> args_;
};

inline std::string to_string(const CostTerm& t) {
  switch (t.kind()) {
    case CostTerm::Kind::LambdaC: return "L_C";
    case CostTerm::Kind::LambdaP: return "L_P";
    case CostTerm::Kind::Overhead: return "Ov_h";
    case CostTerm::Kind::App: break;
  }
  std::string out(to_string(t.func()));
  out += "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

class CostExpr {
 public:
  struct Entry {
    CostTerm term;
    std::int64_t mult;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  CostExpr() = default;

  CostExpr& add(const CostTerm& t, std::int64_t mult = 1) {
    if (mult == 0) return *this;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                               [](const Entry& e, const CostTerm& x) { return e.term < x; });
    if (it != entries_.end() && it->term == t) {
      it->mult += mult;
      check(*it);
      if (it->mult == 0) entries_.erase(it);
    } else {
      Entry e{t, mult};
      check(e);
      entries_.insert(it, std::move(e));
    }
    return *this;
  }

  CostExpr& add(const CostExpr& other, std::int64_t scale = 1) {
    for (const auto& e : other.entries_) add(e.term, e.mult * scale);
    return *this;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  std::int64_t multiplicity(const CostTerm& t) const {
    for (const auto& e : entries_) {
      if (e.term == t) return e.mult;
    }
    return 0;
  }

  friend bool operator==(const CostExpr&, const CostExpr&) = default;

 private:
  static void check(const Entry& e) {
    if (e.mult < 0 && e.term.kind() != CostTerm::Kind::Overhead) {
      throw std::logic_error("negative multiplicity for " + to_string(e.term));
    }
  }

  std::vector<Entry> entries_;
};

/// f_pk(|m|) + f_ng(|n|) + 4*L_C + ... - 2*Ov_h
inline std::string to_string(const CostExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [term, mult] : e.entries()) {
    const std::int64_t m = std::llabs(mult);
    if (out.empty()) {
      if (mult < 0) out += "-";
    } else {
      out += mult < 0 ? " - " : " + ";
    }
    if (m != 1) out += std::to_string(m) + "*";
    out += to_string(term);
  }
  return out;
}

// --- Building costs from t-strands ---

/// Operation costs of one operation strand plus one processing cost per
/// positive node.
inline CostExpr cost_of_strand(const TStrand& s) {
  if (auto v = validate_op_strand(s)) throw Error(ErrorKind::InvalidOpStrand, v->message());
  CostExpr out;
  const auto& q = s.seq;
  auto size = [&](std::size_t i) { return delta(q[i].payload); };
  switch (s.classifier) {
    case Classifier::C_E: out.add(CostTerm::app(CostFunc::f_sk, size(0))); break;
    case Classifier::C_D: out.add(CostTerm::app(CostFunc::f_sk, size(1))); break;
    case Classifier::C_H: out.add(CostTerm::app(CostFunc::f_h, size(0))); break;
    case Classifier::C_PK:
    case Classifier::C_PVK: out.add(CostTerm::app(CostFunc::f_pk, size(0))); break;
    case Classifier::C_K: out.add(CostTerm::app(CostFunc::f_kg, size(0))); break;
    case Classifier::C_N: out.add(CostTerm::app(CostFunc::f_ng, size(0))); break;
    case Classifier::C_C: out.add(CostTerm::concat(size(0), size(1))); break;
    case Classifier::C_I: out.add(CostTerm::app(CostFunc::f_s, size(0))); break;
    case Classifier::C_P: break;
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].positive()) out.add(CostTerm::app(CostFunc::f_p, size(i)));
  }
  return out;
}

/// Total cost of a participant's t-strand space. Process strands cost nothing.
inline CostExpr cost_of_space(const TStrandSpace& space) {
  CostExpr out;
  for (const auto& s : space.strands) {
    if (s.classifier != Classifier::C_P) out.add(cost_of_strand(s));
  }
  return out;
}

inline CostExpr cost_of_space(const ExtractionResult& r) { return cost_of_space(r.space()); }

/// Folds every concatenation into L_C and every processing cost into L_P.
inline CostExpr simplify(const CostExpr& e) {
  CostExpr out;
  for (const auto& [t, mult] : e.entries()) {
    if (t.is_app() && t.func() == CostFunc::f_c) {
      out.add(CostTerm::lambda_c(), mult);
    } else if (t.is_app() && t.func() == CostFunc::f_p) {
      out.add(CostTerm::lambda_p(), mult);
    } else if (t.is_app()) {
      out.add(CostTerm::app(t.func(), normalize(t.arg())), mult);
    } else {
      out.add(t, mult);
    }
  }
  return out;
}

/// f(x1 + ... + xk) -> f(x1) + ... + f(xk) - (k-1)*Ov_h for each sized
/// function; a coefficient c on an addend counts as c addends.
inline CostExpr expand_term(const CostTerm& t, std::int64_t mult) {
  CostExpr out;
  if (!t.is_app() || !is_sized(t.func()) || addend_count(t.arg()) < 2) {
    out.add(t, mult);
    return out;
  }
  for (const auto& [c, atom] : addends(t.arg())) {
    out.add(CostTerm::app(t.func(), atom), static_cast<std::int64_t>(c) * mult);
  }
  out.add(CostTerm::overhead(), -static_cast<std::int64_t>(addend_count(t.arg()) - 1) * mult);
  return out;
}

inline CostExpr expand_additivity(const CostExpr& e) {
  CostExpr out;
  for (const auto& [t, mult] : e.entries()) out.add(expand_term(t, mult));
  return out;
}

// --- Numeric models ---

struct AffineCost {
  double alpha = 0;
  double beta = 0;

  double at(double x) const { return alpha + beta * x; }
  friend bool operator==(const AffineCost&, const AffineCost&) = default;
};

/// Per-function affine costs alpha + beta * bytes, the constants L_C, L_P and
/// Ov_h, and the size model. With alpha = Ov_h for every function the
/// additivity rewrite is exact.
struct CostModel {
  std::array<AffineCost, 6> funcs{};
  double lambda_c = 0.1;
  double lambda_p = 0.05;
  double ov_h = 0;
  SizeModel sizes;

  AffineCost& func(CostFunc f) { return funcs.at(static_cast<std::size_t>(f)); }
  const AffineCost& func(CostFunc f) const { return funcs.at(static_cast<std::size_t>(f)); }

  void validate() const {
    for (CostFunc f : kSizedFuncs) {
      const auto& a = func(f);
      if (!(a.alpha >= 0) || !(a.beta >= 0) || !std::isfinite(a.alpha) || !std::isfinite(a.beta)) {
        throw Error(ErrorKind::ConfigError, std::string(to_string(f)) + ": alpha and beta must be >= 0");
      }
    }
    for (double v : {lambda_c, lambda_p, ov_h}) {
      if (!(v >= 0) || !std::isfinite(v)) throw Error(ErrorKind::ConfigError, "lambda_c, lambda_p, ov_h must be >= 0");
    }
    sizes.validate();
  }
};

inline CostModel default_cost_model() {
  CostModel m;
  m.func(CostFunc::f_sk) = {0, 0.01};
  m.func(CostFunc::f_pk) = {0, 100};
  m.func(CostFunc::f_h) = {0, 0.02};
  m.func(CostFunc::f_kg) = {0, 1};
  m.func(CostFunc::f_ng) = {0, 0.5};
  m.func(CostFunc::f_s) = {0, 0.005};
  return m;
}

inline double eval_term(const CostTerm& t, const CostModel& model) {
  switch (t.kind()) {
    case CostTerm::Kind::LambdaC: return model.lambda_c;
    case CostTerm::Kind::LambdaP: return model.lambda_p;
    case CostTerm::Kind::Overhead: return model.ov_h;
    case CostTerm::Kind::App: break;
  }
  if (t.func() == CostFunc::f_c) return model.lambda_c;
  if (t.func() == CostFunc::f_p) return model.lambda_p;
  return model.func(t.func()).at(eval_size(t.arg(), model.sizes));
}

inline double eval_cost(const CostExpr& e, const CostModel& model) {
  double total = 0;
  for (const auto& [t, mult] : e.entries()) total += static_cast<double>(mult) * eval_term(t, model);
  return total;
}

// --- Assumptions and comparison ---

struct AssumptionSet {
  bool ignore_overhead = true;
  // (greater, lesser): greater(x) > lesser(y) for all admissible sizes x, y.
  std::vector<std::pair<CostFunc, CostFunc>> dominance{{CostFunc::f_pk, CostFunc::f_h},
                                                       {CostFunc::f_pk, CostFunc::f_sk}};
  // Every sized cost function is strictly increasing in its argument.
  bool monotone = true;
  double max_bytes = 4096;

  /// Transitive closure of the dominance pairs.
  bool dominates(CostFunc greater, CostFunc lesser) const {
    std::vector<CostFunc> frontier{greater};
    std::vector<CostFunc> seen;
    while (!frontier.empty()) {
      CostFunc f = frontier.back();
      frontier.pop_back();
      for (const auto& [g, l] : dominance) {
        if (g != f || std::find(seen.begin(), seen.end(), l) != seen.end()) continue;
        if (l == lesser) return true;
        seen.push_back(l);
        frontier.push_back(l);
      }
    }
    return false;
  }

  void validate() const {
    for (const auto& [g, l] : dominance) {
      if (!is_sized(g) || !is_sized(l)) {
        throw Error(ErrorKind::ConfigError, "dominance applies to f_sk, f_pk, f_h, f_kg, f_ng, f_s only");
      }
      if (g == l) throw Error(ErrorKind::ConfigError, "dominance must be irreflexive: " + std::string(to_string(g)));
    }
    for (CostFunc f : kSizedFuncs) {
      if (dominates(f, f)) throw Error(ErrorKind::ConfigError, "dominance has a cycle through " + std::string(to_string(f)));
    }
    if (!(max_bytes >= 1) || !std::isfinite(max_bytes)) {
      throw Error(ErrorKind::ConfigError, "assumptions.max_bytes must be >= 1");
    }
  }
};

/// Why `model` fails the premises under which `compare` is sound, or nullopt.
/// The premises: alpha = Ov_h for every sized function (Ov_h = 0 when overhead
/// is ignored), strictly positive slopes when monotone, positive L_C and L_P,
/// and every dominance pair holding across [1, max_bytes].
inline std::optional<std::string> violated_premise(const CostModel& model, const AssumptionSet& a) {
  if (a.ignore_overhead && model.ov_h != 0) return "ignore_overhead requires ov_h = 0";
  for (CostFunc f : kSizedFuncs) {
    const auto& c = model.func(f);
    if (c.alpha != model.ov_h) return std::string(to_string(f)) + ": alpha must equal ov_h";
    if (a.monotone && !(c.beta > 0)) return std::string(to_string(f)) + ": beta must be > 0 when monotone";
    if (!(c.at(1) > 0)) return std::string(to_string(f)) + " must be positive";
  }
  if (!(model.lambda_c > 0) || !(model.lambda_p > 0)) return "lambda_c and lambda_p must be > 0";
  for (const auto& [g, l] : a.dominance) {
    if (!(model.func(g).at(1) > model.func(l).at(a.max_bytes))) {
      return std::string(to_string(g)) + "(1) must exceed " + std::string(to_string(l)) + "(max_bytes)";
    }
  }
  return std::nullopt;
}

/// Every evaluated size argument of `e` lies in [1, max_bytes].
inline bool sizes_admissible(const CostExpr& e, const CostModel& model, double max_bytes) {
  for (const auto& [t, mult] : e.entries()) {
    if (!t.is_app()) continue;
    for (const auto& x : t.args()) {
      const double v = eval_size(x, model.sizes);
      if (v < 1 || v > max_bytes) return false;
    }
  }
  return true;
}

enum class Verdict : std::uint8_t { Less, Greater, Equal, Indeterminate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Less: return "Less";
    case Verdict::Greater: return "Greater";
    case Verdict::Equal: return "Equal";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

struct Comparison {
  Verdict verdict = Verdict::Indeterminate;
  CostExpr lhs;  // residual of the first expression
  CostExpr rhs;  // residual of the second expression
  std::vector<std::string> trace;

  std::string inequality() const {
    std::string rel;
    switch (verdict) {
      case Verdict::Less: rel = " < "; break;
      case Verdict::Greater: rel = " > "; break;
      case Verdict::Equal: rel = " = "; break;
      case Verdict::Indeterminate: rel = " ? "; break;
    }
    return to_string(lhs) + rel + to_string(rhs);
  }
};

namespace detail {

inline void cancel_common(CostExpr& a, CostExpr& b, std::vector<std::string>& trace, std::string_view stage) {
  std::vector<CostExpr::Entry> common;
  for (const auto& ea : a.entries()) {
    const std::int64_t mb = b.multiplicity(ea.term);
    if (mb == 0 || (ea.mult > 0) != (mb > 0)) continue;
    const std::int64_t m = ea.mult > 0 ? std::min(ea.mult, mb) : std::max(ea.mult, mb);
    common.push_back({ea.term, m});
  }
  for (const auto& e : common) {
    a.add(e.term, -e.mult);
    b.add(e.term, -e.mult);
    CostExpr one;
    one.add(e.term, e.mult);
    trace.push_back(std::string(stage) + ": cancel " + to_string(one));
  }
}

inline CostExpr expand_traced(const CostExpr& e, std::string_view side, std::vector<std::string>& trace) {
  CostExpr out;
  for (const auto& [t, mult] : e.entries()) {
    CostExpr x = expand_term(t, mult);
    CostExpr before;
    before.add(t, mult);
    if (!(x == before)) {
      trace.push_back("additivity (" + std::string(side) + "): " + to_string(before) + " -> " + to_string(x));
    }
    out.add(x);
  }
  return out;
}

inline std::vector<CostTerm> copies(const CostExpr& e) {
  std::vector<CostTerm> out;
  for (const auto& [t, mult] : e.entries()) {
    for (std::int64_t i = 0; i < std::llabs(mult); ++i) out.push_back(t);
  }
  return out;
}

// Why `big` strictly exceeds `small` in every admissible model, or nullopt.
inline std::optional<std::string> dominance_reason(const CostTerm& small, const CostTerm& big, const AssumptionSet& a) {
  if (!big.is_app() || !is_sized(big.func())) return std::nullopt;
  if (small.kind() == CostTerm::Kind::Overhead) {
    if (!a.ignore_overhead && a.monotone) return "alpha = Ov_h and beta > 0";
    return std::nullopt;
  }
  if (!small.is_app() || !is_sized(small.func())) return std::nullopt;
  if (small.func() != big.func() && a.dominates(big.func(), small.func())) {
    return std::string(to_string(big.func())) + " > " + std::string(to_string(small.func()));
  }
  if (small.func() == big.func() && a.monotone && proper_subsum(small.arg(), big.arg())) {
    return "monotone " + std::string(to_string(big.func())) + ", argument sub-sum";
  }
  return std::nullopt;
}

// Injective assignment of every `small` copy to a dominating `big` copy.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> match_all(const std::vector<CostTerm>& small,
                                                                              const std::vector<CostTerm>& big,
                                                                              const AssumptionSet& a) {
  std::vector<std::vector<std::size_t>> adj(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = 0; j < big.size(); ++j) {
      if (dominance_reason(small[i], big[j], a)) adj[i].push_back(j);
    }
  }
  std::vector<std::optional<std::size_t>> owner(big.size());
  std::vector<bool> visited;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = true;
      if (!owner[j] || self(self, *owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < small.size(); ++i) {
    visited.assign(big.size(), false);
    if (!augment(augment, i)) return std::nullopt;
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < big.size(); ++j) {
    if (owner[j]) out.emplace_back(*owner[j], j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool strictly_positive(const CostTerm& t) { return t.kind() != CostTerm::Kind::Overhead; }

// small < big when every small term is dominated by a distinct big term and
// the inequality is strict.
inline bool discharge(const CostExpr& small_side, const CostExpr& big_side, const AssumptionSet& a,
                      std::string_view rel, std::vector<std::string>& trace) {
  const auto small = copies(small_side);
  const auto big = copies(big_side);
  auto matching = match_all(small, big, a);
  if (!matching) return false;
  if (small.empty() && std::none_of(big.begin(), big.end(), strictly_positive)) return false;
  for (const auto& [i, j] : *matching) {
    trace.push_back("dominance: " + to_string(small[i]) + std::string(rel) + to_string(big[j]) + " [" +
                    *dominance_reason(small[i], big[j], a) + "]");
  }
  return true;
}

// Negative Ov_h on one side moves to the other with a plus sign.
inline std::pair<CostExpr, CostExpr> move_negatives(const CostExpr& lhs, const CostExpr& rhs) {
  CostExpr l;
  CostExpr r;
  for (const auto& [t, m] : lhs.entries()) (m > 0 ? l : r).add(t, std::llabs(m));
  for (const auto& [t, m] : rhs.entries()) (m > 0 ? r : l).add(t, std::llabs(m));
  return {l, r};
}

inline std::string argument_list(const CostExpr& e) {
  std::string out = "{";
  bool first = true;
  for (const auto& [t, m] : e.entries()) {
    if (!t.is_app()) continue;
    for (const auto& x : t.args()) {
      out += (first ? "" : ", ") + to_string(x);
      first = false;
    }
  }
  return out + "}";
}

}  // namespace detail

/// Decides a versus b: cancel shared terms, expand by additivity, cancel
/// again, optionally drop overhead, then discharge the residual terms through
/// dominance or monotone sub-sum arguments. Returns Indeterminate rather than
/// guessing.
inline Comparison compare(const CostExpr& a, const CostExpr& b, const AssumptionSet& assume) {
  Comparison out;
  auto& trace = out.trace;
  CostExpr lhs = a;
  CostExpr rhs = b;

  detail::cancel_common(lhs, rhs, trace, "step 1");
  lhs = detail::expand_traced(lhs, "lhs", trace);
  rhs = detail::expand_traced(rhs, "rhs", trace);
  detail::cancel_common(lhs, rhs, trace, "step 3");

  if (assume.ignore_overhead) {
    for (CostExpr* side : {&lhs, &rhs}) {
      const std::int64_t m = side->multiplicity(CostTerm::overhead());
      if (m != 0) {
        CostExpr dropped;
        dropped.add(CostTerm::overhead(), m);
        trace.push_back(std::string("ignore overhead: drop ") + to_string(dropped) + (side == &lhs ? " (lhs)" : " (rhs)"));
        side->add(CostTerm::overhead(), -m);
      }
    }
  }

  out.lhs = lhs;
  out.rhs = rhs;
  trace.push_back("residual: " + to_string(lhs) + " vs " + to_string(rhs));
  trace.push_back("residual arguments: lhs " + detail::argument_list(lhs) + ", rhs " + detail::argument_list(rhs));

  const auto [small, big] = detail::move_negatives(lhs, rhs);
  if (small.is_zero() && big.is_zero()) {
    out.verdict = Verdict::Equal;
  } else if (detail::discharge(small, big, assume, " < ", trace)) {
    out.verdict = Verdict::Less;
  } else if (detail::discharge(big, small, assume, " < ", trace)) {
    out.verdict = Verdict::Greater;
  } else {
    out.verdict = Verdict::Indeterminate;
    trace.push_back("undecided: residual terms cannot be discharged under the assumptions");
  }
  trace.push_back("verdict: " + std::string(to_string(out.verdict)) + ", " + out.inequality());
  return out;
}

}  // namespace spa
