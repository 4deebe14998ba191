#pragma once

// Instance terms and typed terms (t-terms).
//
// Both are immutable trees with shared structure; copying a term is a
// reference-count bump. Terms are totally ordered so they can live in
// ordered sets (participant knowledge).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "spa/error.hpp"

namespace spa {

enum class AtomKind : std::uint8_t { Participant, Nonce, Key, UserData };

inline std::string_view to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Participant: return "participant";
    case AtomKind::Nonce: return "nonce";
    case AtomKind::Key: return "key";
    case AtomKind::UserData: return "data";
  }
  return "?";
}

inline bool is_identifier(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (s.empty() || !alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !digit(c) && c != '_') return false;
  }
  return true;
}

struct Atom {
  AtomKind kind = AtomKind::UserData;
  std::string label;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class FuncName : std::uint8_t { sk, pk, pvk, h };

inline std::string_view to_string(FuncName f) {
  switch (f) {
    case FuncName::sk: return "sk";
    case FuncName::pk: return "pk";
    case FuncName::pvk: return "pvk";
    case FuncName::h: return "h";
  }
  return "?";
}

enum class BasicTT : std::uint8_t { r, n, k, m };

inline constexpr BasicTT to_basic(AtomKind kind) {
  switch (kind) {
    case AtomKind::Participant: return BasicTT::r;
    case AtomKind::Nonce: return BasicTT::n;
    case AtomKind::Key: return BasicTT::k;
    case AtomKind::UserData: return BasicTT::m;
  }
  return BasicTT::m;
}

inline constexpr AtomKind to_atom_kind(BasicTT b) {
  switch (b) {
    case BasicTT::r: return AtomKind::Participant;
    case BasicTT::n: return AtomKind::Nonce;
    case BasicTT::k: return AtomKind::Key;
    case BasicTT::m: return AtomKind::UserData;
  }
  return AtomKind::UserData;
}

inline std::string_view to_string(BasicTT b) {
  switch (b) {
    case BasicTT::r: return "r";
    case BasicTT::n: return "n";
    case BasicTT::k: return "k";
    case BasicTT::m: return "m";
  }
  return "?";
}

namespace detail {

// Shared tree skeleton for both term grammars. `L` is the basic element
// (Atom or BasicTT); `Keyed` says whether encryptions carry an instance key.
template <typename L, bool Keyed>
class TermTree {
 public:
  enum class Tag : std::uint8_t { Empty, Leaf, Pair, Enc };

  TermTree() = default;

  Tag tag() const noexcept { return rep_ ? rep_->tag : Tag::Empty; }
  bool is_empty() const noexcept { return tag() == Tag::Empty; }
  bool is_leaf() const noexcept { return tag() == Tag::Leaf; }
  bool is_pair() const noexcept { return tag() == Tag::Pair; }
  bool is_enc() const noexcept { return tag() == Tag::Enc; }

  const L& leaf() const { return rep_->leaf; }
  const TermTree& first() const { return rep_->a; }
  const TermTree& second() const { return rep_->b; }
  const TermTree& body() const { return rep_->a; }
  FuncName func() const { return rep_->func; }

  friend std::strong_ordering operator<=>(const TermTree& x, const TermTree& y) {
    if (x.rep_ == y.rep_) return std::strong_ordering::equal;
    if (auto c = x.tag() <=> y.tag(); c != 0) return c;
    switch (x.tag()) {
      case Tag::Empty: return std::strong_ordering::equal;
      case Tag::Leaf: return x.leaf() <=> y.leaf();
      case Tag::Pair:
        if (auto c = x.first() <=> y.first(); c != 0) return c;
        return x.second() <=> y.second();
      case Tag::Enc:
        if (auto c = x.func() <=> y.func(); c != 0) return c;
        if (auto c = x.body() <=> y.body(); c != 0) return c;
        return x.rep_->b <=> y.rep_->b;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const TermTree& x, const TermTree& y) { return (x <=> y) == 0; }

 protected:
  struct Rep;

  explicit TermTree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  static TermTree make_leaf(L leaf) {
    auto rep = std::make_shared<Rep>();
    rep->tag = Tag::Leaf;
    rep->leaf = std::move(leaf);
    return TermTree(std::move(rep));
  }
  static TermTree make_pair(TermTree a, TermTree b) {
    auto rep = std::make_shared<Rep>();
    rep->tag = Tag::Pair;
    rep->a = std::move(a);
    rep->b = std::move(b);
    return TermTree(std::move(rep));
  }
  static TermTree make_enc(TermTree body, FuncName f, TermTree key) {
    auto rep = std::make_shared<Rep>();
    rep->tag = Tag::Enc;
    rep->func = f;
    rep->a = std::move(body);
    rep->b = std::move(key);
    return TermTree(std::move(rep));
  }

  const TermTree& key_subterm() const { return rep_->b; }

 private:
  std::shared_ptr<const Rep> rep_;
};

template <typename L, bool Keyed>
struct TermTree<L, Keyed>::Rep {
  Tag tag = Tag::Empty;
  L leaf{};
  FuncName func = FuncName::sk;
  TermTree a;
  TermTree b;  // second component of a pair, or the key of an encryption
};

}  // namespace detail

/// Instance-level protocol term: empty, atom, pair or encryption. Hashes are
/// encryptions under `h` with an empty key.
class Term : public detail::TermTree<Atom, true> {
  using Base = detail::TermTree<Atom, true>;

 public:
  Term() = default;
  Term(Base base) : Base(std::move(base)) {}  // NOLINT(google-explicit-constructor)

  static Term atom(Atom a) {
    if (!is_identifier(a.label)) {
      throw Error(ErrorKind::SyntaxError, "invalid atom label '" + a.label + "'");
    }
    return Base::make_leaf(std::move(a));
  }
  static Term atom(AtomKind kind, std::string label) { return atom(Atom{kind, std::move(label)}); }
  static Term pair(Term a, Term b) { return Base::make_pair(std::move(a), std::move(b)); }

  /// Left-associated pair chain; a single element is returned unchanged.
  static Term tuple(const std::vector<Term>& items) {
    if (items.empty()) return Term();
    Term acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = pair(acc, items[i]);
    return acc;
  }

  static Term enc(Term body, FuncName f, Term key) {
    if (f == FuncName::h) {
      if (!key.is_empty()) throw Error(ErrorKind::KindMismatch, "hash terms carry no key");
    } else if (!key.is_leaf() || key.atom().kind != AtomKind::Key) {
      throw Error(ErrorKind::KindMismatch, "encryption key must be an atom of kind key");
    }
    return Base::make_enc(std::move(body), f, std::move(key));
  }
  static Term hash(Term body) { return Base::make_enc(std::move(body), FuncName::h, Term()); }

  const Atom& atom() const { return leaf(); }
  Term first() const { return Base::first(); }
  Term second() const { return Base::second(); }
  Term body() const { return Base::body(); }
  Term key() const { return key_subterm(); }
};

/// Typed term: instance labels and encryption keys erased.
class TTerm : public detail::TermTree<BasicTT, false> {
  using Base = detail::TermTree<BasicTT, false>;

 public:
  TTerm() = default;
  TTerm(Base base) : Base(std::move(base)) {}  // NOLINT(google-explicit-constructor)

  static TTerm basic(BasicTT b) { return Base::make_leaf(b); }
  static TTerm pair(TTerm a, TTerm b) { return Base::make_pair(std::move(a), std::move(b)); }
  static TTerm enc(TTerm body, FuncName f) { return Base::make_enc(std::move(body), f, TTerm()); }
  static TTerm tuple(const std::vector<TTerm>& items) {
    if (items.empty()) return TTerm();
    TTerm acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = pair(acc, items[i]);
    return acc;
  }

  BasicTT basic() const { return leaf(); }
  TTerm first() const { return Base::first(); }
  TTerm second() const { return Base::second(); }
  TTerm body() const { return Base::body(); }
};

inline TTerm type_erase(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Empty: return TTerm();
    case Term::Tag::Leaf: return TTerm::basic(to_basic(t.atom().kind));
    case Term::Tag::Pair: return TTerm::pair(type_erase(t.first()), type_erase(t.second()));
    case Term::Tag::Enc: return TTerm::enc(type_erase(t.body()), t.func());
  }
  return TTerm();
}

/// True when `needle` occurs anywhere inside `hay`, keys included.
inline bool occurs_in(const Term& needle, const Term& hay) {
  if (needle == hay) return true;
  switch (hay.tag()) {
    case Term::Tag::Pair: return occurs_in(needle, hay.first()) || occurs_in(needle, hay.second());
    case Term::Tag::Enc: return occurs_in(needle, hay.body()) || occurs_in(needle, hay.key());
    default: return false;
  }
}

/// Atoms of `t` in left-to-right textual order (body before key), with repeats.
inline void collect_atoms(const Term& t, std::vector<Atom>& out) {
  switch (t.tag()) {
    case Term::Tag::Leaf: out.push_back(t.atom()); break;
    case Term::Tag::Pair:
      collect_atoms(t.first(), out);
      collect_atoms(t.second(), out);
      break;
    case Term::Tag::Enc:
      collect_atoms(t.body(), out);
      if (!t.key().is_empty()) collect_atoms(t.key(), out);
      break;
    case Term::Tag::Empty: break;
  }
}

inline std::size_t depth(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Pair: return 1 + std::max(depth(t.first()), depth(t.second()));
    case Term::Tag::Enc: return 1 + depth(t.body());
    default: return 0;
  }
}

namespace detail {

// A left-nested pair chain prints as one flat list: ((a,b),c) -> "a, b, c".
template <typename T, typename LeafFn>
void print_elements(const T& t, std::string& out, LeafFn&& leaf);

template <typename T, typename LeafFn>
void print_tree(const T& t, std::string& out, LeafFn&& leaf) {
  switch (t.tag()) {
    case T::Tag::Empty: out += "."; break;
    case T::Tag::Leaf: out += leaf(t); break;
    case T::Tag::Pair:
      out += "(";
      print_elements(t, out, leaf);
      out += ")";
      break;
    case T::Tag::Enc:
      out += "{";
      print_elements(t.body(), out, leaf);
      out += "}_";
      out += to_string(t.func());
      if constexpr (std::is_same_v<T, Term>) {
        if (t.func() != FuncName::h) {
          out += "(";
          print_tree(t.key(), out, leaf);
          out += ")";
        }
      }
      break;
  }
}

template <typename T, typename LeafFn>
void print_elements(const T& t, std::string& out, LeafFn&& leaf) {
  if (!t.is_pair()) {
    print_tree(t, out, leaf);
    return;
  }
  print_elements(t.first(), out, leaf);
  out += ", ";
  const T second = t.second();
  print_tree(second, out, leaf);
}

}  // namespace detail

/// Paper-style notation: (A, N_a), {N_a, K, B}_sk(K_AB), {X}_h.
inline std::string to_string(const Term& t) {
  std::string out;
  detail::print_tree(t, out, [](const Term& x) { return x.atom().label; });
  return out;
}

/// (r, n), {n, k, r}_sk, {m}_pk.
inline std::string to_string(const TTerm& t) {
  std::string out;
  detail::print_tree(t, out, [](const TTerm& x) { return std::string(to_string(x.basic())); });
  return out;
}

}  // namespace spa
