#pragma once

// Reference count of the operations extraction must emit for a k-strand.
//
// Works on plain term sets and explicit opening paths: every way of digging a
// needed term out of a known term is enumerated as a step list, and the
// shortest one (left before right, then smallest container) is taken. Shares
// nothing with the extractor beyond the term model.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "spa/error.hpp"
#include "spa/extract.hpp"
#include "spa/strand.hpp"
#include "spa/term.hpp"

namespace spa {

namespace oracle_detail {

enum class Step { Left, Right, Decrypt };

using Path = std::vector<Step>;

inline void all_paths(const std::set<Term>& known, const Term& from, const Term& target, Path& prefix,
                      std::vector<Path>& out) {
  if (from == target) {
    out.push_back(prefix);
    return;
  }
  if (from.is_pair()) {
    prefix.push_back(Step::Left);
    all_paths(known, from.first(), target, prefix, out);
    prefix.back() = Step::Right;
    all_paths(known, from.second(), target, prefix, out);
    prefix.pop_back();
  } else if (from.is_enc() && from.func() == FuncName::sk && known.count(from.key())) {
    prefix.push_back(Step::Decrypt);
    all_paths(known, from.body(), target, prefix, out);
    prefix.pop_back();
  }
}

inline bool shorter(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;  // Left < Right
}

struct Sim {
  std::set<Term> known;
  std::set<Atom> fresh;
  OpCounts counts;
  Atom who;
};

inline bool dig(Sim& sim, const Term& target) {
  std::optional<Path> best;
  Term container;
  for (const Term& k : sim.known) {
    if (k == target) continue;
    std::vector<Path> found;
    Path prefix;
    all_paths(sim.known, k, target, prefix, found);
    if (found.empty()) continue;
    const Path& mine = *std::min_element(found.begin(), found.end(), shorter);
    // An earlier container keeps ties.
    if (!best || mine.size() < best->size()) {
      best = mine;
      container = k;
    }
  }
  if (!best) return false;
  Term cur = container;
  for (Step s : *best) {
    if (s == Step::Decrypt) {
      ++sim.counts[Classifier::C_D];
      cur = cur.body();
      sim.known.insert(cur);
    } else {
      ++sim.counts[Classifier::C_I];
      sim.known.insert(cur.first());
      sim.known.insert(cur.second());
      cur = s == Step::Left ? cur.first() : cur.second();
    }
  }
  return true;
}

inline bool buried(const Sim& sim, const Term& t) {
  return std::any_of(sim.known.begin(), sim.known.end(), [&](const Term& k) { return occurs_in(t, k); });
}

inline void build(Sim& sim, const Term& t) {
  if (t.is_empty() || sim.known.count(t)) return;
  if (dig(sim, t)) return;
  if (t.is_leaf()) {
    const AtomKind kind = t.atom().kind;
    if (kind == AtomKind::Nonce || kind == AtomKind::Key) {
      if (sim.fresh.count(t.atom()) || !buried(sim, t)) {
        ++sim.counts[kind == AtomKind::Nonce ? Classifier::C_N : Classifier::C_K];
        sim.known.insert(t);
        return;
      }
    }
    if (buried(sim, t)) {
      throw Error(ErrorKind::Unrecoverable, "'" + t.atom().label + "' is locked for role '" + sim.who.label + "'");
    }
    throw Error(ErrorKind::Ungeneratable, "'" + t.atom().label + "' cannot be produced by '" + sim.who.label + "'");
  }
  if (t.is_pair()) {
    build(sim, t.first());
    build(sim, t.second());
    ++sim.counts[Classifier::C_C];
  } else {
    if (!t.key().is_empty()) build(sim, t.key());
    build(sim, t.body());
    static constexpr Classifier by_func[] = {Classifier::C_E, Classifier::C_PK, Classifier::C_PVK, Classifier::C_H};
    ++sim.counts[by_func[static_cast<int>(t.func())]];
  }
  sim.known.insert(t);
}

}  // namespace oracle_detail

/// Multiset of classifiers extraction emits for `s`, computed independently.
inline OpCounts op_count_oracle(const KStrand& s) {
  oracle_detail::Sim sim;
  sim.who = s.participant;
  sim.fresh.insert(s.fresh.begin(), s.fresh.end());
  for (const Term& t : s.knowledge) {
    if (!(t.is_leaf() && sim.fresh.count(t.atom()))) sim.known.insert(t);
  }
  for (const auto& ev : s.seq) {
    if (ev.negative()) {
      sim.known.insert(ev.payload);
    } else {
      oracle_detail::build(sim, ev.payload);
    }
  }
  return sim.counts;
}

}  // namespace spa
