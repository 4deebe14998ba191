#pragma once

// Knowledge-driven extraction of the cryptographic operations a participant
// performs to build the terms it sends.
//
// Rules for obtaining a term t that is not yet known:
//   1. recover it from a known term by symmetric decryption (key known) and
//      splitting, choosing the cheapest opening path;
//   2. otherwise generate it when it is a nonce or key;
//   3. otherwise build it from its parts: pairs by concatenation,
//      encryptions key first then body.
// Received terms are stored whole and opened lazily.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "spa/error.hpp"
#include "spa/strand.hpp"
#include "spa/term.hpp"

namespace spa {

using OpCounts = std::map<Classifier, std::size_t>;

struct ExtractionResult {
  TStrand process;
  std::vector<TStrand> ops;
  // Producer → consumer links between t-nodes. Strand 0 is the process
  // strand, strand i is ops[i - 1].
  std::vector<std::pair<Node, Node>> dataflow;

  TStrandSpace space() const {
    TStrandSpace s;
    s.strands.push_back(process);
    s.strands.insert(s.strands.end(), ops.begin(), ops.end());
    return s;
  }
};

inline OpCounts count_ops(const std::vector<TStrand>& ops) {
  OpCounts out;
  for (const auto& s : ops) ++out[s.classifier];
  return out;
}

namespace detail {

class Extractor {
 public:
  explicit Extractor(const KStrand& s) : strand_(s) {
    for (const auto& t : s.initial_knowledge()) known_.insert(t);
    fresh_.insert(s.fresh.begin(), s.fresh.end());
    result_.process.classifier = Classifier::C_P;
    result_.process.participant = s.participant;
  }

  ExtractionResult run() {
    for (const auto& ev : strand_.seq) {
      const Node at{0, result_.process.seq.size() + 1};
      if (ev.negative()) {
        result_.process.seq.push_back(recv(type_erase(ev.payload)));
        learn(ev.payload, at);
      } else {
        obtain(ev.payload);
        result_.process.seq.push_back(send(type_erase(ev.payload)));
        link_from(ev.payload, at);
      }
    }
    return std::move(result_);
  }

 private:
  bool known(const Term& t) const { return t.is_empty() || known_.count(t) != 0; }

  void learn(const Term& t, Node origin) {
    known_.insert(t);
    origin_.emplace(t, origin);
  }

  void link_from(const Term& t, Node consumer) {
    if (auto it = origin_.find(t); it != origin_.end() && it->second != consumer) {
      result_.dataflow.emplace_back(it->second, consumer);
    }
  }

  void emit(Classifier c, std::vector<SignedTerm> events) {
    TStrand s{c, strand_.participant, {}};
    const std::size_t id = result_.ops.size() + 1;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const Node at{id, i + 1};
      s.seq.push_back({events[i].sign, type_erase(events[i].payload)});
      if (events[i].negative()) {
        link_from(events[i].payload, at);
      } else {
        learn(events[i].payload, at);
      }
    }
    result_.ops.push_back(std::move(s));
  }

  // Number of decrypt/split steps needed to expose u inside c.
  std::optional<std::size_t> open_cost(const Term& c, const Term& u) const {
    if (c == u) return 0;
    if (c.is_pair()) {
      auto l = open_cost(c.first(), u);
      auto r = open_cost(c.second(), u);
      if (!l && !r) return std::nullopt;
      return 1 + std::min(l.value_or(SIZE_MAX - 1), r.value_or(SIZE_MAX - 1));
    }
    if (c.is_enc() && c.func() == FuncName::sk && known(c.key())) {
      if (auto b = open_cost(c.body(), u)) return 1 + *b;
    }
    return std::nullopt;
  }

  bool recover(const Term& u) {
    const Term* best = nullptr;
    std::size_t best_cost = 0;
    for (const auto& c : known_) {
      auto cost = open_cost(c, u);
      if (cost && (!best || *cost < best_cost)) {
        best = &c;
        best_cost = *cost;
      }
    }
    if (!best) return false;

    // Fix the whole route against the current knowledge before opening
    // anything, so keys exposed on the way do not change the plan.
    std::vector<Term> route{*best};
    while (!(route.back() == u)) {
      const Term cur = route.back();
      if (cur.is_pair()) {
        auto l = open_cost(cur.first(), u);
        auto r = open_cost(cur.second(), u);
        route.push_back((l && (!r || *l <= *r)) ? cur.first() : cur.second());
      } else {
        route.push_back(cur.body());
      }
    }
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      const Term& cur = route[i];
      if (cur.is_pair()) {
        emit(Classifier::C_I, {recv(cur), send(cur.first()), send(cur.second())});
      } else {
        emit(Classifier::C_D, {recv(cur), send(cur.body())});
      }
    }
    return true;
  }

  bool occurs_in_knowledge(const Term& t) const {
    for (const auto& k : known_) {
      if (occurs_in(t, k)) return true;
    }
    return false;
  }

  void obtain(const Term& t) {
    if (known(t) || recover(t)) return;
    switch (t.tag()) {
      case Term::Tag::Leaf: {
        const Atom& a = t.atom();
        const bool generatable = a.kind == AtomKind::Nonce || a.kind == AtomKind::Key;
        if (generatable && (fresh_.count(a) || !occurs_in_knowledge(t))) {
          emit(a.kind == AtomKind::Nonce ? Classifier::C_N : Classifier::C_K, {send(t)});
          return;
        }
        if (occurs_in_knowledge(t)) {
          throw Error(ErrorKind::Unrecoverable, "role '" + strand_.participant.label + "' holds '" + a.label +
                                                    "' only inside a term it cannot open");
        }
        throw Error(ErrorKind::Ungeneratable, "role '" + strand_.participant.label + "' cannot generate " +
                                                  std::string(to_string(a.kind)) + " '" + a.label + "'");
      }
      case Term::Tag::Pair:
        obtain(t.first());
        obtain(t.second());
        emit(Classifier::C_C, {recv(t.first()), recv(t.second()), send(t)});
        return;
      case Term::Tag::Enc: {
        Classifier c = Classifier::C_H;
        switch (t.func()) {
          case FuncName::sk: c = Classifier::C_E; break;
          case FuncName::pk: c = Classifier::C_PK; break;
          case FuncName::pvk: c = Classifier::C_PVK; break;
          case FuncName::h: c = Classifier::C_H; break;
        }
        if (t.func() != FuncName::h) obtain(t.key());
        obtain(t.body());
        emit(c, {recv(t.body()), send(t)});
        return;
      }
      case Term::Tag::Empty: return;
    }
  }

  const KStrand& strand_;
  std::set<Term> known_;
  std::set<Atom> fresh_;
  std::map<Term, Node> origin_;
  ExtractionResult result_;
};

}  // namespace detail

/// Builds the participant's process strand and one operation strand per
/// cryptographic operation needed for its sends.
inline ExtractionResult extract(const KStrand& s) { return detail::Extractor(s).run(); }

}  // namespace spa
