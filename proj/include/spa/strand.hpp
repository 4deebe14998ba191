#pragma once

// K-strands, t-strands, strand spaces and their node/edge structure.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spa/error.hpp"
#include "spa/term.hpp"

namespace spa {

enum class Sign : std::uint8_t { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

template <typename T>
struct Signed {
  Sign sign = Sign::Plus;
  T payload;

  bool positive() const { return sign == Sign::Plus; }
  bool negative() const { return sign == Sign::Minus; }

  friend bool operator==(const Signed&, const Signed&) = default;
};

using SignedTerm = Signed<Term>;
using SignedTTerm = Signed<TTerm>;

inline SignedTerm send(Term t) { return {Sign::Plus, std::move(t)}; }
inline SignedTerm recv(Term t) { return {Sign::Minus, std::move(t)}; }
inline SignedTTerm send(TTerm t) { return {Sign::Plus, std::move(t)}; }
inline SignedTTerm recv(TTerm t) { return {Sign::Minus, std::move(t)}; }

/// Knowledge strand. `knowledge` is what the participant holds over the run,
/// including the atoms it generates itself; those are listed in `fresh` and are
/// absent from the knowledge it starts with.
struct KStrand {
  std::vector<Term> knowledge;
  Atom participant;
  std::vector<SignedTerm> seq;
  std::vector<Atom> fresh;

  std::vector<Term> initial_knowledge() const {
    std::vector<Term> out;
    for (const auto& t : knowledge) {
      bool is_fresh = false;
      for (const auto& f : fresh) {
        if (t.is_leaf() && t.atom() == f) is_fresh = true;
      }
      if (!is_fresh) out.push_back(t);
    }
    return out;
  }

  friend bool operator==(const KStrand&, const KStrand&) = default;
};

enum class Classifier : std::uint8_t { C_P, C_E, C_D, C_H, C_PK, C_PVK, C_K, C_N, C_C, C_I };

inline constexpr Classifier kAllClassifiers[] = {
    Classifier::C_P,  Classifier::C_E, Classifier::C_D, Classifier::C_H, Classifier::C_PK,
    Classifier::C_PVK, Classifier::C_K, Classifier::C_N, Classifier::C_C, Classifier::C_I,
};

inline std::string_view to_string(Classifier c) {
  switch (c) {
    case Classifier::C_P: return "C_P";
    case Classifier::C_E: return "C_E";
    case Classifier::C_D: return "C_D";
    case Classifier::C_H: return "C_H";
    case Classifier::C_PK: return "C_PK";
    case Classifier::C_PVK: return "C_PVK";
    case Classifier::C_K: return "C_K";
    case Classifier::C_N: return "C_N";
    case Classifier::C_C: return "C_C";
    case Classifier::C_I: return "C_I";
  }
  return "?";
}

struct TStrand {
  Classifier classifier = Classifier::C_P;
  Atom participant;
  std::vector<SignedTTerm> seq;

  friend bool operator==(const TStrand&, const TStrand&) = default;
};

template <typename S>
struct StrandSpace {
  std::vector<S> strands;

  friend bool operator==(const StrandSpace&, const StrandSpace&) = default;
};

using KStrandSpace = StrandSpace<KStrand>;
using TStrandSpace = StrandSpace<TStrand>;

/// ⟨strand, index⟩ with a 1-based index into the strand's sequence.
struct Node {
  std::size_t strand = 0;
  std::size_t index = 1;

  friend auto operator<=>(const Node&, const Node&) = default;
};

template <typename S>
const S& strand_of(const StrandSpace<S>& space, Node n) {
  return space.strands.at(n.strand);
}

template <typename S>
const auto& event_at(const StrandSpace<S>& space, Node n) {
  return strand_of(space, n).seq.at(n.index - 1);
}

template <typename S>
std::vector<Node> enumerate_nodes(const StrandSpace<S>& space) {
  std::vector<Node> out;
  for (std::size_t s = 0; s < space.strands.size(); ++s) {
    for (std::size_t i = 1; i <= space.strands[s].seq.size(); ++i) out.push_back({s, i});
  }
  return out;
}

struct Edges {
  std::vector<std::pair<Node, Node>> intra;  // n ⇒ n' on one strand
  std::vector<std::pair<Node, Node>> inter;  // n+ → n- across strands
};

/// Positive nodes are visited strand by strand. Each is linked to the
/// earliest unmatched negative node with an equal payload; candidates on two
/// different strands make the match ambiguous.
template <typename S>
Edges edges(const StrandSpace<S>& space) {
  Edges out;
  const auto nodes = enumerate_nodes(space);
  for (const Node& n : nodes) {
    if (n.index > 1) out.intra.emplace_back(Node{n.strand, n.index - 1}, n);
  }

  std::vector<bool> matched(nodes.size(), false);
  for (const Node& from : nodes) {
    const auto& ev = event_at(space, from);
    if (!ev.positive()) continue;
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const Node& to = nodes[j];
      if (matched[j] || to.strand == from.strand) continue;
      const auto& cand = event_at(space, to);
      if (!cand.negative() || !(cand.payload == ev.payload)) continue;
      if (!pick) {
        pick = j;
      } else if (nodes[*pick].strand != to.strand) {
        throw Error(ErrorKind::AmbiguousMatch,
                    "positive node " + std::to_string(from.strand) + ":" + std::to_string(from.index) +
                        " matches negative nodes on strands " + std::to_string(nodes[*pick].strand) +
                        " and " + std::to_string(to.strand));
      }
    }
    if (pick) {
      matched[*pick] = true;
      out.inter.emplace_back(from, nodes[*pick]);
    }
  }
  return out;
}

struct ShapeViolation {
  Classifier classifier = Classifier::C_P;
  std::size_t position = 0;  // 1-based event index; 0 when the length is wrong
  std::string reason;

  std::string message() const {
    std::string out(to_string(classifier));
    if (position != 0) out += " position " + std::to_string(position);
    return out + ": " + reason;
  }
};

namespace detail {

inline std::string_view shape_text(Classifier c) {
  switch (c) {
    case Classifier::C_E: return "<-t, +{t}_sk>";
    case Classifier::C_D: return "<-{t}_sk, +t>";
    case Classifier::C_H: return "<-t, +{t}_h>";
    case Classifier::C_PK: return "<-t, +{t}_pk>";
    case Classifier::C_PVK: return "<-t, +{t}_pvk>";
    case Classifier::C_K: return "<+k>";
    case Classifier::C_N: return "<+n>";
    case Classifier::C_C: return "<-t, -t', +(t, t')>";
    case Classifier::C_I: return "<-(t, t'), +t, +t'>";
    case Classifier::C_P: return "<any>";
  }
  return "?";
}

}  // namespace detail

/// Checks an operation strand against its classifier's fixed event shape.
inline std::optional<ShapeViolation> validate_op_strand(const TStrand& s) {
  const Classifier c = s.classifier;
  const auto& q = s.seq;
  auto fail = [&](std::size_t pos, std::string why) {
    return std::optional<ShapeViolation>(ShapeViolation{c, pos, std::move(why)});
  };
  if (c == Classifier::C_P) return fail(0, "process strands have no operation shape");

  const std::vector<Sign> want = [&] {
    switch (c) {
      case Classifier::C_K:
      case Classifier::C_N: return std::vector<Sign>{Sign::Plus};
      case Classifier::C_C: return std::vector<Sign>{Sign::Minus, Sign::Minus, Sign::Plus};
      case Classifier::C_I: return std::vector<Sign>{Sign::Minus, Sign::Plus, Sign::Plus};
      default: return std::vector<Sign>{Sign::Minus, Sign::Plus};
    }
  }();
  if (q.size() != want.size()) {
    return fail(0, "expected " + std::to_string(want.size()) + " events " + std::string(detail::shape_text(c)) +
                       ", got " + std::to_string(q.size()));
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (q[i].sign != want[i]) {
      return fail(i + 1, std::string("expected sign ") + sign_char(want[i]) + " in " +
                             std::string(detail::shape_text(c)));
    }
    if (q[i].payload.is_empty()) return fail(i + 1, "empty payload");
  }

  auto encrypts = [&](FuncName f) -> std::optional<ShapeViolation> {
    const TTerm& out = q[1].payload;
    if (!out.is_enc() || out.func() != f || !(out.body() == q[0].payload)) {
      return fail(2, "output must be {input}_" + std::string(to_string(f)));
    }
    return std::nullopt;
  };

  switch (c) {
    case Classifier::C_E: return encrypts(FuncName::sk);
    case Classifier::C_H: return encrypts(FuncName::h);
    case Classifier::C_PK: return encrypts(FuncName::pk);
    case Classifier::C_PVK: return encrypts(FuncName::pvk);
    case Classifier::C_D: {
      const TTerm& in = q[0].payload;
      if (!in.is_enc() || in.func() != FuncName::sk) return fail(1, "input must be {t}_sk");
      if (!(in.body() == q[1].payload)) return fail(2, "output must be the decrypted body");
      return std::nullopt;
    }
    case Classifier::C_K:
      if (!(q[0].payload == TTerm::basic(BasicTT::k))) return fail(1, "output must be k");
      return std::nullopt;
    case Classifier::C_N:
      if (!(q[0].payload == TTerm::basic(BasicTT::n))) return fail(1, "output must be n");
      return std::nullopt;
    case Classifier::C_C:
      if (!(q[2].payload == TTerm::pair(q[0].payload, q[1].payload))) {
        return fail(3, "output must pair the two inputs");
      }
      return std::nullopt;
    case Classifier::C_I: {
      const TTerm& in = q[0].payload;
      if (!in.is_pair()) return fail(1, "input must be a pair");
      if (!(in.first() == q[1].payload)) return fail(2, "first output must be the left component");
      if (!(in.second() == q[2].payload)) return fail(3, "second output must be the right component");
      return std::nullopt;
    }
    case Classifier::C_P: break;
  }
  return std::nullopt;
}

inline void require_op_strand(const TStrand& s) {
  if (auto v = validate_op_strand(s)) throw Error(ErrorKind::ShapeViolation, v->message());
}

inline std::string to_string(const SignedTerm& e) { return sign_char(e.sign) + to_string(e.payload); }
inline std::string to_string(const SignedTTerm& e) { return sign_char(e.sign) + to_string(e.payload); }

template <typename E>
std::string sequence_text(const std::vector<E>& seq) {
  std::string out = "⟨";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ", ";
    out += to_string(seq[i]);
  }
  return out + "⟩";
}

/// ⟨{A, B, N_a, K_AB}, A, ⟨+(A, N_a), ...⟩⟩
inline std::string to_string(const KStrand& s) {
  std::string out = "⟨{";
  for (std::size_t i = 0; i < s.knowledge.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.knowledge[i]);
  }
  return out + "}, " + s.participant.label + ", " + sequence_text(s.seq) + "⟩";
}

/// ⟨C_P, A, ⟨+(r, n), ...⟩⟩
inline std::string to_string(const TStrand& s) {
  return "⟨" + std::string(to_string(s.classifier)) + ", " + s.participant.label + ", " + sequence_text(s.seq) + "⟩";
}

}  // namespace spa
