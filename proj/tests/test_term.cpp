#include <gtest/gtest.h>

#include "spa/term.hpp"
#include "spa/strand.hpp"
#include "support/generators.hpp"

using namespace spa;

namespace {

Term nonce(const char* l) { return Term::atom(AtomKind::Nonce, l); }
Term key(const char* l) { return Term::atom(AtomKind::Key, l); }
Term role(const char* l) { return Term::atom(AtomKind::Participant, l); }
Term data(const char* l) { return Term::atom(AtomKind::UserData, l); }

}  // namespace

TEST(Term, PrintsPairChainsFlat) {
  const Term t = Term::tuple({nonce("N_a"), key("K"), role("B")});
  EXPECT_EQ(to_string(t), "(N_a, K, B)");
  EXPECT_EQ(to_string(Term::enc(t, FuncName::sk, key("K_AB"))), "{N_a, K, B}_sk(K_AB)");
  EXPECT_EQ(to_string(Term::hash(data("X"))), "{X}_h");
}

TEST(Term, RightNestedPairKeepsParentheses) {
  const Term t = Term::pair(role("A"), Term::pair(nonce("N"), key("K")));
  EXPECT_EQ(to_string(t), "(A, (N, K))");
}

TEST(Term, RejectsBadKeys) {
  EXPECT_THROW(Term::enc(nonce("N"), FuncName::sk, nonce("M")), Error);
  EXPECT_THROW(Term::enc(nonce("N"), FuncName::h, key("K")), Error);
  EXPECT_THROW(Term::enc(nonce("N"), FuncName::pk, Term::pair(key("K"), key("L"))), Error);
  try {
    Term::enc(nonce("N"), FuncName::pvk, data("D"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KindMismatch);
  }
}

TEST(Term, RejectsBadLabels) {
  EXPECT_THROW(Term::atom(AtomKind::Nonce, "1x"), Error);
  EXPECT_THROW(Term::atom(AtomKind::Nonce, ""), Error);
  EXPECT_NO_THROW(Term::atom(AtomKind::Nonce, "N_a2"));
}

TEST(Term, StructuralEquality) {
  const Term a = Term::enc(Term::pair(nonce("N"), role("A")), FuncName::sk, key("K"));
  const Term b = Term::enc(Term::pair(nonce("N"), role("A")), FuncName::sk, key("K"));
  const Term c = Term::enc(Term::pair(nonce("N"), role("A")), FuncName::sk, key("L"));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_TRUE((a < c) != (c < a));
}

TEST(Term, KindDistinguishesEqualLabels) { EXPECT_NE(nonce("X"), key("X")); }

TEST(Term, TypeErasureDropsLabelsAndKeys) {
  const Term t = Term::enc(Term::tuple({nonce("N_a"), key("K"), role("B")}), FuncName::sk, key("K_AB"));
  EXPECT_EQ(to_string(type_erase(t)), "{n, k, r}_sk");
  EXPECT_EQ(to_string(type_erase(Term::pair(role("A"), nonce("N_a")))), "(r, n)");
  EXPECT_EQ(to_string(type_erase(data("X"))), "m");
  EXPECT_EQ(type_erase(Term::enc(nonce("N"), FuncName::sk, key("K1"))),
            type_erase(Term::enc(nonce("M"), FuncName::sk, key("K2"))));
}

TEST(Term, OccursInSeesKeys) {
  const Term t = Term::enc(nonce("N"), FuncName::sk, key("K"));
  EXPECT_TRUE(occurs_in(key("K"), t));
  EXPECT_TRUE(occurs_in(nonce("N"), t));
  EXPECT_TRUE(occurs_in(t, t));
  EXPECT_FALSE(occurs_in(nonce("M"), t));
}

TEST(Term, CollectAtomsInTextOrder) {
  std::vector<Atom> out;
  collect_atoms(Term::enc(Term::pair(nonce("N"), role("A")), FuncName::sk, key("K")), out);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].label, "N");
  EXPECT_EQ(out[1].label, "A");
  EXPECT_EQ(out[2].label, "K");
}

TEST(TermProperty, ErasureCommutesWithConstructors) {
  gen::Rng rng(7);
  const std::vector<Term> atoms{nonce("N"), key("K"), role("A"), data("D")};
  for (int i = 0; i < 500; ++i) {
    const Term a = gen::pick(rng, atoms);
    const Term b = gen::pick(rng, atoms);
    EXPECT_EQ(type_erase(Term::pair(a, b)), TTerm::pair(type_erase(a), type_erase(b)));
    EXPECT_EQ(type_erase(Term::hash(a)), TTerm::enc(type_erase(a), FuncName::h));
    EXPECT_EQ(type_erase(Term::enc(a, FuncName::pk, key("K"))), TTerm::enc(type_erase(a), FuncName::pk));
  }
}

TEST(TermProperty, OrderIsTotalAndConsistent) {
  gen::Rng rng(11);
  std::vector<TTerm> ts;
  for (int i = 0; i < 200; ++i) ts.push_back(gen::tterm(rng, 3));
  for (const auto& a : ts) {
    for (const auto& b : ts) {
      const bool lt = a < b;
      const bool gt = b < a;
      EXPECT_EQ(a == b, !lt && !gt);
      EXPECT_FALSE(lt && gt);
    }
  }
}

// --- strands ---

namespace {

TStrand op(Classifier c, std::vector<SignedTTerm> seq) { return {c, Atom{AtomKind::Participant, "A"}, std::move(seq)}; }

const TTerm n = TTerm::basic(BasicTT::n);
const TTerm k = TTerm::basic(BasicTT::k);
const TTerm r = TTerm::basic(BasicTT::r);

}  // namespace

TEST(OpStrand, AcceptsEveryShape) {
  const TTerm nk = TTerm::pair(n, k);
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_E, {recv(nk), send(TTerm::enc(nk, FuncName::sk))})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_D, {recv(TTerm::enc(nk, FuncName::sk)), send(nk)})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_H, {recv(nk), send(TTerm::enc(nk, FuncName::h))})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_PK, {recv(nk), send(TTerm::enc(nk, FuncName::pk))})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_PVK, {recv(nk), send(TTerm::enc(nk, FuncName::pvk))})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_K, {send(k)})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_N, {send(n)})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_C, {recv(n), recv(k), send(nk)})));
  EXPECT_FALSE(validate_op_strand(op(Classifier::C_I, {recv(nk), send(n), send(k)})));
}

TEST(OpStrand, RejectsMalformedShapes) {
  const TTerm nk = TTerm::pair(n, k);
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_E, {recv(nk), send(TTerm::enc(n, FuncName::sk))})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_E, {recv(nk), send(TTerm::enc(nk, FuncName::pk))})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_K, {send(n)})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_N, {recv(n)})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_C, {recv(n), recv(k), send(TTerm::pair(k, n))})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_I, {recv(nk), send(k), send(n)})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_I, {recv(nk), send(n)})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_D, {send(TTerm::enc(nk, FuncName::sk)), send(nk)})));
  EXPECT_TRUE(validate_op_strand(op(Classifier::C_P, {send(n)})));
  EXPECT_THROW(require_op_strand(op(Classifier::C_K, {send(r)})), Error);
}

TEST(OpStrand, ViolationNamesPosition) {
  auto v = validate_op_strand(op(Classifier::C_C, {recv(n), send(k), send(TTerm::pair(n, k))}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->classifier, Classifier::C_C);
  EXPECT_EQ(v->position, 2u);
}

TEST(Strand, PrintsNotation) {
  const TStrand s = op(Classifier::C_C, {recv(n), recv(k), send(TTerm::pair(n, k))});
  EXPECT_EQ(to_string(s), "⟨C_C, A, ⟨-n, -k, +(n, k)⟩⟩");
}

TEST(Strand, EdgesLinkSendsToReceives) {
  KStrandSpace space;
  KStrand a;
  a.participant = Atom{AtomKind::Participant, "A"};
  a.seq = {send(nonce("N")), recv(key("K"))};
  KStrand b;
  b.participant = Atom{AtomKind::Participant, "B"};
  b.seq = {recv(nonce("N")), send(key("K"))};
  space.strands = {a, b};
  const Edges e = edges(space);
  ASSERT_EQ(e.intra.size(), 2u);
  ASSERT_EQ(e.inter.size(), 2u);
  EXPECT_EQ(e.inter[0].first, (Node{0, 1}));
  EXPECT_EQ(e.inter[0].second, (Node{1, 1}));
  EXPECT_EQ(e.inter[1].first, (Node{1, 2}));
  EXPECT_EQ(e.inter[1].second, (Node{0, 2}));
  EXPECT_EQ(enumerate_nodes(space).size(), 4u);
}

TEST(Strand, AmbiguousAcrossStrands) {
  KStrandSpace space;
  for (const char* who : {"A", "B", "C"}) {
    KStrand s;
    s.participant = Atom{AtomKind::Participant, who};
    s.seq = {std::string(who) == "A" ? send(nonce("N")) : recv(nonce("N"))};
    space.strands.push_back(s);
  }
  try {
    edges(space);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbiguousMatch);
  }
}

TEST(Strand, RepeatedPayloadOnOneStrandTakesEarliest) {
  KStrandSpace space;
  KStrand a;
  a.participant = Atom{AtomKind::Participant, "A"};
  a.seq = {send(nonce("N")), send(nonce("N"))};
  KStrand b;
  b.participant = Atom{AtomKind::Participant, "B"};
  b.seq = {recv(nonce("N")), recv(nonce("N"))};
  space.strands = {a, b};
  const Edges e = edges(space);
  ASSERT_EQ(e.inter.size(), 2u);
  EXPECT_EQ(e.inter[0].second, (Node{1, 1}));
  EXPECT_EQ(e.inter[1].second, (Node{1, 2}));
}
