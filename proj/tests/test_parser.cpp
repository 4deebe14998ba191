#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "spa/parser.hpp"
#include "support/generators.hpp"

using namespace spa;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SPA_PROTOCOL_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorKind kind_of(const std::string& src) {
  try {
    parse(src);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a parse error for:\n" << src;
  return ErrorKind::IoError;
}

const char* kHeader = "protocol P { roles A, B; nonce N; key K; data D; ";

}  // namespace

TEST(Parser, ReadsAndrewRpc) {
  const auto spec = parse(slurp("andrew_rpc.spa"));
  EXPECT_EQ(spec.name, "AndrewRPC");
  ASSERT_EQ(spec.roles.size(), 2u);
  ASSERT_EQ(spec.messages.size(), 4u);
  EXPECT_EQ(spec.messages[1].from, "B");
  EXPECT_EQ(to_string(spec.messages[1].payload), "{N_a, K, B}_sk(K_AB)");
  EXPECT_EQ(to_string(spec.messages[0].payload), "(A, N_a)");
}

TEST(Parser, ReadsX509) {
  const auto spec = parse(slurp("x509_original.spa"));
  ASSERT_EQ(spec.messages.size(), 1u);
  EXPECT_EQ(to_string(spec.messages[0].payload), "{{T_a, N_a, B, X_a, {Y_a}_pk(PK_B)}_h}_pvk(SK_A)");
  const auto mod = parse(slurp("x509_modified.spa"));
  EXPECT_EQ(to_string(mod.messages[0].payload), "{T_a, {N_a, B, X_a, {Y_a}_pk(PK_B)}_h}_pvk(SK_A)");
}

TEST(Parser, Comments) {
  EXPECT_NO_THROW(parse(std::string(kHeader) + "// hi\n A -> B: N; // trailing\n}"));
}

TEST(Parser, SyntaxErrorsCarryLocation) {
  try {
    parse("protocol P {\n  roles A, B;\n  A -> B N;\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    ASSERT_TRUE(e.loc());
    EXPECT_EQ(e.loc()->line, 3);
    EXPECT_EQ(e.loc()->column, 10);
  }
}

TEST(Parser, UndeclaredAtom) {
  try {
    parse("protocol P {\n  roles A, B;\n  nonce N;\n  A -> B: (N, M);\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndeclaredIdentifier);
    ASSERT_TRUE(e.loc());
    EXPECT_EQ(e.loc()->line, 4);
    EXPECT_EQ(e.loc()->column, 15);
  }
}

TEST(Parser, ValidationErrors) {
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> A: N; }"), ErrorKind::SelfMessage);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> C: N; }"), ErrorKind::UndeclaredIdentifier);
  EXPECT_EQ(kind_of(std::string(kHeader) + "N -> B: N; }"), ErrorKind::KindMismatch);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: {N}sk(N); }"), ErrorKind::KindMismatch);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: {N}sk(A); }"), ErrorKind::KindMismatch);
  EXPECT_EQ(kind_of("protocol P { roles A, B; nonce N, N; A -> B: N; }"), ErrorKind::DuplicateDeclaration);
  EXPECT_EQ(kind_of("protocol P { roles A, B; key A; A -> B: A; }"), ErrorKind::DuplicateDeclaration);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: D; }"), ErrorKind::Ungeneratable);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: (A, B); }"), ErrorKind::Ungeneratable);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: {N}xk(K); }"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: (N); }"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of(std::string(kHeader) + "}"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("protocol P { roles A, h; A -> h: A; }"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of(std::string(kHeader) + "A -> B: N; } extra"), ErrorKind::SyntaxError);
}

TEST(Parser, DataBecomesSendableAfterReceipt) {
  EXPECT_NO_THROW(parse(std::string(kHeader) + "knows A: D; A -> B: D; B -> A: (D, B); }"));
  EXPECT_NO_THROW(parse(std::string(kHeader) + "A -> B: A; B -> A: (A, B); }"));
}

TEST(Parser, RoundTrip) {
  for (const char* file : {"andrew_rpc.spa", "x509_original.spa", "x509_modified.spa", "single_message.spa",
                           "receive_only.spa", "key_transport.spa"}) {
    const auto spec = parse(slurp(file));
    EXPECT_EQ(parse(to_source(spec)), spec) << file;
  }
}

TEST(ParserProperty, RandomSpecsRoundTrip) {
  gen::Rng rng(2024);
  int valid = 0;
  for (int i = 0; i < 600; ++i) {
    const auto raw = gen::spec(rng);
    ProtocolSpec spec;
    try {
      spec = parse(to_source(raw));
    } catch (const Error&) {
      continue;
    }
    ++valid;
    const std::string text = to_source(spec);
    EXPECT_EQ(parse(text), spec) << text;
    EXPECT_EQ(to_source(parse(text)), text);
  }
  EXPECT_GT(valid, 100);
}

// --- projection ---

TEST(Project, AndrewRpcKnowledgeAndSequences) {
  const auto space = project(parse(slurp("andrew_rpc.spa")));
  ASSERT_EQ(space.strands.size(), 2u);
  EXPECT_EQ(to_string(space.strands[0]),
            "⟨{A, B, N_a, K_AB}, A, ⟨+(A, N_a), -{N_a, K, B}_sk(K_AB), +{N_a}_sk(K), -N_b⟩⟩");
  EXPECT_EQ(to_string(space.strands[1]),
            "⟨{B, A, N_b, K_AB, K}, B, ⟨-(A, N_a), +{N_a, K, B}_sk(K_AB), -{N_a}_sk(K), +N_b⟩⟩");
  ASSERT_EQ(space.strands[1].fresh.size(), 2u);
  EXPECT_EQ(space.strands[1].fresh[0].label, "K");
  EXPECT_EQ(space.strands[1].fresh[1].label, "N_b");
}

TEST(Project, SignsAlternateAcrossRoles) {
  const auto spec = parse(slurp("andrew_rpc.spa"));
  const auto space = project(spec);
  for (std::size_t i = 0; i < spec.messages.size(); ++i) {
    EXPECT_NE(space.strands[0].seq[i].sign, space.strands[1].seq[i].sign);
    EXPECT_EQ(space.strands[0].seq[i].payload, space.strands[1].seq[i].payload);
  }
}

TEST(Project, IdleRolesAreDropped) {
  const auto space = project(parse("protocol P { roles A, B, C; nonce N; A -> B: N; }"));
  ASSERT_EQ(space.strands.size(), 2u);
  EXPECT_EQ(find_strand(space, "C"), nullptr);
  ASSERT_NE(find_strand(space, "B"), nullptr);
}

TEST(Project, ReceivedNoncesAreNotFresh) {
  const auto space = project(parse("protocol P { roles A, B; nonce N; A -> B: N; B -> A: N; }"));
  EXPECT_EQ(find_strand(space, "A")->fresh.size(), 1u);
  EXPECT_TRUE(find_strand(space, "B")->fresh.empty());
}

TEST(ProjectProperty, EveryMessageAppearsTwice) {
  gen::Rng rng(99);
  for (int i = 0; i < 400; ++i) {
    ProtocolSpec spec;
    try {
      spec = parse(to_source(gen::spec(rng)));
    } catch (const Error&) {
      continue;
    }
    const auto space = project(spec);
    std::size_t sends = 0;
    std::size_t recvs = 0;
    for (const auto& s : space.strands) {
      for (const auto& e : s.seq) (e.positive() ? sends : recvs)++;
      EXPECT_EQ(s.knowledge.front(), Term::atom(s.participant));
    }
    EXPECT_EQ(sends, spec.messages.size());
    EXPECT_EQ(recvs, spec.messages.size());
    EXPECT_EQ(edges(space).inter.size(), spec.messages.size());
  }
}
