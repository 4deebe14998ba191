#pragma once

// Protocol description language (.spa files).
//
//   protocol  := "protocol" IDENT "{" roles decl* knows* message+ "}"
//   roles     := "roles" IDENT ("," IDENT)* ";"
//   decl      := ("nonce"|"key"|"data") IDENT ("," IDENT)* ";"
//   knows     := "knows" IDENT ":" term ("," term)* ";"
//   message   := IDENT "->" IDENT ":" term ("," term)* ";"
//   term      := IDENT
//              | "(" term ("," term)+ ")"
//              | "{" term ("," term)* "}" ("sk"|"pk"|"pvk") "(" IDENT ")"
//              | "h" "(" term ("," term)* ")"
//
// Comma lists build left-associated pairs. `//` starts a line comment.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spa/error.hpp"
#include "spa/strand.hpp"
#include "spa/term.hpp"

namespace spa {

struct Message {
  std::string from;
  std::string to;
  Term payload;

  friend bool operator==(const Message&, const Message&) = default;
};

struct ProtocolSpec {
  std::string name;
  std::vector<std::string> roles;
  std::vector<Atom> decls;  // non-participant atoms, declaration order
  std::map<std::string, std::vector<Term>> knowledge;
  std::vector<Message> messages;

  std::optional<Atom> lookup(std::string_view id) const {
    for (const auto& r : roles) {
      if (r == id) return Atom{AtomKind::Participant, r};
    }
    for (const auto& d : decls) {
      if (d.label == id) return d;
    }
    return std::nullopt;
  }

  bool has_role(std::string_view id) const { return std::find(roles.begin(), roles.end(), id) != roles.end(); }

  friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;
};

namespace detail {

enum class Tok { Ident, LBrace, RBrace, LParen, RParen, Comma, Semi, Colon, Arrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

inline std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
      advance();
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    const SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        id += src[i];
        advance();
      }
      out.push_back({Tok::Ident, std::move(id), loc});
      continue;
    }
    Tok kind;
    switch (c) {
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semi; break;
      case ':': kind = Tok::Colon; break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          advance();
          kind = Tok::Arrow;
          break;
        }
        [[fallthrough]];
      default:
        throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", loc);
    }
    advance();
    out.push_back({kind, kind == Tok::Arrow ? "->" : std::string(1, c), loc});
  }
  out.push_back({Tok::End, "", SourceLoc{line, col}});
  return out;
}

inline bool is_reserved(std::string_view id) {
  static constexpr std::string_view words[] = {"protocol", "roles", "nonce", "key", "data",
                                               "knows",    "sk",    "pk",    "pvk", "h"};
  return std::find(std::begin(words), std::end(words), id) != std::end(words);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ProtocolSpec run() {
    ProtocolSpec spec;
    keyword("protocol");
    spec.name = ident("protocol name").text;
    expect(Tok::LBrace);

    keyword("roles");
    do {
      const Token r = ident("role name");
      declare(spec, r);
      spec.roles.push_back(r.text);
    } while (accept(Tok::Comma));
    expect(Tok::Semi);

    while (peek_word("nonce") || peek_word("key") || peek_word("data")) {
      const Token kw = next();
      const AtomKind kind =
          kw.text == "nonce" ? AtomKind::Nonce : (kw.text == "key" ? AtomKind::Key : AtomKind::UserData);
      do {
        const Token d = ident("atom name");
        declare(spec, d);
        spec.decls.push_back(Atom{kind, d.text});
      } while (accept(Tok::Comma));
      expect(Tok::Semi);
    }

    while (peek_word("knows")) {
      next();
      const Token who = ident("role name");
      role(spec, who);
      expect(Tok::Colon);
      auto& k = spec.knowledge[who.text];
      for (const Term& t : term_list(spec)) {
        if (std::find(k.begin(), k.end(), t) == k.end()) k.push_back(t);
      }
      expect(Tok::Semi);
    }

    do {
      const Token from = ident("sender role");
      role(spec, from);
      expect(Tok::Arrow);
      const Token to = ident("recipient role");
      role(spec, to);
      if (from.text == to.text) {
        throw Error(ErrorKind::SelfMessage, "role '" + from.text + "' sends a message to itself", from.loc);
      }
      expect(Tok::Colon);
      Term payload = Term::tuple(term_list(spec));
      expect(Tok::Semi);
      spec.messages.push_back({from.text, to.text, std::move(payload)});
      message_locs.push_back(from.loc);
    } while (peek().kind == Tok::Ident);

    expect(Tok::RBrace);
    expect(Tok::End);
    return spec;
  }

  std::vector<SourceLoc> message_locs;

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool peek_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void unexpected(std::string_view wanted) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::Ident ? "'" + t.text + "'" : std::string(tok_name(t.kind));
    throw Error(ErrorKind::SyntaxError, "expected " + std::string(wanted) + ", found " + got, t.loc);
  }

  Token expect(Tok kind) {
    if (peek().kind != kind) unexpected(tok_name(kind));
    return next();
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  void keyword(std::string_view w) {
    if (!peek_word(w)) unexpected("'" + std::string(w) + "'");
    next();
  }
  Token ident(std::string_view what) {
    if (peek().kind != Tok::Ident) unexpected(what);
    if (is_reserved(peek().text)) {
      throw Error(ErrorKind::SyntaxError, "'" + peek().text + "' is a reserved word", peek().loc);
    }
    return next();
  }

  static void declare(const ProtocolSpec& spec, const Token& t) {
    if (spec.lookup(t.text)) {
      throw Error(ErrorKind::DuplicateDeclaration, "'" + t.text + "' is already declared", t.loc);
    }
  }
  static void role(const ProtocolSpec& spec, const Token& t) {
    if (spec.has_role(t.text)) return;
    if (auto a = spec.lookup(t.text)) {
      throw Error(ErrorKind::KindMismatch,
                  "'" + t.text + "' is a " + std::string(to_string(a->kind)) + ", not a role", t.loc);
    }
    throw Error(ErrorKind::UndeclaredIdentifier, "unknown role '" + t.text + "'", t.loc);
  }

  std::vector<Term> term_list(const ProtocolSpec& spec) {
    std::vector<Term> items{term(spec)};
    while (accept(Tok::Comma)) items.push_back(term(spec));
    return items;
  }

  Term term(const ProtocolSpec& spec) {
    if (accept(Tok::LParen)) {
      auto items = term_list(spec);
      if (items.size() < 2) unexpected("','");
      expect(Tok::RParen);
      return Term::tuple(items);
    }
    if (accept(Tok::LBrace)) {
      Term body = Term::tuple(term_list(spec));
      expect(Tok::RBrace);
      if (peek().kind != Tok::Ident) unexpected("'sk', 'pk' or 'pvk'");
      const Token f = next();
      FuncName func;
      if (f.text == "sk") {
        func = FuncName::sk;
      } else if (f.text == "pk") {
        func = FuncName::pk;
      } else if (f.text == "pvk") {
        func = FuncName::pvk;
      } else {
        throw Error(ErrorKind::SyntaxError, "expected 'sk', 'pk' or 'pvk', found '" + f.text + "'", f.loc);
      }
      expect(Tok::LParen);
      const Token k = ident("key name");
      const Atom key = resolve(spec, k);
      if (key.kind != AtomKind::Key) {
        throw Error(ErrorKind::KindMismatch,
                    "'" + k.text + "' is a " + std::string(to_string(key.kind)) + " and cannot be used as a key",
                    k.loc);
      }
      expect(Tok::RParen);
      return Term::enc(std::move(body), func, Term::atom(key));
    }
    if (peek_word("h")) {
      next();
      expect(Tok::LParen);
      Term body = Term::tuple(term_list(spec));
      expect(Tok::RParen);
      return Term::hash(std::move(body));
    }
    const Token id = ident("term");
    return Term::atom(resolve(spec, id));
  }

  static Atom resolve(const ProtocolSpec& spec, const Token& t) {
    if (auto a = spec.lookup(t.text)) return *a;
    throw Error(ErrorKind::UndeclaredIdentifier, "'" + t.text + "' is not declared", t.loc);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// A user-data or participant atom a role sends must be known up front or
// have arrived in an earlier message; the model has no operation that
// generates one.
inline void check_generatable(const ProtocolSpec& spec, const std::vector<SourceLoc>& locs) {
  for (const auto& r : spec.roles) {
    std::set<Atom> seen{Atom{AtomKind::Participant, r}};
    std::vector<Atom> scratch;
    if (auto it = spec.knowledge.find(r); it != spec.knowledge.end()) {
      for (const auto& t : it->second) collect_atoms(t, scratch);
    }
    seen.insert(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < spec.messages.size(); ++i) {
      const Message& m = spec.messages[i];
      scratch.clear();
      collect_atoms(m.payload, scratch);
      if (m.to == r) {
        seen.insert(scratch.begin(), scratch.end());
      } else if (m.from == r) {
        for (const Atom& a : scratch) {
          if ((a.kind == AtomKind::UserData || a.kind == AtomKind::Participant) && !seen.count(a)) {
            throw Error(ErrorKind::Ungeneratable,
                        "role '" + r + "' sends " + std::string(to_string(a.kind)) + " '" + a.label +
                            "' that it neither knows nor has received",
                        i < locs.size() ? std::optional<SourceLoc>(locs[i]) : std::nullopt);
          }
        }
      }
    }
  }
}

}  // namespace detail

/// Parses and validates a protocol description.
inline ProtocolSpec parse(std::string_view text) {
  detail::Parser p(text);
  ProtocolSpec spec = p.run();
  detail::check_generatable(spec, p.message_locs);
  return spec;
}

namespace detail {

inline void print_dsl_elements(const Term& t, std::string& out);

inline void print_dsl(const Term& t, std::string& out) {
  switch (t.tag()) {
    case Term::Tag::Empty: break;
    case Term::Tag::Leaf: out += t.atom().label; break;
    case Term::Tag::Pair:
      out += "(";
      print_dsl_elements(t, out);
      out += ")";
      break;
    case Term::Tag::Enc:
      if (t.func() == FuncName::h) {
        out += "h(";
        print_dsl_elements(t.body(), out);
        out += ")";
      } else {
        out += "{";
        print_dsl_elements(t.body(), out);
        out += "}" + std::string(to_string(t.func())) + "(" + t.key().atom().label + ")";
      }
      break;
  }
}

inline void print_dsl_elements(const Term& t, std::string& out) {
  if (!t.is_pair()) {
    print_dsl(t, out);
    return;
  }
  print_dsl_elements(t.first(), out);
  out += ", ";
  print_dsl(t.second(), out);
}

}  // namespace detail

/// Renders a spec back to source text that parses to an equal spec.
inline std::string to_source(const ProtocolSpec& spec) {
  std::string out = "protocol " + spec.name + " {\n  roles ";
  for (std::size_t i = 0; i < spec.roles.size(); ++i) {
    out += (i ? ", " : "") + spec.roles[i];
  }
  out += ";\n";
  for (std::size_t i = 0; i < spec.decls.size();) {
    std::size_t j = i;
    out += "  " + std::string(to_string(spec.decls[i].kind)) + " ";
    while (j < spec.decls.size() && spec.decls[j].kind == spec.decls[i].kind) {
      out += (j > i ? ", " : "") + spec.decls[j].label;
      ++j;
    }
    out += ";\n";
    i = j;
  }
  for (const auto& r : spec.roles) {
    auto it = spec.knowledge.find(r);
    if (it == spec.knowledge.end() || it->second.empty()) continue;
    out += "  knows " + r + ": ";
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (i) out += ", ";
      detail::print_dsl(it->second[i], out);
    }
    out += ";\n";
  }
  for (const auto& m : spec.messages) {
    out += "  " + m.from + " -> " + m.to + ": ";
    detail::print_dsl_elements(m.payload, out);
    out += ";\n";
  }
  return out + "}\n";
}

namespace detail {

// Participants, nonces, keys, data, then compound terms; declaration order
// within each group.
inline std::pair<int, std::size_t> knowledge_rank(const ProtocolSpec& spec, const Term& t) {
  if (!t.is_leaf()) return {4, 0};
  const Atom& a = t.atom();
  if (a.kind == AtomKind::Participant) {
    return {0, static_cast<std::size_t>(std::find(spec.roles.begin(), spec.roles.end(), a.label) - spec.roles.begin())};
  }
  const int group = a.kind == AtomKind::Nonce ? 1 : a.kind == AtomKind::Key ? 2 : 3;
  return {group, static_cast<std::size_t>(std::find(spec.decls.begin(), spec.decls.end(), a) - spec.decls.begin())};
}

}  // namespace detail

/// One k-strand per role that takes part in at least one message. Knowledge
/// holds the role's name first, then its declared knowledge and the nonces
/// and keys it generates (atoms it sends before ever knowing or receiving
/// them), grouped by kind in declaration order.
inline KStrandSpace project(const ProtocolSpec& spec) {
  KStrandSpace space;
  for (const auto& r : spec.roles) {
    KStrand s;
    s.participant = Atom{AtomKind::Participant, r};
    const Term self = Term::atom(s.participant);
    s.knowledge.push_back(self);
    if (auto it = spec.knowledge.find(r); it != spec.knowledge.end()) {
      for (const auto& t : it->second) {
        if (!(t == self)) s.knowledge.push_back(t);
      }
    }

    std::set<Atom> seen;
    std::vector<Atom> scratch;
    for (const auto& t : s.knowledge) collect_atoms(t, scratch);
    seen.insert(scratch.begin(), scratch.end());

    for (const auto& m : spec.messages) {
      if (m.from != r && m.to != r) continue;
      scratch.clear();
      collect_atoms(m.payload, scratch);
      if (m.from == r) {
        s.seq.push_back(send(m.payload));
        for (const Atom& a : scratch) {
          if ((a.kind == AtomKind::Nonce || a.kind == AtomKind::Key) && !seen.count(a)) {
            s.fresh.push_back(a);
            s.knowledge.push_back(Term::atom(a));
            seen.insert(a);
          }
        }
      } else {
        s.seq.push_back(recv(m.payload));
        seen.insert(scratch.begin(), scratch.end());
      }
    }
    if (s.seq.empty()) continue;
    std::stable_sort(s.knowledge.begin() + 1, s.knowledge.end(),
                     [&](const Term& a, const Term& b) { return detail::knowledge_rank(spec, a) < detail::knowledge_rank(spec, b); });
    space.strands.push_back(std::move(s));
  }
  return space;
}

inline const KStrand* find_strand(const KStrandSpace& space, std::string_view role) {
  for (const auto& s : space.strands) {
    if (s.participant.label == role) return &s;
  }
  return nullptr;
}

}  // namespace spa
