#pragma once

// Recursive-descent checker for the DOT language (graph, subgraph, node,
// edge and attribute statements; ID, numeral and quoted-string identifiers).
// Also reports edges whose endpoints were never declared as nodes.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dotcheck {

struct Result {
  bool ok = true;
  std::string error;
  std::set<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> clusters;
};

class Checker {
 public:
  explicit Checker(std::string_view src) : src_(src) {}

  Result run() {
    try {
      graph();
      skip_ws();
      if (pos_ != src_.size()) fail("trailing input");
      for (const auto& [a, b] : out_.edges) {
        if (!out_.nodes.count(a) || !out_.nodes.count(b)) fail("edge " + a + " -> " + b + " uses an undeclared node");
      }
    } catch (const std::string& e) {
      out_.ok = false;
      out_.error = e;
    }
    return out_;
  }

 private:
  [[noreturn]] void fail(const std::string& why) { throw why + " at offset " + std::to_string(pos_); }

  void skip_ws() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (src_.substr(pos_, 2) == "/*") {
        const auto end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 2;
      } else {
        break;
      }
    }
  }

  bool peek(std::string_view s) {
    skip_ws();
    return src_.substr(pos_, s.size()) == s;
  }

  bool accept(std::string_view s) {
    if (!peek(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    std::size_t p = pos_;
    for (char c : kw) {
      if (p >= src_.size() || std::tolower(static_cast<unsigned char>(src_[p])) != c) return false;
      ++p;
    }
    if (p < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_')) return false;
    pos_ = p;
    return true;
  }

  std::optional<std::string> id() {
    skip_ws();
    if (pos_ >= src_.size()) return std::nullopt;
    const char c = src_[pos_];
    if (c == '"') {
      std::string out;
      ++pos_;
      while (true) {
        if (pos_ >= src_.size()) fail("unterminated string");
        const char d = src_[pos_++];
        if (d == '"') break;
        if (d == '\\' && pos_ < src_.size()) {
          out += src_[pos_++];
          continue;
        }
        out += d;
      }
      return out;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                    static_cast<unsigned char>(src_[pos_]) >= 0x80)) {
        ++pos_;
      }
      return std::string(src_.substr(start, pos_ - start));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      const std::size_t start = pos_;
      if (src_[pos_] == '-') ++pos_;
      bool digits = false;
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
        digits = digits || src_[pos_] != '.';
        ++pos_;
      }
      if (!digits) {
        pos_ = start;
        return std::nullopt;
      }
      return std::string(src_.substr(start, pos_ - start));
    }
    return std::nullopt;
  }

  std::string require_id() {
    auto v = id();
    if (!v) fail("expected an identifier");
    return *v;
  }

  void graph() {
    keyword("strict");
    if (keyword("digraph")) {
      directed_ = true;
    } else if (!keyword("graph")) {
      fail("expected 'graph' or 'digraph'");
    }
    if (!peek("{")) (void)id();
    expect("{");
    stmt_list();
    expect("}");
  }

  void stmt_list() {
    while (!peek("}")) {
      if (pos_ >= src_.size()) fail("unexpected end of input");
      stmt();
      accept(";");
    }
  }

  void attr_list() {
    while (accept("[")) {
      while (!accept("]")) {
        require_id();
        if (accept("=")) require_id();
        if (!accept(",")) accept(";");
      }
    }
  }

  // Returns the nodes named by a node id or subgraph operand.
  std::vector<std::string> operand() {
    if (peek("{") || peek("subgraph") || peek("SUBGRAPH")) {
      const std::set<std::string> had = out_.nodes;
      subgraph();
      std::vector<std::string> added;
      for (const auto& n : out_.nodes) {
        if (!had.count(n)) added.push_back(n);
      }
      return added;
    }
    std::string n = require_id();
    if (accept(":")) {
      require_id();
      if (accept(":")) require_id();
    }
    return {n};
  }

  void subgraph() {
    if (keyword("subgraph")) {
      if (!peek("{")) {
        std::string name = require_id();
        if (name.rfind("cluster", 0) == 0) out_.clusters.push_back(name);
      }
    }
    expect("{");
    stmt_list();
    expect("}");
  }

  void stmt() {
    const std::size_t save = pos_;
    if (keyword("graph") || keyword("node") || keyword("edge")) {
      if (peek("[")) {
        attr_list();
        return;
      }
      pos_ = save;
    }
    std::vector<std::string> left = operand();
    if (accept("=")) {  // ID = ID
      require_id();
      return;
    }
    bool edge = false;
    while (peek("->") || peek("--")) {
      if (peek("->") != directed_) fail(directed_ ? "'--' in a digraph" : "'->' in a graph");
      pos_ += 2;
      std::vector<std::string> right = operand();
      for (const auto& a : left) {
        for (const auto& b : right) out_.edges.emplace_back(a, b);
      }
      left = std::move(right);
      edge = true;
    }
    attr_list();
    if (!edge) {
      for (const auto& n : left) out_.nodes.insert(n);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  bool directed_ = false;
  Result out_;
};

inline Result check(std::string_view src) { return Checker(src).run(); }

}  // namespace dotcheck
