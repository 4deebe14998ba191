#pragma once

// Text, DOT and JSON renderings of strand models and cost reports.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "spa/cost.hpp"
#include "spa/extract.hpp"
#include "spa/parser.hpp"
#include "spa/strand.hpp"

namespace spa {

using Json = nlohmann::ordered_json;

/// One participant's view: its k-strand and the t-strand space extracted
/// from it.
struct RoleModel {
  KStrand k;
  ExtractionResult t;
};

inline RoleModel model_role(const KStrand& k) { return {k, extract(k)}; }

// --- text ---

inline std::string render_text(const std::string& protocol, const std::vector<RoleModel>& roles) {
  std::ostringstream out;
  out << "protocol " << protocol << "\n";
  for (const auto& r : roles) {
    out << "\nrole " << r.k.participant.label << "\n";
    out << "  s_k" << r.k.participant.label << " = " << to_string(r.k) << "\n";
    const auto space = r.t.space();
    for (std::size_t i = 0; i < space.strands.size(); ++i) {
      out << "  t" << i << " = " << to_string(space.strands[i]) << "\n";
    }
  }
  return out.str();
}

// --- DOT ---

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string dot_node(std::size_t role, Node n) {
  std::ostringstream s;
  s << "r" << role << "_s" << n.strand << "_n" << n.index;
  return s.str();
}

}  // namespace detail

/// Digraph of each role's t-strand space. Operation strands are clustered
/// per classifier next to a process cluster; ⇒ edges are solid, dataflow →
/// edges dashed.
inline std::string render_dot(const std::string& protocol, const std::vector<RoleModel>& roles) {
  using detail::dot_node;
  using detail::dot_quote;
  std::ostringstream out;
  out << "digraph " << dot_quote(protocol) << " {\n";
  out << "  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t ri = 0; ri < roles.size(); ++ri) {
    const auto& r = roles[ri];
    const auto space = r.t.space();
    const std::string role = r.k.participant.label;
    out << "  subgraph " << dot_quote("cluster_role_" + role) << " {\n";
    out << "    label=" << dot_quote("role " + role) << ";\n";

    auto emit_strand = [&](std::size_t s, const std::string& indent) {
      const auto& strand = space.strands[s];
      for (std::size_t i = 1; i <= strand.seq.size(); ++i) {
        out << indent << dot_node(ri, {s, i}) << " [label=" << dot_quote(to_string(strand.seq[i - 1])) << "];\n";
      }
    };

    out << "    subgraph " << dot_quote("cluster_" + role + "_process") << " {\n";
    out << "      label=\"process\";\n";
    emit_strand(0, "      ");
    out << "    }\n";

    for (Classifier c : kAllClassifiers) {
      if (c == Classifier::C_P) continue;
      std::vector<std::size_t> members;
      for (std::size_t s = 1; s < space.strands.size(); ++s) {
        if (space.strands[s].classifier == c) members.push_back(s);
      }
      if (members.empty()) continue;
      const std::string name(to_string(c));
      out << "    subgraph " << dot_quote("cluster_" + role + "_" + name) << " {\n";
      out << "      label=" << dot_quote(name + (members.size() > 1 ? " x" + std::to_string(members.size()) : "")) << ";\n";
      for (std::size_t s : members) {
        out << "      subgraph " << dot_quote("cluster_" + role + "_" + name + "_" + std::to_string(s)) << " {\n";
        out << "        label=" << dot_quote(name) << ";\n";
        emit_strand(s, "        ");
        out << "      }\n";
      }
      out << "    }\n";
    }
    out << "  }\n";

    for (std::size_t s = 0; s < space.strands.size(); ++s) {
      for (std::size_t i = 2; i <= space.strands[s].seq.size(); ++i) {
        out << "  " << dot_node(ri, {s, i - 1}) << " -> " << dot_node(ri, {s, i}) << " [style=solid];\n";
      }
    }
    for (const auto& [from, to] : r.t.dataflow) {
      out << "  " << dot_node(ri, from) << " -> " << dot_node(ri, to) << " [style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

// --- JSON ---

inline Json to_json(const SignedTerm& e) { return to_string(e); }
inline Json to_json(const SignedTTerm& e) { return to_string(e); }

inline Json to_json(Node n) { return Json::array({n.strand, n.index}); }

inline Json to_json(const KStrand& s) {
  Json knowledge = Json::array();
  for (const auto& t : s.knowledge) knowledge.push_back(to_string(t));
  Json fresh = Json::array();
  for (const auto& a : s.fresh) fresh.push_back(a.label);
  Json seq = Json::array();
  for (const auto& e : s.seq) seq.push_back(to_json(e));
  Json out;
  out["participant"] = s.participant.label;
  out["knowledge"] = knowledge;
  out["fresh"] = fresh;
  out["sequence"] = seq;
  return out;
}

inline Json to_json(const TStrand& s) {
  Json seq = Json::array();
  for (const auto& e : s.seq) seq.push_back(to_json(e));
  Json out;
  out["classifier"] = std::string(to_string(s.classifier));
  out["participant"] = s.participant.label;
  out["sequence"] = seq;
  return out;
}

inline Json to_json(const OpCounts& ops) {
  Json out = Json::object();
  for (const auto& [c, n] : ops) out[std::string(to_string(c))] = n;
  return out;
}

inline Json to_json(const CostExpr& e) {
  Json terms = Json::array();
  for (const auto& [t, m] : e.entries()) terms.push_back({{"term", to_string(t)}, {"multiplicity", m}});
  return {{"text", to_string(e)}, {"terms", terms}};
}

inline Json model_json(const std::string& protocol, const KStrandSpace& kspace, const std::vector<RoleModel>& roles) {
  Json out;
  out["protocol"] = protocol;
  Json ks = Json::array();
  for (const auto& s : kspace.strands) ks.push_back(to_json(s));
  Json bundle = Json::array();
  for (const auto& [a, b] : edges(kspace).inter) bundle.push_back(Json::array({to_json(a), to_json(b)}));
  out["k_space"] = {{"strands", ks}, {"node_count", enumerate_nodes(kspace).size()}, {"messages", bundle}};
  Json rs = Json::array();
  for (const auto& r : roles) {
    const auto space = r.t.space();
    Json ts = Json::array();
    for (const auto& s : space.strands) ts.push_back(to_json(s));
    Json flow = Json::array();
    for (const auto& [a, b] : r.t.dataflow) flow.push_back(Json::array({to_json(a), to_json(b)}));
    Json one;
    one["role"] = r.k.participant.label;
    one["ops"] = to_json(count_ops(r.t.ops));
    one["t_space"] = {{"strands", ts}, {"node_count", enumerate_nodes(space).size()}, {"dataflow", flow}};
    rs.push_back(one);
  }
  out["roles"] = rs;
  return out;
}

/// Analysis summary for one role; optional parts are omitted when absent.
struct Report {
  std::string protocol;
  std::string role;
  OpCounts ops;
  CostExpr raw;
  CostExpr simplified;
  std::optional<Comparison> comparison;
  std::optional<double> value;
};

inline Json to_json(const Report& r) {
  Json out;
  out["protocol"] = r.protocol;
  out["role"] = r.role;
  out["ops"] = to_json(r.ops);
  out["cost"] = {{"raw", to_json(r.raw)}, {"simplified", to_json(r.simplified)}};
  if (r.comparison) {
    out["verdict"] = std::string(to_string(r.comparison->verdict));
    out["residual"] = r.comparison->inequality();
    out["trace"] = r.comparison->trace;
  }
  if (r.value) out["value"] = *r.value;
  return out;
}

inline Report make_report(const std::string& protocol, const RoleModel& m) {
  Report r;
  r.protocol = protocol;
  r.role = m.k.participant.label;
  r.ops = count_ops(m.t.ops);
  r.raw = cost_of_space(m.t);
  r.simplified = simplify(r.raw);
  return r;
}

}  // namespace spa
