#pragma once

// JSON cost-model/assumption configuration.
//
//   {
//     "sizes": {"r": 16, "n": 16, "k": 16, "m": 64},
//     "s_hash": 32,
//     "s_asym": {"blk_in": 128, "blk_out": 128, "pad": 11},
//     "funcs": {"f_sk": {"alpha": 0, "beta": 0.01}, ...},
//     "lambda_c": 0.1, "lambda_p": 0.05, "ov_h": 0,
//     "assumptions": {"ignore_overhead": true,
//                     "dominance": [["f_pk", "f_h"], ["f_pk", "f_sk"]],
//                     "monotone": true, "max_bytes": 4096}
//   }
//
// Every key is optional and falls back to the built-in defaults; unknown keys
// are rejected.

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "spa/cost.hpp"
#include "spa/error.hpp"
#include "spa/size.hpp"

namespace spa {

struct Config {
  CostModel model = default_cost_model();
  AssumptionSet assumptions;
};

namespace detail {

using nlohmann::json;

inline void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw Error(ErrorKind::ConfigError, std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorKind::ConfigError, "unknown key '" + key + "' in " + std::string(where));
  }
}

inline void read_number(const json& obj, const char* key, double& out, std::string_view where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) throw Error(ErrorKind::ConfigError, std::string(where) + "." + key + " must be a number");
  out = v.get<double>();
}

inline void read_bool(const json& obj, const char* key, bool& out, std::string_view where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw Error(ErrorKind::ConfigError, std::string(where) + "." + key + " must be a boolean");
  out = v.get<bool>();
}

inline CostFunc read_func(const json& v) {
  if (v.is_string()) {
    if (auto f = parse_cost_func(v.get<std::string>())) return *f;
  }
  throw Error(ErrorKind::ConfigError, "expected a cost function name, got " + v.dump());
}

}  // namespace detail

inline Config config_from_json(const nlohmann::json& doc) {
  using detail::read_bool;
  using detail::read_number;
  Config cfg;
  detail::only_keys(doc, "config",
                    {"sizes", "s_hash", "s_asym", "funcs", "lambda_c", "lambda_p", "ov_h", "assumptions"});
  SizeModel& sz = cfg.model.sizes;
  if (doc.contains("sizes")) {
    const auto& s = doc.at("sizes");
    detail::only_keys(s, "sizes", {"r", "n", "k", "m"});
    read_number(s, "r", sz.r, "sizes");
    read_number(s, "n", sz.n, "sizes");
    read_number(s, "k", sz.k, "sizes");
    read_number(s, "m", sz.m, "sizes");
  }
  read_number(doc, "s_hash", sz.s_hash, "config");
  if (doc.contains("s_asym")) {
    const auto& a = doc.at("s_asym");
    detail::only_keys(a, "s_asym", {"blk_in", "blk_out", "pad"});
    read_number(a, "blk_in", sz.blk_in, "s_asym");
    read_number(a, "blk_out", sz.blk_out, "s_asym");
    read_number(a, "pad", sz.pad, "s_asym");
  }
  if (doc.contains("funcs")) {
    const auto& fs = doc.at("funcs");
    detail::only_keys(fs, "funcs", {"f_sk", "f_pk", "f_h", "f_kg", "f_ng", "f_s"});
    for (const auto& [name, body] : fs.items()) {
      const std::string where = "funcs." + name;
      detail::only_keys(body, where, {"alpha", "beta"});
      if (!body.contains("alpha") || !body.contains("beta")) {
        throw Error(ErrorKind::ConfigError, where + " needs both alpha and beta");
      }
      AffineCost& c = cfg.model.func(*parse_cost_func(name));
      read_number(body, "alpha", c.alpha, where);
      read_number(body, "beta", c.beta, where);
    }
  }
  read_number(doc, "lambda_c", cfg.model.lambda_c, "config");
  read_number(doc, "lambda_p", cfg.model.lambda_p, "config");
  read_number(doc, "ov_h", cfg.model.ov_h, "config");
  if (doc.contains("assumptions")) {
    const auto& a = doc.at("assumptions");
    detail::only_keys(a, "assumptions", {"ignore_overhead", "dominance", "monotone", "max_bytes"});
    read_bool(a, "ignore_overhead", cfg.assumptions.ignore_overhead, "assumptions");
    read_bool(a, "monotone", cfg.assumptions.monotone, "assumptions");
    read_number(a, "max_bytes", cfg.assumptions.max_bytes, "assumptions");
    if (a.contains("dominance")) {
      const auto& d = a.at("dominance");
      if (!d.is_array()) throw Error(ErrorKind::ConfigError, "assumptions.dominance must be a list");
      cfg.assumptions.dominance.clear();
      for (const auto& pair : d) {
        if (!pair.is_array() || pair.size() != 2) {
          throw Error(ErrorKind::ConfigError, "dominance entries are [greater, lesser] pairs");
        }
        cfg.assumptions.dominance.emplace_back(detail::read_func(pair[0]), detail::read_func(pair[1]));
      }
    }
  }
  cfg.model.validate();
  cfg.assumptions.validate();
  return cfg;
}

inline Config parse_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

inline nlohmann::ordered_json to_json(const Config& cfg) {
  nlohmann::ordered_json out;
  const auto& sz = cfg.model.sizes;
  out["sizes"] = {{"r", sz.r}, {"n", sz.n}, {"k", sz.k}, {"m", sz.m}};
  out["s_hash"] = sz.s_hash;
  out["s_asym"] = {{"blk_in", sz.blk_in}, {"blk_out", sz.blk_out}, {"pad", sz.pad}};
  nlohmann::ordered_json funcs = nlohmann::ordered_json::object();
  for (CostFunc f : kSizedFuncs) {
    funcs[std::string(to_string(f))] = {{"alpha", cfg.model.func(f).alpha}, {"beta", cfg.model.func(f).beta}};
  }
  out["funcs"] = funcs;
  out["lambda_c"] = cfg.model.lambda_c;
  out["lambda_p"] = cfg.model.lambda_p;
  out["ov_h"] = cfg.model.ov_h;
  nlohmann::ordered_json dom = nlohmann::ordered_json::array();
  for (const auto& [g, l] : cfg.assumptions.dominance) dom.push_back({to_string(g), to_string(l)});
  out["assumptions"] = {{"ignore_overhead", cfg.assumptions.ignore_overhead},
                        {"dominance", dom},
                        {"monotone", cfg.assumptions.monotone},
                        {"max_bytes", cfg.assumptions.max_bytes}};
  return out;
}

}  // namespace spa
