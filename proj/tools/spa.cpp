// spa: command-line front end for protocol cost analysis.
//
//   spa check FILE
//   spa model FILE [--role R] [--format text|dot|json]
//   spa cost FILE --role R [--raw|--simplified] [--format text|json]
//   spa compare FILE_A FILE_B --role R [--config CFG] [--trace] [--format text|json]
//   spa eval FILE --role R [--config CFG] [--format text|json]
//
// Exit status: 0 ok, 1 I/O, 2 validation, 3 extraction, 4 config.

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spa/spa.hpp"

namespace {

enum Exit : int { kOk = 0, kIo = 1, kValidation = 2, kExtraction = 3, kConfig = 4 };

// An Error together with the exit status of the phase that raised it.
struct Failure {
  int code;
  std::string message;
};

int exit_for(const spa::Error& e, int phase_default) {
  switch (e.kind()) {
    case spa::ErrorKind::IoError: return kIo;
    case spa::ErrorKind::ConfigError: return kConfig;
    case spa::ErrorKind::UnknownRole: return kValidation;
    default: return phase_default;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spa::Error(spa::ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw spa::Error(spa::ErrorKind::IoError, "error reading '" + path + "'");
  return buf.str();
}

spa::ProtocolSpec load_spec(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return spa::parse(text);
  } catch (const spa::Error& e) {
    throw Failure{exit_for(e, kValidation), path + ": " + e.what()};
  }
}

spa::KStrand strand_for(const spa::ProtocolSpec& spec, const std::string& role) {
  if (!spec.has_role(role)) {
    throw Failure{kValidation, std::string(spa::to_string(spa::ErrorKind::UnknownRole)) + ": protocol '" + spec.name +
                                   "' has no role '" + role + "'"};
  }
  const auto space = spa::project(spec);
  if (const auto* s = spa::find_strand(space, role)) return *s;
  // A declared role that takes part in no message.
  spa::KStrand idle;
  idle.participant = spa::Atom{spa::AtomKind::Participant, role};
  idle.knowledge.push_back(spa::Term::atom(idle.participant));
  return idle;
}

spa::RoleModel model_for(const spa::KStrand& k) {
  try {
    return spa::model_role(k);
  } catch (const spa::Error& e) {
    throw Failure{exit_for(e, kExtraction), "role '" + k.participant.label + "': " + e.what()};
  }
}

spa::Config config_for(const std::optional<std::string>& path) {
  if (!path) return {};
  try {
    return spa::load_config(*path);
  } catch (const spa::Error& e) {
    throw Failure{exit_for(e, kConfig), *path + ": " + e.what()};
  }
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

int cmd_check(const std::string& file) {
  const auto spec = load_spec(file);
  try {
    (void)spa::edges(spa::project(spec));
  } catch (const spa::Error& e) {
    throw Failure{exit_for(e, kValidation), file + ": " + e.what()};
  }
  std::cout << "ok: protocol " << spec.name << ", " << spec.roles.size() << " roles, " << spec.messages.size()
            << " messages\n";
  return kOk;
}

int cmd_model(const std::string& file, const std::optional<std::string>& role, const std::string& format) {
  const auto spec = load_spec(file);
  const auto kspace = spa::project(spec);
  std::vector<spa::RoleModel> models;
  if (role) {
    models.push_back(model_for(strand_for(spec, *role)));
  } else {
    for (const auto& k : kspace.strands) models.push_back(model_for(k));
  }
  if (format == "dot") {
    std::cout << spa::render_dot(spec.name, models);
  } else if (format == "json") {
    spa::KStrandSpace shown = kspace;
    if (role) {
      shown.strands.clear();
      if (const auto* s = spa::find_strand(kspace, *role)) shown.strands.push_back(*s);
    }
    try {
      std::cout << spa::model_json(spec.name, shown, models).dump(2) << "\n";
    } catch (const spa::Error& e) {
      throw Failure{exit_for(e, kValidation), file + ": " + e.what()};
    }
  } else {
    std::cout << spa::render_text(spec.name, models);
  }
  return kOk;
}

int cmd_cost(const std::string& file, const std::string& role, bool raw, const std::string& format) {
  const auto spec = load_spec(file);
  const auto report = spa::make_report(spec.name, model_for(strand_for(spec, role)));
  if (format == "json") {
    std::cout << spa::to_json(report).dump(2) << "\n";
  } else {
    std::cout << spa::to_string(raw ? report.raw : report.simplified) << "\n";
  }
  return kOk;
}

int cmd_compare(const std::string& file_a, const std::string& file_b, const std::string& role,
                const std::optional<std::string>& config_path, bool trace, const std::string& format) {
  const spa::Config cfg = config_for(config_path);
  const auto spec_a = load_spec(file_a);
  const auto spec_b = load_spec(file_b);
  const auto k_a = strand_for(spec_a, role);
  const auto k_b = strand_for(spec_b, role);

  auto fa = std::async(std::launch::async, [&] { return model_for(k_a); });
  auto fb = std::async(std::launch::async, [&] { return model_for(k_b); });
  const auto report_a = spa::make_report(spec_a.name, fa.get());
  const auto report_b = spa::make_report(spec_b.name, fb.get());

  const auto cmp = spa::compare(report_a.simplified, report_b.simplified, cfg.assumptions);

  // Numeric spot check under the supplied model.
  std::optional<std::string> spot;
  if (config_path) {
    if (auto why = spa::violated_premise(cfg.model, cfg.assumptions)) {
      spot = "skipped (" + *why + ")";
    } else if (!spa::sizes_admissible(report_a.simplified, cfg.model, cfg.assumptions.max_bytes) ||
               !spa::sizes_admissible(report_b.simplified, cfg.model, cfg.assumptions.max_bytes)) {
      spot = "skipped (a size argument exceeds max_bytes)";
    } else {
      const double va = spa::eval_cost(report_a.simplified, cfg.model);
      const double vb = spa::eval_cost(report_b.simplified, cfg.model);
      const double tol = 1e-9 * std::max({1.0, std::fabs(va), std::fabs(vb)});
      bool ok = true;
      switch (cmp.verdict) {
        case spa::Verdict::Less: ok = va < vb; break;
        case spa::Verdict::Greater: ok = va > vb; break;
        case spa::Verdict::Equal: ok = std::fabs(va - vb) <= tol; break;
        case spa::Verdict::Indeterminate: break;
      }
      const char* note = cmp.verdict == spa::Verdict::Indeterminate ? ", no verdict to check"
                         : ok                                          ? ", consistent"
                                                                       : ", CONTRADICTS verdict";
      spot = number(va) + " vs " + number(vb) + note;
    }
  }

  if (format == "json") {
    spa::Json out;
    out["role"] = role;
    out["verdict"] = std::string(spa::to_string(cmp.verdict));
    out["residual"] = cmp.inequality();
    out["lhs"] = spa::to_json(report_a);
    out["rhs"] = spa::to_json(report_b);
    if (trace) out["trace"] = cmp.trace;
    if (spot) out["numeric_check"] = *spot;
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << spa::to_string(cmp.verdict) << "\n";
  std::cout << "residual: " << cmp.inequality() << "\n";
  std::cout << "lhs: " << spa::to_string(report_a.simplified) << "\n";
  std::cout << "rhs: " << spa::to_string(report_b.simplified) << "\n";
  if (spot) std::cout << "numeric check: " << *spot << "\n";
  if (trace) {
    std::cout << "trace:\n";
    for (const auto& line : cmp.trace) std::cout << "  " << line << "\n";
  }
  return kOk;
}

int cmd_eval(const std::string& file, const std::string& role, const std::optional<std::string>& config_path,
             const std::string& format) {
  const spa::Config cfg = config_for(config_path);
  const auto spec = load_spec(file);
  auto report = spa::make_report(spec.name, model_for(strand_for(spec, role)));
  report.value = spa::eval_cost(report.simplified, cfg.model);
  if (format == "json") {
    spa::Json out = spa::to_json(report);
    spa::Json parts = spa::Json::array();
    for (const auto& [t, m] : report.simplified.entries()) {
      const double each = spa::eval_term(t, cfg.model);
      parts.push_back({{"term", spa::to_string(t)}, {"multiplicity", m}, {"each", each}, {"total", each * m}});
    }
    out["breakdown"] = parts;
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  for (const auto& [t, m] : report.simplified.entries()) {
    const double each = spa::eval_term(t, cfg.model);
    std::cout << m << " * " << spa::to_string(t) << " = " << m << " * " << number(each) << " = "
              << number(each * static_cast<double>(m)) << "\n";
  }
  std::cout << "total: " << number(*report.value) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost analysis of security protocols in the strand space model", "spa"};
  app.require_subcommand(1);

  std::string file;
  std::string file_b;
  std::optional<std::string> role;
  std::string format = "text";
  std::optional<std::string> config;
  bool trace = false;
  bool raw = false;
  bool simplified = false;

  auto* check = app.add_subcommand("check", "Validate a protocol file");
  check->add_option("file", file, "Protocol file")->required();

  auto* model = app.add_subcommand("model", "Print the strand models");
  model->add_option("file", file, "Protocol file")->required();
  model->add_option("--role", role, "Only this role");
  model->add_option("--format", format, "text, dot or json")->check(CLI::IsMember({"text", "dot", "json"}));

  auto* cost = app.add_subcommand("cost", "Print a role's symbolic cost");
  cost->add_option("file", file, "Protocol file")->required();
  cost->add_option("--role", role, "Role")->required();
  auto* raw_flag = cost->add_flag("--raw", raw, "Keep f_c and f_p applications");
  cost->add_flag("--simplified", simplified, "Fold f_c into L_C and f_p into L_P (default)")->excludes(raw_flag);
  cost->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* cmp = app.add_subcommand("compare", "Compare a role's cost across two protocol files");
  cmp->add_option("file_a", file, "First protocol file")->required();
  cmp->add_option("file_b", file_b, "Second protocol file")->required();
  cmp->add_option("--role", role, "Role")->required();
  cmp->add_option("--config", config, "JSON cost model and assumptions");
  cmp->add_flag("--trace", trace, "Print every rewrite step");
  cmp->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* eval = app.add_subcommand("eval", "Evaluate a role's cost numerically");
  eval->add_option("file", file, "Protocol file")->required();
  eval->add_option("--role", role, "Role")->required();
  eval->add_option("--config", config, "JSON cost model");
  eval->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*check) return cmd_check(file);
    if (*model) return cmd_model(file, role, format);
    if (*cost) return cmd_cost(file, *role, raw, format);
    if (*cmp) return cmd_compare(file, file_b, *role, config, trace, format);
    if (*eval) return cmd_eval(file, *role, config, format);
  } catch (const Failure& f) {
    std::cerr << "spa: " << f.message << "\n";
    return f.code;
  } catch (const spa::Error& e) {
    std::cerr << "spa: " << e.what() << "\n";
    return exit_for(e, kValidation);
  }
  return kOk;
}
