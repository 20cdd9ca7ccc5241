#include "entcost/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "entcost/channels.hpp"
#include "entcost/measures.hpp"

namespace entcost::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string csv_scalar(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) return fmt9(v.get<double>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::ostream& os) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), os);
    if (v.empty()) os << prefix << ",\n";
  } else {
    os << prefix << "," << csv_scalar(v) << "\n";
  }
}

Json bell_row(double p) {
  const BellMixParam param(p);
  const double ec = ec_bell_mix(param).value();
  const double ed = ed_hashing(param).value();
  const double ef = ef_two_qubit(bell_mix(param)).value();
  return Json{{"p", p}, {"Ec", ec}, {"Ed", ed}, {"Ef", ef}, {"gap", ec - ed}};
}

double reconstruction_residual(const Decomposition& dec, const DensityMatrix& rho) {
  return max_abs_diff(dec.reconstruct(), rho.mat());
}

Json config_json(const OptimizerConfig& cfg) {
  return Json{{"ensemble_size", cfg.ensemble_size},
              {"restarts", cfg.restarts},
              {"max_iters", cfg.max_iters},
              {"step_tol", cfg.step_tol},
              {"value_tol", cfg.value_tol}};
}

}  // namespace

Json RunReport::to_json() const {
  return Json{{"schema", kSchemaVersion}, {"command", command}, {"seed", seed}, {"inputs", inputs}, {"outputs", outputs}};
}

RunReport cmd_bell_mix(std::optional<double> p, std::optional<int> grid) {
  const auto start = Clock::now();
  RunReport r;
  r.command = "bell-mix";
  Json rows = Json::array();
  if (p) {
    if (!(*p >= 0.0 && *p <= 0.5)) throw UsageError("--p must lie in [0, 0.5]");
    r.inputs["p"] = *p;
    rows.push_back(bell_row(*p));
  } else {
    const int n = grid.value_or(101);
    if (n < 2) throw UsageError("--grid must be at least 2");
    r.inputs["grid"] = n;
    for (int i = 0; i < n; ++i) rows.push_back(bell_row(i == n - 1 ? 0.5 : 0.5 * i / (n - 1)));
  }
  r.outputs["rows"] = std::move(rows);
  r.wall_time = seconds_since(start);
  return r;
}

RunReport cmd_example(int id, std::uint64_t seed, bool literal_basis) {
  const auto start = Clock::now();
  if (id < 1 || id > 4) throw UsageError("--id must be 1, 2, 3 or 4");
  if (literal_basis && id != 4) throw UsageError("--literal-basis applies to example 4 only");
  RunReport r;
  r.command = "example";
  r.seed = seed;
  r.inputs["id"] = id;
  if (literal_basis) r.inputs["literal_basis"] = true;

  const SubspaceBasis basis = literal_basis ? example4_literal_basis() : subspace_basis(id);
  const auto constancy = constant_entanglement_check(basis, 64, seed);
  const QuantumChannel ch = trace_out_map(basis);
  const EbCertificate cert = eb_certify(ch);
  const bool breaking = cert.verdict == EbVerdict::Breaking;

  r.outputs["dims"] = {basis.ambient.dA, basis.ambient.dB};
  r.outputs["basis_size"] = basis.size();
  r.outputs["orthonormality_defect"] = basis.orthonormality_defect();
  r.outputs["constant_entanglement"] = constancy.is_constant;
  r.outputs["spectrum"] = constancy.is_constant ? Json(constancy.spectrum) : Json(nullptr);
  r.outputs["Ef"] = constancy.is_constant ? Json(constancy.value.value()) : Json(nullptr);
  r.outputs["eb"] = to_json(cert);
  r.outputs["Ec_equals_Ef"] = breaking;
  if (constancy.is_constant && breaking) {
    r.outputs["Ec"] = constancy.value.value();
    r.outputs["note"] = "Ec = Ef = entanglement of every state in the subspace";
  } else if (breaking) {
    r.outputs["Ec"] = nullptr;
    r.outputs["note"] = "Ef depends on the state; Ec = Ef for every state on the subspace";
  } else {
    r.outputs["Ec"] = nullptr;
    r.outputs["note"] = "Ec unknown (theorem inapplicable)";
  }
  r.wall_time = seconds_since(start);
  return r;
}

RunReport cmd_ef(const std::string& input_path, const OptimizerConfig& cfg) {
  const auto start = Clock::now();
  const DensityMatrix rho = density_from_json(read_json_file(input_path));
  RunReport r;
  r.command = "ef";
  r.seed = cfg.seed;
  r.inputs["input"] = input_path;
  r.inputs["dims"] = {rho.split().dA, rho.split().dB};
  r.inputs["config"] = config_json(cfg);
  const EfResult result = ef_upper_bound(rho, cfg);
  r.outputs = to_json(result);
  r.outputs["reconstruction_residual"] = reconstruction_residual(result.decomposition, rho);
  if (rho.split() == DimSplit{2, 2}) r.outputs["two_qubit_closed_form"] = ef_two_qubit(rho).value();
  r.wall_time = seconds_since(start);
  return r;
}

RunReport cmd_additivity(double p, double q, const OptimizerConfig& cfg) {
  const auto start = Clock::now();
  if (!(p >= 0.0 && p <= 0.5) || !(q >= 0.0 && q <= 0.5)) throw UsageError("--p and --q must lie in [0, 0.5]");
  RunReport r;
  r.command = "additivity";
  r.seed = cfg.seed;
  r.inputs = Json{{"p", p}, {"q", q}, {"config", config_json(cfg)}};
  const auto rho = bell_mix(BellMixParam(p));
  const auto sigma = bell_mix(BellMixParam(q));
  const AdditivityResult res = additivity_gap(rho, sigma, cfg);
  r.outputs["gap"] = res.gap;
  r.outputs["joint_value"] = res.joint.value.value();
  r.outputs["reference_p"] = res.reference_rho;
  r.outputs["reference_q"] = res.reference_sigma;
  r.outputs["Ec_formula_sum"] = ec_bell_mix(BellMixParam(p)).value() + ec_bell_mix(BellMixParam(q)).value();
  r.outputs["joint"] = to_json(res.joint);
  r.wall_time = seconds_since(start);
  return r;
}

RunReport cmd_eb(std::optional<int> example_id, std::optional<std::string> choi_path) {
  const auto start = Clock::now();
  if (example_id.has_value() == choi_path.has_value())
    throw UsageError("eb-check needs exactly one of --example or --choi");
  RunReport r;
  r.command = "eb-check";
  EbCertificate cert;
  if (example_id) {
    if (*example_id < 1 || *example_id > 4) throw UsageError("--example must be 1, 2, 3 or 4");
    r.inputs["example"] = *example_id;
    cert = eb_certify(trace_out_map(subspace_basis(*example_id)));
  } else {
    r.inputs["choi"] = *choi_path;
    cert = eb_certify_choi(density_from_json(read_json_file(*choi_path)));
  }
  r.outputs = to_json(cert);
  switch (cert.verdict) {
    case EbVerdict::Breaking: r.exit_code = kSuccess; break;
    case EbVerdict::NotBreaking: r.exit_code = kNegativeVerdict; break;
    case EbVerdict::Indeterminate: r.exit_code = kIndeterminate; break;
  }
  r.wall_time = seconds_since(start);
  return r;
}

std::string to_csv(const RunReport& report) {
  std::ostringstream os;
  if (report.command == "bell-mix") {
    os << "p,Ec,Ed,Ef,gap\n";
    for (const auto& row : report.outputs.at("rows")) {
      os << fmt9(row.at("p").get<double>()) << "," << fmt9(row.at("Ec").get<double>()) << ","
         << fmt9(row.at("Ed").get<double>()) << "," << fmt9(row.at("Ef").get<double>()) << ","
         << fmt9(row.at("gap").get<double>()) << "\n";
    }
    return os.str();
  }
  os << "key,value\n";
  os << "schema," << kSchemaVersion << "\n";
  os << "command," << report.command << "\n";
  os << "seed," << report.seed << "\n";
  flatten(report.inputs, "inputs", os);
  flatten(report.outputs, "outputs", os);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement measures, entanglement-breaking certificates and Ef optimisation"};
  app.require_subcommand(1);

  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out_path;
  bool timing = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", seed, "Seed for sampling and optimiser restarts");
    sub->add_option("--out", out_path, "Write output to this file instead of stdout");
    sub->add_flag("--timing", timing, "Report wall time on stderr");
  };
  OptimizerConfig cfg;
  cfg.threads = 0;
  auto add_optimizer = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "Optimiser restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", cfg.max_iters, "Iterations per restart")->check(CLI::NonNegativeNumber);
    sub->add_option("--ensemble-size", cfg.ensemble_size, "Ensemble size m (0 = rank^2)");
    sub->add_option("--step-tol", cfg.step_tol, "Gradient-norm stopping tolerance");
    sub->add_option("--value-tol", cfg.value_tol, "Relative decrease stopping tolerance");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  };

  auto* bell = app.add_subcommand("bell-mix", "Ec, Ed and Ef of the two-Bell-state mixture");
  std::optional<double> p_opt;
  std::optional<int> grid_opt;
  auto* p_flag = bell->add_option("--p", p_opt, "Single mixing weight in [0, 0.5]");
  bell->add_option("--grid", grid_opt, "Number of evenly spaced points on [0, 0.5]")->excludes(p_flag);
  add_common(bell);

  auto* example = app.add_subcommand("example", "Worked subspace example");
  int example_id = 0;
  bool literal = false;
  example->add_option("--id", example_id, "Example number (1-4)")->required();
  example->add_flag("--literal-basis", literal, "Example 4 with the alternative third vector");
  add_common(example);

  auto* ef = app.add_subcommand("ef", "Variational entanglement of formation of a state file");
  std::string input_path;
  ef->add_option("--input", input_path, "State JSON file")->required();
  add_common(ef);
  add_optimizer(ef);

  auto* add = app.add_subcommand("additivity", "Additivity gap for two Bell mixtures");
  double p = 0.0;
  double q = 0.0;
  add->add_option("--p", p, "First mixing weight")->required();
  add->add_option("--q", q, "Second mixing weight")->required();
  add_common(add);
  add_optimizer(add);

  auto* eb = app.add_subcommand("eb-check", "Entanglement-breaking certificate");
  std::optional<int> eb_example;
  std::optional<std::string> eb_choi;
  auto* ex_opt = eb->add_option("--example", eb_example, "Example subspace (1-4)");
  eb->add_option("--choi", eb_choi, "Choi state JSON file")->excludes(ex_opt);
  add_common(eb);

  std::vector<const char*> argv{"entcost"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }
  cfg.seed = seed;

  RunReport report;
  try {
    if (bell->parsed()) report = cmd_bell_mix(p_opt, grid_opt);
    else if (example->parsed()) report = cmd_example(example_id, seed, literal);
    else if (ef->parsed()) report = cmd_ef(input_path, cfg);
    else if (add->parsed()) report = cmd_additivity(p, q, cfg);
    else report = cmd_eb(eb_example, eb_choi);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvariantViolation;
  }
  report.seed = seed;

  const std::string text = format == "csv" ? to_csv(report) : report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << out_path << "\n";
      return kInputError;
    }
    file << text;
  }
  if (timing) err << "wall_time " << fmt9(report.wall_time) << " s\n";
  return report.exit_code;
}

}  // namespace entcost::cli
