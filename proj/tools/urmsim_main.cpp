// urmsim: verification and simulation front end for unrecorded-measurement
// retrieval protocols on odd-prime-dimensional qudits.
//
// Exit codes: 0 = all checks pass, 1 = checks ran and failed, 2 = invalid
// invocation. Reports go to stdout (or --out), diagnostics to stderr.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "urm/oracle.hpp"
#include "urm/protocol.hpp"

using nlohmann::json;
using namespace urm;

namespace {

using Clock = std::chrono::steady_clock;

enum class Format { Text, Json, Csv };

struct CommonOpts {
  int d = 0;
  double tolerance = 1e-9;
  bool as_json = false;
  bool as_csv = false;
  std::string out_path;

  Format format() const {
    if (as_json) return Format::Json;
    if (as_csv) return Format::Csv;
    return Format::Text;
  }
};

double env_default_tolerance() {
  if (const char* env = std::getenv("URMSIM_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return 1e-9;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--d", opts.d, "dimension (odd prime)")->required();
  cmd->add_option("--tolerance", opts.tolerance, "numerical pass tolerance")
      ->capture_default_str();
  auto* jflag = cmd->add_flag("--json", opts.as_json, "emit a JSON report");
  cmd->add_flag("--csv", opts.as_csv, "emit a CSV report")->excludes(jflag);
  cmd->add_option("--out", opts.out_path, "write the report to a file instead of stdout");
}

// ---------------------------------------------------------------------------
// report rendering

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, kv);
    } else {
      kv.emplace_back(name, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
}

std::string render_csv(const json& report) {
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(report, "", kv);
  std::ostringstream header, values;
  for (std::size_t k = 0; k < kv.size(); ++k) {
    if (k) {
      header << ",";
      values << ",";
    }
    header << kv[k].first;
    values << kv[k].second;
  }
  return header.str() + "\n" + values.str() + "\n";
}

std::string render_text(const json& report) {
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(report, "", kv);
  std::size_t width = 0;
  for (const auto& [key, value] : kv) width = std::max(width, key.size());
  std::ostringstream out;
  for (const auto& [key, value] : kv) {
    out << key << std::string(width - key.size(), ' ') << " : " << value << "\n";
  }
  return out.str();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out_path);
  if (!file) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return 2;
  }
  file << text;
  return 0;
}

int emit(const json& report, const CommonOpts& opts) {
  std::string text;
  switch (opts.format()) {
    case Format::Json:
      text = report.dump(2) + "\n";
      break;
    case Format::Csv:
      text = render_csv(report);
      break;
    case Format::Text:
      text = render_text(report);
      break;
  }
  if (const int rc = write_output(text, opts.out_path)) return rc;
  return report.at("pass").get<bool>() ? 0 : 1;
}

json report_skeleton(const std::string& command, int d) {
  return json{{"command", command},        {"d", d},
              {"params", json::object()},  {"counts", json::object()},
              {"max_residual", 0.0},       {"elapsed_ms", 0.0},
              {"pass", false}};
}

bool validate_dimension(int d) {
  if (is_odd_prime(d)) return true;
  std::cerr << "error: d must be an odd prime >= 3 (got " << d << ")\n";
  return false;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_verify_mub(const CommonOpts& opts) {
  if (!validate_dimension(opts.d)) return 2;
  const auto start = Clock::now();
  const UnbiasednessReport result = unbiasedness_report(opts.d);

  json report = report_skeleton("verify-mub", opts.d);
  report["params"] = {{"tolerance", opts.tolerance}};
  report["counts"] = {{"basis_pairs", result.basis_pairs},
                      {"vector_pairs", result.vector_pairs}};
  report["max_residual"] = result.max_deviation;
  report["max_deviation"] = result.max_deviation;
  report["elapsed_ms"] = ms_since(start);
  report["pass"] = result.max_deviation < opts.tolerance;
  return emit(report, opts);
}

int cmd_verify_mes(const CommonOpts& opts) {
  if (!validate_dimension(opts.d)) return 2;
  const auto start = Clock::now();
  const int d = opts.d;

  json details;
  double worst = 0.0;
  std::optional<GammaBasis> gamma_a, gamma_b;
  for (MesFamily family : {MesFamily::A, MesFamily::B}) {
    GammaBasis gamma(d, family);
    const Matrix& v = gamma.vectors();
    const double gram_residual =
        (v.adjoint() * v - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff();
    double ptrace_residual = 0.0;
    for (int col = 0; col < d * d; ++col) {
      for (int side : {1, 2}) {
        ptrace_residual = std::max(
            ptrace_residual,
            (partial_trace(v.col(col), side) - Matrix::Identity(d, d) / d)
                .cwiseAbs()
                .maxCoeff());
      }
    }
    details["family_" + to_string(family)] = {{"gram_residual", gram_residual},
                                              {"ptrace_residual", ptrace_residual}};
    worst = std::max({worst, gram_residual, ptrace_residual});
    (family == MesFamily::A ? gamma_a : gamma_b).emplace(std::move(gamma));
  }
  const Eigen::MatrixXd cross =
      (gamma_a->vectors().adjoint() * gamma_b->vectors()).cwiseAbs2();
  const double cross_residual = (cross.array() - 1.0 / (d * d)).abs().maxCoeff();
  details["cross_unbiasedness_residual"] = cross_residual;
  details["cross_target"] = 1.0 / (d * d);
  worst = std::max(worst, cross_residual);

  json report = report_skeleton("verify-mes", d);
  report["params"] = {{"tolerance", opts.tolerance}};
  report["counts"] = {{"mes_vectors", 2 * d * d},
                      {"cross_overlaps", static_cast<long>(d) * d * d * d}};
  report["details"] = details;
  report["max_residual"] = worst;
  report["elapsed_ms"] = ms_since(start);
  report["pass"] = worst < opts.tolerance;
  return emit(report, opts);
}

struct RunOpts {
  CommonOpts common;
  std::string family = "a";
  std::string basis;  // "", "cb", or an integer
  int m = 0;
  bool m_given = false;
  std::uint64_t seed = 0;
  int trials = 1;
};

int cmd_run(const RunOpts& opts) {
  if (!validate_dimension(opts.common.d)) return 2;
  const int d = opts.common.d;
  const PrimeModulus mod(d);

  std::optional<BasisLabel> pinned_basis;
  if (!opts.basis.empty()) {
    if (opts.basis == "cb") {
      pinned_basis = BasisLabel::computational();
    } else {
      try {
        pinned_basis = BasisLabel::shifted(FieldElem(std::stoll(opts.basis), mod));
      } catch (const std::exception&) {
        std::cerr << "error: --b must be \"cb\" or an integer\n";
        return 2;
      }
    }
  }
  const MesFamily control = opts.family == "b" ? MesFamily::B : MesFamily::A;

  const auto start = Clock::now();
  Rng rng(opts.seed);
  const GammaBasis gamma(d, control);
  const auto basis_labels = all_bases(d);

  long correct = 0, undetermined = 0, wrong = 0, cb_descriptive = 0;
  json transcript;
  for (int trial = 0; trial < opts.trials; ++trial) {
    const MesLabel prepared{MesFamily::A, FieldElem(uniform_int(d, rng), mod),
                            FieldElem(uniform_int(d, rng), mod)};
    const BasisLabel basis =
        pinned_basis
            ? *pinned_basis
            : basis_labels[uniform_int(static_cast<int>(basis_labels.size()), rng)];
    const UrmRun run = opts.m_given
                           ? run_urm(d, prepared, {basis, FieldElem(opts.m, mod)})
                           : run_urm_sampled(d, prepared, basis, rng);
    const ControlOutcome control_outcome = control_measure(run.post_state, gamma, rng);

    std::string verdict;
    std::string inference;
    std::optional<int> inferred_m;
    if (control == MesFamily::A) {
      const InferenceResult result = infer_basis(prepared, control_outcome);
      inference = result.to_string();
      if (result.is_undetermined()) {
        verdict = "undetermined";
        ++undetermined;
      } else if (*result.as_basis() == run.record.basis) {
        verdict = "correct-definite";
        ++correct;
      } else {
        verdict = "wrong-definite";
        ++wrong;
      }
    } else if (run.record.basis.is_computational()) {
      // The outcome formula is derived for shifted bases only; record the trial.
      inference = "not-applicable (computational-basis URM)";
      verdict = "cb-descriptive";
      ++cb_descriptive;
    } else {
      const FieldElem m_hat = infer_outcome(prepared, control_outcome, run.record.basis);
      inferred_m = m_hat.value();
      inference = "m = " + m_hat.to_string();
      if (m_hat == run.record.m) {
        verdict = "correct-definite";
        ++correct;
      } else {
        verdict = "wrong-definite";
        ++wrong;
      }
    }

    if (opts.trials == 1) {
      transcript = {{"prepared",
                     {{"family", "a"}, {"mdd", prepared.mdd.value()}, {"m0", prepared.m0.value()}}},
                    {"hidden",
                     {{"basis", run.record.basis.to_string()}, {"m", run.record.m.value()}}},
                    {"control",
                     {{"family", to_string(control)},
                      {"mdd_p", control_outcome.mdd_p.value()},
                      {"m0_p", control_outcome.m0_p.value()}}},
                    {"inference", inference},
                    {"verdict", verdict}};
      if (inferred_m) transcript["inferred_m"] = *inferred_m;
    }
  }

  if (opts.common.format() == Format::Text) {
    // Timing-free transcript so identical invocations are byte-identical.
    std::ostringstream text;
    text << "run  d=" << d << "  control=" << to_string(control) << "  seed=" << opts.seed
         << "  trials=" << opts.trials << "\n";
    if (opts.trials == 1) {
      text << "prepared : a(mdd=" << transcript["prepared"]["mdd"]
           << ", m0=" << transcript["prepared"]["m0"] << ")\n"
           << "hidden   : basis=" << transcript["hidden"]["basis"].get<std::string>()
           << " m=" << transcript["hidden"]["m"] << "\n"
           << "control  : (mdd'=" << transcript["control"]["mdd_p"]
           << ", m0'=" << transcript["control"]["m0_p"] << ")\n"
           << "inference: " << transcript["inference"].get<std::string>() << "\n"
           << "verdict  : " << transcript["verdict"].get<std::string>() << "\n";
    } else {
      text << "correct-definite : " << correct << "\n"
           << "undetermined     : " << undetermined << "\n"
           << "wrong-definite   : " << wrong << "\n"
           << "cb-descriptive   : " << cb_descriptive << "\n";
    }
    text << "pass     : " << (wrong == 0 ? "true" : "false") << "\n";
    if (const int rc = write_output(text.str(), opts.common.out_path)) return rc;
    return wrong == 0 ? 0 : 1;
  }

  json report = report_skeleton("run", d);
  report["params"] = {{"family", to_string(control)},
                      {"seed", opts.seed},
                      {"trials", opts.trials}};
  if (!opts.basis.empty()) report["params"]["b"] = opts.basis;
  if (opts.m_given) report["params"]["m"] = opts.m;
  report["counts"] = {{"trials", opts.trials},
                      {"correct_definite", correct},
                      {"undetermined", undetermined},
                      {"wrong_definite", wrong},
                      {"cb_descriptive", cb_descriptive}};
  if (opts.trials == 1) report["transcript"] = transcript;
  report["elapsed_ms"] = ms_since(start);
  report["pass"] = wrong == 0;
  return emit(report, opts.common);
}

json sweep_counts(const SweepReport& r) {
  return {{"cases_total", r.cases_total},
          {"support_total", r.support_total},
          {"correct_definite", r.correct_definite},
          {"undetermined", r.undetermined},
          {"wrong_definite", r.wrong_definite},
          {"constraint_violations", r.constraint_violations},
          {"structure_violations", r.structure_violations},
          {"cb_cases", r.cb_cases},
          {"cb_support_total", r.cb_support_total},
          {"cb_relation_mismatches", r.cb_relation_mismatches}};
}

int cmd_sweep(const CommonOpts& opts, const std::string& family) {
  if (!validate_dimension(opts.d)) return 2;
  const SweepReport result =
      family == "b" ? sweep_protocol_b(opts.d) : sweep_protocol_a(opts.d);

  json report = report_skeleton("sweep", opts.d);
  report["params"] = {{"family", family}, {"tolerance", opts.tolerance}};
  report["counts"] = sweep_counts(result);
  report["max_residual"] = result.max_residual;
  report["elapsed_ms"] = result.elapsed_ms;
  report["pass"] = result.wrong_definite == 0 && result.constraint_violations == 0;
  return emit(report, opts);
}

int cmd_cross_validate(const CommonOpts& opts) {
  if (!validate_dimension(opts.d)) return 2;
  const CrossValidationReport result = cross_validate(opts.d);

  json report = report_skeleton("cross-validate", opts.d);
  report["params"] = {{"tolerance", opts.tolerance}};
  report["counts"] = {{"cases_total", result.cases_total},
                      {"support_mismatches", result.support_mismatches},
                      {"inference_disagreements", result.inference_disagreements},
                      {"mismatches", result.mismatches()}};
  report["max_residual"] = result.max_probability_residual;
  report["elapsed_ms"] = result.elapsed_ms;
  report["pass"] = result.mismatches() == 0;
  return emit(report, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unrecorded-measurement retrieval protocols: simulation and verification"};
  app.require_subcommand(1);

  const double default_tol = env_default_tolerance();

  CommonOpts mub_opts;
  mub_opts.tolerance = default_tol;
  auto* verify_mub =
      app.add_subcommand("verify-mub", "check pairwise unbiasedness of the d+1 bases");
  add_common(verify_mub, mub_opts);

  CommonOpts mes_opts;
  mes_opts.tolerance = default_tol;
  auto* verify_mes = app.add_subcommand(
      "verify-mes", "check MES orthonormality, partial traces and conjugate-basis unbiasedness");
  add_common(verify_mes, mes_opts);

  RunOpts run_opts;
  run_opts.common.tolerance = default_tol;
  auto* run_cmd =
      app.add_subcommand("run", "one sampled episode: prepare, hidden URM, control, infer");
  add_common(run_cmd, run_opts.common);
  run_cmd->add_option("--family", run_opts.family, "control-measurement family")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  run_cmd->add_option("--b", run_opts.basis, "pin the hidden basis (\"cb\" or an integer)");
  run_cmd->add_option("--m", run_opts.m, "pin the hidden outcome")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--seed", run_opts.seed, "RNG seed (required)")->required();
  run_cmd->add_option("--trials", run_opts.trials, "number of episodes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CommonOpts sweep_opts;
  sweep_opts.tolerance = default_tol;
  std::string sweep_family = "a";
  auto* sweep_cmd = app.add_subcommand("sweep", "exhaustive per-outcome protocol verification");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--family", sweep_family, "control-measurement family")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();

  CommonOpts cross_opts;
  cross_opts.tolerance = default_tol;
  auto* cross_cmd = app.add_subcommand(
      "cross-validate", "compare modular support predictions against amplitude enumeration");
  add_common(cross_cmd, cross_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(verify_mub)) return cmd_verify_mub(mub_opts);
    if (app.got_subcommand(verify_mes)) return cmd_verify_mes(mes_opts);
    if (app.got_subcommand(run_cmd)) {
      run_opts.m_given = run_cmd->count("--m") > 0;
      return cmd_run(run_opts);
    }
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep(sweep_opts, sweep_family);
    if (app.got_subcommand(cross_cmd)) return cmd_cross_validate(cross_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
