// Command-line front end: keyrate / curve / verify / simulate subcommands.
// Single results default to JSON (flat objects, snake_case keys), curves to
// CSV. Every output embeds the tool version, the resolved parameters and the
// seed, so runs are self-describing and reproducible.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dpsqkd/lemma_checks.hpp"
#include "dpsqkd/optimize.hpp"
#include "dpsqkd/security.hpp"
#include "dpsqkd/simulate.hpp"
#include "dpsqkd/source_model.hpp"
#include "dpsqkd/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;

json base_output(const std::string& command) {
  json out;
  out["tool"] = dpsqkd::kToolName;
  out["version"] = dpsqkd::kToolVersion;
  out["command"] = command;
  return out;
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// keyrate
// ---------------------------------------------------------------------------
struct KeyrateArgs {
  double eta = 1.0;
  double ebit = 0.0;
  std::optional<double> mu;
  bool optimize = false;
  bool poisson = false;
  std::optional<double> q1, q2, q3;
  std::string format = "json";
};

int run_keyrate(const KeyrateArgs& a) {
  const bool explicit_q = a.q1.has_value() || a.q2.has_value() || a.q3.has_value();
  if (explicit_q && !(a.q1 && a.q2 && a.q3)) {
    std::cerr << "keyrate: --q1 --q2 --q3 must be given together\n";
    return kExitUsage;
  }
  if (explicit_q && a.poisson) {
    std::cerr << "keyrate: --poisson conflicts with explicit --q1/--q2/--q3\n";
    return kExitUsage;
  }
  if (!explicit_q && !a.poisson) {
    std::cerr << "keyrate: need either --poisson or explicit --q1 --q2 --q3\n";
    return kExitUsage;
  }
  if (a.optimize == a.mu.has_value()) {
    std::cerr << "keyrate: need exactly one of --mu or --optimize\n";
    return kExitUsage;
  }
  if (a.optimize && !a.poisson) {
    // optimization ties q_n to mu, which only the Poisson model provides
    std::cerr << "keyrate: --optimize requires --poisson\n";
    return kExitUsage;
  }

  json out = base_output("keyrate");
  out["eta"] = a.eta;
  out["e_bit"] = a.ebit;
  out["poisson"] = a.poisson;
  out["optimized"] = a.optimize;

  double mu = 0.0;
  dpsqkd::KeyRateResult res;
  bool positive = true;
  if (a.optimize) {
    const dpsqkd::OptimizeResult opt = dpsqkd::optimize_mu(a.eta, a.ebit);
    mu = opt.mu_opt;
    res = opt.result;
    positive = opt.positive;
  } else {
    mu = *a.mu;
    const double q = dpsqkd::detection_rate(a.eta, mu);
    if (q == 0.0) {
      out["error"] = "no detections (Q = 0)";
      out["mu"] = mu;
      emit(out);
      return kExitDegenerate;
    }
    dpsqkd::SourceStats stats;
    if (a.poisson) {
      stats = dpsqkd::make_source_stats(mu);
    } else {
      stats = dpsqkd::SourceStats{*a.q1, *a.q2, *a.q3, std::nullopt};
    }
    res = dpsqkd::key_rate(dpsqkd::Observables{q, a.ebit}, stats);
    positive = !res.rate_clamped;
    out["q1"] = stats.q1;
    out["q2"] = stats.q2;
    out["q3"] = stats.q3;
  }
  out["mu"] = mu;
  out["f_ec"] = res.f_EC;
  out["q_rate"] = res.Q;
  out["e_ph_u"] = res.e_ph_U;
  out["r_per_pulse"] = res.R;
  out["rate_clamped"] = res.rate_clamped;

  if (a.format == "csv") {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", a.eta, a.ebit, mu, res.Q,
                  res.e_ph_U, res.R);
    std::cout << "eta,e_bit,mu,Q,e_ph_U,R_per_pulse\n" << buf;
  } else {
    emit(out);
  }
  return positive ? kExitOk : kExitDegenerate;
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------
struct CurveArgs {
  double ebit = 0.0;
  double eta_min = 1e-4;
  double eta_max = 1.0;
  int points = 41;
  double rep_rate = 1e9;
  std::string out_path;
};

int run_curve(const CurveArgs& a) {
  const std::vector<double> grid = dpsqkd::log_grid(a.eta_min, a.eta_max, a.points);
  const std::vector<dpsqkd::CurvePoint> pts = dpsqkd::keyrate_curve(grid, a.ebit, a.rep_rate);
  if (a.out_path.empty()) {
    dpsqkd::write_curve_csv(std::cout, pts);
    return kExitOk;
  }
  std::ofstream f(a.out_path);
  if (!f) {
    std::cerr << "curve: cannot write " << a.out_path << "\n";
    return kExitUsage;
  }
  dpsqkd::write_curve_csv(f, pts);
  return f.good() ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
struct VerifyArgs {
  std::string suite = "all";
  int samples = 10000;
  std::uint64_t seed = 42;
  double lambda = dpsqkd::lambda_const();
  std::string format = "json";
};

int run_verify(const VerifyArgs& a) {
  const dpsqkd::VerificationReport report =
      dpsqkd::run_verification_suite(a.suite, a.samples, a.seed, a.lambda);

  json out = base_output("verify");
  out["suite"] = a.suite;
  out["samples"] = a.samples;
  out["seed"] = a.seed;
  out["lambda"] = a.lambda;
  out["all_pass"] = report.all_pass();
  json checks = json::array();
  for (const dpsqkd::CheckResult& c : report.checks) {
    json jc;
    jc["name"] = c.name;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    for (const auto& [key, value] : c.measured) jc[key] = value;
    checks.push_back(jc);
  }
  out["checks"] = checks;
  emit(out);
  return report.all_pass() ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------
struct SimulateArgs {
  dpsqkd::SimConfig cfg;
  std::string format = "json";
  std::string transcript_path;
};

void write_transcript_csv(std::ostream& out, const dpsqkd::SimTranscript& t) {
  out << "block_id,b1,b2,b3,detected,slot,kA,kB,assignment\n";
  long id = 0;
  for (const dpsqkd::BlockOutcome& b : t.records) {
    out << id++ << ',' << b.bits[0] << ',' << b.bits[1] << ',' << b.bits[2] << ','
        << (b.detected ? 1 : 0) << ',';
    if (b.detected) {
      out << b.slot << ',' << b.k_a << ',' << b.k_b;
    } else {
      out << ",,";
    }
    out << ',' << (b.code ? "code" : "sample") << "\n";
  }
}

int run_simulate(const SimulateArgs& a) {
  const bool keep_records = !a.transcript_path.empty();
  const dpsqkd::SimTranscript t = dpsqkd::run_simulation(a.cfg, keep_records);

  if (keep_records) {
    std::ofstream f(a.transcript_path);
    if (!f) {
      std::cerr << "simulate: cannot write " << a.transcript_path << "\n";
      return kExitUsage;
    }
    write_transcript_csv(f, t);
  }

  json out = base_output("simulate");
  out["eta"] = a.cfg.eta;
  out["mu"] = a.cfg.mu;
  out["e_mis"] = a.cfg.e_mis;
  out["n_blocks"] = a.cfg.n_blocks;
  out["t_code"] = a.cfg.t_code;
  out["seed"] = a.cfg.seed;
  out["detected"] = t.detected;
  out["code_blocks"] = t.code_blocks;
  out["code_detected"] = t.code_detected;
  out["sample_detected"] = t.sample_detected;
  out["sample_bit_errors"] = t.sample_bit_errors;
  out["q_hat"] = t.q_hat();

  const bool degenerate = t.detected == 0 || !t.has_e_bit();
  out["abort"] = degenerate;
  if (degenerate) {
    emit(out);
    return kExitDegenerate;
  }
  out["e_bit_hat"] = t.e_bit_hat();
  const dpsqkd::KeyRateResult res =
      dpsqkd::key_rate(dpsqkd::Observables{t.q_hat(), t.e_bit_hat()},
                       dpsqkd::make_source_stats(a.cfg.mu));
  out["f_ec"] = res.f_EC;
  out["e_ph_u"] = res.e_ph_U;
  out["r_per_pulse"] = res.R;
  out["rate_clamped"] = res.rate_clamped;
  emit(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential-phase-shift QKD security analysis toolkit"};
  app.require_subcommand(1);

  KeyrateArgs ka;
  CLI::App* keyrate = app.add_subcommand("keyrate", "Phase-error bound and key rate for one channel point");
  keyrate->add_option("--eta", ka.eta, "Overall channel transmission (0,1]")
      ->required()
      ->check(CLI::Range(1e-300, 1.0));
  keyrate->add_option("--ebit", ka.ebit, "Bit error rate [0,1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  keyrate->add_option("--mu", ka.mu, "Mean photon number per pulse");
  keyrate->add_flag("--optimize", ka.optimize, "Optimize mu instead of fixing it");
  keyrate->add_flag("--poisson", ka.poisson, "Derive q1..q3 from Poisson statistics of mu");
  keyrate->add_option("--q1", ka.q1, "Explicit tail bound q1");
  keyrate->add_option("--q2", ka.q2, "Explicit tail bound q2");
  keyrate->add_option("--q3", ka.q3, "Explicit tail bound q3");
  keyrate->add_option("--format", ka.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  CurveArgs ca;
  CLI::App* curve = app.add_subcommand("curve", "Optimized key-rate curve over a transmission grid (CSV)");
  curve->add_option("--ebit", ca.ebit, "Bit error rate [0,1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  curve->add_option("--eta-min", ca.eta_min, "Grid lower end")->check(CLI::Range(1e-300, 1.0));
  curve->add_option("--eta-max", ca.eta_max, "Grid upper end")->check(CLI::Range(1e-300, 1.0));
  curve->add_option("--points", ca.points, "Grid size")->check(CLI::Range(1, 100000));
  curve->add_option("--rep-rate", ca.rep_rate, "Repetition rate in Hz for R_bps");
  curve->add_option("--out", ca.out_path, "Output CSV path (stdout when omitted)");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Numerically certify the operator lemmas");
  verify->add_option("--suite", va.suite, "Check suite")
      ->check(CLI::IsMember({"lemmas", "all"}));
  verify->add_option("--samples", va.samples, "Random density matrices per randomized check")
      ->check(CLI::Range(1, 100000000));
  verify->add_option("--seed", va.seed, "Seed for the randomized checks");
  verify->add_option("--format", va.format, "Output format")->check(CLI::IsMember({"json"}));
  verify->add_option("--lambda", va.lambda, "Override the bound constant (testing hook)")
      ->group("");  // hidden

  SimulateArgs sa;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of the three-pulse protocol");
  simulate->add_option("--eta", sa.cfg.eta, "Overall channel transmission (0,1]")->required();
  simulate->add_option("--mu", sa.cfg.mu, "Mean photon number per pulse")->required();
  simulate->add_option("--emis", sa.cfg.e_mis, "Misalignment bit-flip probability [0,0.5]");
  simulate->add_option("--blocks", sa.cfg.n_blocks, "Number of emitted blocks")->required();
  simulate->add_option("--seed", sa.cfg.seed, "RNG seed");
  simulate->add_option("--tcode", sa.cfg.t_code, "Code-pair assignment probability (0,1)");
  simulate->add_option("--format", sa.format, "Output format")->check(CLI::IsMember({"json"}));
  simulate->add_option("--transcript", sa.transcript_path, "Write per-block CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (keyrate->parsed()) return run_keyrate(ka);
    if (curve->parsed()) return run_curve(ca);
    if (verify->parsed()) return run_verify(va);
    if (simulate->parsed()) return run_simulate(sa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
