#include "dpsqkd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpsqkd {

void SimConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("SimConfig: eta must be in (0,1]");
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("SimConfig: mu must be finite and >= 0");
  }
  if (!(e_mis >= 0.0 && e_mis <= 0.5)) {
    throw std::invalid_argument("SimConfig: e_mis must be in [0, 0.5]");
  }
  if (n_blocks < 1) throw std::invalid_argument("SimConfig: n_blocks must be >= 1");
  if (!(t_code > 0.0 && t_code < 1.0)) {
    throw std::invalid_argument("SimConfig: t_code must be in (0,1)");
  }
}

SlotMeans slot_means(const std::array<int, 3>& bits, double eta, double mu) {
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("slot_means: bits must be 0/1");
  }
  const double amp = std::sqrt(eta * mu);
  const double alpha[3] = {bits[0] ? -amp : amp, bits[1] ? -amp : amp, bits[2] ? -amp : amp};

  SlotMeans m;
  for (int j = 0; j < 2; ++j) {  // interior slots 1..2
    const double sum = alpha[j] + alpha[j + 1];
    const double diff = alpha[j] - alpha[j + 1];
    m.interior[j][0] = sum * sum / 4.0;
    m.interior[j][1] = diff * diff / 4.0;
  }
  // half of pulse 1 and half of pulse 3 leave through the boundary slots
  m.boundary0 = eta * mu / 2.0;
  m.boundary3 = eta * mu / 2.0;
  return m;
}

BlockOutcome simulate_block(const std::array<int, 3>& bits, const SimConfig& cfg,
                            RandomStream& stream) {
  const SlotMeans means = slot_means(bits, cfg.eta, cfg.mu);

  BlockOutcome out;
  out.bits = bits;

  int counts[2][2];
  int total = 0;
  for (int j = 0; j < 2; ++j) {
    for (int port = 0; port < 2; ++port) {
      counts[j][port] = stream.next_poisson(means.interior[j][port]);
      total += counts[j][port];
    }
  }
  if (total != 1) return out;  // PNR rule: exactly one photon across slots 1..2

  out.detected = true;
  for (int j = 0; j < 2; ++j) {
    for (int port = 0; port < 2; ++port) {
      if (counts[j][port] == 1) {
        out.slot = j + 1;
        out.k_b = port;
      }
    }
  }
  if (cfg.e_mis > 0.0 && stream.next_bernoulli(cfg.e_mis)) out.k_b ^= 1;
  out.k_a = bits[out.slot - 1] ^ bits[out.slot];
  return out;
}

void SimTranscript::merge(const SimTranscript& other) {
  n_blocks += other.n_blocks;
  detected += other.detected;
  code_blocks += other.code_blocks;
  code_detected += other.code_detected;
  sample_detected += other.sample_detected;
  sample_bit_errors += other.sample_bit_errors;
  detected_bit_errors += other.detected_bit_errors;
  records.insert(records.end(), other.records.begin(), other.records.end());
}

SimTranscript run_simulation_range(const SimConfig& cfg, long first_block, long count,
                                   bool keep_records) {
  cfg.validate();
  if (first_block < 0 || count < 0) {
    throw std::invalid_argument("run_simulation_range: negative range");
  }
  SimTranscript t;
  t.n_blocks = count;
  if (keep_records) t.records.reserve(static_cast<std::size_t>(count));

  for (long b = first_block; b < first_block + count; ++b) {
    RandomStream stream(cfg.seed, static_cast<std::uint64_t>(b));
    const std::uint64_t word = stream.next_u64();
    const std::array<int, 3> bits = {static_cast<int>(word & 1),
                                     static_cast<int>((word >> 1) & 1),
                                     static_cast<int>((word >> 2) & 1)};
    BlockOutcome out = simulate_block(bits, cfg, stream);
    out.code = stream.next_bernoulli(cfg.t_code);

    if (out.code) ++t.code_blocks;
    if (out.detected) {
      ++t.detected;
      const bool error = out.k_a != out.k_b;
      if (error) ++t.detected_bit_errors;
      if (out.code) {
        ++t.code_detected;
      } else {
        ++t.sample_detected;
        if (error) ++t.sample_bit_errors;
      }
    }
    if (keep_records) t.records.push_back(out);
  }
  return t;
}

SimTranscript run_simulation(const SimConfig& cfg, bool keep_records) {
  return run_simulation_range(cfg, 0, cfg.n_blocks, keep_records);
}

AzumaReport azuma_concentration_test(const SimConfig& cfg, double zeta, int n_trials) {
  cfg.validate();
  if (!(zeta > 0.0)) throw std::invalid_argument("azuma_concentration_test: zeta must be > 0");
  if (n_trials < 1) throw std::invalid_argument("azuma_concentration_test: n_trials >= 1");

  // "bit" outcome = sampled pair that shows a bit error; assignment and
  // error injection are i.i.d., so the conditional per-round probability is
  // the constant (1 - t) e_mis and P^l = l p exactly.
  const double p_bit = (1.0 - cfg.t_code) * cfg.e_mis;

  int violations = 0;
  double bound_sum = 0.0;
  for (int trial = 0; trial < n_trials; ++trial) {
    SimConfig c = cfg;
    c.seed = mix64(cfg.seed + 0x51ed270b0a1c2ff5ULL * static_cast<std::uint64_t>(trial + 1));
    const SimTranscript t = run_simulation(c);
    const double n_det = static_cast<double>(t.detected);
    const double x = n_det * p_bit - static_cast<double>(t.sample_bit_errors);
    if (std::abs(x) > n_det * zeta) ++violations;
    bound_sum += std::min(1.0, 2.0 * std::exp(-n_det * zeta * zeta / 2.0));
  }

  AzumaReport r;
  r.n_trials = n_trials;
  r.zeta = zeta;
  r.empirical_violation_rate = static_cast<double>(violations) / n_trials;
  r.bound = bound_sum / n_trials;
  const double sigma = std::sqrt(std::max(r.bound * (1.0 - r.bound), 0.0) / n_trials);
  r.pass = r.empirical_violation_rate <= r.bound + 3.0 * sigma;
  return r;
}

ChernoffReport chernoff_tail_test(const SimConfig& cfg, int n_trials,
                                  std::optional<SourceStats> stats_override) {
  cfg.validate();
  if (n_trials < 1) throw std::invalid_argument("chernoff_tail_test: n_trials >= 1");
  const SourceStats stats = stats_override ? *stats_override : make_source_stats(cfg.mu);
  stats.validate();
  const double q[3] = {stats.q1, stats.q2, stats.q3};
  const double n_em = static_cast<double>(cfg.n_blocks);
  const double block_mean = 3.0 * cfg.mu;

  ChernoffReport r;
  r.n_trials = n_trials;
  for (int trial = 0; trial < n_trials; ++trial) {
    const std::uint64_t trial_seed =
        mix64(cfg.seed + 0x7b97f4a7c159e37bULL * static_cast<std::uint64_t>(trial + 1));
    long m[3] = {0, 0, 0};
    for (long b = 0; b < cfg.n_blocks; ++b) {
      RandomStream stream(trial_seed, static_cast<std::uint64_t>(b));
      const int photons = stream.next_poisson(block_mean);
      const bool code = stream.next_bernoulli(cfg.t_code);
      if (!code) continue;
      for (int n = 1; n <= 3; ++n) {
        if (photons >= n) ++m[n - 1];
      }
    }
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
      const double chi = 5.0 * std::sqrt(q[n - 1] / n_em);
      if (static_cast<double>(m[n - 1]) / n_em > q[n - 1] + chi) ok = false;
    }
    if (ok) ++r.trials_passed;
  }
  r.pass_fraction = static_cast<double>(r.trials_passed) / n_trials;
  r.pass = r.pass_fraction >= 0.99;
  return r;
}

KeyRateResult end_to_end_rate(const SimConfig& cfg) {
  const SimTranscript t = run_simulation(cfg);
  if (t.detected == 0) {
    throw std::domain_error("end_to_end_rate: no detections, key rate undefined");
  }
  if (!t.has_e_bit()) {
    throw std::domain_error("end_to_end_rate: no detected sample pairs, e_bit undefined");
  }
  const Observables obs{t.q_hat(), t.e_bit_hat()};
  return key_rate(obs, make_source_stats(cfg.mu));
}

}  // namespace dpsqkd
