#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpsqkd/rng.hpp"
#include "dpsqkd/security.hpp"
#include "dpsqkd/source_model.hpp"

namespace dpsqkd {

struct SimConfig {
  double eta = 1.0;       // overall channel transmission, (0, 1]
  double mu = 0.0;        // mean photon number per pulse, >= 0
  double e_mis = 0.0;     // misalignment bit-flip probability, [0, 0.5]
  long n_blocks = 1;      // emitted blocks, >= 1
  double t_code = 0.5;    // code-pair assignment probability, (0, 1)
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument on range violations
};

// Mean photon numbers per (time slot, output port) for one block.
// Interior slots 1..2 carry the interfering half-pulses; boundary slots 0
// and 3 are discarded by the detection rule and only tracked for photon
// bookkeeping (eta*mu/2 each, so interior + boundary = 3 eta mu).
struct SlotMeans {
  double interior[2][2] = {{0, 0}, {0, 0}};  // [slot-1][port]
  double boundary0 = 0.0;
  double boundary3 = 0.0;

  double interior_total() const {
    return interior[0][0] + interior[0][1] + interior[1][0] + interior[1][1];
  }
  double total() const { return interior_total() + boundary0 + boundary3; }
};

SlotMeans slot_means(const std::array<int, 3>& bits, double eta, double mu);

struct BlockOutcome {
  std::array<int, 3> bits = {0, 0, 0};
  bool detected = false;
  int slot = 0;   // 1..2, valid iff detected
  int k_a = 0;    // valid iff detected
  int k_b = 0;    // valid iff detected
  bool code = false;  // assignment, set by the runner
};

// One protocol round: independent Poisson counts per interior (slot, port);
// detected iff the interior total is exactly one photon. The struck port
// fixes the raw k_b (flipped with probability e_mis); k_a = b_j xor b_{j+1}.
BlockOutcome simulate_block(const std::array<int, 3>& bits, const SimConfig& cfg,
                            RandomStream& stream);

struct SimTranscript {
  long n_blocks = 0;
  long detected = 0;
  long code_blocks = 0;          // all blocks assigned to the code pool
  long code_detected = 0;
  long sample_detected = 0;
  long sample_bit_errors = 0;    // errors among detected sample pairs
  long detected_bit_errors = 0;  // errors among all detected blocks

  std::vector<BlockOutcome> records;  // populated only when recording

  double q_hat() const { return n_blocks ? static_cast<double>(detected) / n_blocks : 0.0; }
  bool has_e_bit() const { return sample_detected > 0; }
  double e_bit_hat() const { return static_cast<double>(sample_bit_errors) / sample_detected; }

  void merge(const SimTranscript& other);
};

// Blocks use counter-derived per-block streams, so the result is a pure
// function of (cfg, block index range) and shard boundaries cannot matter.
SimTranscript run_simulation_range(const SimConfig& cfg, long first_block, long count,
                                   bool keep_records = false);
SimTranscript run_simulation(const SimConfig& cfg, bool keep_records = false);

// Martingale concentration harness: per trial, the statistic
// X = N_det p - N_bit (p = (1-t) e_mis exactly, since assignment and error
// injection are i.i.d.) is checked against |X| > N_det zeta. pass iff the
// empirical violation rate stays within the exponential bound plus 3 sigma
// of sampling slack.
struct AzumaReport {
  double empirical_violation_rate = 0.0;
  double bound = 0.0;  // mean of min(1, 2 exp(-N_det zeta^2 / 2)) over trials
  double zeta = 0.0;
  int n_trials = 0;
  bool pass = false;
};
AzumaReport azuma_concentration_test(const SimConfig& cfg, double zeta, int n_trials);

// Per trial, resample each block's emitted photon number from Poisson(3 mu)
// and its code assignment; the code-block tail counts must obey
// M_{>=n}/N_em <= q_n + 5 sqrt(q_n / N_em) for n = 1..3.
struct ChernoffReport {
  int n_trials = 0;
  int trials_passed = 0;
  double pass_fraction = 0.0;
  bool pass = false;  // pass_fraction >= 0.99
};
ChernoffReport chernoff_tail_test(const SimConfig& cfg, int n_trials,
                                  std::optional<SourceStats> stats_override = std::nullopt);

// Monte Carlo transcript fed through the closed-form security pipeline.
// Throws std::domain_error when no detections (or no sampled pairs) exist.
KeyRateResult end_to_end_rate(const SimConfig& cfg);

}  // namespace dpsqkd
