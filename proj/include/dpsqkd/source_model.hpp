#pragma once

#include <optional>
#include <vector>

namespace dpsqkd {

// Characterized-source tail bounds: q_n bounds the probability that a
// three-pulse block contains n or more photons (n = 1..3). `mu` is present
// only when the bounds were generated from a Poissonian mean-photon-number
// model; directly measured bounds carry no mu.
struct SourceStats {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  std::optional<double> mu;

  // enforces 0 <= q3 <= q2 <= q1 <= 1
  void validate() const;
};

// Probability mass per total block photon number 0..n_max.
struct PhotonDistribution {
  std::vector<double> probs;

  // entries nonnegative, total mass within 1e-9 of 1
  void validate() const;
};

// Pr{Poisson(3 mu) >= n} for n in {1, 2, 3}. Computed as the complement of
// the partial sum with a multiplicative term recurrence; tiny tails are
// re-summed directly to dodge cancellation.
double poisson_tail(double mu, int n);

// Tail bounds for a Poissonian block with per-pulse mean photon number mu.
SourceStats make_source_stats(double mu);

// |p_vac_bit0 - p_vac_bit1| <= tol: checkable surrogate of the requirement
// that the vacuum emission probability not depend on the encoded bit.
bool check_vacuum_equality(double p_vac_bit0, double p_vac_bit1, double tol = 1e-9);

// True iff sum_{k>=n} dist.probs[k] <= stats.q_n + 1e-12 for n = 1..3.
bool check_tail_bound(const PhotonDistribution& dist, const SourceStats& stats);

}  // namespace dpsqkd
