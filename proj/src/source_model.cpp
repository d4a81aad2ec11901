#include "dpsqkd/source_model.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsqkd {

void SourceStats::validate() const {
  if (!(q3 >= 0.0 && q3 <= q2 && q2 <= q1 && q1 <= 1.0)) {
    throw std::invalid_argument("SourceStats: require 0 <= q3 <= q2 <= q1 <= 1");
  }
  if (mu && !(*mu >= 0.0)) {
    throw std::invalid_argument("SourceStats: mu must be >= 0");
  }
}

void PhotonDistribution::validate() const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("PhotonDistribution: negative mass");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("PhotonDistribution: mass must sum to 1 within 1e-9");
  }
}

double poisson_tail(double mu, int n) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("poisson_tail: mu must be finite and >= 0");
  }
  if (n < 1 || n > 3) {
    throw std::domain_error("poisson_tail: n must be in {1,2,3}");
  }
  const double x = 3.0 * mu;

  // complement of the head sum; term recurrence avoids factorials
  double term = std::exp(-x);
  double head = term;
  for (int nu = 1; nu < n; ++nu) {
    term *= x / nu;
    head += term;
  }
  double tail = 1.0 - head;

  if (tail < 1e-8) {
    // cancellation regime (x is small here): sum the tail directly
    double t = std::exp(-x);
    for (int nu = 1; nu < n; ++nu) t *= x / nu;
    t *= x / n;  // t = e^-x x^n / n!
    double s = 0.0;
    for (int nu = n; nu < n + 50; ++nu) {
      s += t;
      t *= x / (nu + 1);
    }
    tail = s;
  }
  return tail;
}

SourceStats make_source_stats(double mu) {
  SourceStats s;
  s.q1 = poisson_tail(mu, 1);
  s.q2 = poisson_tail(mu, 2);
  s.q3 = poisson_tail(mu, 3);
  s.mu = mu;
  return s;
}

bool check_vacuum_equality(double p_vac_bit0, double p_vac_bit1, double tol) {
  if (!(p_vac_bit0 >= 0.0 && p_vac_bit0 <= 1.0) || !(p_vac_bit1 >= 0.0 && p_vac_bit1 <= 1.0)) {
    throw std::domain_error("check_vacuum_equality: probabilities must be in [0,1]");
  }
  if (!(tol >= 0.0)) {
    throw std::domain_error("check_vacuum_equality: tol must be >= 0");
  }
  return std::abs(p_vac_bit0 - p_vac_bit1) <= tol;
}

bool check_tail_bound(const PhotonDistribution& dist, const SourceStats& stats) {
  dist.validate();
  stats.validate();
  const double bounds[3] = {stats.q1, stats.q2, stats.q3};
  for (int n = 1; n <= 3; ++n) {
    double tail = 0.0;
    // accumulate from the top so tiny terms are not absorbed early
    for (int k = static_cast<int>(dist.probs.size()) - 1; k >= n; --k) {
      tail += dist.probs[static_cast<std::size_t>(k)];
    }
    if (tail > bounds[n - 1] + 1e-12) return false;
  }
  return true;
}

}  // namespace dpsqkd
