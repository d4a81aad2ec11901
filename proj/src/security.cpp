#include "dpsqkd/security.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsqkd {

double binary_entropy(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("binary_entropy: x must be finite and >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x > 0.5) return 1.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double lambda_const() { return 3.0 + std::sqrt(5.0); }

namespace {

void validate_observables(const Observables& obs) {
  if (!(obs.Q >= 0.0 && obs.Q <= 1.0) || !std::isfinite(obs.Q)) {
    throw std::domain_error("Observables: Q must be in [0,1]");
  }
  if (!(obs.e_bit >= 0.0 && obs.e_bit <= 1.0)) {
    throw std::domain_error("Observables: e_bit must be in [0,1]");
  }
}

}  // namespace

double phase_error_bound(const Observables& obs, const SourceStats& stats) {
  validate_observables(obs);
  stats.validate();
  if (obs.Q == 0.0) {
    throw std::domain_error("phase_error_bound: Q = 0, bound undefined (no detections)");
  }
  const double lam = lambda_const();
  return lam * obs.e_bit + (lam * std::sqrt(stats.q1 * stats.q3) + stats.q2) / obs.Q;
}

KeyRateResult key_rate(const Observables& obs, const SourceStats& stats,
                       std::optional<double> f_ec_override) {
  const double e_ph = phase_error_bound(obs, stats);
  const double f_ec = f_ec_override ? *f_ec_override : binary_entropy(obs.e_bit);

  KeyRateResult r;
  r.e_ph_U = e_ph;
  r.f_EC = f_ec;
  r.Q = obs.Q;
  r.mu = stats.mu;

  const double bracket = 1.0 - f_ec - binary_entropy(e_ph);
  if (bracket <= 0.0) {
    r.R = 0.0;
    r.rate_clamped = true;
  } else {
    r.R = obs.Q * bracket / 3.0;
  }
  return r;
}

}  // namespace dpsqkd
