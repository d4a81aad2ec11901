#pragma once

#include <optional>

#include "dpsqkd/source_model.hpp"

namespace dpsqkd {

// Experimentally observed pair: detection rate per block and bit error rate.
struct Observables {
  double Q = 0.0;
  double e_bit = 0.0;
};

struct KeyRateResult {
  double R = 0.0;        // secret key rate per pulse, clamped at 0
  double e_ph_U = 0.0;   // phase-error-rate upper bound, deliberately unclamped
  double f_EC = 0.0;     // error-correction fraction actually used
  double Q = 0.0;
  std::optional<double> mu;
  bool rate_clamped = false;  // true when 1 - f_EC - h(e_ph_U) <= 0
};

// h(x) = -x log2 x - (1-x) log2(1-x) for 0 <= x <= 0.5, h(0) = 0 by
// continuity, and h(x) = 1 for x > 0.5. Throws std::domain_error for
// negative or non-finite x.
double binary_entropy(double x);

// The phase-error-bound constant, 3 + sqrt(5).
double lambda_const();

// e_ph^U = lambda * e_bit + (lambda * sqrt(q1 q3) + q2) / Q.
// The result may exceed 0.5 or 1; the piecewise entropy absorbs it.
// Throws std::domain_error when Q = 0 (no detections, bound undefined).
double phase_error_bound(const Observables& obs, const SourceStats& stats);

// R = max(0, Q [1 - f_EC - h(e_ph^U)] / 3). f_ec_override = nullopt selects
// the Shannon cost f_EC = h(e_bit).
KeyRateResult key_rate(const Observables& obs, const SourceStats& stats,
                       std::optional<double> f_ec_override = std::nullopt);

}  // namespace dpsqkd
