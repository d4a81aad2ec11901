#pragma once

#include <iosfwd>
#include <vector>

#include "dpsqkd/security.hpp"

namespace dpsqkd {

// Coherent-model detection rate Q = 2 eta mu exp(-2 eta mu).
double detection_rate(double eta, double mu);

// Overall channel transmission for a fiber span: 0.2 dB/km plus 10 dB of
// fixed loss, eta = 0.1 * 10^(-0.2 l / 10).
double eta_from_distance(double length_km);

struct MuBracket {
  double lo = 1e-8;
  double hi = 1e-1;
};

struct OptimizeResult {
  double mu_opt = 0.0;
  KeyRateResult result;
  bool positive = false;  // false when R <= 0 across the whole bracket
};

// Maximizes the Poisson-model key rate over mu: 64-point log-spaced coarse
// grid, then golden-section refinement in log mu between the bracketing
// neighbors. rel_tol is the relative stopping width on mu.
OptimizeResult optimize_mu(double eta, double e_bit, MuBracket bracket = {},
                           double rel_tol = 1e-4);

struct CurvePoint {
  double eta = 0.0;
  double mu_opt = 0.0;
  double Q = 0.0;
  double e_ph_U = 0.0;
  double R_per_pulse = 0.0;
  double R_bps = 0.0;
  bool positive = false;
};

// n log-spaced values in [lo, hi] (n = 1 collapses to lo).
std::vector<double> log_grid(double lo, double hi, int n);

std::vector<CurvePoint> keyrate_curve(const std::vector<double>& eta_grid, double e_bit,
                                      double rep_rate_hz);

// CSV schema: header row `eta,mu_opt,Q,e_ph_U,R_per_pulse,R_bps`, values
// rendered with 9 significant digits.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);

}  // namespace dpsqkd
