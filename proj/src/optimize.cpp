#include "dpsqkd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace dpsqkd {

double detection_rate(double eta, double mu) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("detection_rate: eta must be in (0,1]");
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("detection_rate: mu must be finite and >= 0");
  }
  const double x = 2.0 * eta * mu;
  return x * std::exp(-x);
}

double eta_from_distance(double length_km) {
  if (!(length_km >= 0.0)) throw std::domain_error("eta_from_distance: length must be >= 0");
  return 0.1 * std::pow(10.0, -0.2 * length_km / 10.0);
}

namespace {

double rate_at(double eta, double mu, double e_bit) {
  const Observables obs{detection_rate(eta, mu), e_bit};
  if (obs.Q == 0.0) return 0.0;
  return key_rate(obs, make_source_stats(mu)).R;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw std::domain_error("log_grid: need 0 < lo <= hi");
  if (n < 1) throw std::domain_error("log_grid: n must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid.push_back(lo * std::exp(step * i));
  grid.back() = hi;  // exact endpoint
  return grid;
}

OptimizeResult optimize_mu(double eta, double e_bit, MuBracket bracket, double rel_tol) {
  if (!(bracket.lo > 0.0 && bracket.hi > bracket.lo)) {
    throw std::domain_error("optimize_mu: bad bracket");
  }
  if (!(rel_tol > 0.0)) throw std::domain_error("optimize_mu: rel_tol must be > 0");

  constexpr int kCoarsePoints = 64;
  const std::vector<double> grid = log_grid(bracket.lo, bracket.hi, kCoarsePoints);

  int best = 0;
  double best_rate = -1.0;
  for (int i = 0; i < kCoarsePoints; ++i) {
    const double r = rate_at(eta, grid[static_cast<std::size_t>(i)], e_bit);
    if (r > best_rate) {
      best_rate = r;
      best = i;
    }
  }

  OptimizeResult out;
  if (best_rate <= 0.0) {
    // no positive rate anywhere in the bracket
    out.mu_opt = grid[static_cast<std::size_t>(best)];
    out.result = key_rate(Observables{detection_rate(eta, out.mu_opt), e_bit},
                          make_source_stats(out.mu_opt));
    out.positive = false;
    return out;
  }

  // golden-section refinement in log mu between the bracketing neighbors
  double a = std::log(grid[static_cast<std::size_t>(std::max(best - 1, 0))]);
  double b = std::log(grid[static_cast<std::size_t>(std::min(best + 1, kCoarsePoints - 1))]);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double stop = std::log1p(rel_tol);
  double c = b - (b - a) * invphi;
  double d = a + (b - a) * invphi;
  double fc = rate_at(eta, std::exp(c), e_bit);
  double fd = rate_at(eta, std::exp(d), e_bit);
  while (b - a > stop) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * invphi;
      fc = rate_at(eta, std::exp(c), e_bit);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * invphi;
      fd = rate_at(eta, std::exp(d), e_bit);
    }
  }
  out.mu_opt = std::exp((a + b) / 2.0);
  out.result = key_rate(Observables{detection_rate(eta, out.mu_opt), e_bit},
                        make_source_stats(out.mu_opt));
  out.positive = out.result.R > 0.0;
  return out;
}

std::vector<CurvePoint> keyrate_curve(const std::vector<double>& eta_grid, double e_bit,
                                      double rep_rate_hz) {
  if (!(rep_rate_hz > 0.0)) throw std::domain_error("keyrate_curve: rep rate must be > 0");
  std::vector<CurvePoint> points;
  points.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    const OptimizeResult opt = optimize_mu(eta, e_bit);
    CurvePoint p;
    p.eta = eta;
    p.mu_opt = opt.mu_opt;
    p.Q = opt.result.Q;
    p.e_ph_U = opt.result.e_ph_U;
    p.R_per_pulse = opt.result.R;
    p.R_bps = opt.result.R * rep_rate_hz;
    p.positive = opt.positive;
    points.push_back(p);
  }
  return points;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "eta,mu_opt,Q,e_ph_U,R_per_pulse,R_bps\n";
  char buf[160];
  for (const CurvePoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", p.eta, p.mu_opt, p.Q,
                  p.e_ph_U, p.R_per_pulse, p.R_bps);
    out << buf;
  }
}

}  // namespace dpsqkd
