#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dpsqkd/optimize.hpp"
#include "dpsqkd/rng.hpp"
#include "dpsqkd/security.hpp"

using dpsqkd::binary_entropy;
using dpsqkd::key_rate;
using dpsqkd::KeyRateResult;
using dpsqkd::lambda_const;
using dpsqkd::make_source_stats;
using dpsqkd::Observables;
using dpsqkd::phase_error_bound;
using dpsqkd::SourceStats;

TEST_CASE("binary_entropy piecewise definition") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  // frozen from direct high-precision evaluation
  CHECK(binary_entropy(0.11) == doctest::Approx(0.499915958164528).epsilon(1e-14));
  CHECK(binary_entropy(0.02) == doctest::Approx(0.14144054254182065).epsilon(1e-14));
  CHECK(binary_entropy(0.51) == 1.0);
  CHECK(binary_entropy(3.7) == 1.0);  // oversized bounds saturate
  CHECK_THROWS_AS(binary_entropy(-1e-12), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(INFINITY), std::domain_error);
}

TEST_CASE("binary_entropy is concave on [0, 0.5]") {
  dpsqkd::RandomStream stream(11, 0);
  for (int i = 0; i < 200; ++i) {
    const double x = 0.5 * stream.next_double();
    const double y = 0.5 * stream.next_double();
    const double mid = binary_entropy((x + y) / 2.0);
    CHECK(mid >= (binary_entropy(x) + binary_entropy(y)) / 2.0 - 1e-12);
  }
}

TEST_CASE("lambda constant and its algebraic identities") {
  const double lam = lambda_const();
  CHECK(lam == doctest::Approx(5.23606797749979).epsilon(1e-15));
  CHECK(std::abs(lam * lam - 6.0 * lam + 4.0) <= 1e-12);  // larger root of x^2-6x+4
  CHECK(std::abs(lam * (3.0 - std::sqrt(5.0)) / 2.0 - 2.0) <= 1e-12);
}

TEST_CASE("phase_error_bound closed form") {
  CHECK(phase_error_bound(Observables{0.1, 0.0}, SourceStats{0, 0, 0, {}}) == 0.0);

  // frozen: lambda*0.02 + (lambda*sqrt(q1 q3) + q2)/0.013805 with q from mu=7e-3
  const double bound = phase_error_bound(Observables{0.013805, 0.02}, make_source_stats(0.007));
  CHECK(bound == doctest::Approx(0.18786849440612934).epsilon(1e-12));

  // saturation path: bound may exceed 0.5/1, entropy handles it downstream
  const double sat = phase_error_bound(Observables{1e-6, 0.0}, SourceStats{1e-3, 1e-6, 1e-9, {}});
  CHECK(sat == doctest::Approx(6.2360679774997896).epsilon(1e-12));
  CHECK(binary_entropy(sat) == 1.0);

  CHECK_THROWS_AS(phase_error_bound(Observables{0.0, 0.0}, SourceStats{0, 0, 0, {}}),
                  std::domain_error);
  CHECK_THROWS_AS(phase_error_bound(Observables{0.5, 1.5}, SourceStats{0, 0, 0, {}}),
                  std::domain_error);
}

TEST_CASE("key_rate basics") {
  CHECK_THROWS_AS(key_rate(Observables{0.0, 0.0}, SourceStats{0, 0, 0, {}}), std::domain_error);

  const KeyRateResult perfect = key_rate(Observables{0.1, 0.0}, SourceStats{0, 0, 0, {}}, 0.0);
  CHECK(perfect.R == doctest::Approx(0.1 / 3.0).epsilon(1e-15));
  CHECK_FALSE(perfect.rate_clamped);

  // closed-form pipeline value at eta=1, mu=7e-3, ebit=0.02 (mid Fig-2 slice)
  const double q = dpsqkd::detection_rate(1.0, 0.007);
  CHECK(q == doctest::Approx(0.013805365619680067).epsilon(1e-14));
  const KeyRateResult r = key_rate(Observables{q, 0.02}, make_source_stats(0.007));
  CHECK(r.R == doctest::Approx(7.4352454596222815e-4).epsilon(1e-11));
  CHECK(r.e_ph_U == doctest::Approx(0.18786629234718486).epsilon(1e-12));
  CHECK(r.f_EC == doctest::Approx(binary_entropy(0.02)).epsilon(1e-15));
  CHECK(r.mu.has_value());

  // fixed f_EC override
  const KeyRateResult r2 = key_rate(Observables{q, 0.02}, make_source_stats(0.007),
                                    1.16 * binary_entropy(0.02));
  CHECK(r2.R < r.R);
  CHECK(r2.f_EC == doctest::Approx(1.16 * binary_entropy(0.02)));
}

TEST_CASE("key_rate invariants") {
  const double lam = lambda_const();
  dpsqkd::RandomStream stream(99, 0);
  for (int i = 0; i < 200; ++i) {
    const double q = 1e-4 + stream.next_double() * 0.3;
    const double ebit = 0.25 * stream.next_double();
    const double mu = 0.05 * stream.next_double();
    const SourceStats stats = make_source_stats(mu);
    const KeyRateResult r = key_rate(Observables{q, ebit}, stats);
    CHECK(r.R >= 0.0);
    CHECK(r.R <= q / 3.0 + 1e-15);
    CHECK(r.e_ph_U >= lam * ebit - 1e-15);
    if (r.rate_clamped) {
      CHECK(1.0 - r.f_EC - binary_entropy(r.e_ph_U) <= 0.0);
      CHECK(r.R == 0.0);
    }
  }
}

TEST_CASE("key_rate monotone degradation") {
  const Observables base{0.0138, 0.02};
  const SourceStats stats = make_source_stats(0.007);
  const double r0 = key_rate(base, stats).R;

  // non-increasing in e_bit
  CHECK(key_rate(Observables{base.Q, 0.03}, stats).R <= r0);
  // non-increasing in each q_n
  SourceStats worse = stats;
  worse.q1 *= 1.5;
  CHECK(key_rate(base, worse).R <= r0);
  worse = stats;
  worse.q2 *= 1.5;
  CHECK(key_rate(base, worse).R <= r0);
  worse = stats;
  worse.q3 *= 1.5;
  CHECK(key_rate(base, worse).R <= r0);

  // phase_error_bound strictly increasing in each q_n when others positive
  const double b0 = phase_error_bound(base, stats);
  worse = stats;
  worse.q1 *= 1.01;
  CHECK(phase_error_bound(base, worse) > b0);
  worse = stats;
  worse.q2 *= 1.01;
  CHECK(phase_error_bound(base, worse) > b0);
  worse = stats;
  worse.q3 *= 1.01;
  CHECK(phase_error_bound(base, worse) > b0);
}

TEST_CASE("eta^2 scaling law with mu proportional to eta") {
  // with mu = c eta in the coherent model, e_ph^U is eta-invariant and
  // R / eta^2 stays constant to within 1% across eta in [1e-2, 1];
  // c is kept small so the exp(-2 eta mu) correction stays inside the budget
  const double c = 0.002;
  double e_ph_ref = 0.0;
  double ratio_ref = 0.0;
  bool first = true;
  for (double eta = 1e-2; eta <= 1.0 + 1e-12; eta *= std::sqrt(10.0)) {
    const double mu = c * eta;
    const Observables obs{dpsqkd::detection_rate(eta, mu), 0.02};
    const KeyRateResult r = key_rate(obs, make_source_stats(mu));
    const double ratio = r.R / (eta * eta);
    if (first) {
      e_ph_ref = r.e_ph_U;
      ratio_ref = ratio;
      first = false;
    } else {
      CHECK(r.e_ph_U == doctest::Approx(e_ph_ref).epsilon(0.02));
      CHECK(ratio == doctest::Approx(ratio_ref).epsilon(0.01));
    }
  }
}
