#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dpsqkd/rng.hpp"
#include "dpsqkd/source_model.hpp"

using dpsqkd::check_tail_bound;
using dpsqkd::check_vacuum_equality;
using dpsqkd::make_source_stats;
using dpsqkd::PhotonDistribution;
using dpsqkd::poisson_tail;
using dpsqkd::SourceStats;

namespace {

// Independent oracle: brute-force series summation of Pr{Poisson(3mu) >= n}
// with n_max = 200 terms. Stays independent of the implementation path.
double oracle_tail(double mu, int n, int n_max = 200) {
  const double x = 3.0 * mu;
  long double term = std::exp(static_cast<long double>(-x));
  long double sum = 0.0L;
  for (int nu = 0; nu <= n_max; ++nu) {
    if (nu >= n) sum += term;
    term *= x / (nu + 1);
  }
  return static_cast<double>(sum);
}

PhotonDistribution truncated_poisson(double mean, int n_max) {
  PhotonDistribution d;
  double term = std::exp(-mean);
  for (int k = 0; k <= n_max; ++k) {
    d.probs.push_back(term);
    term *= mean / (k + 1);
  }
  return d;
}

}  // namespace

TEST_CASE("poisson_tail frozen oracle values") {
  CHECK(poisson_tail(0.0, 1) == 0.0);
  CHECK(poisson_tail(0.0, 2) == 0.0);
  CHECK(poisson_tail(0.0, 3) == 0.0);
  // values frozen from the series oracle
  CHECK(poisson_tail(0.1, 1) == doctest::Approx(0.25918177931828215).epsilon(1e-14));
  CHECK(poisson_tail(0.1, 2) == doctest::Approx(0.036936313113766778).epsilon(1e-14));
  CHECK(poisson_tail(0.1, 3) == doctest::Approx(0.0035994931830894707).epsilon(1e-14));
  CHECK(poisson_tail(0.007, 3) == doctest::Approx(1.5193928941946194e-6).epsilon(1e-10));
}

TEST_CASE("poisson_tail domain errors") {
  CHECK_THROWS_AS(poisson_tail(-1e-9, 1), std::domain_error);
  CHECK_THROWS_AS(poisson_tail(0.1, 0), std::domain_error);
  CHECK_THROWS_AS(poisson_tail(0.1, 4), std::domain_error);
  CHECK_THROWS_AS(poisson_tail(std::nan(""), 1), std::domain_error);
}

TEST_CASE("poisson_tail matches the series oracle on random mu") {
  dpsqkd::RandomStream stream(20240817, 0);
  for (int i = 0; i < 100; ++i) {
    const double mu = stream.next_double();  // [0, 1)
    for (int n = 1; n <= 3; ++n) {
      CHECK(std::abs(poisson_tail(mu, n) - oracle_tail(mu, n)) <= 1e-12);
    }
  }
  // tiny-mu regime exercises the direct-summation fallback
  for (double mu : {1e-12, 1e-9, 1e-6, 1e-4}) {
    for (int n = 1; n <= 3; ++n) {
      const double got = poisson_tail(mu, n);
      const double want = oracle_tail(mu, n);
      CHECK(std::abs(got - want) <= 1e-12);
      if (want > 0) CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("poisson_tail monotone in mu and nested in n") {
  dpsqkd::RandomStream stream(7, 1);
  for (int i = 0; i < 50; ++i) {
    const double mu = 1e-6 + stream.next_double();
    const double mu2 = mu * (1.0 + 0.5 * stream.next_double()) + 1e-9;
    for (int n = 1; n <= 3; ++n) {
      CHECK(poisson_tail(mu2, n) > poisson_tail(mu, n));
    }
    CHECK(poisson_tail(mu, 1) >= poisson_tail(mu, 2));
    CHECK(poisson_tail(mu, 2) >= poisson_tail(mu, 3));
  }
}

TEST_CASE("make_source_stats") {
  const SourceStats zero = make_source_stats(0.0);
  CHECK(zero.q1 == 0.0);
  CHECK(zero.q2 == 0.0);
  CHECK(zero.q3 == 0.0);
  CHECK(zero.mu.has_value());

  const SourceStats s = make_source_stats(0.007);
  CHECK(s.q1 == doctest::Approx(0.020781035430540412).epsilon(1e-13));
  CHECK(s.q2 == doctest::Approx(0.00021743717458176047).epsilon(1e-12));
  CHECK(s.q3 == doctest::Approx(1.5193928941946194e-6).epsilon(1e-10));
  CHECK(*s.mu == 0.007);
  s.validate();

  const SourceStats t = make_source_stats(0.1);
  CHECK(t.q1 == doctest::Approx(0.259181779318282).epsilon(1e-13));
  CHECK(t.q2 == doctest::Approx(0.036936313113767).epsilon(1e-13));
  CHECK(t.q3 == doctest::Approx(0.003599493183089).epsilon(1e-12));

  CHECK_THROWS_AS(make_source_stats(-0.1), std::domain_error);
}

TEST_CASE("check_vacuum_equality") {
  CHECK(check_vacuum_equality(0.99, 0.99, 1e-12));
  const double p = std::exp(-0.007);
  CHECK(check_vacuum_equality(p, p, 1e-12));
  CHECK_FALSE(check_vacuum_equality(0.99, 0.95, 1e-12));
  CHECK(check_vacuum_equality(0.5, 0.5 + 1e-10));  // default tol 1e-9
  CHECK_THROWS_AS(check_vacuum_equality(-0.1, 0.5, 1e-12), std::domain_error);
  CHECK_THROWS_AS(check_vacuum_equality(0.1, 1.5, 1e-12), std::domain_error);
  CHECK_THROWS_AS(check_vacuum_equality(0.1, 0.1, -1.0), std::domain_error);
}

TEST_CASE("check_tail_bound") {
  PhotonDistribution vacuum;
  vacuum.probs = {1.0};
  CHECK(check_tail_bound(vacuum, SourceStats{0.0, 0.0, 0.0, {}}));
  CHECK(check_tail_bound(vacuum, SourceStats{0.5, 0.1, 0.1, {}}));

  // truncated Poisson block distribution against its own generated bounds
  const double mu = 0.1;
  CHECK(check_tail_bound(truncated_poisson(3.0 * mu, 60), make_source_stats(mu)));

  PhotonDistribution two_photons;
  two_photons.probs = {0.0, 0.0, 1.0};
  CHECK_FALSE(check_tail_bound(two_photons, SourceStats{0.5, 0.1, 0.1, {}}));
  CHECK(check_tail_bound(two_photons, SourceStats{1.0, 1.0, 0.0, {}}));

  PhotonDistribution bad;
  bad.probs = {0.5, 0.4};  // mass 0.9
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PhotonDistribution negative;
  negative.probs = {1.1, -0.1};
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("SourceStats validation") {
  CHECK_THROWS_AS((SourceStats{0.1, 0.2, 0.05, {}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SourceStats{1.2, 0.2, 0.05, {}}).validate(), std::invalid_argument);
  (SourceStats{0.3, 0.2, 0.05, {}}).validate();
}
