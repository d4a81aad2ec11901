#include "dpsqkd/lemma_checks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpsqkd {

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

namespace {

// Cached operator set; construction is deterministic and cheap but the
// randomized suites evaluate traces against these thousands of times.
struct OperatorSet {
  ComplexMatrix e_bit = bit_error_op();
  ComplexMatrix e_ph = phase_error_op();
  ComplexMatrix p[4] = {weight_projector(0), weight_projector(1), weight_projector(2),
                        weight_projector(3)};
  ComplexMatrix p1_ebit_p1 = p[1] * e_bit * p[1];
  ComplexMatrix p1_eph_p1 = p[1] * e_ph * p[1];
};

const OperatorSet& operators() {
  static const OperatorSet set;
  return set;
}

}  // namespace

Lemma1Report verify_lemma1(double tolerance, double lambda) {
  const OperatorSet& op = operators();
  Lemma1Report r;
  r.tolerance = tolerance;
  r.min_eigenvalue = min_eigenvalue(lambda * op.p1_ebit_p1 - op.p1_eph_p1);
  r.tightness_min_eigenvalue =
      min_eigenvalue(lambda * (1.0 - 1e-3) * op.p1_ebit_p1 - op.p1_eph_p1);
  r.pass = r.min_eigenvalue >= -tolerance;
  r.tightness_pass = r.tightness_min_eigenvalue < -1e-6;
  return r;
}

Spectrum2x2Report verify_appendix_2x2(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("verify_appendix_2x2: lambda must be > 0");
  Eigen::Matrix2d m;
  const double c = 1.0 / std::sqrt(2.0);
  m << 1.0 - 2.0 / lambda, -c, -c, 1.0 - 1.0 / lambda;
  Spectrum2x2Report r;
  r.determinant = m.determinant();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

SampledInequalityReport verify_lemma2_random(int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::domain_error("verify_lemma2_random: n_samples >= 1");
  const OperatorSet& op = operators();
  SampledInequalityReport r;
  r.n_samples = n_samples;
  r.seed = seed;
  r.slack = 1e-10;
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    const ComplexMatrix sigma = random_density_matrix(kDim, stream);
    const double lhs = trace_product(op.p1_ebit_p1, sigma);
    const double rhs = trace_product(op.e_bit, sigma) +
                       std::sqrt(trace_product(op.p[1], sigma) * trace_product(op.p[3], sigma));
    r.max_violation = std::max(r.max_violation, lhs - rhs);
  }
  r.pass = r.max_violation <= r.slack;
  return r;
}

SampledInequalityReport verify_theorem_chain_random(int n_samples, std::uint64_t seed,
                                                    double lambda) {
  if (n_samples < 1) throw std::domain_error("verify_theorem_chain_random: n_samples >= 1");
  const OperatorSet& op = operators();
  SampledInequalityReport r;
  r.n_samples = n_samples;
  r.seed = seed;
  r.slack = 1e-10;
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    const ComplexMatrix sigma = random_density_matrix(kDim, stream);
    const double lhs = trace_product(op.e_ph, sigma);
    const double rhs =
        lambda * (trace_product(op.e_bit, sigma) +
                  std::sqrt(trace_product(op.p[1], sigma) * trace_product(op.p[3], sigma))) +
        trace_product(op.p[2], sigma) + trace_product(op.p[3], sigma);
    r.max_violation = std::max(r.max_violation, lhs - rhs);
  }
  r.pass = r.max_violation <= r.slack;
  return r;
}

OperatorNormReport verify_operator_norm_T() {
  const OperatorSet& op = operators();
  const ComplexMatrix t = 2.0 * op.p[1] * op.e_bit * op.p[3];

  // expected T^dag T = |111><111| (x) [(Pi11-Pi10)^2 + (Pi21-Pi20)^2]
  ComplexMatrix p111 = ComplexMatrix::Zero(kDimA, kDimA);
  p111(7, 7) = 1.0;
  const ComplexMatrix d1 = detection_povm(1, 1) - detection_povm(1, 0);
  const ComplexMatrix d2 = detection_povm(2, 1) - detection_povm(2, 0);
  const ComplexMatrix expected = kronecker(p111, d1 * d1 + d2 * d2);

  OperatorNormReport r;
  r.op_norm = operator_norm(t);
  r.structure_error = max_abs_entry(t.adjoint() * t - expected);
  r.trace_abs = std::abs(t.trace());
  r.pass = r.op_norm <= 1.0 + 1e-12 && r.structure_error <= 1e-13;
  return r;
}

namespace {

CheckResult scalar_check(std::string name, std::string key, double value, double tol,
                         bool pass) {
  CheckResult c;
  c.name = std::move(name);
  c.measured[std::move(key)] = value;
  c.tolerance = tol;
  c.pass = pass;
  return c;
}

}  // namespace

std::vector<CheckResult> structural_checks() {
  const OperatorSet& op = operators();
  std::vector<CheckResult> out;

  ComplexMatrix povm_sum = ComplexMatrix::Zero(kDimB, kDimB);
  double povm_min_eig = 0.0;
  double povm_herm = 0.0;
  for (int j = 1; j <= 2; ++j) {
    for (int k = 0; k <= 1; ++k) {
      const ComplexMatrix pi = detection_povm(j, k);
      povm_sum += pi;
      povm_min_eig = std::min(povm_min_eig, min_eigenvalue(pi));
      povm_herm = std::max(povm_herm, max_abs_entry(pi - pi.adjoint()));
    }
  }
  {
    const double err = max_abs_entry(povm_sum - ComplexMatrix::Identity(kDimB, kDimB));
    out.push_back(scalar_check("detection_povm_completeness", "max_abs_error", err, 1e-14,
                               err <= 1e-14));
    out.push_back(scalar_check("detection_povm_psd", "min_eigenvalue", povm_min_eig, 1e-12,
                               povm_min_eig >= -1e-12));
    out.push_back(scalar_check("detection_povm_hermitian", "max_abs_error", povm_herm, 1e-13,
                               povm_herm <= 1e-13));
  }
  {
    ComplexMatrix sum = ComplexMatrix::Zero(kDim, kDim);
    for (int a = 0; a <= 3; ++a) sum += op.p[a];
    const double err = max_abs_entry(sum - ComplexMatrix::Identity(kDim, kDim));
    out.push_back(
        scalar_check("weight_projector_completeness", "max_abs_error", err, 1e-14, err <= 1e-14));
    const double rank = op.p[1].trace().real();
    out.push_back(scalar_check("weight1_projector_rank", "rank", rank, 0.0,
                               std::abs(rank - 9.0) < 0.5));
    const double parity_err = max_abs_entry(parity_projector(true) + parity_projector(false) -
                                            ComplexMatrix::Identity(kDim, kDim));
    out.push_back(scalar_check("parity_partition", "max_abs_error", parity_err, 1e-14,
                               parity_err <= 1e-14));
  }
  {
    const double herm = max_abs_entry(op.e_bit - op.e_bit.adjoint());
    out.push_back(
        scalar_check("bit_error_hermitian", "max_abs_error", herm, 1e-13, herm <= 1e-13));
    const double mn = min_eigenvalue(op.e_bit);
    out.push_back(scalar_check("bit_error_psd", "min_eigenvalue", mn, 1e-12, mn >= -1e-12));
    const double mx = max_eigenvalue(op.e_bit);
    out.push_back(scalar_check("bit_error_bounded_by_two_slots", "max_eigenvalue", mx, 1e-12,
                               mx <= 2.0 + 1e-12));
    const ComplexMatrix even = parity_projector(true);
    const ComplexMatrix odd = parity_projector(false);
    const double parity_err =
        max_abs_entry(op.e_bit - (even * op.e_bit * even + odd * op.e_bit * odd));
    out.push_back(scalar_check("bit_error_parity_decomposition", "max_abs_error", parity_err,
                               1e-13, parity_err <= 1e-13));
    const double cross = max_abs_entry(even * op.e_bit * odd);
    out.push_back(scalar_check("bit_error_no_parity_cross_terms", "max_abs_error", cross, 1e-13,
                               cross <= 1e-13));
  }
  {
    ComplexMatrix offdiag = op.e_ph;
    offdiag.diagonal().setZero();
    const double od = max_abs_entry(offdiag);
    out.push_back(
        scalar_check("phase_error_diagonal", "max_abs_error", od, 1e-15, od <= 1e-15));
    ComplexMatrix block = ComplexMatrix::Zero(kDim, kDim);
    for (int a = 0; a <= 3; ++a) block += op.p[a] * op.e_ph * op.p[a];
    const double block_err = max_abs_entry(op.e_ph - block);
    out.push_back(scalar_check("phase_error_weight_block_diagonal", "max_abs_error", block_err,
                               1e-13, block_err <= 1e-13));
    const double p0 = max_abs_entry(op.p[0] * op.e_ph * op.p[0]);
    out.push_back(
        scalar_check("phase_error_weight0_block_zero", "max_abs_error", p0, 1e-13, p0 <= 1e-13));
    double comm = 0.0;
    for (int a = 0; a <= 3; ++a) {
      comm = std::max(comm, max_abs_entry(op.e_ph * op.p[a] - op.p[a] * op.e_ph));
    }
    out.push_back(scalar_check("phase_error_commutes_with_weight_projectors", "max_abs_error",
                               comm, 1e-13, comm <= 1e-13));
    const double mn = min_eigenvalue(op.e_ph);
    out.push_back(scalar_check("phase_error_psd", "min_eigenvalue", mn, 1e-12, mn >= -1e-12));
  }
  return out;
}

VerificationReport run_verification_suite(const std::string& suite, int n_samples,
                                          std::uint64_t seed, double lambda) {
  if (suite != "lemmas" && suite != "all") {
    throw std::invalid_argument("run_verification_suite: suite must be 'lemmas' or 'all'");
  }
  VerificationReport report;

  {
    const Lemma1Report l1 = verify_lemma1(1e-10, lambda);
    CheckResult main = scalar_check("lemma1_operator_inequality", "min_eigenvalue",
                                    l1.min_eigenvalue, 1e-10, l1.pass);
    main.measured["lambda"] = lambda;
    report.checks.push_back(std::move(main));
    report.checks.push_back(scalar_check("lemma1_tightness", "min_eigenvalue",
                                         l1.tightness_min_eigenvalue, 1e-6, l1.tightness_pass));
  }
  {
    const Spectrum2x2Report at = verify_appendix_2x2(lambda);
    CheckResult c;
    c.name = "appendix_2x2_critical_point";
    c.measured["determinant"] = at.determinant;
    c.measured["min_eigenvalue"] = at.min_eigenvalue;
    c.tolerance = 1e-12;
    c.pass = std::abs(at.determinant) <= 1e-12 && std::abs(at.min_eigenvalue) <= 1e-12;
    report.checks.push_back(std::move(c));

    const Spectrum2x2Report lo = verify_appendix_2x2(4.0);
    report.checks.push_back(scalar_check("appendix_2x2_negative_below", "min_eigenvalue",
                                         lo.min_eigenvalue, 0.0, lo.min_eigenvalue < 0.0));
    const Spectrum2x2Report hi = verify_appendix_2x2(6.0);
    report.checks.push_back(scalar_check("appendix_2x2_positive_above", "min_eigenvalue",
                                         hi.min_eigenvalue, 0.0, hi.min_eigenvalue > 0.0));
  }
  {
    const SampledInequalityReport l2 = verify_lemma2_random(n_samples, seed);
    CheckResult c = scalar_check("lemma2_random_states", "max_violation", l2.max_violation,
                                 l2.slack, l2.pass);
    c.measured["samples"] = static_cast<double>(l2.n_samples);
    report.checks.push_back(std::move(c));
  }
  {
    const OperatorNormReport t = verify_operator_norm_T();
    CheckResult c;
    c.name = "cross_term_operator_norm";
    c.measured["operator_norm"] = t.op_norm;
    c.measured["structure_max_abs_error"] = t.structure_error;
    c.measured["trace_abs"] = t.trace_abs;
    c.tolerance = 1e-12;
    c.pass = t.pass;
    report.checks.push_back(std::move(c));
  }
  {
    const SampledInequalityReport chain = verify_theorem_chain_random(n_samples, seed, lambda);
    CheckResult c = scalar_check("phase_error_chain_random_states", "max_violation",
                                 chain.max_violation, chain.slack, chain.pass);
    c.measured["samples"] = static_cast<double>(chain.n_samples);
    report.checks.push_back(std::move(c));
  }
  if (suite == "all") {
    std::vector<CheckResult> structural = structural_checks();
    report.checks.insert(report.checks.end(), structural.begin(), structural.end());
  }
  return report;
}

}  // namespace dpsqkd
