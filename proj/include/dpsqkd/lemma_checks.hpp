#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpsqkd/operators.hpp"
#include "dpsqkd/security.hpp"

namespace dpsqkd {

// One verification entry: named measured quantities, the tolerance the
// pass/fail decision used, and the verdict.
struct CheckResult {
  std::string name;
  std::map<std::string, double> measured;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Certificate for the operator inequality
//   lambda P1 e_bit P1 - P1 e_ph P1 >= 0.
// pass iff the minimum eigenvalue is >= -tolerance. The report also carries
// the tightness probe: at lambda (1 - 1e-3) the minimum eigenvalue must drop
// below -1e-6, otherwise the constant would not be sharp.
struct Lemma1Report {
  double min_eigenvalue = 0.0;
  double tightness_min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool pass = false;            // main inequality only
  bool tightness_pass = false;  // tightness probe
};
Lemma1Report verify_lemma1(double tolerance = 1e-10, double lambda = lambda_const());

// Spectrum of the 2x2 matrix [[1-2/L, -1/sqrt(2)], [-1/sqrt(2), 1-1/L]].
// At L = 3+sqrt(5) both the determinant and the smallest eigenvalue vanish.
struct Spectrum2x2Report {
  double determinant = 0.0;
  double min_eigenvalue = 0.0;
};
Spectrum2x2Report verify_appendix_2x2(double lambda);

// Randomized inequality certificates over Ginibre density matrices.
// max_violation is max(LHS - RHS); pass iff it stays <= slack (1e-10).
struct SampledInequalityReport {
  double max_violation = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
  double slack = 0.0;
  bool pass = false;
};

// tr(P1 e_bit P1 s) <= tr(e_bit s) + sqrt(tr(s P1) tr(s P3)).
SampledInequalityReport verify_lemma2_random(int n_samples, std::uint64_t seed);

// tr(e_ph s) <= lambda [tr(e_bit s) + sqrt(tr(s P1) tr(s P3))] + sum_{a>=2} tr(P_a s).
SampledInequalityReport verify_theorem_chain_random(int n_samples, std::uint64_t seed,
                                                    double lambda = lambda_const());

// T = 2 P1 e_bit P3: operator norm <= 1 (equality holds), and
// T^dag T = |111><111| (x) [(Pi11-Pi10)^2 + (Pi21-Pi20)^2] entrywise.
struct OperatorNormReport {
  double op_norm = 0.0;
  double structure_error = 0.0;  // max entrywise deviation of T^dag T
  double trace_abs = 0.0;        // |tr T|, zero by construction
  bool pass = false;
};
OperatorNormReport verify_operator_norm_T();

// Exact-algebra identities: POVM completeness, parity decomposition of
// e_bit, weight-block diagonality of e_ph, commutators, positivity.
std::vector<CheckResult> structural_checks();

// suite = "lemmas" (operator certificates) or "all" (adds structural
// identities). `lambda` is the testing hook that lets a caller certify how
// the inequalities fail for a wrong constant.
VerificationReport run_verification_suite(const std::string& suite, int n_samples,
                                          std::uint64_t seed, double lambda = lambda_const());

}  // namespace dpsqkd
