#include "dpsqkd/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace dpsqkd {

namespace {

ComplexMatrix ket_b(int pos) {
  ComplexMatrix v = ComplexMatrix::Zero(kDimB, 1);
  v(pos - 1, 0) = 1.0;
  return v;
}

ComplexMatrix projector(const ComplexMatrix& v) { return v * v.adjoint(); }

// two-qubit basis column |b0 b1> in the 4-dim space
ComplexMatrix ket2(int b0, int b1) {
  ComplexMatrix v = ComplexMatrix::Zero(4, 1);
  v(2 * b0 + b1, 0) = 1.0;
  return v;
}

}  // namespace

int basis_index(const std::array<int, 3>& z, int photon_pos) {
  for (int b : z) {
    if (b != 0 && b != 1) throw std::domain_error("basis_index: z bits must be 0/1");
  }
  if (photon_pos < 1 || photon_pos > 3) {
    throw std::domain_error("basis_index: photon position must be 1..3");
  }
  return (4 * z[0] + 2 * z[1] + z[2]) * kDimB + (photon_pos - 1);
}

int hamming_weight(int a_index) {
  if (a_index < 0 || a_index >= kDimA) throw std::domain_error("hamming_weight: index 0..7");
  return ((a_index >> 2) & 1) + ((a_index >> 1) & 1) + (a_index & 1);
}

ComplexMatrix detection_povm(int slot, int bit) {
  if (slot < 1 || slot > 2) throw std::domain_error("detection_povm: slot must be 1..2");
  if (bit != 0 && bit != 1) throw std::domain_error("detection_povm: bit must be 0/1");
  const double sign = (bit == 0) ? 1.0 : -1.0;
  ComplexMatrix v = (std::sqrt(kPortWeight[static_cast<std::size_t>(slot)]) * ket_b(slot) +
                     sign * std::sqrt(kPortWeight[static_cast<std::size_t>(slot) + 1]) *
                         ket_b(slot + 1)) /
                    std::sqrt(2.0);
  return projector(v);
}

ComplexMatrix weight_projector(int a) {
  if (a < 0 || a > 3) throw std::domain_error("weight_projector: a must be 0..3");
  ComplexMatrix pa = ComplexMatrix::Zero(kDimA, kDimA);
  for (int idx = 0; idx < kDimA; ++idx) {
    if (hamming_weight(idx) == a) pa(idx, idx) = 1.0;
  }
  return kronecker(pa, ComplexMatrix::Identity(kDimB, kDimB));
}

ComplexMatrix parity_projector(bool even) {
  return even ? weight_projector(0) + weight_projector(2)
              : weight_projector(1) + weight_projector(3);
}

ComplexMatrix bit_error_op() {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix total = ComplexMatrix::Zero(kDim, kDim);
  for (int j = 1; j <= 2; ++j) {
    for (int s = 0; s <= 1; ++s) {
      const double sign = (s == 0) ? 1.0 : -1.0;
      const ComplexMatrix pair =
          projector((ket2(0, 0) + sign * ket2(1, 1)) / std::sqrt(2.0)) +
          projector((ket2(0, 1) + sign * ket2(1, 0)) / std::sqrt(2.0));
      // embed on (A_j, A_{j+1}); A1 is the most significant qubit
      const ComplexMatrix a_op = (j == 1) ? kronecker(pair, i2) : kronecker(i2, pair);
      total += kronecker(a_op, detection_povm(j, s ^ 1));
    }
  }
  return total;
}

ComplexMatrix phase_error_op() {
  ComplexMatrix total = ComplexMatrix::Zero(kDim, kDim);
  for (int idx = 0; idx < kDimA; ++idx) {
    const int z[3] = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    ComplexMatrix pz = ComplexMatrix::Zero(kDimA, kDimA);
    pz(idx, idx) = 1.0;
    for (int j = 1; j <= 2; ++j) {
      ComplexMatrix b_op = ComplexMatrix::Zero(kDimB, kDimB);
      if (z[j] == 1) {  // z_{j+1}
        b_op += kPortWeight[static_cast<std::size_t>(j)] * projector(ket_b(j));
      }
      if (z[j - 1] == 1) {  // z_j
        b_op += kPortWeight[static_cast<std::size_t>(j) + 1] * projector(ket_b(j + 1));
      }
      total += kronecker(pz, b_op);
    }
  }
  return total;
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double operator_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().maxCoeff();
}

double max_abs_entry(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // tr(a b) = sum_ij a_ij b_ji, O(n^2)
  return a.cwiseProduct(b.transpose()).sum().real();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return max_abs_entry(m - m.adjoint()) <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, 1e-12) && min_eigenvalue(m) >= -tol;
}

bool is_density_matrix(const ComplexMatrix& m, double tol) {
  return is_psd(m, tol) && std::abs(m.trace().real() - 1.0) <= tol &&
         std::abs(m.trace().imag()) <= tol;
}

ComplexMatrix random_density_matrix(int dim, RandomStream& stream) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = std::complex<double>(stream.next_normal(), stream.next_normal());
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace dpsqkd
