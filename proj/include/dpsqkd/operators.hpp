#pragma once

#include <Eigen/Dense>
#include <array>

#include "dpsqkd/rng.hpp"

namespace dpsqkd {

using ComplexMatrix = Eigen::MatrixXcd;

// Hilbert space layout: three auxiliary qubits A1 A2 A3 (dim 8) tensor the
// detected single-photon position space B = span{|1>,|2>,|3>} (dim 3).
// Basis ordering is z-major, photon-position-minor:
//   index = (4 z1 + 2 z2 + z3) * 3 + (i - 1)
// Every fixture in the test suite pins this ordering.
inline constexpr int kDimA = 8;
inline constexpr int kDimB = 3;
inline constexpr int kDim = kDimA * kDimB;

// Interferometer port weights w_1 = w_3 = 1, w_2 = 1/2 (index 1-based).
inline constexpr std::array<double, 4> kPortWeight = {0.0, 1.0, 0.5, 1.0};

// Index of |z1 z2 z3>_A (x) |photon_pos>_B. Throws std::domain_error unless
// each z bit is 0/1 and photon_pos is 1..3.
int basis_index(const std::array<int, 3>& z, int photon_pos);

// Hamming weight of the A-basis index 0..7.
int hamming_weight(int a_index);

// 3x3 POVM element Pi_{slot,bit} on B for announcing `slot` (1..2) with raw
// bit value `bit`:  |Pi> = (sqrt(w_j)|j> + (-1)^bit sqrt(w_{j+1})|j+1>)/sqrt(2).
ComplexMatrix detection_povm(int slot, int bit);

// 24x24 projector onto A-strings of Hamming weight a, tensored with I_B.
ComplexMatrix weight_projector(int a);

// P_even = P_0 + P_2, P_odd = P_1 + P_3.
ComplexMatrix parity_projector(bool even);

// Bit-error POVM element e_bit = sum_j e_bit^j: for each slot j and sign s,
// projectors onto (|00> +- |11>)/sqrt(2) and (|01> +- |10>)/sqrt(2) on qubits
// (j, j+1), identity on the remaining qubit, tensor Pi_{j, s xor 1}.
ComplexMatrix bit_error_op();

// Phase-error POVM element e_ph = sum_j e_ph^j with
// e_ph^j = sum_z |z><z| (x) [w_j d(z_{j+1},1)|j><j| + w_{j+1} d(z_j,1)|j+1><j+1|].
// Diagonal in the product basis.
ComplexMatrix phase_error_op();

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

// Spectral helpers. Dim is 24, so dense decompositions are instant and
// deterministic.
double min_eigenvalue(const ComplexMatrix& hermitian);
double max_eigenvalue(const ComplexMatrix& hermitian);
double operator_norm(const ComplexMatrix& m);  // largest singular value
double max_abs_entry(const ComplexMatrix& m);
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);  // Re tr(a b)

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-13);
bool is_psd(const ComplexMatrix& m, double tol = 1e-12);
bool is_density_matrix(const ComplexMatrix& m, double tol = 1e-12);

// Ginibre-ensemble random density matrix: G G^dag / tr(G G^dag).
ComplexMatrix random_density_matrix(int dim, RandomStream& stream);

}  // namespace dpsqkd
