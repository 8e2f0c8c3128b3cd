#ifndef SUPERSEL_EIG_HPP
#define SUPERSEL_EIG_HPP

#include <cstddef>
#include <vector>

#include "supersel/cmatrix.hpp"

namespace supersel {

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary, k-th column pairs with values[k]
};

// Hermitian eigendecomposition by cyclic Jacobi rotations. Meets
// ||V diag(v) V^† - a||_F <= 1e-10 * max(1, ||a||_F) at the dimensions this
// project uses (<= ~256).
EigResult eig_hermitian(const CMatrix& a);

// e^{i h s} for Hermitian h (hbar = 1 throughout).
CMatrix expi(const CMatrix& h, double s);

struct EigenCluster {
    double value = 0.0;                // mean of the member eigenvalues
    std::vector<std::size_t> members;  // indices into the ascending eigenvalue list
};

// Gap rule shared by sector and spectral decompositions: eigenvalues sorted
// ascending open a new cluster when the gap to the previous one exceeds
// abs_tol + rel_tol * spectral_radius.
std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& ascending,
                                              double abs_tol = 1e-9, double rel_tol = 1e-9);

// Orthogonal projector onto the span of the member columns of `vectors`.
CMatrix cluster_projector(const CMatrix& vectors, const std::vector<std::size_t>& members);

}  // namespace supersel

#endif
