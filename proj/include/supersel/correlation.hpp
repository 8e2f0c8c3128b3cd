#ifndef SUPERSEL_CORRELATION_HPP
#define SUPERSEL_CORRELATION_HPP

#include <cstddef>
#include <vector>

#include "supersel/cmatrix.hpp"

namespace supersel {

struct SpectralAtom {
    double eigenvalue = 0.0;
    CMatrix projector;
};

struct SpectralDecomposition {
    std::vector<SpectralAtom> atoms;  // ascending by eigenvalue
    std::size_t source_dim = 0;
};

SpectralDecomposition spectral_decompose(const CMatrix& a, double cluster_abs_tol = 1e-9,
                                         double cluster_rel_tol = 1e-9);

// Verdict of the projector-route equality check: a and b agree in psi when
// every spectral projector of each, evaluated on the shared eigenvalue grid,
// acts identically on psi. In finite dimension checking the atoms suffices:
// any Borel set's projector is a finite sum of atom projectors.
struct CorrelationReport {
    bool equal = false;
    double worst_atom_residual = 0.0;
    std::vector<double> merged_spectrum;
    double state_norm = 0.0;
    double tolerance = 0.0;
};

CorrelationReport perfect_correlation(const CMatrix& a, const CMatrix& b, const CVector& psi,
                                      double tol);

struct GnsCompression {
    CMatrix basis;                      // orthonormal columns spanning the cyclic subspace
    std::vector<CMatrix> compressed_ops;  // V^† g V per generator
    std::size_t subspace_dim = 0;
};

// Restriction of the generators to the smallest subspace containing psi and
// invariant under each generator and its adjoint. The basis is canonicalized
// as the leading eigenvectors of the subspace projector, so coordinate-aligned
// subspaces come out in coordinate form.
GnsCompression gns_compress(const std::vector<CMatrix>& generators, const CVector& psi,
                            double drop_tol = 1e-10);

// Equality of the compressed representatives of a and b on the cyclic
// subspace of psi: the second route to the same verdict as
// perfect_correlation.
bool ozawa_equal_gns(const CMatrix& a, const CMatrix& b, const CVector& psi, double tol);

}  // namespace supersel

#endif
