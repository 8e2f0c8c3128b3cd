#include "supersel/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "supersel/eig.hpp"

namespace supersel {

SpectralDecomposition spectral_decompose(const CMatrix& a, double cluster_abs_tol,
                                         double cluster_rel_tol) {
    require_hermitian(a, "spectral_decompose");
    const EigResult eg = eig_hermitian(a);
    const std::vector<EigenCluster> clusters =
        cluster_eigenvalues(eg.values, cluster_abs_tol, cluster_rel_tol);

    SpectralDecomposition dec;
    dec.source_dim = a.rows();
    for (const EigenCluster& cl : clusters)
        dec.atoms.push_back({cl.value, cluster_projector(eg.vectors, cl.members)});
    return dec;
}

namespace {

// Joint clustering of two spectra on one grid, so that eigenvalues of a and b
// differing only by numerical noise fall into the same atom.
struct MergedAtom {
    double value = 0.0;
    std::vector<std::size_t> a_members;  // indices into a's ascending eigenvalues
    std::vector<std::size_t> b_members;
};

std::vector<MergedAtom> merge_spectra(const std::vector<double>& a_vals,
                                      const std::vector<double>& b_vals) {
    struct Tagged {
        double value;
        std::size_t index;
        bool from_a;
    };
    std::vector<Tagged> all;
    all.reserve(a_vals.size() + b_vals.size());
    for (std::size_t k = 0; k < a_vals.size(); ++k) all.push_back({a_vals[k], k, true});
    for (std::size_t k = 0; k < b_vals.size(); ++k) all.push_back({b_vals[k], k, false});
    std::sort(all.begin(), all.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    std::vector<double> values(all.size());
    for (std::size_t k = 0; k < all.size(); ++k) values[k] = all[k].value;
    const std::vector<EigenCluster> clusters = cluster_eigenvalues(values);

    std::vector<MergedAtom> atoms;
    for (const EigenCluster& cl : clusters) {
        MergedAtom atom;
        atom.value = cl.value;
        for (std::size_t k : cl.members) {
            if (all[k].from_a)
                atom.a_members.push_back(all[k].index);
            else
                atom.b_members.push_back(all[k].index);
        }
        atoms.push_back(std::move(atom));
    }
    return atoms;
}

CVector project_members(const EigResult& eg, const std::vector<std::size_t>& members,
                        const CVector& psi) {
    // sum_k v_k <v_k|psi> over the member columns; absent members give 0.
    CVector out(psi.size(), cx{0.0, 0.0});
    for (std::size_t k : members) {
        CVector col(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) col[i] = eg.vectors(i, k);
        const cx amp = dot(col, psi);
        for (std::size_t i = 0; i < psi.size(); ++i) out[i] += amp * col[i];
    }
    return out;
}

}  // namespace

CorrelationReport perfect_correlation(const CMatrix& a, const CMatrix& b, const CVector& psi,
                                      double tol) {
    require_hermitian(a, "perfect_correlation");
    require_hermitian(b, "perfect_correlation");
    require_same_shape(a, b, "perfect_correlation");
    if (a.rows() != psi.size())
        throw DimMismatchError("perfect_correlation: state dim does not match operators");
    require_unit_vector(psi, "perfect_correlation");

    const EigResult ea = eig_hermitian(a);
    const EigResult eb = eig_hermitian(b);
    const std::vector<MergedAtom> atoms = merge_spectra(ea.values, eb.values);

    CorrelationReport report;
    report.state_norm = norm(psi);
    report.tolerance = tol;
    for (const MergedAtom& atom : atoms) {
        report.merged_spectrum.push_back(atom.value);
        const CVector pa = project_members(ea, atom.a_members, psi);
        const CVector pb = project_members(eb, atom.b_members, psi);
        CVector diff(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i) diff[i] = pa[i] - pb[i];
        report.worst_atom_residual = std::max(report.worst_atom_residual, norm(diff));
    }
    report.equal = report.worst_atom_residual <= tol;
    return report;
}

GnsCompression gns_compress(const std::vector<CMatrix>& generators, const CVector& psi,
                            double drop_tol) {
    if (generators.empty()) throw DimMismatchError("gns_compress: no generators");
    const std::size_t n = psi.size();
    for (const CMatrix& g : generators) {
        require_square(g, "gns_compress");
        if (g.rows() != n)
            throw DimMismatchError("gns_compress: generator dim does not match state");
    }
    require_unit_vector(psi, "gns_compress");

    // Closure: grow an orthonormal set from psi under every generator and its
    // adjoint, via modified Gram-Schmidt, until no direction survives the
    // drop tolerance. Invariance under each generator closes the span under
    // the whole generated algebra.
    std::vector<CVector> basis{normalized(psi)};
    std::vector<CMatrix> maps;
    for (const CMatrix& g : generators) {
        maps.push_back(g);
        maps.push_back(g.adjoint());
    }

    std::size_t scan = 0;
    while (scan < basis.size() && basis.size() < n) {
        const CVector seed = basis[scan];
        ++scan;
        for (const CMatrix& g : maps) {
            CVector w = matvec(g, seed);
            for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize once for stability
                for (const CVector& u : basis) {
                    const cx amp = dot(u, w);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= amp * u[i];
                }
            }
            const double r = norm(w);
            if (r > drop_tol) {
                for (cx& z : w) z /= r;
                basis.push_back(std::move(w));
                if (basis.size() == n) break;
            }
        }
    }

    // Canonical basis: column-pivoted Gram-Schmidt over the subspace
    // projector's columns with the leading entry phase-fixed, so
    // coordinate-aligned subspaces come out as coordinate vectors.
    const std::size_t m = basis.size();
    CMatrix proj(n, n);
    for (const CVector& u : basis)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) proj(i, j) += u[i] * std::conj(u[j]);

    std::vector<CVector> canonical;
    while (canonical.size() < m) {
        CVector best;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            CVector w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = proj(i, j);
            for (const CVector& u : canonical) {
                const cx amp = dot(u, w);
                for (std::size_t i = 0; i < n; ++i) w[i] -= amp * u[i];
            }
            const double r = norm(w);
            if (r > best_norm + 1e-12) {
                best_norm = r;
                best = std::move(w);
            }
        }
        // Phase fix: make the largest entry real positive.
        std::size_t lead = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(best[i]) > std::abs(best[lead]) + 1e-12) lead = i;
        const cx phase = std::conj(best[lead]) / std::abs(best[lead]);
        for (cx& z : best) z = z * phase / best_norm;
        canonical.push_back(std::move(best));
    }

    GnsCompression out;
    out.subspace_dim = m;
    out.basis = CMatrix(n, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < n; ++i) out.basis(i, k) = canonical[k][i];
    for (const CMatrix& g : generators)
        out.compressed_ops.push_back(out.basis.adjoint() * g * out.basis);
    return out;
}

bool ozawa_equal_gns(const CMatrix& a, const CMatrix& b, const CVector& psi, double tol) {
    const GnsCompression c = gns_compress({a, b}, psi);
    return fnorm_diff(c.compressed_ops[0], c.compressed_ops[1]) <= tol;
}

}  // namespace supersel
