#include "supersel/eig.hpp"

#include "supersel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace supersel {

namespace {

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult eig_hermitian(const CMatrix& a) {
    require_hermitian(a, "eig_hermitian");
    const std::size_t n = a.rows();

    CMatrix w = a;
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, a.fnorm());
    const double target = 1e-14 * scale;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(w) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = w(p, q);
                const double g = std::abs(apq);
                if (g <= 1e-300) continue;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const cx phase = apq / g;  // e^{i phi}

                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: w <- w * W with W = [[c, s*phase], [-s*conj(phase), c]].
                for (std::size_t i = 0; i < n; ++i) {
                    const cx wip = w(i, p);
                    const cx wiq = w(i, q);
                    w(i, p) = c * wip - s * std::conj(phase) * wiq;
                    w(i, q) = s * phase * wip + c * wiq;
                }
                // Rows: w <- W^† * w.
                for (std::size_t j = 0; j < n; ++j) {
                    const cx wpj = w(p, j);
                    const cx wqj = w(q, j);
                    w(p, j) = c * wpj - s * phase * wqj;
                    w(q, j) = s * std::conj(phase) * wpj + c * wqj;
                }
                w(p, q) = cx{0.0, 0.0};
                w(q, p) = cx{0.0, 0.0};
                // Accumulate eigenvectors: v <- v * W.
                for (std::size_t i = 0; i < n; ++i) {
                    const cx vip = v(i, p);
                    const cx viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = w(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
    }
    return res;
}

CMatrix expi(const CMatrix& h, double s) {
    require_hermitian(h, "expi");
    const EigResult eg = eig_hermitian(h);
    const std::size_t n = h.rows();
    CVector phases(n);
    for (std::size_t k = 0; k < n; ++k)
        phases[k] = std::polar(1.0, eg.values[k] * s);
    return eg.vectors * CMatrix::diagonal(phases) * eg.vectors.adjoint();
}

std::vector<EigenCluster> cluster_eigenvalues(const std::vector<double>& ascending,
                                              double abs_tol, double rel_tol) {
    std::vector<EigenCluster> clusters;
    if (ascending.empty()) return clusters;
    double radius = 0.0;
    for (double v : ascending) radius = std::max(radius, std::abs(v));
    const double gap = abs_tol + rel_tol * radius;

    EigenCluster current;
    current.members.push_back(0);
    for (std::size_t k = 1; k < ascending.size(); ++k) {
        if (ascending[k] - ascending[k - 1] > gap) {
            clusters.push_back(std::move(current));
            current = EigenCluster{};
        }
        current.members.push_back(k);
    }
    clusters.push_back(std::move(current));

    for (EigenCluster& cl : clusters) {
        double sum = 0.0;
        for (std::size_t k : cl.members) sum += ascending[k];
        cl.value = sum / static_cast<double>(cl.members.size());
    }
    return clusters;
}

CMatrix cluster_projector(const CMatrix& vectors, const std::vector<std::size_t>& members) {
    const std::size_t n = vectors.rows();
    CMatrix p(n, n);
    for (std::size_t k : members)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) += vectors(i, k) * std::conj(vectors(j, k));
    return p;
}

CMatrix random_unitary(Rng& rng, std::size_t dim) {
    return expi(rng.hermitian(dim), 1.0);
}

}  // namespace supersel
