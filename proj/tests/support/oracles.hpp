#ifndef SUPERSEL_TESTS_ORACLES_HPP
#define SUPERSEL_TESTS_ORACLES_HPP

// Independent numerical routes used to freeze expected values. Everything
// here avoids the eigendecomposition path the library uses.

#include <cstdlib>

#include "supersel/cmatrix.hpp"

namespace supersel::oracles {

// e^{i h s} by scaling-and-squaring a 30-term Taylor series.
inline CMatrix taylor_expi(const CMatrix& h, double s, int terms = 30) {
    const std::size_t n = h.rows();
    int squarings = 0;
    double scale = std::abs(s) * h.fnorm();
    while (scale > 0.25 && squarings < 60) {
        scale *= 0.5;
        ++squarings;
    }
    const double step = s / std::ldexp(1.0, squarings);

    CMatrix ihs = h;
    ihs *= cx{0.0, step};
    CMatrix result = CMatrix::identity(n);
    CMatrix power = CMatrix::identity(n);
    double factorial = 1.0;
    for (int k = 1; k <= terms; ++k) {
        power = kernels::matmul_serial(power, ihs);
        factorial *= k;
        CMatrix term = power;
        term *= cx{1.0 / factorial, 0.0};
        result += term;
    }
    for (int k = 0; k < squarings; ++k) result = kernels::matmul_serial(result, result);
    return result;
}

// Second-order (Strang) time-sliced product for e^{i (ha + hb) t}.
inline CMatrix strang_product(const CMatrix& ha, const CMatrix& hb, double t, int slices) {
    const double dt = t / slices;
    const CMatrix half_b = taylor_expi(hb, dt / 2.0);
    const CMatrix full_a = taylor_expi(ha, dt);
    const CMatrix slice =
        kernels::matmul_serial(kernels::matmul_serial(half_b, full_a), half_b);
    CMatrix u = CMatrix::identity(ha.rows());
    for (int k = 0; k < slices; ++k) u = kernels::matmul_serial(u, slice);
    return u;
}

}  // namespace supersel::oracles

#endif
