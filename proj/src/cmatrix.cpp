#include "supersel/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace supersel {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cx{1.0, 0.0};
    return m;
}

CMatrix CMatrix::zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

CMatrix CMatrix::diagonal(const std::vector<double>& entries) {
    CMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = cx{entries[i], 0.0};
    return m;
}

CMatrix CMatrix::diagonal(const CVector& entries) {
    CMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::outer(const CVector& v, const CVector& w) {
    CMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cx CMatrix::trace() const {
    cx t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::fnorm() const {
    double s = 0.0;
    for (const cx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cx scalar) {
    for (cx& z : data_) z *= scalar;
    return *this;
}

bool CMatrix::is_hermitian(double tol_scale) const {
    if (!square()) return false;
    return fnorm_diff(*this, adjoint()) <= tol_scale * std::max(1.0, fnorm());
}

bool CMatrix::is_unitary(double tol) const {
    if (!square()) return false;
    return fnorm_diff(matmul(adjoint(), *this), identity(rows_)) <= tol;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cx scalar, CMatrix a) { return a *= scalar; }
CMatrix operator*(CMatrix a, cx scalar) { return a *= scalar; }

namespace kernels {

namespace {
// Shared i-k-j body: the accumulation order over k is fixed per output
// element, so serial and parallel results agree bit for bit.
inline void matmul_rows(const CMatrix& a, const CMatrix& b, CMatrix& c,
                        std::size_t i_begin, std::size_t i_end) {
    const std::size_t n = a.cols();
    const std::size_t m = b.cols();
    for (std::size_t i = i_begin; i < i_end; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cx aik = a(i, k);
            if (aik == cx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < m; ++j) c(i, j) += aik * b(k, j);
        }
    }
}
}  // namespace

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw DimMismatchError("matmul: inner dimensions disagree (" +
                               std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
    CMatrix c(a.rows(), b.cols());
    matmul_rows(a, b, c, 0, a.rows());
    return c;
}

CMatrix matmul_parallel(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw DimMismatchError("matmul: inner dimensions disagree (" +
                               std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
    CMatrix c(a.rows(), b.cols());
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        matmul_rows(a, b, c, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
    return c;
}

}  // namespace kernels

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
#ifdef _OPENMP
    if (a.rows() >= kernels::kParallelMinRows) return kernels::matmul_parallel(a, b);
#endif
    return kernels::matmul_serial(a, b);
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cx aij = a(ia, ja);
            if (aij == cx{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    c(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
    return c;
}

double fnorm_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "fnorm_diff");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
    return std::sqrt(s);
}

double norm(const CVector& v) {
    double s = 0.0;
    for (const cx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cx dot(const CVector& v, const CVector& w) {
    if (v.size() != w.size()) throw DimMismatchError("dot: length mismatch");
    cx s{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
    return s;
}

CVector matvec(const CMatrix& m, const CVector& v) {
    if (m.cols() != v.size()) throw DimMismatchError("apply: matrix/vector dimensions disagree");
    CVector out(m.rows(), cx{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cx s{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

CVector normalized(const CVector& v) {
    const double n = norm(v);
    if (n == 0.0) throw NotNormalizedError("normalized: zero vector");
    CVector out = v;
    for (cx& z : out) z /= n;
    return out;
}

CVector kron(const CVector& v, const CVector& w) {
    CVector out(v.size() * w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) out[i * w.size() + j] = v[i] * w[j];
    return out;
}

void require_square(const CMatrix& a, const char* who) {
    if (!a.square())
        throw DimMismatchError(std::string(who) + ": matrix must be square, got " +
                               std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimMismatchError(std::string(who) + ": shape mismatch (" + std::to_string(a.rows()) +
                               "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                               "x" + std::to_string(b.cols()) + ")");
}

void require_hermitian(const CMatrix& a, const char* who) {
    require_square(a, who);
    if (!a.is_hermitian())
        throw NotHermitianError(std::string(who) + ": matrix is not Hermitian within tolerance");
}

void require_unitary(const CMatrix& a, const char* who) {
    require_square(a, who);
    if (!a.is_unitary())
        throw NotUnitaryError(std::string(who) + ": matrix is not unitary within tolerance");
}

void require_unit_vector(const CVector& v, const char* who, double tol) {
    if (std::abs(norm(v) - 1.0) > tol)
        throw NotNormalizedError(std::string(who) + ": state vector is not normalized");
}

}  // namespace supersel
