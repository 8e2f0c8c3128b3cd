#ifndef SUPERSEL_CMATRIX_HPP
#define SUPERSEL_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "supersel/errors.hpp"

namespace supersel {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

// Dense complex matrix, row-major. Values are immutable by convention once
// built: every operation returns a fresh matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx{0.0, 0.0}) {}

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t rows, std::size_t cols);
    static CMatrix diagonal(const std::vector<double>& entries);
    static CMatrix diagonal(const CVector& entries);
    // Rank-one |v><w|.
    static CMatrix outer(const CVector& v, const CVector& w);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cx>& data() const { return data_; }

    CMatrix adjoint() const;
    cx trace() const;
    double fnorm() const;       // Frobenius norm, the default distance metric
    double max_abs() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cx scalar);

    bool is_hermitian(double tol_scale = 1e-12) const;
    bool is_unitary(double tol = 1e-10) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cx scalar, CMatrix a);
CMatrix operator*(CMatrix a, cx scalar);

// Matrix product. Dispatches to the OpenMP kernel for large operands and the
// serial kernel otherwise; both produce bit-identical results.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

namespace kernels {
// Serial reference kernel, kept as the ground truth the parallel kernel is
// tested and benchmarked against.
CMatrix matmul_serial(const CMatrix& a, const CMatrix& b);
CMatrix matmul_parallel(const CMatrix& a, const CMatrix& b);
// Row count at and above which matmul() switches to the parallel kernel.
inline constexpr std::size_t kParallelMinRows = 64;
}  // namespace kernels

// Tensor product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

double fnorm_diff(const CMatrix& a, const CMatrix& b);

// Vector helpers.
double norm(const CVector& v);
cx dot(const CVector& v, const CVector& w);       // <v|w>, conjugate-linear in v
CVector matvec(const CMatrix& m, const CVector& v);
CVector normalized(const CVector& v);
CVector kron(const CVector& v, const CVector& w);

// Precondition guards used across the library.
void require_square(const CMatrix& a, const char* who);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* who);
void require_hermitian(const CMatrix& a, const char* who);
void require_unitary(const CMatrix& a, const char* who);
void require_unit_vector(const CVector& v, const char* who, double tol = 1e-10);

}  // namespace supersel

#endif
