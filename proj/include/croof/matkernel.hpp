#pragma once

#include <croof/types.hpp>

namespace croof {

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending
// (ties keep the solver's order), columns of `vectors` aligned with `values`.
struct SpectralData {
    RealVector values;
    Matrix vectors;
};

// m = u * sigma.asDiagonal() * v.adjoint(), sigma descending >= 0.
struct SvdData {
    Matrix u;
    RealVector sigma;
    Matrix v;
};

// s = w * mu.asDiagonal() * w.transpose(), w unitary, mu descending >= 0.
// mu coincides with the singular values of s.
struct TakagiData {
    Matrix w;
    RealVector mu;
};

enum class Definiteness { positive, boundary, not_positive };

enum class Subsystem { first, second };

// Kronecker product with index convention (i,k),(j,l) -> (i*b.rows()+k, j*b.cols()+l).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Out = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Out out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Trace over one tensor factor of an operator on C^d1 (x) C^d2. Tracing out the
// first factor yields a d2 x d2 matrix, tracing out the second a d1 x d1 one.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& m, int d1, int d2, Subsystem which) {
    if (d1 <= 0 || d2 <= 0 || m.rows() != Eigen::Index(d1) * d2 || m.cols() != Eigen::Index(d1) * d2)
        throw std::invalid_argument("partial_trace: matrix is not (d1*d2) x (d1*d2)");
    using Out = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (which == Subsystem::first) {
        Out out = Out::Zero(d2, d2);
        for (int k = 0; k < d2; ++k)
            for (int l = 0; l < d2; ++l)
                for (int i = 0; i < d1; ++i) out(k, l) += m(i * d2 + k, i * d2 + l);
        return out;
    }
    Out out = Out::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
}

SpectralData eig_hermitian(const Matrix& h, double tolerance = tol::structural);

SvdData svd(const Matrix& m);

TakagiData takagi(const Matrix& s, double tolerance = tol::structural);

// Pfaffian of a 4x4 antisymmetric matrix: x01*x23 - x02*x13 + x03*x12.
Complex pfaffian4(const Matrix& x, double tolerance = tol::structural);

// Sign of the spectrum of a Hermitian matrix with a tolerance band around zero:
// positive if every eigenvalue > tolerance, not_positive if any < -tolerance.
Definiteness is_positive_definite(const Matrix& h, double tolerance);

}  // namespace croof
