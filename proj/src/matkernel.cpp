#include <croof/matkernel.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace croof {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
}

}  // namespace

SpectralData eig_hermitian(const Matrix& h, double tolerance) {
    require_square(h, "eig_hermitian");
    if ((h - h.adjoint()).norm() > tolerance * scale_of(h))
        throw std::invalid_argument("eig_hermitian: input is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");

    // Eigen sorts ascending; flip to descending. The flip is a stable reversal,
    // so exactly tied values keep their relative solver order.
    SpectralData out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

SvdData svd(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("svd: matrix must be non-empty");
    Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return SvdData{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

// Takagi factorization of a complex symmetric s = X + iY through the real
// symmetric embedding M = [[X, Y], [Y, -X]]: an eigenpair M (u;v) = sigma (u;v)
// is the same statement as s * conj(w) = sigma * w for w = u + iv, so the
// eigenvectors of the n largest eigenvalues assemble the factor W directly.
// Columns belonging to numerically zero sigma are replaced by a deterministic
// unitary completion; they contribute nothing to the reconstruction.
TakagiData takagi(const Matrix& s, double tolerance) {
    require_square(s, "takagi");
    if ((s - s.transpose()).norm() > tolerance * scale_of(s))
        throw std::invalid_argument("takagi: input is not complex symmetric");

    const Eigen::Index n = s.rows();
    RealMatrix x = 0.5 * (s.real() + s.real().transpose());
    RealMatrix y = 0.5 * (s.imag() + s.imag().transpose());
    RealMatrix m(2 * n, 2 * n);
    m << x, y, y, -x;

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("takagi: eigensolver failed to converge");

    TakagiData out;
    out.mu = RealVector(n);
    out.w = Matrix(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = 2 * n - 1 - k;  // descending
        out.mu(k) = std::max(es.eigenvalues()(src), 0.0);
        out.w.col(k) = es.eigenvectors().col(src).head(n) +
                       Complex(0, 1) * es.eigenvectors().col(src).tail(n);
    }

    // The +sigma/-sigma pairing that guarantees complex orthonormality breaks
    // down inside the null cluster; rebuild those columns by completion.
    const double ztol = 1e-13 * std::max(1.0, out.mu(0));
    Eigen::Index r = n;
    while (r > 0 && out.mu(r - 1) <= ztol) --r;
    if (r < n) {
        Eigen::HouseholderQR<Matrix> qr(out.w.leftCols(r));
        Matrix q = qr.householderQ() * Matrix::Identity(n, n);
        out.w.rightCols(n - r) = q.rightCols(n - r);
        out.mu.tail(n - r).setZero();
    }
    return out;
}

Complex pfaffian4(const Matrix& x, double tolerance) {
    if (x.rows() != 4 || x.cols() != 4)
        throw std::invalid_argument("pfaffian4: matrix must be 4x4");
    if ((x + x.transpose()).norm() > tolerance * scale_of(x))
        throw std::invalid_argument("pfaffian4: matrix is not antisymmetric");
    return x(0, 1) * x(2, 3) - x(0, 2) * x(1, 3) + x(0, 3) * x(1, 2);
}

Definiteness is_positive_definite(const Matrix& h, double tolerance) {
    require_square(h, "is_positive_definite");
    if ((h - h.adjoint()).norm() > tol::structural * scale_of(h))
        throw std::invalid_argument("is_positive_definite: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo > tolerance) return Definiteness::positive;
    if (lo < -tolerance) return Definiteness::not_positive;
    return Definiteness::boundary;
}

}  // namespace croof
