#include <croof/density.hpp>

#include <stdexcept>

namespace croof {

DensityMatrix::DensityMatrix(Matrix rho, double tolerance) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    const double scale = std::max(1.0, rho.norm());
    if ((rho - rho.adjoint()).norm() > tolerance * scale) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > tolerance * scale) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    rho_ = Complex(0.5) * (rho + rho.adjoint().eval());
    spec_ = eig_hermitian(rho_);
    if (spec_.values.minCoeff() < -tolerance * scale) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::pure(const Vector& psi, double tolerance) {
    if (std::abs(psi.norm() - 1.0) > tolerance) {
        throw std::invalid_argument("pure state is not normalized");
    }
    return DensityMatrix(psi * psi.adjoint(), tolerance);
}

int DensityMatrix::rank(double cutoff) const {
    int r = 0;
    for (Eigen::Index i = 0; i < spec_.values.size(); ++i) {
        if (spec_.values(i) > cutoff) {
            ++r;
        }
    }
    return r;
}

Matrix DensityMatrix::sqrt() const {
    const RealVector clamped = spec_.values.cwiseMax(0.0).cwiseSqrt();
    Matrix root = spec_.vectors * clamped.asDiagonal() * spec_.vectors.adjoint();
    return Complex(0.5) * (root + root.adjoint().eval());
}

}  // namespace croof
