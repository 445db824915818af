#pragma once

#include <croof/matkernel.hpp>

namespace croof {

// Hermitian, unit-trace, positive-semidefinite matrix with cached spectral
// data (eigenvalues descending).
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix rho, double tolerance = tol::structural);

    static DensityMatrix pure(const Vector& psi, double tolerance = tol::structural);

    const Matrix& matrix() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }
    const SpectralData& spectral() const { return spec_; }

    int rank(double cutoff = tol::rank_cutoff) const;

    // Positive square root, from the cached spectral data.
    Matrix sqrt() const;

  private:
    Matrix rho_;
    SpectralData spec_;
};

}  // namespace croof
