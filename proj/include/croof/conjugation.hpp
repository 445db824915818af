#pragma once

#include <vector>

#include <croof/matkernel.hpp>

namespace croof {

enum class ConjugationSymmetry { symmetric, antisymmetric };

// Unitary part T of an antiunitary conjugation theta(psi) = T * conj(psi).
struct Conjugation {
    Matrix t;
    ConjugationSymmetry symmetry;

    // Validates unitarity and detects the symmetry type; T must be either
    // symmetric or antisymmetric within `tolerance`.
    static Conjugation from_matrix(const Matrix& t, double tolerance = tol::structural);

    static Conjugation identity(int dim);
};

Vector conjugate(const Conjugation& c, const Vector& psi);

// Positive operator on the doubled space whose quadratic form on psi (x) psi
// gives the squared concurrence, together with its Kraus operators.
class BilinearOperator {
  public:
    static BilinearOperator from_conjugation(const Conjugation& c);
    static BilinearOperator from_matrix(const Matrix& a, double tolerance = tol::structural);

    const Matrix& matrix() const { return a_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    const SpectralData& spectral() const { return eigen_; }
    int dim() const { return dim_; }
    // Both partial traces equal this multiple of the identity (1 whenever the
    // operator comes from a single unitary conjugation).
    double partial_trace_constant() const { return trace_constant_; }

  private:
    BilinearOperator() = default;

    Matrix a_;
    std::vector<Matrix> kraus_;
    SpectralData eigen_;
    int dim_ = 0;
    double trace_constant_ = 0;
};

BilinearOperator bilinear_from_conjugation(const Conjugation& c);

// Kraus operators T_alpha from the subnormalized eigenvectors of a PSD
// operator on the doubled space; eigenvalues below `cutoff` are dropped.
std::vector<Matrix> kraus_from_bilinear(const Matrix& a, double cutoff = tol::kraus_cutoff);

}  // namespace croof
