#pragma once

#include <vector>

#include <croof/conjugation.hpp>
#include <croof/density.hpp>

namespace croof {

// Overlap matrices tau_alpha[i][j] = <xi_i| T_alpha |xi_j*> over the
// subnormalized spectral vectors xi_i = sqrt(p_i) eta_i of a density matrix.
struct TauMatrices {
    std::vector<Matrix> tau;  // one r x r matrix per Kraus operator
    Matrix xi;                // n x r, columns are the subnormalized vectors
};

struct Decomposition {
    std::vector<double> weights;
    std::vector<Vector> states;  // normalized components
    std::vector<double> componentConcurrences;
    double reconstructionResidual = 0;
};

// |<psi| T |psi*>| for a normalized pure state.
double pure_concurrence(const Conjugation& c, const Vector& psi);

// Same number through the quadratic form <psi (x) psi| A |psi (x) psi>.
double pure_concurrence(const BilinearOperator& a, const Vector& psi);

TauMatrices tau_matrices(const DensityMatrix& rho, const std::vector<Matrix>& kraus,
                         double cutoff = tol::rank_cutoff);

// Singular values of sqrt(rho) T conj(sqrt(rho)), descending. Requires a
// symmetric conjugation.
RealVector mu_values(const DensityMatrix& rho, const Conjugation& c);

// max(0, mu_1 - sum_{j>=2} mu_j). Requires a symmetric conjugation.
double mixed_concurrence(const DensityMatrix& rho, const Conjugation& c);

// Optimal pure-state decomposition attaining mixed_concurrence: the weighted
// average of component concurrences equals C(rho) and the components
// reconstruct rho. At most 2^ceil(log2(rank)) components; when C(rho) = 0
// every component has zero concurrence. Requires a symmetric conjugation.
Decomposition optimal_decomposition(const DensityMatrix& rho, const Conjugation& c);

// Reassembles sum_k w_k phi_k phi_k^dagger.
Matrix reconstruct(const Decomposition& d, int dim);

RealMatrix sylvester_hadamard(int k);

}  // namespace croof
