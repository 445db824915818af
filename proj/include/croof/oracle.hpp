#pragma once

#include <cstdint>

#include <croof/concurrence.hpp>
#include <croof/conjugation.hpp>
#include <croof/density.hpp>

namespace croof::ensemble {

struct OracleBudget {
    int restarts = 50;
    int iterations = 500;
    // Inclusive range of decomposition sizes K to try; 0 means derive from
    // the rank r as [r, 2^ceil(log2 r)].
    int kMin = 0;
    int kMax = 0;
    std::uint64_t seed = 0;
};

struct OracleResult {
    double upperBound = 0;
    Decomposition bestDecomposition;
    int restarts = 0;
    bool converged = false;
};

// Orthonormal basis of the column span, via Householder QR. Candidate frames
// in the oracle search pass through this after every perturbation.
Matrix orthonormal_columns(const Matrix& m);

// Brute-force convex-roof upper bound: minimizes the ensemble-averaged
// component concurrence over K x r partial isometries applied to the spectral
// decomposition, using random-restart annealing followed by a deterministic
// pairwise-rotation polish. Serves as an independent cross-check of
// mixed_concurrence; can overshoot the true roof but never undershoot it.
OracleResult convex_roof_oracle(const DensityMatrix& rho, const BilinearOperator& a,
                                const OracleBudget& budget = {});

}  // namespace croof::ensemble
