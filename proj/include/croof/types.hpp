#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace croof {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Three-valued classification used by every criterion that has a boundary band.
enum class Verdict { classical, boundary, nonclassical };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::classical: return "classical";
        case Verdict::boundary: return "boundary";
        default: return "nonclassical";
    }
}

// Pinned tolerances. Structural checks (hermiticity, symmetry, reconstruction)
// default to `structural` and stay overridable at call sites; the rest are fixed.
namespace tol {
inline constexpr double structural = 1e-10;
inline constexpr double rank_cutoff = 1e-12;    // eigenvalue cutoff for rank decisions
inline constexpr double kraus_cutoff = 1e-12;   // eigenvalue cutoff for Kraus extraction
inline constexpr double optimality = 1e-8;      // decomposition optimality slack
inline constexpr double boundary_band = 1e-9;   // classical/nonclassical boundary band
}  // namespace tol

}  // namespace croof
