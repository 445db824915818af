#pragma once

#include <croof/concurrence.hpp>
#include <croof/density.hpp>

namespace croof::spin1 {

// Rotation gauge bringing the real part of rho to diagonal form: rotation^T *
// rho * rotation has diagonal (lambda_1, lambda_2, lambda_3), descending, and
// purely imaginary off-diagonal entries +-i v_k.
struct CanonicalForm {
    RealVector lambdas;
    RealVector v;
    RealMatrix rotation;
};

// Data for the positivity criterion: rho = (I - w + u.L)/2 with w symmetric,
// z = w - u u^T, and det(xI - z) = x^3 + a2 x^2 + a1 x + a0.
struct GiraudData {
    RealMatrix w;
    RealVector u;
    RealMatrix z;
    double a2 = 0;
    double a1 = 0;
    double a0 = 0;
    double zMinEigenvalue = 0;
    Verdict verdict = Verdict::boundary;
};

struct TraceCriterion {
    double value = 0;
    Verdict verdict = Verdict::boundary;
};

struct ClassifyReport {
    double muGap = 0;       // mu_1 - mu_2 - mu_3
    double traceValue = 0;  // 2 tr(R^2) - (tr R)^2 with R = rho rho*
    double zMinEigenvalue = 0;
    Verdict muVerdict = Verdict::boundary;
    Verdict traceVerdict = Verdict::boundary;
    Verdict zVerdict = Verdict::boundary;
    bool agree = true;  // verdicts outside the boundary band coincide
};

// || (sum_i L_i (x) L_i)(psi (x) psi) - psi (x) psi ||; vanishes exactly on
// spin coherent states, where it equals sqrt(3) |psi^T psi| = 0.
double coherence_residual(const Vector& psi);

// sum_i (<L_i^2> - <L_i>^2); 1 on coherent states, at most 2, never below 1.
double total_variance(const Vector& psi);

CanonicalForm canonical_form(const DensityMatrix& rho);

// Sign test: negative values certify classicality, positive ones rule it out.
TraceCriterion trace_criterion(const DensityMatrix& rho, double tolerance = tol::boundary_band);

GiraudData giraud_z(const DensityMatrix& rho, double tolerance = tol::boundary_band);

// Runs all three criteria and records whether they agree.
ClassifyReport classify(const DensityMatrix& rho, double tolerance = tol::boundary_band);

// Decomposition of a classical state into at most four coherent states.
// Rejects inputs the trace criterion marks nonclassical.
Decomposition coherent_decomposition(const DensityMatrix& rho,
                                     double tolerance = tol::boundary_band);

}  // namespace croof::spin1
