#include <croof/spin1.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include <croof/matkernel.hpp>
#include <croof/models.hpp>

namespace croof::spin1 {

namespace {

void require_dim3(const DensityMatrix& rho) {
    if (rho.dim() != 3) {
        throw std::invalid_argument("spin-1 criteria require a 3x3 density matrix");
    }
}

Verdict sign_verdict(double value, double tolerance) {
    if (std::abs(value) <= tolerance) {
        return Verdict::boundary;
    }
    return value < 0 ? Verdict::classical : Verdict::nonclassical;
}

}  // namespace

double coherence_residual(const Vector& psi) {
    if (psi.size() != 3) {
        throw std::invalid_argument("spin-1 criteria require a 3-component state");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("pure state is not normalized");
    }
    const Vector pp = kron(psi, psi);
    Vector image = -pp;
    for (const Matrix& l : spin_one_generators()) {
        const Vector lp = l * psi;
        image += kron(lp, lp);
    }
    return image.norm();
}

double total_variance(const Vector& psi) {
    if (psi.size() != 3) {
        throw std::invalid_argument("spin-1 criteria require a 3-component state");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("pure state is not normalized");
    }
    double acc = 0;
    for (const Matrix& l : spin_one_generators()) {
        const double second = (psi.adjoint() * l * l * psi).value().real();
        const double first = (psi.adjoint() * l * psi).value().real();
        acc += second - first * first;
    }
    return acc;
}

CanonicalForm canonical_form(const DensityMatrix& rho) {
    require_dim3(rho);
    const RealMatrix re = rho.matrix().real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (re + re.transpose()));
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }

    CanonicalForm out;
    out.rotation = es.eigenvectors().rowwise().reverse();  // descending eigenvalues
    if (out.rotation.determinant() < 0) {
        out.rotation.col(2) = -out.rotation.col(2);
    }
    out.lambdas = es.eigenvalues().reverse();

    const Matrix can = out.rotation.transpose() * rho.matrix() * out.rotation;
    out.v.resize(3);
    out.v(0) = can(2, 1).imag();
    out.v(1) = can(0, 2).imag();
    out.v(2) = can(1, 0).imag();
    return out;
}

TraceCriterion trace_criterion(const DensityMatrix& rho, double tolerance) {
    require_dim3(rho);
    const Matrix r = rho.matrix() * rho.matrix().conjugate();
    const double tr = r.trace().real();
    const double tr2 = (r * r).trace().real();
    TraceCriterion out;
    out.value = 2.0 * tr2 - tr * tr;
    out.verdict = sign_verdict(out.value, tolerance);
    return out;
}

GiraudData giraud_z(const DensityMatrix& rho, double tolerance) {
    require_dim3(rho);
    const Matrix& m = rho.matrix();

    GiraudData out;
    RealMatrix w = RealMatrix::Identity(3, 3) - 2.0 * m.real();
    out.w = 0.5 * (w + w.transpose());
    out.u.resize(3);
    out.u(0) = -2.0 * m(1, 2).imag();
    out.u(1) = 2.0 * m(0, 2).imag();
    out.u(2) = -2.0 * m(0, 1).imag();
    out.z = out.w - out.u * out.u.transpose();

    out.a2 = -out.z.trace();
    out.a1 = out.z(0, 0) * out.z(1, 1) - out.z(0, 1) * out.z(1, 0) +
             out.z(0, 0) * out.z(2, 2) - out.z(0, 2) * out.z(2, 0) +
             out.z(1, 1) * out.z(2, 2) - out.z(1, 2) * out.z(2, 1);
    out.a0 = -out.z.determinant();

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(out.z);
    out.zMinEigenvalue = es.eigenvalues().minCoeff();
    // positive definite Z certifies classicality
    out.verdict = sign_verdict(-out.zMinEigenvalue, tolerance);
    return out;
}

ClassifyReport classify(const DensityMatrix& rho, double tolerance) {
    require_dim3(rho);
    ClassifyReport out;

    const Conjugation identity = Conjugation::identity(3);
    const RealVector mu = mu_values(rho, identity);
    out.muGap = mu(0) - mu(1) - mu(2);
    out.muVerdict = sign_verdict(out.muGap, tolerance);

    const TraceCriterion tc = trace_criterion(rho, tolerance);
    out.traceValue = tc.value;
    out.traceVerdict = tc.verdict;

    const GiraudData gd = giraud_z(rho, tolerance);
    out.zMinEigenvalue = gd.zMinEigenvalue;
    out.zVerdict = gd.verdict;

    out.agree = true;
    Verdict decided = Verdict::boundary;
    for (Verdict v : {out.muVerdict, out.traceVerdict, out.zVerdict}) {
        if (v == Verdict::boundary) {
            continue;
        }
        if (decided == Verdict::boundary) {
            decided = v;
        } else if (v != decided) {
            out.agree = false;
        }
    }
    return out;
}

Decomposition coherent_decomposition(const DensityMatrix& rho, double tolerance) {
    require_dim3(rho);
    const TraceCriterion tc = trace_criterion(rho, tolerance);
    if (tc.verdict == Verdict::nonclassical) {
        throw std::invalid_argument(
            "coherent decomposition requires a classical state; trace criterion value " +
            std::to_string(tc.value) + " is positive");
    }
    return optimal_decomposition(rho, Conjugation::identity(3));
}

}  // namespace croof::spin1
