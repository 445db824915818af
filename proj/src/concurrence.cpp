#include <croof/concurrence.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace croof {

namespace {

void require_normalized(const Vector& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("pure state is not normalized");
    }
}

void require_symmetric(const Conjugation& c, const char* fn) {
    if (c.symmetry != ConjugationSymmetry::symmetric) {
        throw std::invalid_argument(std::string(fn) +
                                    " requires a symmetric conjugation; use the convex-roof "
                                    "oracle for antisymmetric ones");
    }
}

double clamp_cos(double x) { return std::min(1.0, std::max(-1.0, x)); }

}  // namespace

double pure_concurrence(const Conjugation& c, const Vector& psi) {
    require_normalized(psi);
    if (psi.size() != c.t.rows()) {
        throw std::invalid_argument("state dimension does not match conjugation");
    }
    return std::abs((psi.adjoint() * c.t * psi.conjugate()).value());
}

double pure_concurrence(const BilinearOperator& a, const Vector& psi) {
    require_normalized(psi);
    if (psi.size() != a.dim()) {
        throw std::invalid_argument("state dimension does not match bilinear operator");
    }
    const Vector pp = kron(psi, psi);
    const double sq = (pp.adjoint() * a.matrix() * pp).value().real();
    return std::sqrt(std::max(0.0, sq));
}

TauMatrices tau_matrices(const DensityMatrix& rho, const std::vector<Matrix>& kraus,
                         double cutoff) {
    const int n = rho.dim();
    const int r = rho.rank(cutoff);
    TauMatrices out;
    out.xi.resize(n, r);
    for (int i = 0; i < r; ++i) {
        out.xi.col(i) = std::sqrt(rho.spectral().values(i)) * rho.spectral().vectors.col(i);
    }
    out.tau.reserve(kraus.size());
    for (const Matrix& t : kraus) {
        if (t.rows() != n || t.cols() != n) {
            throw std::invalid_argument("Kraus operator dimension does not match state");
        }
        out.tau.push_back(out.xi.adjoint() * t * out.xi.conjugate());
    }
    return out;
}

RealVector mu_values(const DensityMatrix& rho, const Conjugation& c) {
    require_symmetric(c, "mu_values");
    if (c.t.rows() != rho.dim()) {
        throw std::invalid_argument("conjugation dimension does not match state");
    }
    const Matrix root = rho.sqrt();
    const Matrix b = root * c.t * root.conjugate();
    return svd(b).sigma;
}

double mixed_concurrence(const DensityMatrix& rho, const Conjugation& c) {
    const RealVector mu = mu_values(rho, c);
    const double gap = 2.0 * mu(0) - mu.sum();
    return std::max(0.0, gap);
}

RealMatrix sylvester_hadamard(int k) {
    if (k < 1 || (k & (k - 1)) != 0) {
        throw std::invalid_argument("Hadamard order must be a power of 2");
    }
    RealMatrix h = RealMatrix::Ones(1, 1);
    while (h.rows() < k) {
        const auto m = h.rows();
        RealMatrix next(2 * m, 2 * m);
        next.topLeftCorner(m, m) = h;
        next.topRightCorner(m, m) = h;
        next.bottomLeftCorner(m, m) = h;
        next.bottomRightCorner(m, m) = -h;
        h = std::move(next);
    }
    return h;
}

Matrix reconstruct(const Decomposition& d, int dim) {
    Matrix acc = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < d.states.size(); ++k) {
        acc += d.weights[k] * (d.states[k] * d.states[k].adjoint());
    }
    return acc;
}

namespace {

// Picks one angle 2*theta_j per mu value so that sum_j mu_j exp(2i theta_j)
// has modulus max(0, mu_1 - sum_rest). For the classical case the tail is
// split greedily into two groups and the three group sums are closed into a
// triangle with the law of cosines.
RealVector decomposition_phases(const RealVector& mu, double target) {
    const auto r = mu.size();
    RealVector twotheta = RealVector::Zero(r);
    if (target > 0) {
        for (Eigen::Index j = 1; j < r; ++j) {
            twotheta(j) = M_PI;
        }
        return twotheta;
    }
    const double a = mu(0);
    if (a <= 1e-14) {
        return twotheta;  // all overlaps vanish, phases are irrelevant
    }
    std::vector<int> group(r, 0);
    double b = 0;
    double c = 0;
    for (Eigen::Index j = 1; j < r; ++j) {
        if (b <= c) {
            group[j] = 1;
            b += mu(j);
        } else {
            group[j] = 2;
            c += mu(j);
        }
    }
    double angle_b;
    double angle_c;
    if (c <= 1e-14 * a) {
        // Only one effective tail value; classicality forces mu_1 = mu_2.
        if (std::abs(a - b) > 1e-9 * a) {
            throw std::runtime_error(
                "degenerate classical decomposition needs equal leading mu values");
        }
        angle_b = M_PI;
        angle_c = M_PI;
    } else {
        // One angle from the law of cosines; the other as the direction of the
        // exact complex remainder, so the closure error stays at rounding
        // level even for degenerate (collinear) triangles.
        const double x = std::acos(clamp_cos((a * a + b * b - c * c) / (2 * a * b)));
        angle_b = M_PI - x;
        angle_c = std::arg(-(a + b * std::exp(Complex(0, angle_b))));
    }
    for (Eigen::Index j = 1; j < r; ++j) {
        twotheta(j) = group[j] == 1 ? angle_b : angle_c;
    }
    return twotheta;
}

}  // namespace

Decomposition optimal_decomposition(const DensityMatrix& rho, const Conjugation& c) {
    require_symmetric(c, "optimal_decomposition");
    if (c.t.rows() != rho.dim()) {
        throw std::invalid_argument("conjugation dimension does not match state");
    }
    const int n = rho.dim();
    const int r = rho.rank();

    Decomposition out;
    if (r <= 1) {
        const Vector psi = rho.spectral().vectors.col(0);
        out.weights = {1.0};
        out.states = {psi};
        out.componentConcurrences = {pure_concurrence(c, psi)};
        out.reconstructionResidual = (psi * psi.adjoint() - rho.matrix()).norm();
        return out;
    }

    Matrix xi(n, r);
    for (int i = 0; i < r; ++i) {
        xi.col(i) = std::sqrt(rho.spectral().values(i)) * rho.spectral().vectors.col(i);
    }
    Matrix tau = xi.adjoint() * c.t * xi.conjugate();
    tau = Complex(0.5) * (tau + tau.transpose().eval());

    const TakagiData tak = takagi(tau);
    const RealVector& mu = tak.mu;
    const double target = std::max(0.0, 2.0 * mu(0) - mu.sum());

    const RealVector twotheta = decomposition_phases(mu, target);
    Complex closure = 0;
    for (int j = 0; j < r; ++j) {
        closure += mu(j) * std::exp(Complex(0, twotheta(j)));
    }
    if (std::abs(std::abs(closure) - target) > 1e-9 * std::max(1.0, mu.sum())) {
        throw std::runtime_error("decomposition phase selection failed to close");
    }

    int k_total = 1;
    while (k_total < r) {
        k_total *= 2;
    }
    const RealMatrix h = sylvester_hadamard(k_total);
    const double inv_root = 1.0 / std::sqrt(static_cast<double>(k_total));

    // zeta_j = sum_i W(i,j) xi_i diagonalizes the overlap matrix; the phased
    // Hadamard mixing spreads the diagonal evenly over all components.
    const Matrix zeta = xi * tak.w;
    Matrix phased = zeta;
    for (int j = 0; j < r; ++j) {
        phased.col(j) *= std::exp(Complex(0, 0.5 * twotheta(j)));
    }

    for (int k = 0; k < k_total; ++k) {
        Vector phi = Vector::Zero(n);
        for (int j = 0; j < r; ++j) {
            phi += h(k, j) * phased.col(j);
        }
        phi *= inv_root;
        const double weight = phi.squaredNorm();
        if (weight <= 1e-14) {
            continue;
        }
        const Vector state = phi / std::sqrt(weight);
        out.weights.push_back(weight);
        out.states.push_back(state);
        out.componentConcurrences.push_back(pure_concurrence(c, state));
    }
    out.reconstructionResidual = (reconstruct(out, n) - rho.matrix()).norm();
    return out;
}

}  // namespace croof
