#include <croof/conjugation.hpp>

#include <stdexcept>

namespace croof {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.norm()); }

}  // namespace

Conjugation Conjugation::from_matrix(const Matrix& t, double tolerance) {
    if (t.rows() != t.cols()) {
        throw std::invalid_argument("conjugation matrix must be square");
    }
    const auto n = t.rows();
    const double scale = scale_of(t);
    if ((t.adjoint() * t - Matrix::Identity(n, n)).norm() > tolerance * scale) {
        throw std::invalid_argument("conjugation matrix is not unitary");
    }
    const double sym = (t - t.transpose()).norm();
    const double anti = (t + t.transpose()).norm();
    Conjugation c;
    c.t = t;
    if (sym <= tolerance * scale) {
        c.symmetry = ConjugationSymmetry::symmetric;
    } else if (anti <= tolerance * scale) {
        c.symmetry = ConjugationSymmetry::antisymmetric;
    } else {
        throw std::invalid_argument(
            "conjugation matrix is neither symmetric nor antisymmetric");
    }
    return c;
}

Conjugation Conjugation::identity(int dim) {
    Conjugation c;
    c.t = Matrix::Identity(dim, dim);
    c.symmetry = ConjugationSymmetry::symmetric;
    return c;
}

Vector conjugate(const Conjugation& c, const Vector& psi) {
    if (psi.size() != c.t.rows()) {
        throw std::invalid_argument("state dimension does not match conjugation");
    }
    return c.t * psi.conjugate();
}

BilinearOperator bilinear_from_conjugation(const Conjugation& c) {
    return BilinearOperator::from_conjugation(c);
}

BilinearOperator BilinearOperator::from_conjugation(const Conjugation& c) {
    const auto n = c.t.rows();
    // A = sum_ij |e_i><e_j| (x) T|e_i><e_j|T^dag collapses to the rank-one
    // projector onto w with w[i*n + k] = T(k, i).
    Vector w(n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            w(i * n + k) = c.t(k, i);
        }
    }
    BilinearOperator op;
    op.dim_ = static_cast<int>(n);
    op.a_ = w * w.adjoint();
    op.a_ = Complex(0.5) * (op.a_ + op.a_.adjoint().eval());
    op.eigen_ = eig_hermitian(op.a_);
    op.kraus_ = kraus_from_bilinear(op.a_);
    op.trace_constant_ = 1.0;
    return op;
}

BilinearOperator BilinearOperator::from_matrix(const Matrix& a, double tolerance) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("bilinear operator must be square");
    }
    const auto nn = a.rows();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(nn))));
    if (n * n != nn) {
        throw std::invalid_argument("bilinear operator dimension is not a perfect square");
    }
    const double scale = scale_of(a);
    if ((a - a.adjoint()).norm() > tolerance * scale) {
        throw std::invalid_argument("bilinear operator is not Hermitian");
    }

    BilinearOperator op;
    op.dim_ = static_cast<int>(n);
    op.a_ = Complex(0.5) * (a + a.adjoint().eval());
    op.eigen_ = eig_hermitian(op.a_);
    if (op.eigen_.values.minCoeff() < -tolerance * scale) {
        throw std::invalid_argument("bilinear operator is not positive semidefinite");
    }

    const Matrix tr1 = partial_trace(op.a_, static_cast<int>(n), static_cast<int>(n),
                                     Subsystem::first);
    const Matrix tr2 = partial_trace(op.a_, static_cast<int>(n), static_cast<int>(n),
                                     Subsystem::second);
    const double c1 = tr1.trace().real() / static_cast<double>(n);
    const double c2 = tr2.trace().real() / static_cast<double>(n);
    if ((tr1 - c1 * Matrix::Identity(n, n)).norm() > tolerance * scale ||
        (tr2 - c2 * Matrix::Identity(n, n)).norm() > tolerance * scale ||
        std::abs(c1 - c2) > tolerance * std::max(1.0, std::abs(c1))) {
        throw std::invalid_argument(
            "bilinear operator partial traces are not a common multiple of the identity");
    }
    op.trace_constant_ = c1;
    op.kraus_ = kraus_from_bilinear(op.a_);
    return op;
}

std::vector<Matrix> kraus_from_bilinear(const Matrix& a, double cutoff) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("bilinear operator must be square");
    }
    const auto nn = a.rows();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(nn))));
    if (n * n != nn) {
        throw std::invalid_argument("bilinear operator dimension is not a perfect square");
    }
    const SpectralData es = eig_hermitian(Complex(0.5) * (a + a.adjoint().eval()));
    if (es.values.minCoeff() < -1e-10 * scale_of(a)) {
        throw std::invalid_argument("bilinear operator is not positive semidefinite");
    }
    std::vector<Matrix> kraus;
    for (Eigen::Index q = 0; q < nn; ++q) {
        if (es.values(q) <= cutoff) {
            continue;
        }
        const Vector w = std::sqrt(es.values(q)) * es.vectors.col(q);
        Matrix t(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < n; ++k) {
                t(k, i) = w(i * n + k);
            }
        }
        kraus.push_back(std::move(t));
    }
    return kraus;
}

}  // namespace croof
