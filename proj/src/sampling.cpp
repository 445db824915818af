#include <croof/sampling.hpp>

#include <stdexcept>

#include <Eigen/QR>

namespace croof::ensemble {

Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.cnormal();
        }
    }
    return m;
}

Vector haar_pure(Rng& rng, int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = rng.cnormal();
    }
    v.normalize();
    return v;
}

Matrix haar_unitary(Rng& rng, int dim) {
    const Matrix g = gaussian_matrix(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    }
    return q;
}

Matrix special_unitary(Rng& rng, int dim) {
    Matrix u = haar_unitary(rng, dim);
    const Complex det = u.determinant();
    u *= std::exp(Complex(0, -std::arg(det) / dim));
    return u;
}

Matrix hs_mixed(Rng& rng, int dim) {
    const Matrix g = gaussian_matrix(rng, dim, dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return Complex(0.5) * (rho + rho.adjoint().eval());
}

std::string to_string(SampleKind kind) {
    switch (kind) {
        case SampleKind::haarPure: return "haarPure";
        case SampleKind::hsMixed: return "hsMixed";
        case SampleKind::classicalMixture: return "classicalMixture";
        default: return "coherentMixture";
    }
}

SampleKind sample_kind_from_string(const std::string& name) {
    if (name == "haarPure") return SampleKind::haarPure;
    if (name == "hsMixed") return SampleKind::hsMixed;
    if (name == "classicalMixture") return SampleKind::classicalMixture;
    if (name == "coherentMixture") return SampleKind::coherentMixture;
    throw std::invalid_argument("unknown sample kind: " + name);
}

namespace {

void validate(const SamplerConfig& config) {
    const int d = config.dimension;
    if (d != 3 && d != 4 && d != 6) {
        throw std::invalid_argument("unsupported dimension " + std::to_string(d) +
                                    "; expected 3, 4 or 6");
    }
    if (config.count < 1) throw std::invalid_argument("sample count must be positive");
    if (config.kind == SampleKind::classicalMixture ||
        config.kind == SampleKind::coherentMixture) {
        if (make_model(config.model).hilbertDim != d) {
            throw std::invalid_argument("model " + to_string(config.model) +
                                        " does not live in dimension " + std::to_string(d));
        }
        if (config.kind == SampleKind::coherentMixture && config.model != ModelKind::spin1) {
            throw std::invalid_argument("coherentMixture is a spin1 sampler");
        }
    }
}

// Convex combination of 2..8 classical pure projectors with uniform-simplex
// weights (normalized exponentials).
Matrix classical_mixture(const ModelDescriptor& m, Rng& rng) {
    const int k = rng.uniform_int(2, 8);
    Matrix rho = Matrix::Zero(m.hilbertDim, m.hilbertDim);
    double total = 0;
    for (int i = 0; i < k; ++i) {
        double u;
        do {
            u = rng.uniform();
        } while (u <= 0.0);
        const double w = -std::log(u);
        const Vector psi = sample_classical_pure(m, rng);
        rho += Complex(w) * (psi * psi.adjoint());
        total += w;
    }
    rho /= total;
    return Complex(0.5) * (rho + rho.adjoint().eval());
}

}  // namespace

Matrix sample_one(const SamplerConfig& config, std::uint64_t index) {
    validate(config);
    Rng rng(config.seed, index);
    switch (config.kind) {
        case SampleKind::haarPure: {
            const Vector psi = haar_pure(rng, config.dimension);
            return psi * psi.adjoint();
        }
        case SampleKind::hsMixed:
            return hs_mixed(rng, config.dimension);
        default:
            return classical_mixture(make_model(config.model), rng);
    }
}

Vector sample_pure_one(const SamplerConfig& config, std::uint64_t index) {
    validate(config);
    if (config.kind != SampleKind::haarPure) {
        throw std::invalid_argument("sample_pure_one requires kind haarPure");
    }
    Rng rng(config.seed, index);
    return haar_pure(rng, config.dimension);
}

std::vector<Matrix> sample(const SamplerConfig& config) {
    validate(config);
    std::vector<Matrix> out;
    out.reserve(std::size_t(config.count));
    for (int i = 0; i < config.count; ++i) {
        out.push_back(sample_one(config, std::uint64_t(i)));
    }
    return out;
}

}  // namespace croof::ensemble
