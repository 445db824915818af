#include <croof/models.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

#include <croof/matkernel.hpp>
#include <croof/sampling.hpp>

namespace croof {

namespace {

using ensemble::Rng;

Matrix sigma_y() {
    Matrix s(2, 2);
    s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return s;
}

// Antidiagonal matrix with `entries` read from the top-right corner down.
Matrix antidiagonal(const std::vector<double>& entries) {
    const int n = static_cast<int>(entries.size());
    Matrix t = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        t(i, n - 1 - i) = entries[i];
    }
    return t;
}

// Index pairs (i < j) in the order matching the six-component fermion vector.
constexpr int kPairRow[6] = {0, 0, 0, 1, 1, 2};
constexpr int kPairCol[6] = {1, 2, 3, 2, 3, 3};

Vector fermion_vec(const Matrix& w) {
    Vector x(6);
    for (int m = 0; m < 6; ++m) {
        x(m) = 2.0 * w(kPairRow[m], kPairCol[m]);
    }
    return x;
}

Matrix fermion_mat(const Vector& x) {
    Matrix w = Matrix::Zero(4, 4);
    for (int m = 0; m < 6; ++m) {
        w(kPairRow[m], kPairCol[m]) = 0.5 * x(m);
        w(kPairCol[m], kPairRow[m]) = -0.5 * x(m);
    }
    return w;
}

Vector boson_vec(const Matrix& v) {
    Vector x(3);
    x(0) = v(0, 0) / std::sqrt(2.0);
    x(1) = v(0, 1);
    x(2) = v(1, 1) / std::sqrt(2.0);
    return x;
}

Matrix boson_mat(const Vector& x) {
    Matrix v(2, 2);
    v(0, 0) = std::sqrt(2.0) * x(0);
    v(0, 1) = v(1, 0) = x(1);
    v(1, 1) = std::sqrt(2.0) * x(2);
    return v;
}

// 6x6 action on the fermion vector induced by w -> u w u^T.
Matrix induced_fermion_map(const Matrix& u) {
    Matrix m(6, 6);
    for (int col = 0; col < 6; ++col) {
        Vector basis = Vector::Zero(6);
        basis(col) = 1;
        const Matrix w = u * fermion_mat(basis) * u.transpose();
        m.col(col) = fermion_vec(w);
    }
    return m;
}

// 3x3 action on the boson vector induced by v -> u v u^T.
Matrix induced_boson_map(const Matrix& u) {
    Matrix m(3, 3);
    for (int col = 0; col < 3; ++col) {
        Vector basis = Vector::Zero(3);
        basis(col) = 1;
        const Matrix v = u * boson_mat(basis) * u.transpose();
        m.col(col) = boson_vec(v);
    }
    return m;
}

Matrix spin_one_bilinear_matrix() {
    Matrix a = Matrix::Identity(9, 9);
    for (const Matrix& l : spin_one_generators()) {
        a -= kron(l, l);
    }
    return a;
}

ModelDescriptor build_qubit2() {
    const Matrix t = kron(sigma_y(), sigma_y());
    const Conjugation c = Conjugation::from_matrix(t);
    return ModelDescriptor{
        ModelKind::qubit2, 4, c, BilinearOperator::from_conjugation(c), 1.0,
        [](Rng& rng) {
            return kron(ensemble::special_unitary(rng, 2), ensemble::special_unitary(rng, 2));
        }};
}

ModelDescriptor build_fermion4() {
    const Conjugation c = Conjugation::from_matrix(antidiagonal({1, -1, 1, 1, -1, 1}));
    return ModelDescriptor{
        ModelKind::fermion4, 6, c, BilinearOperator::from_conjugation(c), 1.0,
        [](Rng& rng) { return induced_fermion_map(ensemble::special_unitary(rng, 4)); }};
}

ModelDescriptor build_boson2() {
    const Conjugation c = Conjugation::from_matrix(antidiagonal({1, -1, 1}));
    return ModelDescriptor{
        ModelKind::boson2, 3, c, BilinearOperator::from_conjugation(c), 1.0,
        [](Rng& rng) { return induced_boson_map(ensemble::special_unitary(rng, 2)); }};
}

ModelDescriptor build_spin1() {
    return ModelDescriptor{ModelKind::spin1, 3, Conjugation::identity(3),
                           BilinearOperator::from_matrix(spin_one_bilinear_matrix()), 1.0,
                           [](Rng& rng) { return Matrix(random_rotation(rng).cast<Complex>()); }};
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::qubit2:
            return "qubit2";
        case ModelKind::fermion4:
            return "fermion4";
        case ModelKind::boson2:
            return "boson2";
        case ModelKind::spin1:
            return "spin1";
    }
    throw std::invalid_argument("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "qubit2") return ModelKind::qubit2;
    if (name == "fermion4") return ModelKind::fermion4;
    if (name == "boson2") return ModelKind::boson2;
    if (name == "spin1") return ModelKind::spin1;
    throw std::invalid_argument("unknown model name: " + name);
}

const ModelDescriptor& make_model(ModelKind kind) {
    static const ModelDescriptor qubit2 = build_qubit2();
    static const ModelDescriptor fermion4 = build_fermion4();
    static const ModelDescriptor boson2 = build_boson2();
    static const ModelDescriptor spin1 = build_spin1();
    switch (kind) {
        case ModelKind::qubit2:
            return qubit2;
        case ModelKind::fermion4:
            return fermion4;
        case ModelKind::boson2:
            return boson2;
        case ModelKind::spin1:
            return spin1;
    }
    throw std::invalid_argument("unknown model kind");
}

double model_concurrence(const ModelDescriptor& m, const Vector& psi) {
    return m.normalization * pure_concurrence(m.conjugation, psi);
}

const std::array<Matrix, 3>& spin_one_generators() {
    static const std::array<Matrix, 3> l = [] {
        const Complex i(0, 1);
        std::array<Matrix, 3> gen;
        for (auto& g : gen) {
            g = Matrix::Zero(3, 3);
        }
        gen[0](1, 2) = -i;
        gen[0](2, 1) = i;
        gen[1](0, 2) = i;
        gen[1](2, 0) = -i;
        gen[2](0, 1) = -i;
        gen[2](1, 0) = i;
        return gen;
    }();
    return l;
}

FermionState FermionState::from_matrix(const Matrix& w) {
    if (w.rows() != 4 || w.cols() != 4) {
        throw std::invalid_argument("fermion amplitude matrix must be 4x4");
    }
    if ((w + w.transpose()).norm() > 1e-12 * std::max(1.0, w.norm())) {
        throw std::invalid_argument("fermion amplitude matrix is not antisymmetric");
    }
    FermionState f;
    f.w = Complex(0.5) * (w - w.transpose().eval());
    f.vec = fermion_vec(f.w);
    if (std::abs(f.vec.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("fermion state is not normalized");
    }
    return f;
}

FermionState FermionState::from_vector(const Vector& vec) {
    if (vec.size() != 6) {
        throw std::invalid_argument("fermion state vector must have 6 components");
    }
    if (std::abs(vec.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("fermion state is not normalized");
    }
    FermionState f;
    f.vec = vec;
    f.w = fermion_mat(vec);
    return f;
}

BosonState BosonState::from_matrix(const Matrix& v) {
    if (v.rows() != 2 || v.cols() != 2) {
        throw std::invalid_argument("boson amplitude matrix must be 2x2");
    }
    if ((v - v.transpose()).norm() > 1e-12 * std::max(1.0, v.norm())) {
        throw std::invalid_argument("boson amplitude matrix is not symmetric");
    }
    Vector raw = boson_vec(Complex(0.5) * (v + v.transpose().eval()));
    const double norm = raw.norm();
    if (norm <= 0) {
        throw std::invalid_argument("boson amplitude matrix is zero");
    }
    BosonState b;
    b.vec = raw / norm;
    b.v = boson_mat(b.vec);
    return b;
}

BosonState BosonState::from_vector(const Vector& vec) {
    if (vec.size() != 3) {
        throw std::invalid_argument("boson state vector must have 3 components");
    }
    if (std::abs(vec.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("boson state is not normalized");
    }
    BosonState b;
    b.vec = vec;
    b.v = boson_mat(vec);
    return b;
}

RealVector schmidt_coeffs(const Vector& psi, int dim1, int dim2) {
    if (dim1 <= 0 || dim2 <= 0 || psi.size() != Eigen::Index(dim1) * dim2) {
        throw std::invalid_argument("state length does not factor as dim1 * dim2");
    }
    Matrix c(dim1, dim2);
    for (int i = 0; i < dim1; ++i) {
        for (int k = 0; k < dim2; ++k) {
            c(i, k) = psi(i * dim2 + k);
        }
    }
    return svd(c).sigma;
}

RealVector slater_values_fermion(const FermionState& f) {
    const RealVector sigma = svd(f.w).sigma;
    RealVector paired(2);
    for (int p = 0; p < 2; ++p) {
        const double hi = sigma(2 * p);
        const double lo = sigma(2 * p + 1);
        if (hi - lo > 1e-8) {
            throw std::runtime_error(
                "fermion singular values failed to pair up; antisymmetric structure violated");
        }
        paired(p) = 0.5 * (hi + lo);
    }
    return paired;
}

RealVector slater_values_boson(const BosonState& b) {
    return takagi(b.v).mu;
}

double pfaffian_residual(const FermionState& f) {
    return 8.0 * std::abs(pfaffian4(f.w));
}

RealSplit real_split(const Vector& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("pure state is not normalized");
    }
    const Complex self = (psi.transpose() * psi).value();
    const double phase = -0.5 * std::arg(self);
    const Vector rotated = std::exp(Complex(0, phase)) * psi;

    const RealVector re = rotated.real();
    const RealVector im = rotated.imag();
    const double cn = re.norm();
    const double sn = im.norm();

    RealSplit out;
    out.phase = phase;
    out.theta = std::atan2(sn, cn);
    out.x = re / cn;
    if (sn > 1e-13) {
        out.y = im / sn;
    } else {
        // real state: any unit vector orthogonal to x completes the split
        int pivot = 0;
        out.x.cwiseAbs().minCoeff(&pivot);
        RealVector y = RealVector::Zero(out.x.size());
        y(pivot) = 1;
        y -= y.dot(out.x) * out.x;
        out.y = y / y.norm();
    }
    return out;
}

Matrix magic_transform(ModelKind kind) {
    if (kind == ModelKind::spin1) {
        return Matrix::Identity(3, 3);  // T = I, the Cartesian basis is already magic
    }
    const ModelDescriptor& m = make_model(kind);
    return takagi(m.conjugation.t).w;
}

Matrix sample_symmetry(const ModelDescriptor& m, ensemble::Rng& rng) {
    return m.symmetrySampler(rng);
}

Vector sample_classical_pure(const ModelDescriptor& m, ensemble::Rng& rng) {
    switch (m.kind) {
        case ModelKind::qubit2:
            return kron(ensemble::haar_pure(rng, 2), ensemble::haar_pure(rng, 2));
        case ModelKind::fermion4: {
            for (;;) {
                const Vector a = ensemble::gaussian_matrix(rng, 4, 1);
                const Vector b = ensemble::gaussian_matrix(rng, 4, 1);
                Matrix w = a * b.transpose() - b * a.transpose();
                Vector x = fermion_vec(w);
                const double norm = x.norm();
                if (norm > 1e-8) {
                    return x / norm;
                }
            }
        }
        case ModelKind::boson2: {
            for (;;) {
                const Vector a = ensemble::gaussian_matrix(rng, 2, 1);
                Vector x = boson_vec(a * a.transpose());
                const double norm = x.norm();
                if (norm > 1e-8) {
                    return x / norm;
                }
            }
        }
        case ModelKind::spin1: {
            Vector coherent(3);
            coherent << Complex(1, 0), Complex(0, 1), Complex(0, 0);
            coherent /= std::sqrt(2.0);
            return random_rotation(rng).cast<Complex>() * coherent;
        }
    }
    throw std::invalid_argument("unknown model kind");
}

RealMatrix random_rotation(ensemble::Rng& rng) {
    RealMatrix g(3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g(i, j) = rng.normal();
        }
    }
    Eigen::HouseholderQR<RealMatrix> qr(g);
    RealMatrix q = qr.householderQ();
    const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 3; ++j) {
        if (r(j, j) < 0) {
            q.col(j) = -q.col(j);
        }
    }
    if (q.determinant() < 0) {
        q.col(2) = -q.col(2);
    }
    return q;
}

}  // namespace croof
