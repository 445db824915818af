#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <croof/matkernel.hpp>

#include "testutil.hpp"

using namespace croof;
using testutil::Rng;

namespace {
const Matrix kSigmaY = (Matrix(2, 2) << Complex(0, 0), Complex(0, -1),  //
                        Complex(0, 1), Complex(0, 0))
                           .finished();
}

TEST_CASE("kron") {
    SUBCASE("identity case") {
        CHECK((kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) - Matrix::Identity(4, 4)).norm() ==
              doctest::Approx(0.0));
    }
    SUBCASE("sigma_y tensor sigma_y is the antidiagonal (-1,1,1,-1)") {
        Matrix t = kron(kSigmaY, kSigmaY);
        Matrix expect = Matrix::Zero(4, 4);
        expect(0, 3) = -1;
        expect(1, 2) = 1;
        expect(2, 1) = 1;
        expect(3, 0) = -1;
        CHECK((t - expect).norm() < 1e-15);
    }
    SUBCASE("mixed-product with vectors, per-entry oracle") {
        Rng rng(101);
        for (int it = 0; it < 200; ++it) {
            Matrix a = testutil::random_matrix(rng, 2, 2);
            Matrix b = testutil::random_matrix(rng, 3, 2);
            Vector x = testutil::random_state(rng, 2);
            Vector y = testutil::random_state(rng, 2);
            Matrix ab = kron(a, b);
            // index convention oracle
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 3; ++k)
                    for (int j = 0; j < 2; ++j)
                        for (int l = 0; l < 2; ++l)
                            CHECK(std::abs(ab(i * 3 + k, j * 2 + l) - a(i, j) * b(k, l)) < 1e-15);
            Vector lhs = ab * kron(x, y);
            Vector rhs = kron((a * x).eval(), (b * y).eval());
            CHECK((lhs - rhs).norm() < 1e-12);
        }
    }
}

TEST_CASE("partial_trace") {
    Rng rng(102);
    SUBCASE("product operators, direct summation oracle") {
        for (int it = 0; it < 200; ++it) {
            Matrix x = testutil::random_matrix(rng, 3, 3);
            Matrix y = testutil::random_matrix(rng, 4, 4);
            Matrix m = kron(x, y);
            CHECK((partial_trace(m, 3, 4, Subsystem::second) - x * y.trace()).norm() < 1e-12);
            CHECK((partial_trace(m, 3, 4, Subsystem::first) - y * x.trace()).norm() < 1e-12);
        }
    }
    SUBCASE("identity splits") {
        Matrix r = partial_trace(Matrix::Identity(4, 4), 2, 2, Subsystem::first);
        CHECK((r - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-15);
    }
    SUBCASE("general operator vs elementwise sum") {
        Matrix m = testutil::random_matrix(rng, 6, 6);  // dims 2 x 3
        Matrix t1 = partial_trace(m, 2, 3, Subsystem::first);
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                Complex acc = 0;
                for (int i = 0; i < 2; ++i) acc += m(i * 3 + k, i * 3 + l);
                CHECK(std::abs(t1(k, l) - acc) < 1e-15);
            }
    }
    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS(partial_trace(Matrix::Identity(5, 5), 2, 2, Subsystem::first),
                        std::invalid_argument);
    }
}

TEST_CASE("eig_hermitian") {
    Rng rng(103);
    SUBCASE("diagonal case sorts descending") {
        Matrix d = Matrix::Zero(3, 3);
        d.diagonal() << 1, 2, 3;
        SpectralData s = eig_hermitian(d);
        CHECK(s.values(0) == doctest::Approx(3));
        CHECK(s.values(1) == doctest::Approx(2));
        CHECK(s.values(2) == doctest::Approx(1));
    }
    SUBCASE("reconstruction and orthonormality on random inputs") {
        for (int dim : {2, 3, 4, 6}) {
            for (int it = 0; it < 250; ++it) {
                Matrix h = testutil::random_hermitian(rng, dim);
                SpectralData s = eig_hermitian(h);
                Matrix rec = s.vectors * s.values.asDiagonal() * s.vectors.adjoint();
                CHECK((rec - h).norm() < 1e-10);
                CHECK((s.vectors.adjoint() * s.vectors - Matrix::Identity(dim, dim)).norm() < 1e-10);
                for (int k = 1; k < dim; ++k) CHECK(s.values(k) <= s.values(k - 1) + 1e-14);
            }
        }
    }
    SUBCASE("spectrum is invariant under unitary conjugation") {
        for (int it = 0; it < 100; ++it) {
            Matrix h = testutil::random_hermitian(rng, 4);
            Matrix u = testutil::random_unitary(rng, 4);
            SpectralData a = eig_hermitian(h);
            SpectralData b = eig_hermitian((u * h * u.adjoint()).eval());
            CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
    SUBCASE("non-Hermitian input throws") {
        Matrix m = testutil::random_matrix(rng, 3, 3);
        m(0, 1) += Complex(0.5, 0.5);
        CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
    }
}

TEST_CASE("svd") {
    Rng rng(104);
    SUBCASE("diagonal and Bell coefficient matrices") {
        Matrix d = Matrix::Zero(2, 2);
        d.diagonal() << 3, 1;
        CHECK((svd(d).sigma - (RealVector(2) << 3, 1).finished()).norm() < 1e-12);
        Matrix bell = Matrix::Identity(2, 2) / std::sqrt(2.0);
        RealVector sig = svd(bell).sigma;
        CHECK(sig(0) == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(sig(1) == doctest::Approx(1 / std::sqrt(2.0)));
    }
    SUBCASE("reconstruction, unitarity, eig oracle on random 3x4") {
        for (int it = 0; it < 500; ++it) {
            Matrix m = testutil::random_matrix(rng, 3, 4);
            SvdData s = svd(m);
            Matrix sig = Matrix::Zero(3, 4);
            sig.diagonal() = s.sigma.cast<Complex>();
            CHECK((s.u * sig * s.v.adjoint() - m).norm() < 1e-10);
            CHECK((s.u.adjoint() * s.u - Matrix::Identity(3, 3)).norm() < 1e-10);
            CHECK((s.v.adjoint() * s.v - Matrix::Identity(4, 4)).norm() < 1e-10);
            // independent route: sigma^2 are the eigenvalues of m m^dagger
            SpectralData e = eig_hermitian((m * m.adjoint()).eval());
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(s.sigma(k) - std::sqrt(std::max(e.values(k), 0.0))) < 1e-10);
        }
    }
    SUBCASE("square random reconstruction across dimensions") {
        for (int dim : {2, 3, 4, 6, 9}) {
            for (int it = 0; it < 200; ++it) {
                Matrix m = testutil::random_matrix(rng, dim, dim);
                SvdData s = svd(m);
                CHECK((s.u * s.sigma.asDiagonal().toDenseMatrix().cast<Complex>() * s.v.adjoint() - m)
                          .norm() < 1e-10);
            }
        }
    }
}

TEST_CASE("takagi") {
    Rng rng(105);
    SUBCASE("identity gives unit mu and a real orthogonal factor") {
        TakagiData t = takagi(Matrix::Identity(3, 3));
        CHECK((t.mu - RealVector::Ones(3)).norm() < 1e-12);
        CHECK(t.w.imag().norm() < 1e-12);
        CHECK((t.w * t.w.transpose() - Matrix::Identity(3, 3)).norm() < 1e-12);
    }
    SUBCASE("permutation matrix") {
        Matrix s(2, 2);
        s << 0, 1, 1, 0;
        TakagiData t = takagi(s);
        CHECK((t.mu - RealVector::Ones(2)).norm() < 1e-12);
        CHECK((t.w * t.mu.asDiagonal() * t.w.transpose() - s).norm() < 1e-12);
    }
    SUBCASE("random symmetric: reconstruction, unitarity, svd oracle") {
        for (int dim : {2, 3, 4, 6}) {
            for (int it = 0; it < 250; ++it) {
                Matrix s = testutil::random_symmetric(rng, dim);
                TakagiData t = takagi(s);
                CHECK((t.w * t.mu.asDiagonal() * t.w.transpose() - s).norm() < 1e-10);
                CHECK((t.w.adjoint() * t.w - Matrix::Identity(dim, dim)).norm() < 1e-10);
                CHECK((t.mu - svd(s).sigma).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
    SUBCASE("rank-deficient and degenerate inputs stay unitary") {
        for (int it = 0; it < 200; ++it) {
            Vector a = testutil::random_state(rng, 4);
            Matrix s = a * a.transpose();  // rank one
            TakagiData t = takagi(s);
            CHECK((t.w * t.mu.asDiagonal() * t.w.transpose() - s).norm() < 1e-10);
            CHECK((t.w.adjoint() * t.w - Matrix::Identity(4, 4)).norm() < 1e-10);
            CHECK(t.mu(1) < 1e-10);
        }
        TakagiData z = takagi(Matrix::Zero(3, 3));
        CHECK(z.mu.norm() == 0.0);
        CHECK((z.w.adjoint() * z.w - Matrix::Identity(3, 3)).norm() < 1e-12);
        // scalar multiples of a symmetric unitary: fully degenerate spectrum
        Matrix su = testutil::random_symmetric_unitary(rng, 4);
        TakagiData d = takagi((Complex(0.7, 0) * su).eval());
        CHECK((d.mu - 0.7 * RealVector::Ones(4)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((d.w * d.mu.asDiagonal() * d.w.transpose() - 0.7 * su).norm() < 1e-10);
    }
    SUBCASE("non-symmetric input throws") {
        CHECK_THROWS_AS(takagi(testutil::random_matrix(rng, 3, 3)), std::invalid_argument);
    }
}

TEST_CASE("pfaffian4") {
    Rng rng(106);
    SUBCASE("single-term and zero cases") {
        Matrix x = Matrix::Zero(4, 4);
        x(0, 1) = 1;
        x(1, 0) = -1;
        x(2, 3) = 1;
        x(3, 2) = -1;
        CHECK(std::abs(pfaffian4(x) - Complex(1, 0)) < 1e-15);
        CHECK(std::abs(pfaffian4(Matrix::Zero(4, 4))) == 0.0);
    }
    SUBCASE("square equals determinant") {
        for (int it = 0; it < 1000; ++it) {
            Matrix g = testutil::random_matrix(rng, 4, 4);
            Matrix x = g - g.transpose().eval();
            Complex pf = pfaffian4(x);
            CHECK(std::abs(pf * pf - x.determinant()) < 1e-9 * std::max(1.0, std::abs(x.determinant())));
        }
    }
    SUBCASE("transformation law under congruence") {
        for (int it = 0; it < 300; ++it) {
            Matrix g = testutil::random_matrix(rng, 4, 4);
            Matrix x = g - g.transpose().eval();
            Matrix u = testutil::random_unitary(rng, 4);
            Complex lhs = pfaffian4((u * x * u.transpose()).eval());
            Complex rhs = u.determinant() * pfaffian4(x);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
        }
    }
    SUBCASE("shape and symmetry errors") {
        CHECK_THROWS_AS(pfaffian4(Matrix::Identity(3, 3)), std::invalid_argument);
        CHECK_THROWS_AS(pfaffian4(Matrix::Identity(4, 4)), std::invalid_argument);
    }
}

TEST_CASE("is_positive_definite") {
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 1, 1, 1;
    CHECK(is_positive_definite(d, 1e-9) == Definiteness::positive);
    d.diagonal() << 1, 0, -1;
    CHECK(is_positive_definite(d, 1e-9) == Definiteness::not_positive);
    d.diagonal() << 1, 1, 5e-10;
    CHECK(is_positive_definite(d, 1e-9) == Definiteness::boundary);
}
