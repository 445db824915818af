#pragma once

#include <array>
#include <functional>
#include <string>

#include <croof/concurrence.hpp>
#include <croof/conjugation.hpp>
#include <croof/rng.hpp>

namespace croof {

enum class ModelKind { qubit2, fermion4, boson2, spin1 };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

// One physical instantiation of the concurrence machinery: two distinguishable
// qubits, two spin-3/2 fermions, two 2-mode bosons, or a single spin 1.
struct ModelDescriptor {
    ModelKind kind;
    int hilbertDim;
    Conjugation conjugation;
    BilinearOperator bilinear;
    // Multiplies |<psi|T|psi*>| so that the maximally nonclassical state has
    // concurrence 1; equal to 1 for all four models.
    double normalization;
    // Draws one symmetry-group element acting on state vectors.
    std::function<Matrix(ensemble::Rng&)> symmetrySampler;
};

const ModelDescriptor& make_model(ModelKind kind);

double model_concurrence(const ModelDescriptor& m, const Vector& psi);

// Two fermions in a 4-dimensional single-particle space: an antisymmetric
// amplitude matrix w alongside its six-component vector form
// 2*(w12, w13, w14, w23, w24, w34).
struct FermionState {
    Matrix w;
    Vector vec;

    static FermionState from_matrix(const Matrix& w);
    static FermionState from_vector(const Vector& vec);
};

// Two bosons in two modes: a symmetric amplitude matrix v alongside its
// three-component vector form (v11/sqrt(2), v12, v22/sqrt(2)), renormalized
// to unit length.
struct BosonState {
    Matrix v;
    Vector vec;

    static BosonState from_matrix(const Matrix& v);
    static BosonState from_vector(const Vector& vec);
};

// Singular values l_k of the coefficient matrix of psi viewed as a
// dim1 x dim2 bipartite state, descending.
RealVector schmidt_coeffs(const Vector& psi, int dim1, int dim2);

// Singular values of w come in degenerate pairs; returns one value per pair.
// The Slater rank is the number of pairs above 1e-10.
RealVector slater_values_fermion(const FermionState& f);

// Takagi values of v; the bosonic Slater rank is the count above 1e-10.
RealVector slater_values_boson(const BosonState& b);

// 8 |Pf(w)|; zero exactly on Slater-rank-1 states and equal to the fermionic
// pure concurrence.
double pfaffian_residual(const FermionState& f);

struct RealSplit {
    double theta;  // in [0, pi/4]
    RealVector x;
    RealVector y;
    double phase;  // e^{i phase} psi = cos(theta) x + i sin(theta) y
};

// Splits a unit vector into two real, unit, orthogonal vectors after pulling
// out a global phase.
RealSplit real_split(const Vector& psi);

// Unitary basis change B with B^dag T B* = I: in the new basis the
// conjugation form of the model reduces to psi^T psi.
Matrix magic_transform(ModelKind kind);

// Spin-1 angular momentum matrices in the Cartesian basis.
const std::array<Matrix, 3>& spin_one_generators();

// Uniformly random element of the model's symmetry group.
Matrix sample_symmetry(const ModelDescriptor& m, ensemble::Rng& rng);

// Random pure state from the model's classical set (product states, single
// Slater determinants, single-mode condensates, rotated coherent states).
Vector sample_classical_pure(const ModelDescriptor& m, ensemble::Rng& rng);

// Haar-distributed rotation matrix, determinant +1.
RealMatrix random_rotation(ensemble::Rng& rng);

}  // namespace croof
