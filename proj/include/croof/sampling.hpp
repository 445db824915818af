#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <croof/models.hpp>
#include <croof/rng.hpp>
#include <croof/types.hpp>

namespace croof::ensemble {

Matrix gaussian_matrix(Rng& rng, int rows, int cols);

// Normalized vector of independent complex normals.
Vector haar_pure(Rng& rng, int dim);

// QR of a Gaussian matrix with the R-diagonal phases absorbed into Q.
Matrix haar_unitary(Rng& rng, int dim);

// Determinant fixed to +1.
Matrix special_unitary(Rng& rng, int dim);

// G G^dag / tr(G G^dag) for a square Gaussian G (Hilbert-Schmidt measure).
Matrix hs_mixed(Rng& rng, int dim);

enum class SampleKind { haarPure, hsMixed, classicalMixture, coherentMixture };

std::string to_string(SampleKind kind);
SampleKind sample_kind_from_string(const std::string& name);

struct SamplerConfig {
    std::uint64_t seed = 0;
    int count = 1;
    int dimension = 3;
    SampleKind kind = SampleKind::haarPure;
    // Selects the classical set for the mixture kinds; ignored by haarPure
    // and hsMixed.
    ModelKind model = ModelKind::spin1;
};

// Sample `index` of the stream, as a density matrix (haarPure samples come
// back as projectors). Depends only on (config, index), so samples can be
// produced out of order or concurrently.
Matrix sample_one(const SamplerConfig& config, std::uint64_t index);

// The unit vector behind a haarPure sample; rejects other kinds.
Vector sample_pure_one(const SamplerConfig& config, std::uint64_t index);

// The full stream, config.count matrices in index order.
std::vector<Matrix> sample(const SamplerConfig& config);

}  // namespace croof::ensemble
