#pragma once

#include <stdexcept>
#include <string>

#include <croof/concurrence.hpp>
#include <croof/density.hpp>
#include <croof/models.hpp>

#include "json.hpp"

namespace croof::io {

// Malformed document or schema violation; distinct from std::invalid_argument,
// which callers reserve for structurally valid input that fails a physical
// invariant (normalization, positivity, ...).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// On-disk state: {"model": ..., "kind": "pure"|"mixed", "dim": n, "data": ...}.
// Complex numbers serialize as [re, im]; matrices as row-major arrays of rows.
struct StateFile {
    ModelKind model = ModelKind::qubit2;
    bool pure = false;
    Vector state;  // filled when kind is "pure"
    Matrix rho;    // filled when kind is "mixed"

    int dim() const { return pure ? int(state.size()) : int(rho.rows()); }
};

// On-disk decomposition: weights, component states, per-component
// concurrences and the reconstruction residual, tagged with model and dim.
struct DecompositionFile {
    ModelKind model = ModelKind::qubit2;
    int dim = 0;
    Decomposition decomposition;
};

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StateFile& sf);
StateFile state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DecompositionFile& df);
DecompositionFile decomposition_from_json(const nlohmann::json& j);

// File-level helpers; all failures (unreadable, unwritable, invalid JSON)
// surface as ParseError.
nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

StateFile read_state(const std::string& path);
void write_state(const std::string& path, const StateFile& sf);

DecompositionFile read_decomposition(const std::string& path);
void write_decomposition(const std::string& path, const DecompositionFile& df);

// Runs the physical validation deferred by parsing; throws
// std::invalid_argument naming the violated invariant.
DensityMatrix to_density(const StateFile& sf);

}  // namespace croof::io
