#include <croof/io.hpp>

#include <fstream>

namespace croof::io {
namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex entries must be [re, im] number pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

const json& require(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + '"');
    return *it;
}

ModelKind require_model(const json& j) {
    const json& m = require(j, "model");
    if (!m.is_string()) throw ParseError("\"model\" must be a string");
    try {
        return model_kind_from_string(m.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

int require_dim(const json& j, ModelKind model) {
    const json& d = require(j, "dim");
    if (!d.is_number_integer() || d.get<int>() <= 0) {
        throw ParseError("\"dim\" must be a positive integer");
    }
    const int dim = d.get<int>();
    const int expected = make_model(model).hilbertDim;
    if (dim != expected) {
        throw ParseError("dim " + std::to_string(dim) + " does not match model " +
                         to_string(model) + " (expected " + std::to_string(expected) + ")");
    }
    return dim;
}

double require_number(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

}  // namespace

json to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("state data must be a nonempty array");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(long(i)) = complex_from_json(j[i]);
    return v;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix data must be a nonempty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ParseError("matrix rows must be nonempty arrays");
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ParseError("matrix rows must all have the same length");
        }
        for (std::size_t c = 0; c < cols; ++c) m(long(r), long(c)) = complex_from_json(j[r][c]);
    }
    return m;
}

json to_json(const StateFile& sf) {
    json out;
    out["model"] = to_string(sf.model);
    out["kind"] = sf.pure ? "pure" : "mixed";
    out["dim"] = sf.dim();
    out["data"] = sf.pure ? to_json(sf.state) : to_json(sf.rho);
    return out;
}

StateFile state_from_json(const json& j) {
    StateFile sf;
    sf.model = require_model(j);
    const json& kind = require(j, "kind");
    if (!kind.is_string() || (kind != "pure" && kind != "mixed")) {
        throw ParseError("\"kind\" must be \"pure\" or \"mixed\"");
    }
    sf.pure = kind == "pure";
    const int dim = require_dim(j, sf.model);
    const json& data = require(j, "data");
    if (sf.pure) {
        sf.state = vector_from_json(data);
        if (sf.state.size() != dim) throw ParseError("pure state data length does not match dim");
    } else {
        sf.rho = matrix_from_json(data);
        if (sf.rho.rows() != dim || sf.rho.cols() != dim) {
            throw ParseError("mixed state data is not a dim x dim matrix");
        }
    }
    return sf;
}

json to_json(const DecompositionFile& df) {
    json out;
    out["model"] = to_string(df.model);
    out["dim"] = df.dim;
    out["weights"] = df.decomposition.weights;
    json states = json::array();
    for (const Vector& phi : df.decomposition.states) states.push_back(to_json(phi));
    out["states"] = std::move(states);
    out["componentConcurrences"] = df.decomposition.componentConcurrences;
    out["reconstructionResidual"] = df.decomposition.reconstructionResidual;
    return out;
}

DecompositionFile decomposition_from_json(const json& j) {
    DecompositionFile df;
    df.model = require_model(j);
    const json& d = require(j, "dim");
    if (!d.is_number_integer() || d.get<int>() <= 0) {
        throw ParseError("\"dim\" must be a positive integer");
    }
    df.dim = d.get<int>();

    const json& weights = require(j, "weights");
    const json& states = require(j, "states");
    const json& concurrences = require(j, "componentConcurrences");
    if (!weights.is_array() || weights.empty()) throw ParseError("\"weights\" must be a nonempty array");
    if (!states.is_array() || states.size() != weights.size() || !concurrences.is_array() ||
        concurrences.size() != weights.size()) {
        throw ParseError("weights, states and componentConcurrences must have equal length");
    }
    for (const json& w : weights) {
        if (!w.is_number()) throw ParseError("weights must be numbers");
        df.decomposition.weights.push_back(w.get<double>());
    }
    for (const json& s : states) {
        Vector phi = vector_from_json(s);
        if (phi.size() != df.dim) throw ParseError("component state length does not match dim");
        df.decomposition.states.push_back(std::move(phi));
    }
    for (const json& c : concurrences) {
        if (!c.is_number()) throw ParseError("componentConcurrences must be numbers");
        df.decomposition.componentConcurrences.push_back(c.get<double>());
    }
    df.decomposition.reconstructionResidual = require_number(j, "reconstructionResidual");
    return df;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << '\n';
}

StateFile read_state(const std::string& path) { return state_from_json(read_json(path)); }

void write_state(const std::string& path, const StateFile& sf) { write_json(path, to_json(sf)); }

DecompositionFile read_decomposition(const std::string& path) {
    return decomposition_from_json(read_json(path));
}

void write_decomposition(const std::string& path, const DecompositionFile& df) {
    write_json(path, to_json(df));
}

DensityMatrix to_density(const StateFile& sf) {
    return sf.pure ? DensityMatrix::pure(sf.state) : DensityMatrix(sf.rho);
}

}  // namespace croof::io
