// Acceptance gate: ten end-to-end checks, one line of output each. Exit code
// is the number of failed checks.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <croof/concurrence.hpp>
#include <croof/models.hpp>
#include <croof/oracle.hpp>
#include <croof/sampling.hpp>
#include <croof/spin1.hpp>

#include "testutil.hpp"

using namespace croof;
using ensemble::Rng;

namespace {

constexpr ModelKind kAllModels[] = {ModelKind::qubit2, ModelKind::fermion4, ModelKind::boson2,
                                    ModelKind::spin1};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

ensemble::SamplerConfig hs_config(std::uint64_t seed, int count, int dim) {
    ensemble::SamplerConfig config;
    config.seed = seed;
    config.count = count;
    config.dimension = dim;
    config.kind = ensemble::SampleKind::hsMixed;
    return config;
}

bool golden_spectra(std::string& detail) {
    double worst = 0;

    const RealVector& q = make_model(ModelKind::qubit2).bilinear.spectral().values;
    worst = std::max(worst, std::abs(q(0) - 4.0));
    worst = std::max(worst, q.tail(q.size() - 1).cwiseAbs().maxCoeff());

    const RealVector& s = make_model(ModelKind::spin1).bilinear.spectral().values;
    const double expected[9] = {3, 2, 2, 2, 0, 0, 0, 0, 0};
    for (int i = 0; i < 9; ++i) worst = std::max(worst, std::abs(s(i) - expected[i]));

    Matrix golden = Matrix::Zero(9, 9);
    const int idx[3] = {2, 4, 6};
    const double sign[3] = {1, -1, 1};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) golden(idx[i], idx[j]) = sign[i] * sign[j];
    worst = std::max(
        worst,
        (make_model(ModelKind::boson2).bilinear.matrix() - golden).cwiseAbs().maxCoeff());

    detail = "max deviation " + num(worst);
    return worst <= 1e-10;
}

bool partial_trace_normalization(std::string& detail) {
    double worst = 0;
    const auto check = [&worst](const BilinearOperator& a, double constant) {
        const int d = a.dim();
        const Matrix expected = constant * Matrix::Identity(d, d);
        worst = std::max(worst, std::abs(a.partial_trace_constant() - constant));
        worst = std::max(worst, (partial_trace(a.matrix(), d, d, Subsystem::first) - expected)
                                    .cwiseAbs()
                                    .maxCoeff());
        worst = std::max(worst, (partial_trace(a.matrix(), d, d, Subsystem::second) - expected)
                                    .cwiseAbs()
                                    .maxCoeff());
    };

    // Single-conjugation operators trace to the identity; the spin-1 operator
    // is built from four Kraus terms and traces to 3 * identity instead.
    for (ModelKind kind : kAllModels) {
        check(make_model(kind).bilinear, kind == ModelKind::spin1 ? 3.0 : 1.0);
    }
    Rng rng(1002);
    const int dims[3] = {3, 4, 6};
    for (int i = 0; i < 100; ++i) {
        const Matrix t = testutil::random_symmetric_unitary(rng, dims[i % 3]);
        check(bilinear_from_conjugation(Conjugation::from_matrix(t)), 1.0);
    }
    detail = "104 operators, max deviation " + num(worst);
    return worst <= 1e-10;
}

bool evaluation_routes_agree(std::string& detail) {
    double worst = 0;
    Rng rng(1003);
    for (ModelKind kind : kAllModels) {
        const ModelDescriptor& m = make_model(kind);
        for (int i = 0; i < 1000; ++i) {
            const Vector psi = ensemble::haar_pure(rng, m.hilbertDim);
            const double viaBilinear = pure_concurrence(m.bilinear, psi);
            double sq = 0;
            for (const Matrix& t : m.bilinear.kraus()) {
                sq += std::norm((psi.adjoint() * t * psi.conjugate()).value());
            }
            worst = std::max(worst, std::abs(viaBilinear * viaBilinear - sq));
            worst = std::max(worst, std::abs(viaBilinear - std::sqrt(sq)));
        }
    }
    detail = "4000 states, max route difference " + num(worst);
    return worst <= 1e-10;
}

bool coherent_components_suffice(std::string& detail) {
    std::vector<Matrix> states;
    states.reserve(1000);

    ensemble::SamplerConfig mixtures;
    mixtures.seed = 1004;
    mixtures.count = 500;
    mixtures.dimension = 3;
    mixtures.kind = ensemble::SampleKind::coherentMixture;
    mixtures.model = ModelKind::spin1;
    for (int i = 0; i < mixtures.count; ++i) {
        states.push_back(ensemble::sample_one(mixtures, std::uint64_t(i)));
    }

    Rng rng(1904);
    while (states.size() < 1000) {
        Matrix rho = ensemble::hs_mixed(rng, 3);
        if (spin1::trace_criterion(DensityMatrix(rho)).verdict == Verdict::classical) {
            states.push_back(std::move(rho));
        }
    }

    int failures = 0;
    std::size_t maxComponents = 0;
    double worstOverlap = 0;
    double worstKlyachko = 0;
    double worstResidual = 0;
    for (const Matrix& rho : states) {
        const DensityMatrix dm(rho);
        const Decomposition d = spin1::coherent_decomposition(dm);
        maxComponents = std::max(maxComponents, d.states.size());
        const double residual = (reconstruct(d, 3) - rho).norm();
        worstResidual = std::max(worstResidual, std::max(residual, d.reconstructionResidual));
        bool ok = d.states.size() <= 4 && residual <= 1e-10 &&
                  d.reconstructionResidual <= 1e-10;
        for (const Vector& phi : d.states) {
            const double overlap = std::abs((phi.transpose() * phi).value());
            const double klyachko = spin1::coherence_residual(phi);
            worstOverlap = std::max(worstOverlap, overlap);
            worstKlyachko = std::max(worstKlyachko, klyachko);
            ok = ok && overlap <= 1e-8 && klyachko <= 1e-7;
        }
        if (!ok) ++failures;
    }
    detail = "1000 states, <= " + std::to_string(maxComponents) + " components, overlap " +
             num(worstOverlap) + ", klyachko " + num(worstKlyachko) + ", residual " +
             num(worstResidual) + ", failures " + std::to_string(failures);
    return failures == 0;
}

bool criteria_equivalence(std::string& detail) {
    const ensemble::SamplerConfig config = hs_config(1005, 100000, 3);
    int disagreements = 0;
    int exclusionHits = 0;
    double worstA0 = 0;
    for (int i = 0; i < config.count; ++i) {
        const DensityMatrix dm(ensemble::sample_one(config, std::uint64_t(i)));
        const spin1::ClassifyReport rep = spin1::classify(dm);
        const spin1::GiraudData gd = spin1::giraud_z(dm);
        worstA0 = std::max(worstA0, std::abs(gd.a0 - rep.traceValue));
        if (gd.a0 < 0 && gd.a1 < 0) ++exclusionHits;
        const bool comparable = rep.muVerdict != Verdict::boundary &&
                                rep.traceVerdict != Verdict::boundary &&
                                rep.zVerdict != Verdict::boundary;
        if (comparable &&
            (rep.muVerdict != rep.traceVerdict || rep.traceVerdict != rep.zVerdict)) {
            ++disagreements;
        }
    }
    detail = "100000 samples, disagreements " + std::to_string(disagreements) +
             ", excluded sign pattern " + std::to_string(exclusionHits) + ", max |a0 - trace| " +
             num(worstA0);
    return disagreements == 0 && exclusionHits == 0 && worstA0 <= 1e-9;
}

bool oracle_corroborates_formula(std::string& detail) {
    bool ok = true;
    detail.clear();
    for (ModelKind kind : kAllModels) {
        const ModelDescriptor& m = make_model(kind);
        const ensemble::SamplerConfig config = hs_config(1006, 200, m.hilbertDim);
        int beats = 0;
        int within = 0;
        double worstGap = 0;
        for (int i = 0; i < config.count; ++i) {
            const DensityMatrix dm(ensemble::sample_one(config, std::uint64_t(i)));
            const double formula = mixed_concurrence(dm, m.conjugation);
            ensemble::OracleBudget budget;
            budget.seed = 7000 + std::uint64_t(i);
            const ensemble::OracleResult res = convex_roof_oracle(dm, m.bilinear, budget);
            const double gap = res.upperBound - formula;
            if (gap < -1e-9) ++beats;
            if (gap <= 1e-4) ++within;
            worstGap = std::max(worstGap, gap);
        }
        ok = ok && beats == 0 && within >= 198;
        if (!detail.empty()) detail += ", ";
        detail += to_string(kind) + " gap " + num(worstGap) +
                  (beats ? " BEATS " + std::to_string(beats) : "");
    }
    return ok;
}

bool werner_crossing(std::string& detail) {
    const ModelDescriptor& m = make_model(ModelKind::qubit2);
    const auto gap = [&m](double p) {
        const RealVector mu = mu_values(DensityMatrix(testutil::werner(p)), m.conjugation);
        return mu(0) - (mu.sum() - mu(0));
    };
    double lo = 0.2;
    double hi = 0.5;
    bool ok = gap(lo) < 0 && gap(hi) > 0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0 ? lo : hi) = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    ok = ok && std::abs(crossing - 1.0 / 3.0) <= 1e-6;

    double worstOracle = 0;
    for (const double p : {0.4, 0.6, 0.8}) {
        const DensityMatrix dm(testutil::werner(p));
        const double formula = mixed_concurrence(dm, m.conjugation);
        ensemble::OracleBudget budget;
        budget.seed = 1007;
        const ensemble::OracleResult res = convex_roof_oracle(dm, m.bilinear, budget);
        worstOracle = std::max(worstOracle, std::abs(res.upperBound - formula));
        ok = ok && res.upperBound >= formula - 1e-9;
    }
    ok = ok && worstOracle <= 1e-4;
    detail = "crossing at " + num(crossing) + ", oracle deviation " + num(worstOracle);
    return ok;
}

bool slater_components_suffice(std::string& detail) {
    const ModelDescriptor& m = make_model(ModelKind::fermion4);
    ensemble::SamplerConfig config;
    config.seed = 1008;
    config.count = 200;
    config.dimension = 6;
    config.kind = ensemble::SampleKind::classicalMixture;
    config.model = ModelKind::fermion4;

    int failures = 0;
    std::size_t maxComponents = 0;
    double worstPfaffian = 0;
    double worstResidual = 0;
    for (int i = 0; i < config.count; ++i) {
        const Matrix rho = ensemble::sample_one(config, std::uint64_t(i));
        const Decomposition d = optimal_decomposition(DensityMatrix(rho), m.conjugation);
        maxComponents = std::max(maxComponents, d.states.size());
        const double residual = (reconstruct(d, 6) - rho).norm();
        worstResidual = std::max(worstResidual, residual);
        bool ok = d.states.size() <= 8 && residual <= 1e-10;
        for (const Vector& phi : d.states) {
            const double pf = pfaffian_residual(FermionState::from_vector(phi));
            worstPfaffian = std::max(worstPfaffian, pf);
            ok = ok && pf <= 1e-8;
        }
        if (!ok) ++failures;
    }
    detail = "200 states, <= " + std::to_string(maxComponents) + " components, pfaffian " +
             num(worstPfaffian) + ", residual " + num(worstResidual) + ", failures " +
             std::to_string(failures);
    return failures == 0;
}

bool real_split_angle(std::string& detail) {
    const ModelDescriptor& m = make_model(ModelKind::spin1);
    Rng rng(1009);
    const Complex i1(0, 1);
    double worstTheta = 0;
    double worstResidual = 0;
    const auto residual = [&i1](const Vector& psi, const RealSplit& rs) {
        const Vector rebuilt = std::cos(rs.theta) * rs.x.cast<Complex>() +
                               i1 * std::sin(rs.theta) * rs.y.cast<Complex>();
        return (std::exp(i1 * rs.phase) * psi - rebuilt).norm();
    };
    for (int i = 0; i < 1000; ++i) {
        const Vector psi = sample_classical_pure(m, rng);
        const RealSplit rs = real_split(psi);
        worstTheta = std::max(worstTheta, std::abs(rs.theta - std::numbers::pi / 4));
        worstResidual = std::max(worstResidual, residual(psi, rs));
    }
    for (int i = 0; i < 1000; ++i) {
        const Vector psi = ensemble::haar_pure(rng, 3);
        worstResidual = std::max(worstResidual, residual(psi, real_split(psi)));
    }
    detail = "coherent angle deviation " + num(worstTheta) + ", reconstruction " +
             num(worstResidual);
    return worstTheta <= 1e-10 && worstResidual <= 1e-10;
}

bool total_variance_extremes(std::string& detail) {
    const ModelDescriptor& m = make_model(ModelKind::spin1);
    Rng rng(1010);
    double worstCoherent = 0;
    for (int i = 0; i < 1000; ++i) {
        worstCoherent = std::max(
            worstCoherent, std::abs(spin1::total_variance(sample_classical_pure(m, rng)) - 1.0));
    }
    Vector pole = Vector::Zero(3);
    pole(2) = 1;
    const double poleDelta = std::abs(spin1::total_variance(pole) - 2.0);

    double minRandom = 10;
    for (int i = 0; i < 10000; ++i) {
        minRandom = std::min(minRandom, spin1::total_variance(ensemble::haar_pure(rng, 3)));
    }
    detail = "coherent deviation " + num(worstCoherent) + ", pole deviation " + num(poleDelta) +
             ", min over 10000 random " + num(minRandom);
    return worstCoherent <= 1e-10 && poleDelta <= 1e-10 && minRandom >= 1.0 - 1e-10;
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {"bilinear spectra match their closed forms", golden_spectra},
        {"partial traces of bilinears are the expected multiple of the identity",
         partial_trace_normalization},
        {"bilinear and Kraus concurrence routes agree", evaluation_routes_agree},
        {"four coherent components suffice for classical spin-1 states",
         coherent_components_suffice},
        {"the three spin-1 classicality criteria agree", criteria_equivalence},
        {"the convex-roof oracle corroborates the formula", oracle_corroborates_formula},
        {"Werner concurrence crosses zero at 1/3 and matches the oracle", werner_crossing},
        {"eight Slater-rank-one components suffice for classical fermion states",
         slater_components_suffice},
        {"the real split has angle pi/4 on coherent states and reconstructs",
         real_split_angle},
        {"total variance is 1 on coherent states, 2 at the pole, minimized on the orbit",
         total_variance_extremes},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        const bool ok = c.run(detail);
        std::printf("[%2d/10] %s  %s (%s)\n", ++index, ok ? "PASS" : "FAIL", c.title,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
