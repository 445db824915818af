#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <croof/concurrence.hpp>
#include <croof/io.hpp>
#include <croof/models.hpp>
#include <croof/oracle.hpp>
#include <croof/sampling.hpp>
#include <croof/spin1.hpp>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using namespace croof;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string model;
    std::string input;
    std::string output;
    std::string decomposition;
    std::string csv;
    std::uint64_t seed = 0;
    int samples = 0;
    double tolerance = 1e-9;
    bool requireClassical = false;
    bool oracle = false;
};

Verdict gap_verdict(double gap, double band) {
    if (gap > band) return Verdict::nonclassical;
    if (gap < -band) return Verdict::classical;
    return Verdict::boundary;
}

// The state file names its own model; an explicit --model must agree.
ModelKind resolve_model(const Options& opt, const io::StateFile& sf) {
    if (!opt.model.empty() && opt.model != to_string(sf.model)) {
        throw std::invalid_argument("state file declares model " + to_string(sf.model) +
                                    " but --model requested " + opt.model);
    }
    return sf.model;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int cmd_analyze(const Options& opt) {
    const io::StateFile sf = io::read_state(opt.input);
    const ModelKind kind = resolve_model(opt, sf);
    const ModelDescriptor& model = make_model(kind);
    const DensityMatrix rho = io::to_density(sf);

    const RealVector mu = mu_values(rho, model.conjugation);
    const double muGap = mu(0) - (mu.sum() - mu(0));
    const double concurrence = mixed_concurrence(rho, model.conjugation);

    json report;
    report["version"] = kVersion;
    report["model"] = to_string(kind);
    report["seed"] = opt.seed;
    report["concurrence"] = concurrence;
    report["muValues"] = std::vector<double>(mu.data(), mu.data() + mu.size());
    report["residuals"] = {
        {"hermiticity", (rho.matrix() - rho.matrix().adjoint()).norm()},
        {"traceDeviation", std::abs(rho.matrix().trace().real() - 1.0)},
    };

    json criteria;
    criteria["muGap"] = muGap;
    json verdicts;
    verdicts["mu"] = to_string(gap_verdict(muGap, opt.tolerance));
    if (kind == ModelKind::spin1) {
        const spin1::ClassifyReport rep = spin1::classify(rho, opt.tolerance);
        criteria["traceValue"] = rep.traceValue;
        criteria["zMinEigenvalue"] = rep.zMinEigenvalue;
        verdicts["trace"] = to_string(rep.traceVerdict);
        verdicts["z"] = to_string(rep.zVerdict);
        verdicts["agree"] = rep.agree;
    }
    report["criteria"] = std::move(criteria);
    report["verdicts"] = std::move(verdicts);

    if (opt.oracle) {
        ensemble::OracleBudget budget;
        budget.seed = opt.seed;
        const ensemble::OracleResult res = convex_roof_oracle(rho, model.bilinear, budget);
        report["oracle"] = {
            {"upperBound", res.upperBound},
            {"gap", res.upperBound - concurrence},
            {"converged", res.converged},
            {"restarts", res.restarts},
        };
    }

    std::cout << report.dump(2) << '\n';
    return 0;
}

int cmd_decompose(const Options& opt) {
    const io::StateFile sf = io::read_state(opt.input);
    const ModelKind kind = resolve_model(opt, sf);
    const ModelDescriptor& model = make_model(kind);
    const DensityMatrix rho = io::to_density(sf);

    io::DecompositionFile df;
    df.model = kind;
    df.dim = model.hilbertDim;
    df.decomposition = optimal_decomposition(rho, model.conjugation);
    io::write_decomposition(opt.output, df);
    std::cerr << "wrote " << df.decomposition.weights.size() << " components to " << opt.output
              << '\n';
    return 0;
}

int cmd_ensemble(const Options& opt) {
    const ModelKind kind = model_kind_from_string(opt.model);
    const ModelDescriptor& model = make_model(kind);

    ensemble::SamplerConfig config;
    config.seed = opt.seed;
    config.count = opt.samples;
    config.dimension = model.hilbertDim;
    config.kind = ensemble::SampleKind::hsMixed;
    config.model = kind;

    std::ostringstream csv;
    csv << "sampleIndex,concurrence,traceValue,muGap,zMinEigenvalue,verdict\n";

    int classicalCount = 0;
    int boundaryCount = 0;
    int comparable = 0;
    int agreeCount = 0;
    double maxOracleGap = 0;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < opt.samples; ++i) {
        const DensityMatrix rho(ensemble::sample_one(config, std::uint64_t(i)));
        double muGap;
        std::string traceCol;
        std::string zCol;
        if (kind == ModelKind::spin1) {
            const spin1::ClassifyReport rep = spin1::classify(rho, opt.tolerance);
            muGap = rep.muGap;
            traceCol = fmt(rep.traceValue);
            zCol = fmt(rep.zMinEigenvalue);
            const bool anyBoundary = rep.muVerdict == Verdict::boundary ||
                                     rep.traceVerdict == Verdict::boundary ||
                                     rep.zVerdict == Verdict::boundary;
            if (!anyBoundary) {
                ++comparable;
                if (rep.agree) ++agreeCount;
            }
        } else {
            const RealVector mu = mu_values(rho, model.conjugation);
            muGap = mu(0) - (mu.sum() - mu(0));
        }
        const double concurrence = std::max(0.0, muGap);
        const Verdict verdict = gap_verdict(muGap, opt.tolerance);
        if (verdict == Verdict::classical) ++classicalCount;
        if (verdict == Verdict::boundary) ++boundaryCount;

        if (opt.oracle) {
            ensemble::OracleBudget budget;
            budget.seed = opt.seed + std::uint64_t(i);
            const ensemble::OracleResult res = convex_roof_oracle(rho, model.bilinear, budget);
            maxOracleGap = std::max(maxOracleGap, res.upperBound - concurrence);
        }

        csv << i << ',' << fmt(concurrence) << ',' << traceCol << ',' << fmt(muGap) << ','
            << zCol << ',' << to_string(verdict) << '\n';
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);

    json stats;
    stats["version"] = kVersion;
    stats["model"] = to_string(kind);
    stats["kind"] = to_string(config.kind);
    stats["samples"] = opt.samples;
    stats["seed"] = opt.seed;
    stats["tolerance"] = opt.tolerance;
    stats["classicalFraction"] = double(classicalCount) / double(opt.samples);
    stats["boundaryFraction"] = double(boundaryCount) / double(opt.samples);
    stats["agreementRate"] = comparable > 0 ? double(agreeCount) / double(comparable) : 1.0;
    stats["maxOracleGap"] = opt.oracle ? json(maxOracleGap) : json(nullptr);

    // runtime stays off the stats file so reruns with one seed are
    // byte-identical
    std::cerr << "runtime: " << elapsed.count() << " ms\n";

    if (opt.output.empty()) {
        std::cout << stats.dump(2) << '\n';
    } else {
        io::write_json(opt.output, stats);
    }
    if (!opt.csv.empty()) {
        std::ofstream out(opt.csv);
        if (!out) throw io::ParseError("cannot write " + opt.csv);
        out << csv.str();
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    const io::StateFile sf = io::read_state(opt.input);
    const io::DecompositionFile df = io::read_decomposition(opt.decomposition);
    const ModelKind kind = resolve_model(opt, sf);
    if (df.model != kind) {
        throw std::invalid_argument("decomposition is for model " + to_string(df.model) +
                                    " but the state is " + to_string(kind));
    }
    const ModelDescriptor& model = make_model(kind);
    if (df.dim != model.hilbertDim) {
        throw std::invalid_argument("decomposition dim " + std::to_string(df.dim) +
                                    " does not match model " + to_string(kind));
    }

    double weightSum = 0;
    for (const double w : df.decomposition.weights) {
        if (w <= 0) throw std::invalid_argument("decomposition weights must be positive");
        weightSum += w;
    }
    if (std::abs(weightSum - 1.0) > 1e-8) {
        throw std::invalid_argument("decomposition weights sum to " + fmt(weightSum) +
                                    ", not 1");
    }
    const Matrix target = sf.pure ? Matrix(sf.state * sf.state.adjoint()) : sf.rho;
    const double residual = (reconstruct(df.decomposition, model.hilbertDim) - target).norm();

    double maxNormDeviation = 0;
    double maxConcurrenceError = 0;
    double maxComponentConcurrence = 0;
    for (std::size_t k = 0; k < df.decomposition.states.size(); ++k) {
        const double n = df.decomposition.states[k].norm();
        maxNormDeviation = std::max(maxNormDeviation, std::abs(n - 1.0));
        if (n < 0.5) continue;  // normalization check already fails decisively
        const double c =
            pure_concurrence(model.conjugation, Vector(df.decomposition.states[k] / n));
        maxConcurrenceError = std::max(
            maxConcurrenceError, std::abs(c - df.decomposition.componentConcurrences[k]));
        maxComponentConcurrence = std::max(maxComponentConcurrence, c);
    }

    bool pass = true;
    json checks;
    checks["reconstructionResidual"] = {
        {"value", residual}, {"threshold", 1e-8}, {"pass", residual <= 1e-8}};
    pass = pass && residual <= 1e-8;
    checks["componentNormalization"] = {{"maxDeviation", maxNormDeviation},
                                        {"threshold", 1e-8},
                                        {"pass", maxNormDeviation <= 1e-8}};
    pass = pass && maxNormDeviation <= 1e-8;
    checks["componentConcurrences"] = {{"maxError", maxConcurrenceError},
                                       {"threshold", 1e-8},
                                       {"pass", maxConcurrenceError <= 1e-8}};
    pass = pass && maxConcurrenceError <= 1e-8;
    if (opt.requireClassical) {
        checks["classicalComponents"] = {{"maxConcurrence", maxComponentConcurrence},
                                         {"threshold", opt.tolerance},
                                         {"pass", maxComponentConcurrence <= opt.tolerance}};
        pass = pass && maxComponentConcurrence <= opt.tolerance;
    }

    json out;
    out["pass"] = pass;
    out["checks"] = std::move(checks);
    std::cout << out.dump(2) << '\n';
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized concurrence and classicality toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> modelNames = {"qubit2", "fermion4", "boson2", "spin1"};

    CLI::App* analyze =
        app.add_subcommand("analyze", "report concurrence, mu values and verdicts for a state");
    CLI::App* decompose =
        app.add_subcommand("decompose", "write an optimal pure-state decomposition");
    CLI::App* ensembleCmd =
        app.add_subcommand("ensemble", "sample mixed states and report ensemble statistics");
    CLI::App* verify =
        app.add_subcommand("verify", "check a decomposition file against a state file");

    for (CLI::App* sub : {analyze, decompose, ensembleCmd, verify}) {
        sub->add_option("--model", opt.model, "model name")->check(CLI::IsMember(modelNames));
        sub->add_option("--tolerance", opt.tolerance, "boundary band and classical-test tolerance");
        sub->add_option("--seed", opt.seed, "seed for sampling and the oracle");
    }
    analyze->add_option("--input", opt.input, "state JSON path")->required();
    analyze->add_flag("--oracle", opt.oracle, "cross-check with the convex-roof oracle");
    decompose->add_option("--input", opt.input, "state JSON path")->required();
    decompose->add_option("--output", opt.output, "decomposition JSON path")->required();
    ensembleCmd->get_option("--model")->required();
    ensembleCmd->add_option("--samples", opt.samples, "number of Hilbert-Schmidt samples")
        ->required();
    ensembleCmd->add_option("--output", opt.output, "statistics JSON path (stdout when omitted)");
    ensembleCmd->add_option("--csv", opt.csv, "per-sample CSV path");
    ensembleCmd->add_flag("--oracle", opt.oracle, "track the formula-vs-oracle gap");
    verify->add_option("--input", opt.input, "state JSON path")->required();
    verify->add_option("--decomposition", opt.decomposition, "decomposition JSON path")
        ->required();
    verify->add_flag("--require-classical", opt.requireClassical,
                     "require every component to pass the model's classical test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(opt);
        if (decompose->parsed()) return cmd_decompose(opt);
        if (ensembleCmd->parsed()) return cmd_ensemble(opt);
        return cmd_verify(opt);
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
