// ncft: command-line front end.  Reads and writes JSON; see README.md for the
// subcommands and file formats.
//
// Exit codes: 0 ok/feasible, 1 infeasible (or a failed self-test), 2 no
// convergence, 3 input error, 4 numerical-scope error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "ncft/acceptance.hpp"
#include "ncft/caratheodory.hpp"
#include "ncft/errors.hpp"
#include "ncft/json_io.hpp"

namespace {

using namespace ncft;
using json_io::json;

constexpr const char* kVersion = "0.1.0";

enum Exit : int { kOk = 0, kInfeasible = 1, kNoConvergence = 2, kInputError = 3, kScopeError = 4 };

struct Config {
    double tol = 1e-9;
    int maxIter = 5000;
    std::optional<int> targetDegree;
    std::optional<int> trunc;
    std::uint64_t seed = acceptance::kDefaultSeed;
    std::string outputPath;
};

json envelope(const Config& cfg, const std::string& command, json result) {
    return {{"tool", "ncft"}, {"version", kVersion}, {"command", command},
            {"seed", cfg.seed}, {"tol", cfg.tol},     {"result", std::move(result)}};
}

void emit(const Config& cfg, const json& j) {
    if (cfg.outputPath.empty())
        std::cout << j.dump(2) << '\n';
    else
        json_io::write_file_atomic(cfg.outputPath, j);
}

int require_trunc(const Config& cfg, const char* what) {
    if (!cfg.trunc) throw InputError(std::string(what) + " needs --trunc");
    if (*cfg.trunc < 0) throw InputError("--trunc must be nonnegative");
    return *cfg.trunc;
}

int cmd_basis(const Config& cfg, int n, int deg) {
    if (deg < 0) throw InputError("degree must be nonnegative");
    GradedBasis b(n, deg);
    json words = json::array();
    for (const Word& w : b.words()) words.push_back(w.str());
    emit(cfg, envelope(cfg, "basis", {{"n", n}, {"degree", deg}, {"dimension", b.size()}, {"words", words}}));
    return kOk;
}

int cmd_check(const Config& cfg, const std::string& file) {
    auto prob = json_io::problem_from_json(json_io::parse_file(file));
    auto rep = check_feasibility(prob, cfg.tol);
    emit(cfg, envelope(cfg, "check", json_io::to_json(rep)));
    return rep.feasible ? kOk : kInfeasible;
}

int cmd_extend(const Config& cfg, const std::string& file) {
    auto prob = json_io::problem_from_json(json_io::parse_file(file));
    const int M = cfg.targetDegree.value_or(prob.m + 2);
    auto out = extend(prob, M, cfg.tol, cfg.maxIter);
    json result = {{"feasibility", json_io::to_json(out.feasibility)}};
    int code = kOk;
    switch (out.status) {
        case ExtensionStatus::Infeasible:
            result["status"] = "infeasible";
            code = kInfeasible;
            break;
        case ExtensionStatus::NoConvergence:
            result["status"] = "no-convergence";
            code = kNoConvergence;
            break;
        case ExtensionStatus::Ok:
            result["status"] = "ok";
            break;
    }
    if (out.result) {
        result["extension"] = json_io::to_json(*out.result);
        if (out.status == ExtensionStatus::Ok) {
            auto ver = verify_solution(prob, *out.result, 20, cfg.seed, std::max(cfg.tol, 1e-8));
            result["verification"] = json_io::to_json(ver);
            if (!ver.passed) {
                result["status"] = "unverified";
                code = kNoConvergence;
            }
        }
    }
    json env = envelope(cfg, "extend", std::move(result));
    env["maxIter"] = cfg.maxIter;
    emit(cfg, env);
    return code;
}

int cmd_cayley(const Config& cfg, const std::string& direction, const std::string& file) {
    FreeSeries f = json_io::series_from_json(json_io::parse_file(file));
    if (cfg.trunc) {
        if (*cfg.trunc < 0) throw InputError("--trunc must be nonnegative");
        FreeSeries g(f.n(), *cfg.trunc, f.rows(), f.cols());
        for (const auto& [w, c] : f.coeffs()) g.set(w, c);
        f = g;
    }
    FreeSeries out = direction == "forward" ? cayley_forward(f) : cayley_inverse(f);
    emit(cfg, envelope(cfg, "cayley", json_io::to_json(out)));
    return kOk;
}

int cmd_eval(const Config& cfg, const std::string& seriesFile, const std::string& tupleFile) {
    FreeSeries f = json_io::series_from_json(json_io::parse_file(seriesFile));
    OperatorTuple X = json_io::tuple_from_json(json_io::parse_file(tupleFile));
    SeriesValue v = eval_at(f, X);
    json r = {{"value", json_io::matrix_to_json(v.value)}, {"tail_bound", v.tail_bound}};
    r["nilpotent_order"] = v.nilpotent_order ? json(*v.nilpotent_order) : json(nullptr);
    emit(cfg, envelope(cfg, "eval", r));
    return kOk;
}

int cmd_norm(const Config& cfg, const std::string& file) {
    FreeSeries f = json_io::series_from_json(json_io::parse_file(file));
    const int m = require_trunc(cfg, "norm");
    emit(cfg, envelope(cfg, "norm", {{"m", m}, {"norm", hinf_norm_lower(f, m)}}));
    return kOk;
}

// The symbol is either a pluriharmonic function, sampled at the boundary of
// P^(trunc), or an explicit operator {"n", "matrix"} on C^q (x) P^(trunc).
int cmd_poisson(const Config& cfg, const std::string& symbolFile, const std::string& tupleFile) {
    json sym = json_io::parse_file(symbolFile);
    OperatorTuple X = json_io::tuple_from_json(json_io::parse_file(tupleFile));
    if (!sym.is_object()) throw InputError("symbol file must hold a JSON object");
    CMatrix F;
    int n = 0, N = 0;
    if (sym.contains("analytic")) {
        PluriharmonicFn h = json_io::pluriharmonic_from_json(sym);
        n = h.n;
        N = require_trunc(cfg, "poisson");
        F = radial_boundary(h, 1.0, N);
    } else {
        if (!sym.contains("n") || !sym.contains("matrix")) throw InputError("operator symbols need \"n\" and \"matrix\"");
        if (!sym["n"].is_number_integer()) throw InputError("\"n\" must be an integer");
        n = sym["n"].get<int>();
        N = require_trunc(cfg, "poisson");
        F = json_io::matrix_from_json(sym["matrix"]);
    }
    if (X.n() != n) throw InputError("tuple size differs from the symbol's generator count");
    FockTrunc ft(n, N);
    if (F.rows() != F.cols() || F.rows() % static_cast<Eigen::Index>(ft.dim()) != 0)
        throw InputError("symbol does not act on C^q (x) P^(trunc)");
    CMatrix P = poisson_transform(ft, F, X);
    emit(cfg, envelope(cfg, "poisson", {{"trunc", N}, {"value", json_io::matrix_to_json(P)}}));
    return kOk;
}

int cmd_selftest(const Config& cfg, bool list) {
    if (list) {
        for (const auto& s : acceptance::suites()) std::cout << s.id << '\t' << s.name << '\n';
        return kOk;
    }
    acceptance::Context ctx;
    ctx.seed = cfg.seed;
    ctx.canary = acceptance::canary_from_env();
    if (ctx.canary) std::cout << "canary set: one computation is deliberately corrupted\n";
    auto runs = acceptance::run_all(ctx, &std::cout);
    bool ok = true;
    json suites = json::array();
    for (const auto& r : runs) {
        ok = ok && r.passed;
        suites.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                          {"budgetSeconds", r.budgetSeconds}, {"detail", r.detail}});
    }
    if (!cfg.outputPath.empty()) emit(cfg, envelope(cfg, "selftest", {{"passed", ok}, {"suites", suites}}));
    std::cout << (ok ? "selftest passed" : "selftest FAILED") << '\n';
    return ok ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ncft: noncommutative function theory toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--tol", cfg.tol, "tolerance (default 1e-9)")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.maxIter, "iteration budget for extend (default 5000)")->check(CLI::NonNegativeNumber);
    app.add_option("--target-degree", cfg.targetDegree, "extension degree M (default m + 2)");
    app.add_option("--trunc", cfg.trunc, "truncation degree");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--output", cfg.outputPath, "write JSON here (atomically) instead of stdout");

    int basisN = 0, basisDeg = 0;
    auto* basis = app.add_subcommand("basis", "list the graded word basis");
    basis->add_option("n", basisN)->required();
    basis->add_option("deg", basisDeg)->required();

    std::string file, file2, direction;
    auto* check = app.add_subcommand("check", "feasibility of a Caratheodory problem");
    check->add_option("problem", file)->required();

    auto* ext = app.add_subcommand("extend", "extend a feasible problem to --target-degree");
    ext->add_option("problem", file)->required();

    auto* cay = app.add_subcommand("cayley", "Cayley transform of a series");
    cay->add_option("direction", direction)->required()->check(CLI::IsMember({"forward", "inverse"}));
    cay->add_option("series", file)->required();

    auto* ev = app.add_subcommand("eval", "evaluate a series at an operator tuple");
    ev->add_option("series", file)->required();
    ev->add_option("tuple", file2)->required();

    auto* nrm = app.add_subcommand("norm", "norm of f(S^(m)) with m = --trunc");
    nrm->add_option("series", file)->required();

    auto* poi = app.add_subcommand("poisson", "Poisson transform of a symbol at a tuple");
    poi->add_option("symbol", file)->required();
    poi->add_option("tuple", file2)->required();

    bool list = false;
    auto* self = app.add_subcommand("selftest", "run the acceptance suites");
    self->add_flag("--list", list, "print suite names without running them");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }
    if (cfg.targetDegree && *cfg.targetDegree < 0) {
        std::cerr << "error: --target-degree must be nonnegative\n";
        return kInputError;
    }

    try {
        if (*basis) return cmd_basis(cfg, basisN, basisDeg);
        if (*check) return cmd_check(cfg, file);
        if (*ext) return cmd_extend(cfg, file);
        if (*cay) return cmd_cayley(cfg, direction, file);
        if (*ev) return cmd_eval(cfg, file, file2);
        if (*nrm) return cmd_norm(cfg, file);
        if (*poi) return cmd_poisson(cfg, file, file2);
        if (*self) return cmd_selftest(cfg, list);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const ScopeError& e) {
        std::cerr << "scope error: " << e.what() << '\n';
        return kScopeError;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
