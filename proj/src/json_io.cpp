#include "ncft/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ncft/errors.hpp"

namespace ncft::json_io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw InputError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
    return *it;
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("complex numbers must be [re, im]");
}

std::pair<std::size_t, std::size_t> shape_field(const json& j) {
    const json& s = field(j, "shape");
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer() ||
        s[0].get<long long>() <= 0 || s[1].get<long long>() <= 0)
        throw InputError("\"shape\" must be [p, q] with positive entries");
    return {s[0].get<std::size_t>(), s[1].get<std::size_t>()};
}

}  // namespace

json matrix_to_json(const CMatrix& A) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back({A(r, c).real(), A(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrices must be nonempty arrays of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) throw InputError("matrix rows must be nonempty arrays");
    const std::size_t cols = j[0].size();
    check_matrix_size(rows, cols);
    CMatrix A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw InputError("matrix rows have different lengths");
        for (std::size_t c = 0; c < cols; ++c)
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
    if (!A.allFinite()) throw InputError("matrix entries must be finite");
    return A;
}

json coeffs_to_json(const CoeffMap& m) {
    json o = json::object();
    for (const auto& [w, c] : m) o[w.str()] = matrix_to_json(c);
    return o;
}

CoeffMap coeffs_from_json(const json& j, int n) {
    if (!j.is_object()) throw InputError("coefficient maps must be JSON objects keyed by word");
    CoeffMap m;
    for (auto it = j.begin(); it != j.end(); ++it) m[Word::parse(it.key(), n)] = matrix_from_json(it.value());
    return m;
}

json to_json(const FreeSeries& f) {
    return {{"n", f.n()},
            {"cutoff", f.cutoff()},
            {"shape", {f.rows(), f.cols()}},
            {"coefficients", coeffs_to_json(f.coeffs())}};
}

FreeSeries series_from_json(const json& j) {
    const int n = int_field(j, "n");
    const int cutoff = int_field(j, "cutoff");
    if (cutoff < 0) throw InputError("cutoff must be nonnegative");
    auto [p, q] = shape_field(j);
    FreeSeries f(n, cutoff, p, q);
    for (const auto& [w, c] : coeffs_from_json(field(j, "coefficients"), n)) {
        if (w.size() > static_cast<std::size_t>(cutoff))
            throw InputError("series word \"" + w.str() + "\" is longer than the cutoff");
        f.set(w, c);
    }
    return f;
}

json to_json(const PluriharmonicFn& h) {
    return {{"n", h.n},
            {"cutoff", h.cutoff},
            {"shape", {h.p, h.p}},
            {"analytic", coeffs_to_json(h.analytic)},
            {"coanalytic", coeffs_to_json(h.coanalytic)}};
}

PluriharmonicFn pluriharmonic_from_json(const json& j) {
    const int n = int_field(j, "n");
    auto [p, q] = shape_field(j);
    if (p != q) throw InputError("pluriharmonic functions need square coefficients");
    PluriharmonicFn h(n, int_field(j, "cutoff"), p);
    h.analytic = coeffs_from_json(field(j, "analytic"), n);
    h.coanalytic = coeffs_from_json(field(j, "coanalytic"), n);
    h.validate();
    return h;
}

json to_json(const OperatorTuple& X) {
    json mats = json::array();
    for (const auto& M : X.matrices()) mats.push_back(matrix_to_json(M));
    return {{"n", X.n()}, {"dim", X.dim()}, {"matrices", std::move(mats)}};
}

OperatorTuple tuple_from_json(const json& j) {
    const int n = int_field(j, "n");
    const int dim = int_field(j, "dim");
    const json& mats = field(j, "matrices");
    if (!mats.is_array() || static_cast<int>(mats.size()) != n) throw InputError("\"matrices\" must hold n matrices");
    std::vector<CMatrix> out;
    for (const auto& m : mats) {
        CMatrix A = matrix_from_json(m);
        if (A.rows() != dim || A.cols() != dim) throw InputError("tuple matrix does not match \"dim\"");
        out.push_back(std::move(A));
    }
    return OperatorTuple(std::move(out));
}

json to_json(const MomentFunctional& mu) {
    return {{"n", mu.n},
            {"cutoff", mu.cutoff},
            {"unit", matrix_to_json(mu.unit)},
            {"forward", coeffs_to_json(mu.forward)},
            {"backward", coeffs_to_json(mu.backward)}};
}

MomentFunctional moment_from_json(const json& j) {
    MomentFunctional mu;
    mu.n = int_field(j, "n");
    mu.cutoff = int_field(j, "cutoff");
    mu.unit = matrix_from_json(field(j, "unit"));
    mu.p = static_cast<std::size_t>(mu.unit.rows());
    mu.forward = coeffs_from_json(field(j, "forward"), mu.n);
    mu.backward = coeffs_from_json(field(j, "backward"), mu.n);
    mu.validate();
    return mu;
}

json to_json(const CaratheodoryProblem& prob) {
    return {{"n", prob.n}, {"m", prob.m}, {"block_size", prob.p}, {"coefficients", coeffs_to_json(prob.coeffs)}};
}

CaratheodoryProblem problem_from_json(const json& j) {
    CaratheodoryProblem prob;
    prob.n = int_field(j, "n");
    prob.m = int_field(j, "m");
    const int p = int_field(j, "block_size");
    if (p <= 0) throw InputError("\"block_size\" must be positive");
    prob.p = static_cast<std::size_t>(p);
    prob.coeffs = coeffs_from_json(field(j, "coefficients"), prob.n);
    prob.validate();
    return prob;
}

json to_json(const CFProblem& prob) {
    return {{"n", prob.n}, {"m", prob.m}, {"block_size", prob.p}, {"coefficients", coeffs_to_json(prob.coeffs)}};
}

CFProblem cf_problem_from_json(const json& j) {
    CFProblem prob;
    prob.n = int_field(j, "n");
    prob.m = int_field(j, "m");
    const int p = int_field(j, "block_size");
    if (p <= 0) throw InputError("\"block_size\" must be positive");
    prob.p = static_cast<std::size_t>(p);
    prob.coeffs = coeffs_from_json(field(j, "coefficients"), prob.n);
    prob.validate();
    return prob;
}

json to_json(const FeasibilityReport& r) {
    return {{"feasible", r.feasible}, {"minEig", r.minEig}, {"matrixDim", r.matrixDim}, {"tol", r.tol}};
}

json to_json(const ExtensionResult& r) {
    const auto& c = r.certificate;
    return {{"targetDeg", r.targetDeg},
            {"coefficients", coeffs_to_json(r.coeffs)},
            {"certificate",
             {{"minEigTM", c.minEigTM},
              {"iterations", c.iterations},
              {"projResidual", c.projResidual},
              {"prescribedError", c.prescribedError},
              {"slack", c.slack},
              {"monotonicityViolations", c.monotonicityViolations},
              {"worstStepIncrease", c.worstStepIncrease}}}};
}

json to_json(const VerificationReport& r) {
    return {{"passed", r.passed},
            {"prescribedOk", r.prescribedOk},
            {"minEigOk", r.minEigOk},
            {"realPartOk", r.realPartOk},
            {"coefficientBoundOk", r.coefficientBoundOk},
            {"prescribedError", r.prescribedError},
            {"minEigTM", r.minEigTM},
            {"worstRealPart", r.worstRealPart},
            {"samplesUsed", r.samplesUsed},
            {"defect", r.defect}};
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open \"" + path + "\"");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("\"" + path + "\" is not valid JSON: " + e.what());
    }
}

void write_file_atomic(const std::string& path, const json& j) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw InputError("cannot write \"" + tmp.string() + "\"");
        out << j.dump(2) << '\n';
        if (!out.flush()) throw InputError("write to \"" + tmp.string() + "\" failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InputError("cannot move output into place: " + ec.message());
    }
}

}  // namespace ncft::json_io
