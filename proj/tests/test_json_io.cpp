#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ncft/errors.hpp"
#include "ncft/json_io.hpp"
#include "ncft/sampling.hpp"

using namespace ncft;
using json_io::json;

namespace {

CMatrix c1(cplx v) { return CMatrix::Constant(1, 1, v); }

// through text, so that the serialized digits are what gets compared
json reparse(const json& j) { return json::parse(j.dump()); }

bool same_coeffs(const CoeffMap& a, const CoeffMap& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [w, c] : a) {
        auto it = b.find(w);
        if (it == b.end() || it->second != c) return false;
    }
    return true;
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("matrices") {
    sampling::Rng rng(81);
    CMatrix A = sampling::gaussian(rng, 2, 3);
    CHECK(json_io::matrix_from_json(reparse(json_io::matrix_to_json(A))) == A);
    CHECK(json_io::matrix_from_json(json::parse("[[1, 2], [3, [0, 1]]]"))(1, 1) == cplx(0, 1));
    CHECK_THROWS_AS(json_io::matrix_from_json(json::parse("[[1, 2], [3]]")), InputError);
    CHECK_THROWS_AS(json_io::matrix_from_json(json::parse("[]")), InputError);
    CHECK_THROWS_AS(json_io::matrix_from_json(json::parse("[[1, [2, 3, 4]]]")), InputError);
    CHECK_THROWS_AS(json_io::matrix_from_json(json::parse("[[\"x\"]]")), InputError);
}

TEST_CASE("series round trip") {
    sampling::Rng rng(82);
    FreeSeries f = sampling::random_series(rng, 3, 3, 2, 1, 3, 1.0);
    FreeSeries g = json_io::series_from_json(reparse(json_io::to_json(f)));
    CHECK(g.n() == 3);
    CHECK(g.cutoff() == 3);
    CHECK(g.rows() == 2);
    CHECK(g.cols() == 1);
    CHECK(same_coeffs(f.coeffs(), g.coeffs()));

    json bad = json_io::to_json(f);
    bad["coefficients"]["4"] = json_io::matrix_to_json(CMatrix::Zero(2, 1));
    CHECK_THROWS_AS(json_io::series_from_json(bad), InputError);
    bad = json_io::to_json(f);
    bad["coefficients"]["1111"] = json_io::matrix_to_json(CMatrix::Zero(2, 1));
    CHECK_THROWS_AS(json_io::series_from_json(bad), InputError);
    bad = json_io::to_json(f);
    bad.erase("cutoff");
    CHECK_THROWS_AS(json_io::series_from_json(bad), InputError);
}

TEST_CASE("pluriharmonic, tuple and functional round trips") {
    sampling::Rng rng(83);
    FreeSeries f = sampling::random_series(rng, 2, 2, 2, 2, 2, 1.0);
    auto h = real_part(f);
    auto h2 = json_io::pluriharmonic_from_json(reparse(json_io::to_json(h)));
    CHECK(same_coeffs(h.analytic, h2.analytic));
    CHECK(same_coeffs(h.coanalytic, h2.coanalytic));

    auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.7);
    auto Y = json_io::tuple_from_json(reparse(json_io::to_json(X)));
    CHECK(Y.n() == 2);
    CHECK(Y[0] == X[0]);
    CHECK(Y[1] == X[1]);
    json t = json_io::to_json(X);
    t["dim"] = 4;
    CHECK_THROWS_AS(json_io::tuple_from_json(t), InputError);

    FockTrunc ft(2, 3);
    CMatrix xi = sampling::random_fock_vector(rng, ft, 1);
    auto mu = from_vector_states(ft, {{1.0, xi, xi}}, 2);
    auto nu = json_io::moment_from_json(reparse(json_io::to_json(mu)));
    CHECK(nu.unit == mu.unit);
    CHECK(same_coeffs(mu.forward, nu.forward));
    CHECK(same_coeffs(mu.backward, nu.backward));
}

TEST_CASE("problem files") {
    auto j = json::parse(R"({"n": 1, "m": 1, "block_size": 1, "coefficients": {"": [[1]], "1": [[0.5]]}})");
    auto pr = json_io::problem_from_json(j);
    CHECK(pr.coeff(Word{1})(0, 0) == cplx(0.5));
    auto back = json_io::problem_from_json(reparse(json_io::to_json(pr)));
    CHECK(same_coeffs(back.coeffs, pr.coeffs));

    CHECK_THROWS_AS(json_io::problem_from_json(json::parse(
                        R"({"n": 2, "m": 1, "block_size": 1, "coefficients": {"": [[1]], "3": [[0.5]]}})")),
                    InputError);
    CHECK_THROWS_AS(json_io::problem_from_json(json::parse(
                        R"({"n": 1, "m": 1, "block_size": 2, "coefficients": {"": [[1]]}})")),
                    InputError);
    CHECK_THROWS_AS(json_io::problem_from_json(json::parse(R"({"n": 1, "m": 1, "block_size": 1})")), InputError);
    CHECK_THROWS_AS(json_io::problem_from_json(json::parse("[1, 2]")), InputError);

    CFProblem cf;
    cf.n = 2;
    cf.m = 1;
    cf.coeffs = {{Word{}, c1(0.1)}, {Word{2}, c1(cplx(0.2, -0.3))}};
    auto cf2 = json_io::cf_problem_from_json(reparse(json_io::to_json(cf)));
    CHECK(same_coeffs(cf.coeffs, cf2.coeffs));
}

TEST_CASE("reports") {
    auto out = extend(json_io::problem_from_json(json::parse(
                          R"({"n": 1, "m": 1, "block_size": 1, "coefficients": {"": [[1]], "1": [[0.5]]}})")),
                      3);
    REQUIRE(out.result.has_value());
    json r = json_io::to_json(*out.result);
    CHECK(r["targetDeg"] == 3);
    CHECK(r["certificate"]["prescribedError"] == 0.0);
    CHECK(r["coefficients"].size() == 4);
    CHECK(r["certificate"].contains("projResidual"));
    CHECK(json_io::to_json(out.feasibility)["feasible"] == true);
}

TEST_CASE("doubles survive text") {
    sampling::Rng rng(84);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 200; ++k) {
        const double v = u(rng) * std::pow(10.0, k % 20 - 10);
        CHECK(json::parse(json(v).dump()).get<double>() == v);
    }
}

TEST_CASE("files") {
    const std::string path = temp_path("ncft_json_io_test.json");
    json j = {{"a", 1}, {"b", {1.5, 2.5}}};
    json_io::write_file_atomic(path, j);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    CHECK(json_io::parse_file(path) == j);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(json_io::parse_file(path), InputError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(json_io::parse_file(path), InputError);
    CHECK_THROWS_AS(json_io::write_file_atomic("/nonexistent-dir/x.json", j), InputError);
}
