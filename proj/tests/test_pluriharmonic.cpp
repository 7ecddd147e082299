#include <doctest.h>

#include <cmath>

#include "ncft/errors.hpp"
#include "ncft/pluriharmonic.hpp"
#include "ncft/sampling.hpp"

using namespace ncft;

namespace {

CMatrix c1(cplx v) { return CMatrix::Constant(1, 1, v); }
double maxdiff(const CMatrix& A, const CMatrix& B) { return (A - B).cwiseAbs().maxCoeff(); }

// 1 + c (Z + Z^*) in one variable
PluriharmonicFn path_fn(double c, int cutoff = 1) {
    PluriharmonicFn h(1, cutoff, 1);
    h.analytic[Word{}] = c1(1.0);
    h.analytic[Word{1}] = c1(c);
    h.coanalytic[Word{1}] = c1(c);
    return h;
}

PluriharmonicFn random_selfadjoint(sampling::Rng& rng, int n, int cutoff, std::size_t p) {
    FreeSeries f = sampling::random_series(rng, n, cutoff, p, p, cutoff, 0.5);
    f.set(Word{}, sampling::gaussian(rng, static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
    return real_part(f);
}

}  // namespace

TEST_CASE("real part") {
    FreeSeries c(2, 2, 1, 1);
    c.set(Word{}, c1(3.0));
    auto u = real_part(c);
    CHECK(u.A(Word{})(0, 0) == cplx(3.0));
    CHECK(u.coanalytic.empty());

    CMatrix E12 = CMatrix::Zero(2, 2);
    E12(0, 1) = 1.0;
    auto z = real_part(FreeSeries::variable(1, 2, 1));
    CHECK(maxdiff(eval(z, OperatorTuple({E12})), 0.5 * (E12 + E12.adjoint())) == 0.0);
    CHECK(z.is_selfadjoint());
}

TEST_CASE("evaluation") {
    sampling::Rng rng(31);
    auto h = random_selfadjoint(rng, 2, 3, 2);
    OperatorTuple Z({CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)});
    CHECK(maxdiff(eval(h, Z), kron(h.A(Word{}), identity(3))) == 0.0);
    auto X = sampling::nilpotent_tuple(rng, 2, 4, 0.8);
    CHECK(is_hermitian(eval(h, X), 1e-12));
}

TEST_CASE("radial boundary") {
    sampling::Rng rng(32);
    auto h = random_selfadjoint(rng, 2, 2, 1);
    CHECK(maxdiff(radial_boundary(h, 0.0, 2), kron(h.A(Word{}), identity(7))) == 0.0);

    auto z = real_part(FreeSeries::variable(1, 1, 1));
    CMatrix expect(2, 2);
    expect << 0, 0.5, 0.5, 0;
    CHECK(maxdiff(radial_boundary(z, 1.0, 1), expect) == 0.0);

    const double r = 0.6;
    auto e = extract_coeffs(radial_boundary(h, r, 3), 2, 3);
    for (const auto& [w, c] : h.analytic)
        CHECK(maxdiff(e.analytic.at(w), std::pow(r, static_cast<double>(w.size())) * c) < 1e-15);
    for (const auto& [w, c] : h.coanalytic)
        CHECK(maxdiff(e.coanalytic.at(w), std::pow(r, static_cast<double>(w.size())) * c) < 1e-15);
}

TEST_CASE("radial norms increase with r") {
    sampling::Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = random_selfadjoint(rng, 2, 3, 1);
        double prev = 0.0;
        for (double r : {0.0, 0.2, 0.5, 0.8, 0.95, 1.0}) {
            double v = operator_norm(radial_boundary(h, r, 3));
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("pluriharmonic poisson kernel") {
    FockTrunc ft(2, 3);
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    CHECK(maxdiff(pluriharmonic_poisson_kernel(ft, Z), identity(ft.dim() * 2)) == 0.0);

    // truncation only disturbs blocks touching words longer than N - nu + 1
    sampling::Rng rng(34);
    FockTrunc f5(2, 5);
    const int zone = 5 - 3 + 1;
    const auto keep = static_cast<Eigen::Index>(f5.basis().degree_offset(zone + 1)) * 3;
    for (int trial = 0; trial < 5; ++trial) {
        auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.9);
        CMatrix B = berezin_kernel(f5, X);
        CMatrix P = pluriharmonic_poisson_kernel(f5, X);
        CHECK(maxdiff(P.topLeftCorner(keep, keep), (B.adjoint() * B).topLeftCorner(keep, keep)) < 1e-12);
        CHECK(maxdiff(P.topLeftCorner(keep, keep), pluriharmonic_poisson_kernel(FockTrunc(2, zone), X)) == 0.0);
    }
    for (double r : {0.3, 0.5}) {
        FockTrunc f6(2, 6);
        auto X = sampling::dense_tuple(rng, 2, 2, r);
        CHECK(min_eig_hermitian(pluriharmonic_poisson_kernel(f6, X)) >= -5 * tail_bound(r, 6));
    }
}

TEST_CASE("positivity on the boundary") {
    auto half = path_fn(0.5);
    auto rep = check_positive(half, 6, 1e-12);
    CHECK(rep.passed);
    CHECK(rep.minEigs.size() == 7);
    // the path matrix of size m + 1 has smallest eigenvalue 1 + cos(pi (m+1)/(m+2))
    for (int m = 0; m <= 6; ++m)
        CHECK(rep.minEigs[static_cast<std::size_t>(m)] ==
              doctest::Approx(1 + std::cos(M_PI * (m + 1) / (m + 2))).epsilon(1e-12));

    auto one = path_fn(1.0);
    auto r1 = check_positive(one, 1, 1e-12);
    CHECK(r1.passed);
    CHECK(std::abs(r1.minEigs[1]) < 1e-15);
    CHECK_FALSE(check_positive(path_fn(1.01), 1, 1e-12).passed);

    FreeSeries c(2, 2, 1, 1);
    c.set(Word{}, c1(0.3));
    CHECK(check_positive(real_part(c), 3, 0.0).passed);

    PluriharmonicFn bad = half;
    bad.coanalytic[Word{1}] = c1(0.2);
    CHECK_THROWS_AS(check_positive(bad, 2, 1e-9), InputError);
}

TEST_CASE("positivity fails monotonically") {
    auto h = path_fn(0.6);
    auto rep = check_positive(h, 6, 1e-12);
    bool failed = false;
    for (double e : rep.minEigs) {
        if (failed) CHECK(e < -1e-12);
        if (e < -1e-12) failed = true;
    }
    CHECK(failed);
}

TEST_CASE("coefficient bound") {
    auto rep = coefficient_bound_check(path_fn(0.5));
    CHECK(rep.passed);
    CHECK(rep.degreeNorms[1] == doctest::Approx(0.5));
    CHECK(rep.a0Norm == doctest::Approx(1.0));
    auto r2 = coefficient_bound_check(path_fn(0.5, 3));
    CHECK(r2.degreeNorms[2] == 0.0);
    CHECK(r2.degreeNorms[3] == 0.0);
}

TEST_CASE("harnack inequality") {
    auto h = path_fn(0.5);
    CMatrix N = CMatrix::Zero(2, 2);
    N(0, 1) = 0.5;
    auto rep = harnack_check(h, {OperatorTuple({N}), OperatorTuple({CMatrix::Zero(2, 2)})}, 0.5);
    CHECK(rep.passed);
    CHECK(rep.bound == doctest::Approx(3.0));
    CHECK(rep.worst <= 1.5 + 1e-12);
    CHECK(rep.worst == doctest::Approx(1.25));
    CHECK_THROWS_AS(harnack_check(h, {OperatorTuple({N})}, 0.25), InputError);
}

TEST_CASE("mean value property") {
    FreeSeries z12(2, 2, 1, 1);
    z12.set(Word{1, 2}, c1(1.0));
    auto h = real_part(z12);
    CMatrix E12 = CMatrix::Zero(3, 3), E23 = CMatrix::Zero(3, 3);
    E12(0, 1) = 0.3;
    E23(1, 2) = 0.3;
    auto rep = mean_value_check(h, OperatorTuple({E12, E23}), 0.9, 6);
    CHECK(rep.passed);
    CHECK(rep.discrepancy <= 1e-10);

    sampling::Rng rng(35);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_selfadjoint(rng, 2, 3, 2);
        auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.8);
        auto r = mean_value_check(g, X, 0.9, 6);
        CHECK(r.passed);
    }
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    CHECK(mean_value_check(h, Z, 0.5, 3).discrepancy < 1e-14);
}

TEST_CASE("max principle spot check") {
    sampling::Rng rng(36);
    std::vector<OperatorTuple> samples;
    for (int s = 0; s < 30; ++s) samples.push_back(sampling::nilpotent_tuple(rng, 1, 3, 0.9));
    auto rep = max_principle_spot_check(path_fn(0.5), samples);
    CHECK(rep.nonconstant);
    CHECK(rep.violationFound);
    PluriharmonicFn c(1, 1, 1);
    c.analytic[Word{}] = c1(2.0);
    auto rc = max_principle_spot_check(c, samples);
    CHECK_FALSE(rc.nonconstant);
    CHECK_FALSE(rc.violationFound);
}

TEST_CASE("multi-Toeplitz detection") {
    sampling::Rng rng(37);
    auto h = random_selfadjoint(rng, 2, 2, 2);
    CHECK(is_multi_toeplitz(radial_boundary(h, 0.7, 4), 2, 4, 2, 1e-12));
    FockTrunc ft(2, 3);
    CHECK_FALSE(is_multi_toeplitz(ft.S(1) * ft.S(1).adjoint(), 2, 3, 1, 1e-12));
    CHECK(is_multi_toeplitz(identity(ft.dim()), 2, 3, 1, 1e-12));
}
