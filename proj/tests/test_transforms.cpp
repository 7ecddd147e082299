#include <doctest.h>

#include <cmath>

#include "ncft/errors.hpp"
#include "ncft/sampling.hpp"
#include "ncft/toeplitz.hpp"
#include "ncft/transforms.hpp"

using namespace ncft;

namespace {

CMatrix c1(cplx v) { return CMatrix::Constant(1, 1, v); }
double maxdiff(const CMatrix& A, const CMatrix& B) { return (A - B).cwiseAbs().maxCoeff(); }

CMatrix basis_vec(const FockTrunc& ft, const Word& w) {
    CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(ft.dim()), 1);
    v(static_cast<Eigen::Index>(ft.basis().index(w)), 0) = 1.0;
    return v;
}

MomentFunctional sharp_state(int N, int cutoff) {
    FockTrunc ft(1, N);
    CMatrix xi = (basis_vec(ft, Word{}) + basis_vec(ft, Word{1})) / std::sqrt(2.0);
    return from_vector_states(ft, {{1.0, xi, xi}}, cutoff);
}

MomentFunctional random_positive(sampling::Rng& rng, int n, int deg, int cutoff, Eigen::Index q = 1) {
    FockTrunc ft(n, deg + cutoff);
    std::vector<WeightedPair> pairs;
    for (int k = 0; k < 2; ++k) {
        CMatrix xi = sampling::random_fock_vector(rng, ft, deg, q);
        pairs.push_back({0.5 + k, xi, xi});
    }
    return from_vector_states(ft, pairs, cutoff);
}

}  // namespace

TEST_CASE("vector-state functionals") {
    FockTrunc ft(2, 3);
    auto tau = from_vector_states(ft, {{1.0, basis_vec(ft, Word{}), basis_vec(ft, Word{})}}, 3);
    CHECK(tau.unit(0, 0) == cplx(1.0));
    CHECK(tau.forward.empty());
    CHECK(tau.backward.empty());

    auto mu = sharp_state(3, 2);
    CHECK(std::abs(mu.unit(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(mu.fwd(Word{1})(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(mu.fwd(Word{1, 1})(0, 0)) == 0.0);
    CHECK(mu.is_selfadjoint());

    sampling::Rng rng(51);
    CMatrix xi = sampling::random_fock_vector(rng, ft, 1);
    auto zero = from_vector_states(ft, {{0.0, xi, xi}}, 2);
    CHECK(zero.unit.cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero.forward.empty());

    CHECK_THROWS_AS(from_vector_states(ft, {{1.0, xi, xi}}, 3), InputError);
}

TEST_CASE("moments agree with the right creation operators") {
    sampling::Rng rng(52);
    FockTrunc ft(2, 4);
    CMatrix xi = sampling::random_fock_vector(rng, ft, 2), eta = sampling::random_fock_vector(rng, ft, 2);
    auto mu = from_vector_states(ft, {{0.7, xi, eta}}, 2);
    GradedBasis b(2, 2);
    for (std::size_t i = 1; i < b.size(); ++i) {
        CMatrix R = right_word_operator(ft, b.word_at(i));
        CHECK(std::abs(mu.fwd(b.word_at(i))(0, 0) - 0.7 * (eta.adjoint() * R * xi)(0, 0)) < 1e-14);
        CHECK(std::abs(mu.bwd(b.word_at(i))(0, 0) - 0.7 * (eta.adjoint() * R.adjoint() * xi)(0, 0)) < 1e-14);
    }
}

TEST_CASE("poisson, herglotz and fantappie transforms") {
    sampling::Rng rng(53);
    auto mu = random_positive(rng, 2, 2, 3, 2);
    OperatorTuple Z({CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)});
    CHECK(maxdiff(poisson_transform_of(mu, Z), kron(mu.unit, identity(3))) == 0.0);
    CHECK(maxdiff(herglotz_transform(mu, Z), kron(mu.unit, identity(3))) == 0.0);
    CHECK(maxdiff(fantappie_transform(mu, Z), kron(mu.unit, identity(3))) == 0.0);

    FockTrunc ft(2, 3);
    auto tau = from_vector_states(ft, {{1.0, basis_vec(ft, Word{}), basis_vec(ft, Word{})}}, 3);
    for (int trial = 0; trial < 5; ++trial) {
        auto X = sampling::nilpotent_tuple(rng, 2, 4, 0.9);
        CHECK(maxdiff(poisson_transform_of(tau, X), identity(4)) == 0.0);
        CHECK(maxdiff(fantappie_transform(tau, X), identity(4)) == 0.0);
        CMatrix P = poisson_transform_of(mu, X);
        CMatrix H = herglotz_transform(mu, X);
        CMatrix F = fantappie_transform(mu, X);
        CHECK(min_eig_hermitian(0.5 * (P + P.adjoint())) >= -1e-10);
        CHECK(is_hermitian(P, 1e-12));
        CHECK(maxdiff(0.5 * (H + H.adjoint()), P) < 1e-10);
        CHECK(maxdiff(2.0 * F - kron(mu.unit, identity(4)), H) < 1e-12);
    }

    auto sharp = sharp_state(4, 2);
    CMatrix N = CMatrix::Zero(2, 2);
    N(0, 1) = 0.4;
    CHECK(maxdiff(herglotz_transform(sharp, OperatorTuple({N})), identity(2) + N) < 1e-15);
}

TEST_CASE("transform scope") {
    sampling::Rng rng(54);
    auto mu = random_positive(rng, 2, 1, 2);
    CHECK_NOTHROW(poisson_transform_of(mu, sampling::dense_tuple(rng, 2, 2, 0.5)));
    CHECK_THROWS_AS(poisson_transform_of(mu, sampling::dense_tuple(rng, 2, 2, 1.2)), ScopeError);
}

TEST_CASE("coefficient views of the transforms") {
    sampling::Rng rng(55);
    auto mu = random_positive(rng, 2, 2, 3);
    auto h = poisson_function(mu);
    auto f = herglotz_series(mu);
    auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.8);
    CHECK(maxdiff(eval(h, X), poisson_transform_of(mu, X)) < 1e-14);
    CHECK(maxdiff(eval_at(f, X).value, herglotz_transform(mu, X)) < 1e-14);
    CHECK(h.is_selfadjoint(1e-12));
    CHECK(check_positive(h, 4, 1e-10).passed);
}

TEST_CASE("berezin transform of a functional") {
    sampling::Rng rng(56);
    FockTrunc ft(2, 3);
    CMatrix e0 = basis_vec(ft, Word{});
    auto tau = from_vector_states(ft, {{1.0, e0, e0}}, 2);
    auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.7);
    CMatrix F = sampling::gaussian(rng, static_cast<Eigen::Index>(ft.dim()), static_cast<Eigen::Index>(ft.dim()));
    CHECK(maxdiff(berezin_transform(ft, tau, F, X), poisson_transform(ft, F, X)) < 1e-12);
    MomentFunctional bare = tau;
    bare.realization.reset();
    CHECK_THROWS_AS(berezin_transform(ft, bare, F, X), InputError);
}

TEST_CASE("herglotz transform from isometries") {
    sampling::Rng rng(57);
    const int N = 4;
    FockTrunc ft(2, N);
    CMatrix xi = sampling::random_fock_vector(rng, ft, 2);
    auto mu = from_vector_states(ft, {{1.0, xi, xi}}, 2);
    OperatorTuple V({ft.R(1), ft.R(2)});
    CMatrix Q = degree_projection(ft, N - 1);
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    CMatrix im = c1(0.3);
    CHECK(maxdiff(herglotz_from_isometries(V, xi, Z, im, Q),
                  kron(CMatrix(xi.adjoint() * xi), identity(2)) + cplx(0, 0.3) * identity(2)) < 1e-14);
    for (int trial = 0; trial < 5; ++trial) {
        auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.9);
        CMatrix H = herglotz_from_isometries(V, xi, X, CMatrix::Zero(1, 1), Q);
        CHECK(maxdiff(H, herglotz_transform(mu, X)) < 1e-12);
        CHECK(min_eig_hermitian(0.5 * (H + H.adjoint())) >= -1e-9);
    }
    CHECK_THROWS_AS(herglotz_from_isometries(V, xi, Z, CMatrix::Zero(1, 1)), InputError);
}

TEST_CASE("kernel from series") {
    FreeSeries c(2, 2, 1, 1);
    c.set(Word{}, c1(cplx(0.5, 2.0)));
    CHECK(maxdiff(kernel_from_series(c).entries, identity(7)) == 0.0);

    // reversal of words carries the kernel onto the right-divisibility matrix
    sampling::Rng rng(58);
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            FreeSeries f = sampling::random_series(rng, n, m, 1, 1, m, 1.0);
            f.set(Word{}, sampling::gaussian(rng, 1, 1));
            CMatrix K = kernel_from_series(f).entries;
            CoeffMap b;
            CMatrix a0 = f.coeff(Word{});
            b[Word{}] = a0 + a0.adjoint();
            for (const auto& [w, v] : f.coeffs())
                if (!w.empty()) b[w] = v;
            auto T = assemble_T(b, n, m);
            const auto& bs = *T.basis;
            for (std::size_t r = 0; r < bs.size(); ++r)
                for (std::size_t s = 0; s < bs.size(); ++s)
                    CHECK(std::abs(K(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) -
                                   T.entries(static_cast<Eigen::Index>(bs.index(reverse(bs.word_at(r)))),
                                             static_cast<Eigen::Index>(bs.index(reverse(bs.word_at(s)))))) == 0.0);
        }
}

TEST_CASE("positivity equivalences") {
    const std::vector<double> grid{0.5, 0.9, 1.0};
    FreeSeries half(1, 3, 1, 1);
    half.set(Word{}, c1(0.5));
    auto r0 = positivity_equivalence_check(half, 3, grid);
    CHECK((r0.radial && r0.kernel && r0.boundary && r0.agree));

    FreeSeries herg = half;
    herg.set(Word{1}, c1(0.5));
    auto r1 = positivity_equivalence_check(herg, 3, grid);
    CHECK((r1.radial && r1.kernel && r1.boundary && r1.agree));

    auto r2 = positivity_equivalence_check(FreeSeries::variable(1, 1, 1), 1, grid);
    CHECK_FALSE(r2.radial);
    CHECK_FALSE(r2.kernel);
    CHECK_FALSE(r2.boundary);
    CHECK(r2.agree);

    // the radial operator at r = 1 is unitarily equivalent to Re f(S)
    sampling::Rng rng(59);
    FreeSeries f = sampling::random_series(rng, 2, 2, 1, 1, 2, 1.0);
    f.set(Word{}, c1(2.0));
    auto ev1 = hermitian_eig(radial_operator(f, 1.0, 2)).eigenvalues;
    auto ev2 = hermitian_eig(radial_boundary(real_part(f), 1.0, 2)).eigenvalues;
    CHECK((ev1 - ev2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fejer inequality") {
    auto mu = sharp_state(3, 2);
    auto rep = fejer_check(mu, 2);
    CHECK(rep.passed);
    CHECK(rep.bound[1] == doctest::Approx(mu.unit(0, 0).real() * std::cos(M_PI / 3)).epsilon(1e-15));
    CHECK(std::abs(rep.lhs[1] - rep.bound[1]) < 1e-15);

    FockTrunc ft(2, 3);
    auto tau = from_vector_states(ft, {{1.0, basis_vec(ft, Word{}), basis_vec(ft, Word{})}}, 3);
    auto rt = fejer_check(tau, 3);
    CHECK(rt.passed);
    CHECK(rt.lhs[1] == 0.0);
    CHECK(rt.lhs[2] == 0.0);

    // vector states of degree m - 1 have no moments of length >= m
    sampling::Rng rng(60);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 2, m = 2 + trial % 3;
        FockTrunc f(n, 2 * m);
        CMatrix xi = sampling::random_fock_vector(rng, f, m - 1);
        auto nu = from_vector_states(f, {{1.0, xi, xi}}, m);
        CHECK(fejer_check(nu, m).passed);
    }
    FockTrunc f4(1, 4);
    CMatrix xi = sampling::random_fock_vector(rng, f4, 2);
    CHECK_THROWS_AS(fejer_check(from_vector_states(f4, {{1.0, xi, xi}}, 2), 2), InputError);
    CHECK_THROWS_AS(fejer_check(from_vector_states(f4, {{1.0, xi, xi}}, 0), 2), InputError);
}

TEST_CASE("radial functionals") {
    sampling::Rng rng(61);
    FreeSeries f = sampling::random_series(rng, 2, 3, 1, 1, 3, 0.5);
    f.set(Word{}, c1(1.0));
    auto h = real_part(f);
    auto m0 = radial_functional(h, 0.0);
    for (const auto& [w, c] : m0.forward) CHECK(c.cwiseAbs().maxCoeff() == 0.0);
    CHECK(m0.unit(0, 0) == cplx(1.0));

    auto a = scale_functional(radial_functional(h, 0.4), 0.7 / 0.4);
    auto b = radial_functional(h, 0.7);
    for (const auto& [w, c] : b.forward) CHECK(maxdiff(a.fwd(w), c) < 1e-15);
    for (const auto& [w, c] : b.backward) CHECK(maxdiff(a.bwd(w), c) < 1e-15);

    for (double r : {0.3, 0.8}) {
        auto X = sampling::nilpotent_tuple(rng, 2, 3, 0.9);
        CHECK(maxdiff(poisson_transform_of(radial_functional(h, r), X), eval(h, X.scaled(r))) < 1e-10);
    }
}
