#include <doctest.h>

#include <cmath>

#include "ncft/errors.hpp"
#include "ncft/fock.hpp"
#include "ncft/sampling.hpp"

using namespace ncft;

namespace {
double maxdiff(const CMatrix& A, const CMatrix& B) { return (A - B).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("creation operators on small truncations") {
    FockTrunc f11(1, 1);
    CMatrix S(2, 2);
    S << 0, 0, 1, 0;
    CHECK(maxdiff(left_creation(f11, 1), S) == 0.0);

    FockTrunc f22(2, 2);
    const auto& b = f22.basis();
    CHECK(left_creation(f22, 1)(static_cast<Eigen::Index>(b.index(Word{1})), 0) == cplx(1.0));
    CHECK(left_creation(f22, 1).col(0).cwiseAbs().sum() == 1.0);
    const auto g2 = static_cast<Eigen::Index>(b.index(Word{2}));
    const auto g21 = static_cast<Eigen::Index>(b.index(Word{2, 1}));
    CHECK(right_creation(f22, 1)(g21, g2) == cplx(1.0));
    CHECK(right_creation(f22, 1).col(g2).cwiseAbs().sum() == 1.0);
    // degree-N vectors are annihilated
    CHECK(right_creation(f22, 1).col(g21).cwiseAbs().sum() == 0.0);

    for (int N = 1; N <= 4; ++N) {
        FockTrunc f(1, N);
        CHECK(maxdiff(f.R(1), f.S(1)) == 0.0);
    }
}

TEST_CASE("words of length above N act as zero") {
    FockTrunc ft(2, 2);
    CHECK(left_word_operator(ft, Word{1, 2, 1}).cwiseAbs().maxCoeff() == 0.0);
    CHECK(right_word_operator(ft, Word{2, 2, 2}).cwiseAbs().maxCoeff() == 0.0);
    CHECK(left_word_operator(ft, Word{1, 2}).cwiseAbs().maxCoeff() == 1.0);
}

TEST_CASE("creation algebra") {
    for (int n = 1; n <= 3; ++n)
        for (int N = 1; N <= 4; ++N) {
            FockTrunc ft(n, N);
            CMatrix Q = degree_projection(ft, N - 1);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    CMatrix lhs = ft.S(i).adjoint() * ft.S(j);
                    CHECK(maxdiff(lhs, i == j ? Q : CMatrix::Zero(Q.rows(), Q.cols())) <= 1e-13);
                    CHECK(maxdiff(ft.S(i) * ft.R(j), ft.R(j) * ft.S(i)) <= 1e-13);
                }
        }
}

TEST_CASE("word operators") {
    FockTrunc ft(2, 3);
    Word a{1, 2};
    CHECK(maxdiff(left_word_operator(ft, a), ft.S(1) * ft.S(2)) == 0.0);
    CHECK(maxdiff(right_word_operator(ft, a), ft.R(1) * ft.R(2)) == 0.0);
    CHECK(maxdiff(right_translation(ft, Word{2, 1}), ft.R(1) * ft.R(2)) == 0.0);
}

TEST_CASE("degree projections") {
    FockTrunc ft(2, 2);
    CHECK(maxdiff(degree_projection(ft, 2), identity(7)) == 0.0);
    CMatrix expect = CMatrix::Zero(7, 7);
    expect(0, 0) = expect(1, 1) = expect(2, 2) = 1.0;
    CHECK(maxdiff(degree_projection(ft, 1), expect) == 0.0);
    for (int k = 0; k <= 2; ++k)
        for (int j = 0; j <= 2; ++j)
            CHECK(maxdiff(degree_projection(ft, k) * degree_projection(ft, j), degree_projection(ft, std::min(k, j))) ==
                  0.0);
}

TEST_CASE("reconstruction operator") {
    FockTrunc ft(2, 3);
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    CHECK(reconstruction_operator(ft, Z).cwiseAbs().maxCoeff() == 0.0);

    for (double t : {0.2, 0.5, 0.9}) {
        FockTrunc f1(1, 3);
        OperatorTuple X({CMatrix::Constant(1, 1, t)});
        CHECK(operator_norm(reconstruction_operator(f1, X)) == doctest::Approx(t).epsilon(1e-13));
    }

    sampling::Rng rng(7);
    OperatorTuple X = sampling::nilpotent_tuple(rng, 2, 3, 0.8);
    CMatrix RX = reconstruction_operator(ft, X);
    CMatrix P = RX;
    for (int k = 1; k < 3; ++k) P = P * RX;
    CHECK(P.cwiseAbs().maxCoeff() < 1e-14);
    CMatrix V = sampling::gaussian(rng, RX.rows(), 3);
    CHECK(maxdiff(apply_reconstruction(ft, X, V), RX * V) < 1e-13);
}

TEST_CASE("berezin kernel") {
    FockTrunc ft(2, 3);
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    CHECK(maxdiff(berezin_kernel(ft, Z), identity(ft.dim() * 2)) < 1e-15);

    sampling::Rng rng(11);
    OperatorTuple X = sampling::nilpotent_tuple(rng, 2, 3, 0.7);
    CMatrix RX = reconstruction_operator(ft, X);
    CMatrix inv = identity(static_cast<std::size_t>(RX.rows())), term = inv;
    for (int k = 0; k < 8; ++k) {
        term = term * RX;
        inv += term;
    }
    CMatrix expect = kron(identity(ft.dim()), defect(X)) * inv;
    CHECK(maxdiff(berezin_kernel(ft, X), expect) < 1e-12);
}

TEST_CASE("poisson kernel") {
    FockTrunc ft(2, 3);
    OperatorTuple Z({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)});
    CMatrix K0 = poisson_kernel(ft, Z);
    CHECK(maxdiff(K0.topRows(2), identity(2)) == 0.0);
    CHECK(K0.bottomRows(K0.rows() - 2).cwiseAbs().maxCoeff() == 0.0);

    sampling::Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        OperatorTuple X = sampling::nilpotent_tuple(rng, 2, 4, 0.9);
        FockTrunc f(2, 4);
        CMatrix K = poisson_kernel(f, X);
        CHECK(maxdiff(K.adjoint() * K, identity(4)) < 1e-12);
    }

    const double t = 0.6;
    FockTrunc f1(1, 2);
    CMatrix K = poisson_kernel(f1, OperatorTuple({CMatrix::Constant(1, 1, t)}));
    const double s = std::sqrt(1 - t * t);
    CHECK(std::abs(K(0, 0) - s) < 1e-15);
    CHECK(std::abs(K(1, 0) - s * t) < 1e-15);
    CHECK(std::abs(K(2, 0) - s * t * t) < 1e-15);
}

TEST_CASE("poisson transform identities") {
    FockTrunc ft(2, 4);
    sampling::Rng rng(5);
    CMatrix F = sampling::gaussian(rng, static_cast<Eigen::Index>(ft.dim()), static_cast<Eigen::Index>(ft.dim()));
    OperatorTuple Z({CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)});
    CHECK(maxdiff(poisson_transform(ft, F, Z), F(0, 0) * identity(3)) < 1e-14);

    OperatorTuple X = sampling::nilpotent_tuple(rng, 2, 2, 0.9);  // order 2, N = 4 >= 2 nu
    CHECK(maxdiff(poisson_transform(ft, identity(ft.dim()), X), identity(2)) < 1e-13);
    for (const Word& a : {Word{}, Word{1}, Word{2}})
        for (const Word& c : {Word{}, Word{1}, Word{2}}) {
            CMatrix G = left_word_operator(ft, a) * left_word_operator(ft, c).adjoint();
            CHECK(maxdiff(poisson_transform(ft, G, X), X.word(a) * X.word(c).adjoint()) < 1e-12);
        }

    // block symbols: q = 2 copies
    CMatrix G2 = kron(sampling::gaussian(rng, 2, 2), left_word_operator(ft, Word{1}));
    CHECK(poisson_transform(ft, G2, X).rows() == 4);
}

TEST_CASE("berezin transform") {
    FockTrunc ft(2, 3);
    sampling::Rng rng(9);
    CMatrix e0 = CMatrix::Zero(static_cast<Eigen::Index>(ft.dim()), 1);
    e0(0, 0) = 1.0;
    VectorStateRealization tau{{1.0}, {e0}, {e0}};
    OperatorTuple X = sampling::nilpotent_tuple(rng, 2, 3, 0.8);
    CMatrix F = sampling::gaussian(rng, static_cast<Eigen::Index>(ft.dim()), static_cast<Eigen::Index>(ft.dim()));
    CHECK(maxdiff(berezin_transform(ft, tau, F, X), poisson_transform(ft, F, X)) < 1e-12);

    OperatorTuple Z({CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)});
    CHECK(maxdiff(berezin_transform(ft, tau, identity(ft.dim()), Z), identity(3)) < 1e-14);

    CMatrix xi = sampling::random_fock_vector(rng, ft, 2);
    VectorStateRealization st{{1.0}, {xi}, {xi}};
    CMatrix B = berezin_transform(ft, st, identity(ft.dim()), X);
    CHECK(is_hermitian(B));
    CHECK(min_eig_hermitian(0.5 * (B + B.adjoint())) >= -1e-12);
}

TEST_CASE("zone gram matches the dense berezin kernel") {
    sampling::Rng rng(13);
    for (int n = 1; n <= 2; ++n) {
        FockTrunc ft(n, 4);
        OperatorTuple X = sampling::dense_tuple(rng, n, 2, 0.5);
        CMatrix B = berezin_kernel(ft, X);
        const int zone = 2;
        const auto cols = static_cast<Eigen::Index>(ft.basis().degree_offset(zone + 1)) * 2;
        CMatrix G = B.leftCols(cols).adjoint() * B.leftCols(cols);
        CHECK(maxdiff(berezin_zone_gram(ft, X, zone), G) < 1e-12);
    }
}

TEST_CASE("isometric dilation") {
    OperatorTuple T({CMatrix::Constant(1, 1, 0.5)});
    const int N = 3;
    OperatorTuple V = isometric_dilation(T, N);
    const auto p = 1;
    CHECK(std::abs(V[0].adjoint()(0, 0) - 0.5) < 1e-15);
    CHECK(V[0].adjoint().col(0).tail(V.dim() - p).cwiseAbs().maxCoeff() < 1e-15);

    sampling::Rng rng(17);
    OperatorTuple T2 = sampling::dense_tuple(rng, 2, 2, 0.9);
    OperatorTuple W = isometric_dilation(T2, 2);
    FockTrunc ft(2, 2);
    // vectors h + xi with deg xi <= N - 1
    const Eigen::Index pp = 2, np = 4;
    const auto keep = pp + static_cast<Eigen::Index>(ft.basis().degree_offset(2)) * np;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CMatrix G = (W[i].adjoint() * W[j]).topLeftCorner(keep, keep);
            CHECK(maxdiff(G, i == j ? identity(static_cast<std::size_t>(keep)) : CMatrix::Zero(keep, keep)) < 1e-12);
            CHECK(maxdiff(W[i].adjoint().topLeftCorner(pp, pp), T2[i].adjoint()) < 1e-15);
        }
    CHECK_THROWS_AS(isometric_dilation(T2.scaled(2.0), 2), ScopeError);
}

TEST_CASE("tail bound") {
    CHECK(tail_bound(0.0, 5) == 0.0);
    CHECK(tail_bound(0.5, 9) == doctest::Approx(std::pow(0.5, 10) / std::sqrt(0.75)).epsilon(1e-14));
    CHECK(tail_bound(0.5, 9) == doctest::Approx(1.1276e-3).epsilon(1e-4));
    for (int N = 1; N < 10; ++N) CHECK(tail_bound(0.7, N + 1) < tail_bound(0.7, N));
}
