#include "ncft/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ncft/caratheodory.hpp"
#include "ncft/errors.hpp"
#include "ncft/fock.hpp"
#include "ncft/pluriharmonic.hpp"
#include "ncft/sampling.hpp"
#include "ncft/series.hpp"
#include "ncft/toeplitz.hpp"
#include "ncft/transforms.hpp"

namespace ncft::acceptance {

namespace {

using sampling::Rng;

double maxabs(const CMatrix& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

Word ones(int k) { return Word(std::vector<std::uint8_t>(static_cast<std::size_t>(k), 1)); }

Rng suite_rng(const Context& ctx, int id) { return Rng(ctx.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(id))); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
}

Outcome verdict(bool ok, const std::string& detail) { return {ok, detail}; }

// ---------------------------------------------------------------------------

Outcome creation_algebra(const Context& ctx) {
    double worstAdj = 0.0, worstComm = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (int N = 1; N <= 4; ++N) {
            FockTrunc ft(n, N);
            const CMatrix Q = degree_projection(ft, N - 1);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    CMatrix Si = ft.S(i);
                    if (ctx.canary && n == 2 && N == 3 && i == 1) Si(1, 0) += 1.0;
                    const CMatrix& Sj = ft.S(j);
                    const CMatrix& Rj = ft.R(j);
                    worstAdj = std::max(worstAdj, maxabs(Si.adjoint() * Sj - (i == j ? Q : CMatrix::Zero(Q.rows(), Q.cols()))));
                    worstComm = std::max(worstComm, maxabs(Si * Rj - Rj * Si));
                }
        }
    return verdict(worstAdj <= 1e-13 && worstComm <= 1e-13,
                   "max |S_i^* S_j - d_ij Q| = " + fmt(worstAdj) + ", max |[S_i, R_j]| = " + fmt(worstComm));
}

Outcome cayley_bijection(const Context& ctx) {
    Rng rng = suite_rng(ctx, 2);
    double worstSeries = 0.0, worstOp = 0.0, worstInter = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = uniform_int(rng, 1, 3), cutoff = uniform_int(rng, 1, n == 3 ? 5 : 6);
        const auto p = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        FreeSeries f = sampling::random_series(rng, n, cutoff, p, p, cutoff, uniform(rng, 0.05, 0.4));
        worstSeries = std::max(worstSeries, cayley_inverse(cayley_forward(f)).max_coeff_distance(f));
        worstSeries = std::max(worstSeries, cayley_forward(cayley_inverse(f)).max_coeff_distance(f));
    }
    for (int t = 0; t < 40; ++t) {
        const int n = uniform_int(rng, 1, 3), m = uniform_int(rng, 1, n == 3 ? 3 : 4);
        const auto p = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        FreeSeries f = sampling::random_series(rng, n, m, p, p, m, uniform(rng, 0.05, 0.4));
        const CMatrix Y = eval_at_creation(f, m);
        const CMatrix X = truncated_cayley(Y, CayleyDirection::Inverse, n, m);
        worstOp = std::max(worstOp, maxabs(truncated_cayley(X, CayleyDirection::Forward, n, m) - Y));
        worstOp = std::max(worstOp,
                           maxabs(truncated_cayley(truncated_cayley(Y, CayleyDirection::Forward, n, m), CayleyDirection::Inverse, n, m) - Y));
        // the operator transform intertwines with the series transform
        worstInter = std::max(worstInter, maxabs(truncated_cayley(Y, CayleyDirection::Forward, n, m) -
                                                 eval_at_creation(cayley_forward(f), m)));
        worstInter = std::max(worstInter, maxabs(X - eval_at_creation(cayley_inverse(f), m)));
    }
    return verdict(worstSeries <= 1e-10 && worstOp <= 1e-12 && worstInter <= 1e-10,
                   "series " + fmt(worstSeries) + ", operator " + fmt(worstOp) + ", intertwining " + fmt(worstInter));
}

// sum over factorizations alpha = beta_1 ... beta_j into nonempty words
CMatrix composition_sum(const FreeSeries& f, const Word& alpha) {
    const auto p = static_cast<Eigen::Index>(f.rows());
    CMatrix total = f.coeff(alpha);
    for (std::size_t k = 1; k < alpha.size(); ++k) total += f.coeff(alpha.prefix(k)) * composition_sum(f, alpha.suffix(alpha.size() - k));
    return total.rows() == p ? total : CMatrix::Zero(p, p);
}

Outcome composition_oracle(const Context& ctx) {
    Rng rng = suite_rng(ctx, 3);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = uniform_int(rng, 1, 3), deg = uniform_int(rng, 1, n == 3 ? 4 : 5);
        const auto p = static_cast<std::size_t>(uniform_int(rng, 1, 2));
        FreeSeries f = sampling::random_series(rng, n, deg, p, p, deg, uniform(rng, 0.1, 0.5));
        FreeSeries B = cayley_forward(f);
        GradedBasis b(n, deg);
        for (std::size_t i = 1; i < b.size(); ++i)
            worst = std::max(worst, maxabs(B.coeff(b.word_at(i)) - composition_sum(f, b.word_at(i))));
    }
    return verdict(worst <= 1e-12, "max coefficient difference " + fmt(worst));
}

// largest degree whose Fock block stays below `cap` rows
int zone_cap(int n, std::size_t p, int want, std::size_t cap) {
    int d = want;
    while (d > 0 && GradedBasis(n, d).size() * p > cap) --d;
    return d;
}

Outcome poisson_factorization(const Context& ctx) {
    Rng rng = suite_rng(ctx, 4);
    const int N = 8;
    std::vector<FockTrunc> ft;
    for (int n = 1; n <= 3; ++n) ft.emplace_back(n, N);
    double worstIso = 0.0, worstFac = 0.0, worstRatio = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = uniform_int(rng, 1, 3), d = uniform_int(rng, 1, 6);
        OperatorTuple X = sampling::nilpotent_tuple(rng, n, d, uniform(rng, 0.05, 0.95));
        const FockTrunc& f = ft[static_cast<std::size_t>(n - 1)];
        const CMatrix K = poisson_kernel(f, X);
        worstIso = std::max(worstIso, maxabs(K.adjoint() * K - identity(X.dim())));
        const int nu = *jsr_estimate(X, d + 1).nilpotent_order;
        const int zone = zone_cap(n, X.dim(), N - nu + 1, 400);
        const CMatrix G = berezin_zone_gram(f, X, zone);
        worstFac = std::max(worstFac, maxabs(G - pluriharmonic_poisson_kernel(FockTrunc(n, zone), X)));
    }
    for (int t = 0; t < 20; ++t) {
        const int n = uniform_int(rng, 1, 3), d = uniform_int(rng, 1, 4);
        const double r = uniform(rng, 0.1, 0.6);
        OperatorTuple X = sampling::dense_tuple(rng, n, d, r);
        const FockTrunc& f = ft[static_cast<std::size_t>(n - 1)];
        const CMatrix K = poisson_kernel(f, X);
        const double iso = maxabs(K.adjoint() * K - identity(X.dim()));
        const int zone = zone_cap(n, X.dim(), N / 2, 400);
        const double fac = maxabs(berezin_zone_gram(f, X, zone) - pluriharmonic_poisson_kernel(FockTrunc(n, zone), X));
        worstRatio = std::max(worstRatio, std::max(iso, fac) / tail_bound(r, N));
    }
    return verdict(worstIso <= 1e-11 && worstFac <= 1e-11 && worstRatio <= 5.0,
                   "nilpotent: |K^*K - I| " + fmt(worstIso) + ", zone |P - B^*B| " + fmt(worstFac) +
                       "; norm-r: worst discrepancy / tail_bound " + fmt(worstRatio));
}

Outcome poisson_identities(const Context& ctx) {
    Rng rng = suite_rng(ctx, 5);
    double worstZero = 0.0, worstSS = 0.0;
    for (int n = 1; n <= 3; ++n) {
        FockTrunc ft(n, 3);
        for (int t = 0; t < 3; ++t) {
            const auto dim = static_cast<Eigen::Index>(ft.dim());
            const CMatrix F = sampling::gaussian(rng, dim, dim);
            const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 3));
            std::vector<CMatrix> zero(static_cast<std::size_t>(n), CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
            worstZero = std::max(worstZero, maxabs(poisson_transform(ft, F, OperatorTuple(zero)) - F(0, 0) * identity(d)));
        }
    }
    for (int n : {1, 2, 3, 2}) {
        const int d = n == 3 ? 2 : 3;
        OperatorTuple X = sampling::nilpotent_tuple(rng, n, d, uniform(rng, 0.3, 0.95));
        const int nu = *jsr_estimate(X, d + 1).nilpotent_order;
        FockTrunc ft(n, 3 + nu);
        GradedBasis b(n, 3);
        const auto& fb = ft.basis();
        std::vector<CMatrix> Xw;
        for (const Word& w : b.words()) Xw.push_back(X.word(w));
        for (std::size_t a = 0; a < b.size(); ++a)
            for (std::size_t c = 0; c < b.size(); ++c) {
                // S_a S_c^* sends e_{c g} to e_{a g} and kills everything else
                const Word& wa = b.word_at(a);
                const Word& wc = b.word_at(c);
                CMatrix F = zeros(fb.size(), fb.size());
                for (std::size_t g = 0; g < fb.size(); ++g) {
                    const Word& gw = fb.word_at(g);
                    if (gw.size() + std::max(wa.size(), wc.size()) > static_cast<std::size_t>(ft.N())) continue;
                    F(static_cast<Eigen::Index>(fb.index(wa + gw)), static_cast<Eigen::Index>(fb.index(wc + gw))) = 1.0;
                }
                worstSS = std::max(worstSS, maxabs(poisson_transform(ft, F, X) - Xw[a] * Xw[c].adjoint()));
            }
    }
    return verdict(worstZero <= 1e-11 && worstSS <= 1e-11,
                   "P_0 " + fmt(worstZero) + ", P_X(S_a S_b^*) " + fmt(worstSS));
}

PluriharmonicFn random_pluriharmonic(Rng& rng, int n, int cutoff, std::size_t p) {
    FreeSeries f = sampling::random_series(rng, n, cutoff, p, p, cutoff, 0.5);
    f.set(Word{}, sampling::gaussian(rng, static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
    return real_part(f);
}

Outcome mean_value(const Context& ctx) {
    Rng rng = suite_rng(ctx, 6);
    double worst = 0.0;
    bool allPassed = true;
    for (int t = 0; t < 50; ++t) {
        const int n = uniform_int(rng, 1, 3), cutoff = uniform_int(rng, 1, 3);
        const int d = uniform_int(rng, 2, n == 3 ? 3 : 4);
        auto h = random_pluriharmonic(rng, n, cutoff, static_cast<std::size_t>(uniform_int(rng, 1, 2)));
        OperatorTuple X = sampling::nilpotent_tuple(rng, n, d, uniform(rng, 0.1, 0.85));
        const int nu = *jsr_estimate(X, d + 1).nilpotent_order;
        auto rep = mean_value_check(h, X, 0.9, nu + cutoff);
        worst = std::max(worst, rep.discrepancy);
        allPassed = allPassed && rep.passed;
    }
    return verdict(allPassed && worst <= 1e-9, "max ||h(X) - P_{X/r}[h(rS)]|| " + fmt(worst));
}

// Pmu for a weighted pair of positive vector states with deg xi <= 2
MomentFunctional random_positive_state(Rng& rng, int n, int cutoff) {
    const int deg = uniform_int(rng, 0, 2);
    FockTrunc ft(n, deg + cutoff);
    std::vector<WeightedPair> pairs;
    const int k = uniform_int(rng, 1, 2);
    for (int i = 0; i < k; ++i) {
        CMatrix xi = sampling::random_fock_vector(rng, ft, deg);
        pairs.push_back({uniform(rng, 0.2, 1.0), xi, xi});
    }
    return from_vector_states(ft, pairs, cutoff);
}

Outcome harnack_and_bounds(const Context& ctx) {
    Rng rng = suite_rng(ctx, 7);
    int posFail = 0, harnFail = 0, coefFail = 0;
    double worstRatio = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = uniform_int(rng, 1, 3);
        auto h = poisson_function(random_positive_state(rng, n, 4));
        if (!check_positive(h, 4, 1e-9).passed) ++posFail;
        for (double r : {0.25, 0.5}) {
            std::vector<OperatorTuple> samples;
            for (int s = 0; s < 5; ++s) samples.push_back(sampling::nilpotent_tuple(rng, n, uniform_int(rng, 2, 4), uniform(rng, 0.01, r)));
            auto rep = harnack_check(h, samples, r);
            if (!rep.passed) ++harnFail;
            worstRatio = std::max(worstRatio, rep.worst / rep.bound);
        }
        if (!coefficient_bound_check(h, 1e-9).passed) ++coefFail;
    }
    return verdict(posFail == 0 && harnFail == 0 && coefFail == 0,
                   "positivity failures " + std::to_string(posFail) + ", Harnack failures " + std::to_string(harnFail) +
                       " (worst ||h(X)|| / bound " + fmt(worstRatio) + "), coefficient-bound failures " + std::to_string(coefFail));
}

Outcome fejer(const Context& ctx) {
    FockTrunc f1(1, 3);
    CMatrix xi = CMatrix::Zero(static_cast<Eigen::Index>(f1.dim()), 1);
    xi(0, 0) = xi(1, 0) = 1.0 / std::sqrt(2.0);
    auto sharp = from_vector_states(f1, {{1.0, xi, xi}}, 2);
    const double gap = std::abs(std::abs(sharp.fwd(Word{1})(0, 0)) - sharp.unit(0, 0).real() / 2.0);

    Rng rng = suite_rng(ctx, 8);
    int failures = 0;
    for (int t = 0; t < 50; ++t) {
        const int n = uniform_int(rng, 1, 3), m = uniform_int(rng, 2, 4);
        FockTrunc ft(n, 2 * m - 1);
        CMatrix v = sampling::random_fock_vector(rng, ft, m - 1);
        if (!fejer_check(from_vector_states(ft, {{1.0, v, v}}, m), m, 1e-10).passed) ++failures;
    }
    return verdict(gap <= 1e-15 && failures == 0,
                   "sharp state gap " + fmt(gap) + ", cosine-bound failures " + std::to_string(failures) + "/50");
}

CaratheodoryProblem scalar_problem(const std::vector<cplx>& b) {
    CaratheodoryProblem pr;
    pr.n = 1;
    pr.m = static_cast<int>(b.size()) - 1;
    for (std::size_t k = 0; k < b.size(); ++k) pr.coeffs[ones(static_cast<int>(k))] = CMatrix::Constant(1, 1, b[k]);
    return pr;
}

Outcome caratheodory_feasibility(const Context& ctx) {
    Rng rng = suite_rng(ctx, 9);
    int mismatches = 0, feasibleCount = 0;
    for (int t = 0; t < 500; ++t) {
        const int m = uniform_int(rng, 0, 5);
        const double s = uniform(rng, 0.0, 0.7);
        std::vector<cplx> b{uniform(rng, 0.5, 1.5)};
        for (int k = 1; k <= m; ++k) b.push_back(s * cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)));
        CMatrix T(m + 1, m + 1);
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j)
                T(i, j) = i >= j ? b[static_cast<std::size_t>(i - j)] : std::conj(b[static_cast<std::size_t>(j - i)]);
        const bool classical = min_eig_hermitian(T) >= -1e-9;
        const bool ours = check_feasibility(scalar_problem(b), 1e-9).feasible;
        feasibleCount += ours;
        mismatches += classical != ours;
    }
    auto a = check_feasibility(scalar_problem({2.0, 1.0}));
    auto b = check_feasibility(scalar_problem({2.0, 3.0}));
    CaratheodoryProblem two;
    two.n = 2;
    two.m = 1;
    two.coeffs = {{Word{}, CMatrix::Constant(1, 1, 1.0)}, {Word{1}, CMatrix::Constant(1, 1, 0.5)}, {Word{2}, CMatrix::Constant(1, 1, 0.5)}};
    auto c = check_feasibility(two);
    const bool fixtures = a.feasible && std::abs(a.minEig - 1.0) <= 1e-10 && !b.feasible &&
                          std::abs(b.minEig + 1.0) <= 1e-10 && c.feasible &&
                          std::abs(c.minEig - (1.0 - 0.5 * std::sqrt(2.0))) <= 1e-10;
    return verdict(mismatches == 0 && fixtures, "verdict mismatches " + std::to_string(mismatches) + "/500 (" +
                                                    std::to_string(feasibleCount) + " feasible), fixtures " +
                                                    (fixtures ? "ok" : "FAILED"));
}

CaratheodoryProblem problem_from_state(Rng& rng, int n, int m) {
    auto mu = random_positive_state(rng, n, m);
    CaratheodoryProblem pr;
    pr.n = n;
    pr.m = m;
    pr.coeffs[Word{}] = mu.unit;
    GradedBasis b(n, m);
    for (std::size_t i = 1; i < b.size(); ++i) pr.coeffs[b.word_at(i)] = mu.bwd(reverse(b.word_at(i)));
    return pr;
}

Outcome extension_solver(const Context& ctx) {
    Rng rng = suite_rng(ctx, 10);
    int failures = 0, maxIter = 0, violations = 0;
    double worstMinEig = std::numeric_limits<double>::infinity(), worstPrescribed = 0.0;
    std::string firstDefect;
    for (int t = 0; t < 30; ++t) {
        const int n = uniform_int(rng, 1, 2), m = uniform_int(rng, 1, 2);
        auto pr = problem_from_state(rng, n, m);
        if (t % 2 == 1) {
            // pull every other instance to within 1e-2 ||b_0|| of the boundary
            const double b0 = operator_norm(pr.coeffs.at(Word{}));
            const double c = check_feasibility(pr).minEig - 1e-2 * b0;
            pr.coeffs.at(Word{}) -= c * identity(1);
        }
        auto out = extend(pr, m + 2, 1e-9, 5000);
        if (out.status != ExtensionStatus::Ok || !out.result) {
            ++failures;
            if (firstDefect.empty()) firstDefect = "instance " + std::to_string(t) + " did not converge";
            continue;
        }
        const auto& res = *out.result;
        maxIter = std::max(maxIter, res.certificate.iterations);
        violations += res.certificate.monotonicityViolations;
        worstPrescribed = std::max(worstPrescribed, res.certificate.prescribedError);
        const double fresh = min_eig(assemble_T(res.coeffs, n, m + 2));
        worstMinEig = std::min(worstMinEig, fresh);
        auto ver = verify_solution(pr, res, 20, ctx.seed + static_cast<std::uint64_t>(t), 1e-8);
        if (res.certificate.prescribedError != 0.0 || fresh < -1e-8 || !ver.passed || res.certificate.iterations > 5000) {
            ++failures;
            if (firstDefect.empty()) firstDefect = "instance " + std::to_string(t) + ": " + ver.defect;
        }
    }
    std::string detail = "failures " + std::to_string(failures) + "/30, worst fresh minEig " + fmt(worstMinEig) +
                         ", prescribedError " + fmt(worstPrescribed) + ", max iterations " + std::to_string(maxIter) +
                         ", step-monotonicity violations " + std::to_string(violations);
    if (!firstDefect.empty()) detail += "; " + firstDefect;
    return verdict(failures == 0, detail);
}

Outcome reduction_round_trip(const Context& ctx) {
    Rng rng = suite_rng(ctx, 11);
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
        CFProblem cf;
        cf.n = uniform_int(rng, 1, 2);
        cf.m = uniform_int(rng, 0, 2);
        GradedBasis b(cf.n, cf.m);
        for (const Word& w : b.words()) cf.coeffs[w] = sampling::gaussian(rng, 1, 1);
        const double s = uniform(rng, 0.2, 0.9) / operator_norm(cf_matrix(cf));
        for (auto& [w, c] : cf.coeffs) c *= s;
        // the normalization in the route is exact here since b_0 = I
        auto back = cayley_route(cf_to_caratheodory(cf), 0.0).cf;
        GradedBasis b1(cf.n, cf.m + 1);
        for (const Word& w : b1.words()) {
            const CMatrix expect = !w.empty() && w[0] == 1 ? cf.coeff(w.suffix(w.size() - 1)) : CMatrix::Zero(1, 1);
            worst = std::max(worst, maxabs(back.coeff(w) - expect));
        }
    }
    return verdict(worst <= 1e-10, "max coefficient error " + fmt(worst));
}

Outcome positivity_equivalences(const Context& ctx) {
    Rng rng = suite_rng(ctx, 12);
    const std::vector<double> grid{0.3, 0.6, 0.9, 1.0};
    int posBad = 0, negBad = 0;
    for (int t = 0; t < 50; ++t) {
        const int n = uniform_int(rng, 1, 2);
        FreeSeries f = herglotz_series(random_positive_state(rng, n, 4));
        auto rep = positivity_equivalence_check(f, 4, grid, 1e-8);
        if (!(rep.radial && rep.kernel && rep.boundary)) ++posBad;

        // shifting past the smallest boundary eigenvalue makes f indefinite
        const double c = rep.minBoundary + uniform(rng, 1e-3, 0.5) * f.coeff(Word{})(0, 0).real();
        FreeSeries g = f;
        g.set(Word{}, f.coeff(Word{}) - CMatrix::Constant(1, 1, c));
        auto neg = positivity_equivalence_check(g, 4, grid, 1e-8);
        if (!neg.agree || neg.radial || neg.kernel || neg.boundary) ++negBad;
    }
    return verdict(posBad == 0 && negBad == 0, "positive instances not all true " + std::to_string(posBad) +
                                                   "/50, indefinite instances not all false " + std::to_string(negBad) + "/50");
}

}  // namespace

const std::vector<Suite>& suites() {
    static const std::vector<Suite> all{
        {1, "creation-operator algebra", 1.0, creation_algebra},
        {2, "Cayley bijection", 10.0, cayley_bijection},
        {3, "composition-sum oracle", 5.0, composition_oracle},
        {4, "Poisson kernel and factorization", 20.0, poisson_factorization},
        {5, "Poisson transform identities", 10.0, poisson_identities},
        {6, "mean value property", 10.0, mean_value},
        {7, "Harnack and coefficient bounds", 20.0, harnack_and_bounds},
        {8, "Fejer sharpness", 5.0, fejer},
        {9, "Caratheodory feasibility vs classical oracle", 5.0, caratheodory_feasibility},
        {10, "extension solver", 120.0, extension_solver},
        {11, "reduction round trip", 10.0, reduction_round_trip},
        {12, "positivity equivalences", 30.0, positivity_equivalences},
    };
    return all;
}

std::vector<SuiteRun> run_all(const Context& ctx, std::ostream* out) {
    std::vector<SuiteRun> runs;
    for (const Suite& s : suites()) {
        SuiteRun r;
        r.id = s.id;
        r.name = s.name;
        r.budgetSeconds = s.budgetSeconds;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = s.run(ctx);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.withinBudget = r.seconds < s.budgetSeconds;
        r.passed = o.passed && r.withinBudget;
        r.detail = o.detail;
        if (!r.withinBudget) r.detail += "; over the time budget";
        if (out) {
            *out << (r.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.name << "  ("
                 << std::fixed << std::setprecision(2) << r.seconds << " s of " << std::setprecision(0)
                 << r.budgetSeconds << " s)  " << std::defaultfloat << r.detail << '\n';
            out->flush();
        }
        runs.push_back(std::move(r));
    }
    return runs;
}

bool canary_from_env() {
    const char* v = std::getenv("NCFT_SELFTEST_CANARY");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

}  // namespace ncft::acceptance
