#include "ncft/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ncft/errors.hpp"
#include "ncft/pluriharmonic.hpp"
#include "ncft/sampling.hpp"
#include "ncft/toeplitz.hpp"

namespace ncft {

namespace {

CMatrix lookup(const CoeffMap& m, const Word& w, std::size_t p) {
    auto it = m.find(w);
    return it != m.end() ? it->second
                         : CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
}

void check_words(const CoeffMap& coeffs, int n, int m, std::size_t p, const char* what) {
    if (n < 1 || n > kMaxGenerators) throw InputError(std::string(what) + ": n must be in 1..9");
    if (m < 0) throw InputError(std::string(what) + ": degree must be nonnegative");
    if (p == 0) throw InputError(std::string(what) + ": block size must be positive");
    for (const auto& [w, c] : coeffs) {
        if (w.size() > static_cast<std::size_t>(m))
            throw InputError(std::string(what) + ": word \"" + w.str() + "\" is longer than the degree");
        if (w.max_letter() > n)
            throw InputError(std::string(what) + ": word \"" + w.str() + "\" uses a letter beyond n");
        if (static_cast<std::size_t>(c.rows()) != p || static_cast<std::size_t>(c.cols()) != p)
            throw InputError(std::string(what) + ": coefficient \"" + w.str() + "\" has the wrong shape");
        if (!c.allFinite()) throw InputError(std::string(what) + ": non-finite coefficient");
    }
}

}  // namespace

CMatrix CaratheodoryProblem::coeff(const Word& w) const { return lookup(coeffs, w, p); }
CMatrix CFProblem::coeff(const Word& w) const { return lookup(coeffs, w, p); }

void CaratheodoryProblem::validate() const {
    check_words(coeffs, n, m, p, "caratheodory problem");
    auto it = coeffs.find(Word{});
    if (it == coeffs.end()) throw InputError("caratheodory problem: b_0 is missing");
    if (!is_hermitian(it->second)) throw InputError("caratheodory problem: b_0 must be Hermitian");
    if (min_eig_hermitian(0.5 * (it->second + it->second.adjoint())) < -1e-12)
        throw InputError("caratheodory problem: b_0 must be positive semidefinite");
}

void CFProblem::validate() const { check_words(coeffs, n, m, p, "CF problem"); }

FeasibilityReport check_feasibility(const CaratheodoryProblem& prob, double tol) {
    prob.validate();
    if (!(tol >= 0.0)) throw InputError("tolerance must be nonnegative");
    MultiToeplitzMatrix T = assemble_T(prob.coeffs, prob.n, prob.m);
    FeasibilityReport rep;
    rep.minEig = min_eig(T);
    rep.matrixDim = static_cast<std::size_t>(T.entries.rows());
    rep.tol = tol;
    rep.feasible = rep.minEig >= -tol;
    return rep;
}

namespace {

double distance_to_psd(const CMatrix& H) {
    RVector lam = hermitian_eig(H).eigenvalues;
    return lam.cwiseMin(0.0).norm();
}

ExtensionResult certify(const CaratheodoryProblem& prob, const CMatrix& x, const OrbitStructure& st, int M) {
    ExtensionResult res;
    res.targetDeg = M;
    res.coeffs = coefficients_from_orbits(x, st);
    for (auto& [w, c] : res.coeffs)
        if (w.size() <= static_cast<std::size_t>(prob.m)) c = prob.coeff(w);
    res.coeffs[Word{}] = prob.coeffs.at(Word{});
    for (const auto& [w, c] : prob.coeffs)
        res.certificate.prescribedError =
            std::max(res.certificate.prescribedError, (res.coeffs.at(w) - c).cwiseAbs().maxCoeff());
    res.certificate.minEigTM = min_eig(assemble_T(res.coeffs, prob.n, M));
    return res;
}

}  // namespace

ExtensionOutcome extend(const CaratheodoryProblem& prob, int M, double tol, int maxIter, double slack) {
    ExtensionOutcome out;
    out.feasibility = check_feasibility(prob, tol);
    if (M <= prob.m) throw InputError("extend: target degree must exceed the problem degree");
    if (maxIter < 0) throw InputError("extend: maxIter must be nonnegative");
    if (!out.feasibility.feasible) {
        out.status = ExtensionStatus::Infeasible;
        return out;
    }
    const double b0norm = operator_norm(prob.coeffs.at(Word{}));
    // T_m - lambda I is again feasible data, so an extension with margin lambda exists
    const double eps = slack >= 0.0 ? slack : std::max({tol, 1e-9 * b0norm, 0.5 * out.feasibility.minEig});

    OrbitStructure st(prob.n, M, prob.m);
    CMatrix x = assemble_T(prob.coeffs, prob.n, M).entries;
    CMatrix corr = CMatrix::Zero(x.rows(), x.cols());
    double residual = distance_to_psd(x);
    double prevStep = -1.0;
    int iter = 0, violations = 0;
    double worstIncrease = 0.0;
    while (residual > tol && iter < maxIter) {
        ++iter;
        CMatrix y = psd_project(x + corr, eps);
        corr += x - y;
        CMatrix xn = project_affine(y, st, prob.coeffs);
        const double step = (xn - x).norm();
        if (prevStep >= 0.0 && step > prevStep * (1.0 + 1e-9) + 1e-14) {
            ++violations;
            worstIncrease = std::max(worstIncrease, step - prevStep);
        }
        prevStep = step;
        x = std::move(xn);
        residual = distance_to_psd(x);
    }

    ExtensionResult res = certify(prob, x, st, M);
    res.certificate.iterations = iter;
    res.certificate.projResidual = residual;
    res.certificate.slack = eps;
    res.certificate.monotonicityViolations = violations;
    res.certificate.worstStepIncrease = worstIncrease;
    const bool ok = residual <= tol && res.certificate.minEigTM >= -tol && res.certificate.prescribedError == 0.0;
    out.status = ok ? ExtensionStatus::Ok : ExtensionStatus::NoConvergence;
    out.result = std::move(res);
    return out;
}

CayleyRouteResult cayley_route(const CaratheodoryProblem& prob, double regEps) {
    auto feas = check_feasibility(prob);
    if (!feas.feasible) throw InputError("cayley_route: problem is infeasible");
    const CMatrix& b0 = prob.coeffs.at(Word{});
    CayleyRouteResult out;
    out.regEps = regEps >= 0.0 ? regEps : 1e-10 * (1.0 + operator_norm(b0));
    const auto p = static_cast<Eigen::Index>(prob.p);
    CMatrix Nrm = hermitian_inv_sqrt(0.5 * (b0 + b0.adjoint()) + out.regEps * CMatrix::Identity(p, p));
    FreeSeries D(prob.n, prob.m, prob.p, prob.p);
    for (const auto& [w, c] : prob.coeffs)
        if (!w.empty()) D.set(w, Nrm * c * Nrm);
    CMatrix Y = eval_at_creation(D, prob.m);
    CMatrix X = truncated_cayley(Y, CayleyDirection::Inverse, prob.n, prob.m);
    out.xNorm = operator_norm(X);
    out.cf.n = prob.n;
    out.cf.m = prob.m;
    out.cf.p = prob.p;
    out.cf.coeffs = extract_coeffs(X, prob.n, prob.m).analytic;
    return out;
}

CMatrix cf_matrix(const CFProblem& prob) {
    prob.validate();
    GradedBasis b(prob.n, prob.m);
    const auto dim = static_cast<Eigen::Index>(b.size());
    const auto p = static_cast<Eigen::Index>(prob.p);
    check_matrix_size(prob.p * b.size(), prob.p * b.size());
    CMatrix A = CMatrix::Zero(p * dim, p * dim);
    for (std::size_t r = 0; r < b.size(); ++r)
        for (std::size_t c = 0; c < b.size(); ++c) {
            CMatrix blk;
            if (r == c)
                blk = prob.coeff(Word{});
            else if (auto tau = left_quotient(b.word_at(r), b.word_at(c)))
                blk = prob.coeff(reverse(*tau));
            else
                continue;
            for (Eigen::Index a = 0; a < p; ++a)
                for (Eigen::Index e = 0; e < p; ++e)
                    A(a * dim + static_cast<Eigen::Index>(r), e * dim + static_cast<Eigen::Index>(c)) = blk(a, e);
        }
    return A;
}

CFReport cf_check(const CFProblem& prob, double tol) {
    CMatrix A = cf_matrix(prob);
    FockTrunc ft(prob.n, prob.m);
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    const auto p = static_cast<Eigen::Index>(prob.p);
    CMatrix viaR = kron(prob.coeff(Word{}), CMatrix::Identity(dim, dim));
    for (const auto& [w, c] : prob.coeffs)
        if (!w.empty()) viaR += kron(c, right_word_operator(ft, w));
    CFReport rep;
    rep.crossCheckError = (A - viaR).cwiseAbs().maxCoeff();
    for (int i = 1; i <= prob.n; ++i) {
        CMatrix S = kron(CMatrix::Identity(p, p), ft.S(i));
        rep.commutatorError = std::max(rep.commutatorError, (A * S - S * A).cwiseAbs().maxCoeff());
    }
    rep.norm = operator_norm(A);
    rep.passed = rep.norm <= 1.0 + tol;
    return rep;
}

CaratheodoryProblem cf_to_caratheodory(const CFProblem& prob, double tol) {
    CFReport rep = cf_check(prob, tol);
    if (!rep.passed) throw InputError("cf_to_caratheodory: CF data is not contractive");
    const int m1 = prob.m + 1;
    FreeSeries B(prob.n, m1, prob.p, prob.p);
    for (const auto& [w, c] : prob.coeffs) B.set(w.prepend(1), c);
    CMatrix Phi = truncated_cayley(eval_at_creation(B, m1), CayleyDirection::Forward, prob.n, m1);
    CaratheodoryProblem out;
    out.n = prob.n;
    out.m = m1;
    out.p = prob.p;
    out.coeffs = extract_coeffs(Phi, prob.n, m1).analytic;
    out.coeffs.erase(Word{});
    out.coeffs[Word{}] = CMatrix::Identity(static_cast<Eigen::Index>(prob.p), static_cast<Eigen::Index>(prob.p));
    return out;
}

VerificationReport verify_solution(const CaratheodoryProblem& prob, const ExtensionResult& ext, int samples,
                                   std::uint64_t seed, double tol) {
    prob.validate();
    const int M = ext.targetDeg;
    if (M < prob.m) throw InputError("verify_solution: extension degree is below the problem degree");
    check_words(ext.coeffs, prob.n, M, prob.p, "extension");
    VerificationReport rep;
    auto fail = [&](bool& flag, const char* name) {
        flag = false;
        rep.passed = false;
        if (!rep.defect.empty()) rep.defect += ", ";
        rep.defect += name;
    };

    GradedBasis low(prob.n, prob.m);
    for (const Word& w : low.words()) {
        auto it = ext.coeffs.find(w);
        CMatrix e = it != ext.coeffs.end() ? it->second : CMatrix::Zero(static_cast<Eigen::Index>(prob.p),
                                                                          static_cast<Eigen::Index>(prob.p));
        rep.prescribedError = std::max(rep.prescribedError, (e - prob.coeff(w)).cwiseAbs().maxCoeff());
    }
    if (rep.prescribedError != 0.0) fail(rep.prescribedOk, "prescribed");

    if (ext.coeffs.find(Word{}) == ext.coeffs.end()) throw InputError("verify_solution: extension lacks b_0");
    rep.minEigTM = min_eig(assemble_T(ext.coeffs, prob.n, M));
    if (rep.minEigTM < -tol) fail(rep.minEigOk, "minEig");

    // 2 Re g(X) = b_0 (x) I + sum (b_a (x) X_a + h.c.)
    sampling::Rng rng(seed);
    rep.worstRealPart = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const int d = std::uniform_int_distribution<int>(2, std::max(2, M + 1))(rng);
        OperatorTuple X = sampling::nilpotent_tuple(rng, prob.n, d, std::uniform_real_distribution<double>(0.05, 0.99)(rng));
        CMatrix G = CMatrix::Zero(static_cast<Eigen::Index>(prob.p) * d, static_cast<Eigen::Index>(prob.p) * d);
        for_each_word_product(X, M, [&](const Word& w, const CMatrix& P) {
            if (w.empty()) return;
            if (auto it = ext.coeffs.find(w); it != ext.coeffs.end()) G += kron(it->second, P);
        });
        CMatrix H = G + G.adjoint() + kron(ext.coeffs.at(Word{}), CMatrix::Identity(d, d));
        rep.worstRealPart = std::min(rep.worstRealPart, min_eig_hermitian(0.5 * (H + H.adjoint())));
        ++rep.samplesUsed;
    }
    if (samples > 0 && rep.worstRealPart < -tol) fail(rep.realPartOk, "realPart");
    if (samples <= 0) rep.worstRealPart = 0.0;

    PluriharmonicFn h(prob.n, M, prob.p);
    for (const auto& [w, c] : ext.coeffs) {
        h.analytic[w] = c;
        if (!w.empty()) h.coanalytic[w] = c.adjoint();
    }
    if (!coefficient_bound_check(h, tol).passed) fail(rep.coefficientBoundOk, "coefficientBound");
    return rep;
}

MomentFunctional moment_problem_view(const CaratheodoryProblem& prob) {
    prob.validate();
    if (prob.p != 1) throw InputError("moment_problem_view: only scalar problems are supported");
    MomentFunctional mu;
    mu.n = prob.n;
    mu.cutoff = prob.m;
    mu.p = 1;
    mu.unit = prob.coeffs.at(Word{});
    for (const auto& [w, c] : prob.coeffs) {
        if (w.empty()) continue;
        mu.backward[reverse(w)] = c;
        mu.forward[reverse(w)] = c.adjoint();
    }
    return mu;
}

}  // namespace ncft
