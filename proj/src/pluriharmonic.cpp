#include "ncft/pluriharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncft/errors.hpp"

namespace ncft {

PluriharmonicFn::PluriharmonicFn(int n_, int cutoff_, std::size_t p_) : n(n_), cutoff(cutoff_), p(p_) {
    if (n < 1 || n > kMaxGenerators) throw InputError("generator count must be in 1..9");
    if (cutoff < 0) throw InputError("cutoff must be nonnegative");
    if (p == 0) throw InputError("coefficient size must be positive");
}

CMatrix PluriharmonicFn::A(const Word& w) const {
    auto it = analytic.find(w);
    return it != analytic.end() ? it->second
                                : CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
}

CMatrix PluriharmonicFn::B(const Word& w) const {
    auto it = coanalytic.find(w);
    return it != coanalytic.end() ? it->second
                                  : CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
}

bool PluriharmonicFn::is_selfadjoint(double tol) const {
    double scale = 1.0;
    for (const auto& [w, c] : analytic) scale = std::max(scale, c.norm());
    for (const auto& [w, c] : coanalytic) scale = std::max(scale, c.norm());
    const double lim = tol * scale;
    CMatrix a0 = A(Word{});
    if ((a0 - a0.adjoint()).norm() > lim) return false;
    for (const auto& [w, c] : analytic)
        if (!w.empty() && (B(w) - c.adjoint()).norm() > lim) return false;
    for (const auto& [w, c] : coanalytic)
        if ((A(w).adjoint() - c).norm() > lim) return false;
    return true;
}

void PluriharmonicFn::validate() const {
    auto check = [&](const CoeffMap& m, bool allowEmpty) {
        for (const auto& [w, c] : m) {
            if (w.empty() && !allowEmpty) throw InputError("co-analytic part has no constant coefficient");
            if (w.size() > static_cast<std::size_t>(cutoff)) throw InputError("coefficient word beyond cutoff");
            if (w.max_letter() > n) throw InputError("coefficient word uses a letter beyond n");
            if (static_cast<std::size_t>(c.rows()) != p || static_cast<std::size_t>(c.cols()) != p)
                throw InputError("coefficient shape mismatch");
        }
    };
    check(analytic, true);
    check(coanalytic, false);
}

PluriharmonicFn real_part(const FreeSeries& f) {
    if (!f.square()) throw InputError("real_part: coefficients must be square");
    PluriharmonicFn h(f.n(), f.cutoff(), f.rows());
    for (const auto& [w, c] : f.coeffs()) {
        if (w.empty()) {
            h.analytic[w] = 0.5 * (c + c.adjoint());
        } else {
            h.analytic[w] = 0.5 * c;
            h.coanalytic[w] = 0.5 * c.adjoint();
        }
    }
    return h;
}

namespace {

FreeSeries analytic_series(const PluriharmonicFn& h, double r) {
    FreeSeries f(h.n, h.cutoff, h.p, h.p);
    for (const auto& [w, c] : h.analytic) f.set(w, std::pow(r, static_cast<double>(w.size())) * c);
    return f;
}

// series whose coefficients are B_alpha^*; its value at S is the adjoint of the co-analytic part
FreeSeries coanalytic_adjoint_series(const PluriharmonicFn& h, double r) {
    FreeSeries f(h.n, h.cutoff, h.p, h.p);
    for (const auto& [w, c] : h.coanalytic) f.set(w, std::pow(r, static_cast<double>(w.size())) * c.adjoint());
    return f;
}

double family_radius(const CoeffMap& m, int n, int cutoff, std::size_t p) {
    if (cutoff < 1) return std::numeric_limits<double>::infinity();
    FreeSeries f(n, cutoff, p, p);
    for (const auto& [w, c] : m) f.set(w, c);
    return radius_estimate(f, cutoff);
}

void require_scope(const PluriharmonicFn& h, const OperatorTuple& X) {
    JsrEstimate jsr = jsr_estimate(X, h.cutoff + 1);
    if (jsr.nilpotent_order) return;
    double R = std::min(family_radius(h.analytic, h.n, h.cutoff, h.p), family_radius(h.coanalytic, h.n, h.cutoff, h.p));
    if (!(jsr.value < 0.9 * R))
        throw ScopeError("pluriharmonic eval: joint spectral radius estimate " + std::to_string(jsr.value) +
                         " is not below 0.9 times the radius estimate " + std::to_string(R));
}

}  // namespace

CMatrix eval(const PluriharmonicFn& h, const OperatorTuple& X) {
    if (X.n() != h.n) throw InputError("eval: tuple size differs from generator count");
    require_scope(h, X);
    const auto d = static_cast<Eigen::Index>(X.dim());
    const auto p = static_cast<Eigen::Index>(h.p);
    CMatrix out = CMatrix::Zero(p * d, p * d);
    for_each_word_product(X, h.cutoff, [&](const Word& w, const CMatrix& P) {
        if (auto it = h.analytic.find(w); it != h.analytic.end()) out += kron(it->second, P);
        if (auto it = h.coanalytic.find(w); it != h.coanalytic.end()) out += kron(it->second, CMatrix(P.adjoint()));
    });
    return out;
}

CMatrix radial_boundary(const PluriharmonicFn& h, double r, int m) {
    if (r < 0.0 || r > 1.0) throw InputError("radial_boundary: r must lie in [0, 1]");
    CMatrix a = eval_at_creation(analytic_series(h, r), m);
    CMatrix b = eval_at_creation(coanalytic_adjoint_series(h, r), m);
    return a + b.adjoint();
}

CMatrix pluriharmonic_poisson_kernel(const FockTrunc& ft, const OperatorTuple& X) {
    if (X.n() != ft.n()) throw InputError("pluriharmonic_poisson_kernel: tuple size differs from generator count");
    JsrEstimate jsr = jsr_estimate(X, ft.N() + 1);
    if (!jsr.nilpotent_order && X.row_norm() >= 1.0)
        throw ScopeError("pluriharmonic_poisson_kernel: tuple is neither nilpotent nor a strict row contraction");
    const auto& b = ft.basis();
    const auto p = static_cast<Eigen::Index>(X.dim());
    const std::size_t total = ft.dim() * X.dim();
    CMatrix P = identity(total);
    for_each_word_product(X, ft.N(), [&](const Word& w, const CMatrix& Xw) {
        if (w.empty()) return;
        const int k = static_cast<int>(w.size());
        const std::size_t rw = b.rank_in_degree(b.index(w));
        CMatrix Xa = Xw.adjoint();
        for (std::size_t beta = 0; beta < b.size(); ++beta) {
            const int db = b.degree_of(beta);
            if (db + k > ft.N()) break;
            const auto t = static_cast<Eigen::Index>(b.degree_offset(db + k) + b.rank_in_degree(beta) * b.power(k) + rw);
            const auto s = static_cast<Eigen::Index>(beta);
            P.block(t * p, s * p, p, p) += Xa;
            P.block(s * p, t * p, p, p) += Xw;
        }
    });
    return P;
}

PositivityReport check_positive(const PluriharmonicFn& h, int mMax, double tol) {
    if (!h.is_selfadjoint(1e-10)) throw InputError("check_positive: function is not selfadjoint");
    if (mMax < 0) throw InputError("check_positive: mMax must be nonnegative");
    PositivityReport rep;
    rep.mMax = mMax;
    for (int m = 0; m <= mMax; ++m) {
        double e = min_eig_hermitian(radial_boundary(h, 1.0, m));
        rep.minEigs.push_back(e);
        if (e < -tol) rep.passed = false;
    }
    return rep;
}

CoefficientBoundReport coefficient_bound_check(const PluriharmonicFn& h, double tol) {
    CoefficientBoundReport rep;
    rep.a0Norm = operator_norm(h.A(Word{}));
    rep.degreeNorms.assign(static_cast<std::size_t>(h.cutoff) + 1, 0.0);
    const auto p = static_cast<Eigen::Index>(h.p);
    std::vector<CMatrix> S(static_cast<std::size_t>(h.cutoff) + 1, CMatrix::Zero(p, p));
    for (const auto& [w, c] : h.analytic)
        if (!w.empty()) S[w.size()] += c.adjoint() * c;
    for (int k = 1; k <= h.cutoff; ++k) {
        double v = std::sqrt(std::max(0.0, max_eig_hermitian(0.5 * (S[k] + S[k].adjoint()))));
        rep.degreeNorms[static_cast<std::size_t>(k)] = v;
        if (v > rep.a0Norm + tol) rep.passed = false;
    }
    return rep;
}

HarnackReport harnack_check(const PluriharmonicFn& h, const std::vector<OperatorTuple>& samples, double r,
                            double tol) {
    if (r < 0.0 || r >= 1.0) throw InputError("harnack_check: r must lie in [0, 1)");
    auto pos = check_positive(h, std::max(h.cutoff, 1) + 1, tol);
    if (!pos.passed) throw InputError("harnack_check: function failed the positivity check");
    HarnackReport rep;
    rep.bound = operator_norm(h.A(Word{})) * (1.0 + r) / (1.0 - r);
    for (const auto& X : samples) {
        if (X.row_norm() > r + 1e-12) throw InputError("harnack_check: sample row norm exceeds r");
        if (!jsr_estimate(X, static_cast<int>(X.dim()) + 1).nilpotent_order)
            throw InputError("harnack_check: sample is not jointly nilpotent");
        double v = operator_norm(eval(h, X));
        rep.worst = std::max(rep.worst, v);
        if (v > rep.bound + tol) rep.passed = false;
    }
    return rep;
}

MeanValueReport mean_value_check(const PluriharmonicFn& h, const OperatorTuple& X, double r, int N, double tol) {
    if (X.n() != h.n) throw InputError("mean_value_check: tuple size differs from generator count");
    JsrEstimate jsr = jsr_estimate(X, static_cast<int>(X.dim()) + 1);
    if (!jsr.nilpotent_order) throw ScopeError("mean_value_check: tuple is not jointly nilpotent");
    if (!(X.row_norm() < r && r < 1.0)) throw ScopeError("mean_value_check: need ||X|| < r < 1");
    if (N < *jsr.nilpotent_order + h.cutoff) throw ScopeError("mean_value_check: truncation degree too small");
    MeanValueReport rep;
    CMatrix lhs = eval(h, X);
    FockTrunc ft(h.n, N);
    CMatrix rhs = poisson_transform(ft, radial_boundary(h, r, N), X.scaled(1.0 / r));
    rep.discrepancy = operator_norm(lhs - rhs);
    rep.allowed = tol * (1.0 + operator_norm(lhs));
    rep.passed = rep.discrepancy <= rep.allowed;
    return rep;
}

MaxPrincipleReport max_principle_spot_check(const PluriharmonicFn& h, const std::vector<OperatorTuple>& samples,
                                            double tol) {
    MaxPrincipleReport rep;
    for (const auto& [w, c] : h.analytic)
        if (!w.empty() && c.cwiseAbs().maxCoeff() > 0.0) rep.nonconstant = true;
    for (const auto& [w, c] : h.coanalytic)
        if (c.cwiseAbs().maxCoeff() > 0.0) rep.nonconstant = true;
    for (const auto& X : samples) {
        ++rep.samplesUsed;
        CMatrix u0 = kron(h.A(Word{}),
                          CMatrix::Identity(static_cast<Eigen::Index>(X.dim()), static_cast<Eigen::Index>(X.dim())));
        if (min_eig_hermitian(u0 - eval(h, X)) < -tol) {
            rep.violationFound = true;
            break;
        }
    }
    return rep;
}

bool is_multi_toeplitz(const CMatrix& A, int n, int N, int margin, double tol) {
    if (margin < 1) throw InputError("is_multi_toeplitz: margin must be at least 1");
    FockTrunc ft(n, N);
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    if (A.rows() != A.cols() || A.rows() % dim != 0) throw InputError("is_multi_toeplitz: shape mismatch");
    if (N - margin < 0) return true;
    const Eigen::Index p = A.rows() / dim;
    const auto zone = static_cast<Eigen::Index>(ft.basis().degree_offset(N - margin + 1));
    CMatrix Ip = CMatrix::Identity(p, p);
    std::vector<CMatrix> R;
    for (int i = 1; i <= n; ++i) R.push_back(kron(Ip, ft.R(i)));
    auto compress = [&](const CMatrix& M) {
        CMatrix out(p * zone, p * zone);
        for (Eigen::Index a = 0; a < p; ++a)
            for (Eigen::Index c = 0; c < p; ++c) out.block(a * zone, c * zone, zone, zone) = M.block(a * dim, c * dim, zone, zone);
        return out;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CMatrix D = R[static_cast<std::size_t>(i)].adjoint() * A * R[static_cast<std::size_t>(j)];
            if (i == j) D -= A;
            if (operator_norm(compress(D)) > tol) return false;
        }
    return true;
}

}  // namespace ncft
