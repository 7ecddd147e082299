#include "ncft/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncft/errors.hpp"

namespace ncft {

FreeSeries::FreeSeries(int n, int cutoff, std::size_t p, std::size_t q) : n_(n), cutoff_(cutoff), p_(p), q_(q) {
    if (n < 1 || n > kMaxGenerators) throw InputError("generator count must be in 1..9");
    if (cutoff < 0) throw InputError("cutoff must be nonnegative");
    if (p == 0 || q == 0) throw InputError("coefficient shape must be positive");
}

FreeSeries FreeSeries::unit(int n, int cutoff, std::size_t p) {
    FreeSeries f(n, cutoff, p, p);
    f.set(Word{}, CMatrix::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
    return f;
}

FreeSeries FreeSeries::variable(int n, int cutoff, int i) {
    FreeSeries f(n, cutoff, 1, 1);
    f.set(Word{i}, CMatrix::Constant(1, 1, 1.0));
    return f;
}

CMatrix FreeSeries::coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    if (it != coeffs_.end()) return it->second;
    return CMatrix::Zero(static_cast<Eigen::Index>(p_), static_cast<Eigen::Index>(q_));
}

void FreeSeries::set(const Word& w, const CMatrix& c) {
    if (w.max_letter() > n_) throw InputError("word \"" + w.str() + "\" uses a letter beyond n");
    if (static_cast<std::size_t>(c.rows()) != p_ || static_cast<std::size_t>(c.cols()) != q_)
        throw InputError("coefficient shape mismatch at word \"" + w.str() + "\"");
    if (w.size() > static_cast<std::size_t>(cutoff_)) return;
    coeffs_[w] = c;
}

void FreeSeries::add_to(const Word& w, const CMatrix& c) {
    if (w.size() > static_cast<std::size_t>(cutoff_)) return;
    auto it = coeffs_.find(w);
    if (it == coeffs_.end())
        set(w, c);
    else
        it->second += c;
}

void FreeSeries::check_compatible(const FreeSeries& g) const {
    if (n_ != g.n_ || p_ != g.p_ || q_ != g.q_) throw InputError("series shapes or generator counts differ");
}

FreeSeries FreeSeries::operator+(const FreeSeries& g) const {
    check_compatible(g);
    FreeSeries r(n_, std::min(cutoff_, g.cutoff_), p_, q_);
    for (const auto& [w, c] : coeffs_) r.add_to(w, c);
    for (const auto& [w, c] : g.coeffs_) r.add_to(w, c);
    return r;
}

FreeSeries FreeSeries::operator-(const FreeSeries& g) const { return *this + g * cplx(-1.0); }

FreeSeries FreeSeries::operator*(cplx s) const {
    FreeSeries r = *this;
    for (auto& [w, c] : r.coeffs_) c *= s;
    return r;
}

FreeSeries FreeSeries::truncated(int newCutoff) const {
    FreeSeries r(n_, std::min(newCutoff, cutoff_), p_, q_);
    for (const auto& [w, c] : coeffs_) r.set(w, c);
    return r;
}

double FreeSeries::max_coeff_distance(const FreeSeries& g) const {
    check_compatible(g);
    double m = 0.0;
    for (const auto& [w, c] : coeffs_) m = std::max(m, (c - g.coeff(w)).norm());
    for (const auto& [w, c] : g.coeffs_)
        if (!coeffs_.count(w)) m = std::max(m, c.norm());
    return m;
}

FreeSeries multiply(const FreeSeries& f, const FreeSeries& g) {
    if (f.n() != g.n()) throw InputError("multiply: generator counts differ");
    if (f.cols() != g.rows()) throw InputError("multiply: inner coefficient shapes differ");
    const int c = std::min(f.cutoff(), g.cutoff());
    FreeSeries r(f.n(), c, f.rows(), g.cols());
    for (const auto& [b, fb] : f.coeffs()) {
        if (b.size() > static_cast<std::size_t>(c)) continue;
        for (const auto& [gw, gc] : g.coeffs()) {
            if (b.size() + gw.size() > static_cast<std::size_t>(c)) continue;
            r.add_to(b + gw, fb * gc);
        }
    }
    return r;
}

namespace {

void require_zero_constant(const FreeSeries& f, const char* op) {
    if (!f.square()) throw InputError(std::string(op) + ": coefficients must be square");
    double scale = 0.0;
    for (const auto& [w, c] : f.coeffs()) scale = std::max(scale, c.norm());
    if (f.coeff(Word{}).norm() > 1e-15 * (1.0 + scale))
        throw InputError(std::string(op) + ": series has a nonzero constant term");
}

}  // namespace

FreeSeries neumann_inverse(const FreeSeries& f) {
    require_zero_constant(f, "neumann_inverse");
    FreeSeries fz = f;
    fz.set(Word{}, CMatrix::Zero(static_cast<Eigen::Index>(f.rows()), static_cast<Eigen::Index>(f.cols())));
    FreeSeries one = FreeSeries::unit(f.n(), f.cutoff(), f.rows());
    FreeSeries phi = one;
    // phi = 1 + f phi is correct through degree k after k rounds
    for (int k = 0; k < f.cutoff(); ++k) phi = one + multiply(fz, phi);
    return phi;
}

FreeSeries cayley_forward(const FreeSeries& f) {
    require_zero_constant(f, "cayley_forward");
    return multiply(neumann_inverse(f), f);
}

FreeSeries cayley_inverse(const FreeSeries& g) {
    require_zero_constant(g, "cayley_inverse");
    return multiply(g, neumann_inverse(g * cplx(-1.0)));
}

JsrEstimate jsr_estimate(const OperatorTuple& X, int kmax) {
    if (kmax < 1) throw InputError("jsr_estimate: kmax must be at least 1");
    JsrEstimate est;
    est.kmax = kmax;
    const auto d = static_cast<Eigen::Index>(X.dim());
    const double s = X.row_norm();
    CMatrix M = CMatrix::Identity(d, d);
    double last = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        CMatrix next = CMatrix::Zero(d, d);
        for (int i = 0; i < X.n(); ++i) next += X[i] * M * X[i].adjoint();
        M = 0.5 * (next + next.adjoint());
        last = std::max(0.0, max_eig_hermitian(M));
        if (last <= 1e-13 * std::pow(s, 2 * k)) {
            est.nilpotent_order = k;
            est.value = 0.0;
            return est;
        }
    }
    est.value = std::pow(last, 1.0 / (2.0 * kmax));
    return est;
}

double radius_estimate(const FreeSeries& f, int kmax) {
    if (kmax < 1 || kmax > f.cutoff()) throw InputError("radius_estimate: need 1 <= kmax <= cutoff");
    std::vector<CMatrix> S(static_cast<std::size_t>(kmax) + 1,
                           CMatrix::Zero(static_cast<Eigen::Index>(f.cols()), static_cast<Eigen::Index>(f.cols())));
    for (const auto& [w, c] : f.coeffs())
        if (!w.empty() && w.size() <= static_cast<std::size_t>(kmax)) S[w.size()] += c.adjoint() * c;
    double worst = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        double nk = std::max(0.0, max_eig_hermitian(0.5 * (S[k] + S[k].adjoint())));
        worst = std::max(worst, std::pow(nk, 1.0 / (2.0 * k)));
    }
    return worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
}

SeriesValue eval_at(const FreeSeries& f, const OperatorTuple& X) {
    if (X.n() != f.n()) throw InputError("eval_at: tuple size differs from generator count");
    const auto d = static_cast<Eigen::Index>(X.dim());
    SeriesValue out;
    JsrEstimate jsr = jsr_estimate(X, f.cutoff() + 1);
    out.nilpotent_order = jsr.nilpotent_order;
    if (!jsr.nilpotent_order) {
        double R = f.cutoff() >= 1 ? radius_estimate(f, f.cutoff()) : std::numeric_limits<double>::infinity();
        if (!(jsr.value < 0.9 * R))
            throw ScopeError("eval_at: joint spectral radius estimate " + std::to_string(jsr.value) +
                             " is not below 0.9 times the radius estimate " + std::to_string(R));
        if (std::isfinite(R)) {
            double q = X.row_norm() / R < 1.0 ? X.row_norm() / R : jsr.value / R;
            out.tail_bound = std::pow(q, f.cutoff() + 1) / (1.0 - q);
        }
    }
    out.value = CMatrix::Zero(static_cast<Eigen::Index>(f.rows()) * d, static_cast<Eigen::Index>(f.cols()) * d);
    for_each_word_product(X, f.cutoff(), [&](const Word& w, const CMatrix& P) {
        auto it = f.coeffs().find(w);
        if (it != f.coeffs().end()) out.value += kron(it->second, P);
    });
    return out;
}

CMatrix eval_at_creation(const FreeSeries& f, int m) {
    if (m < 0) throw InputError("degree must be nonnegative");
    FockTrunc ft(f.n(), m);
    const auto& b = ft.basis();
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    const auto p = static_cast<Eigen::Index>(f.rows()), q = static_cast<Eigen::Index>(f.cols());
    CMatrix M = zeros(static_cast<std::size_t>(p * dim), static_cast<std::size_t>(q * dim));
    for (const auto& [w, c] : f.coeffs()) {
        const int k = static_cast<int>(w.size());
        if (k > m) continue;
        const std::size_t rw = b.rank_in_degree(b.index(w));
        for (std::size_t y = 0; y < b.size(); ++y) {
            const int dy = b.degree_of(y);
            if (dy + k > m) break;
            const auto x = static_cast<Eigen::Index>(b.degree_offset(dy + k) + rw * b.power(dy) + b.rank_in_degree(y));
            for (Eigen::Index a = 0; a < p; ++a)
                for (Eigen::Index bb = 0; bb < q; ++bb) M(a * dim + x, bb * dim + static_cast<Eigen::Index>(y)) += c(a, bb);
        }
    }
    return M;
}

double hinf_norm_lower(const FreeSeries& f, int m) { return operator_norm(eval_at_creation(f, m)); }

ExtractedCoeffs extract_coeffs(const CMatrix& A, int n, int N) {
    GradedBasis b(n, N);
    const auto dim = static_cast<Eigen::Index>(b.size());
    if (A.rows() % dim != 0 || A.cols() % dim != 0 || A.rows() == 0)
        throw InputError("extract_coeffs: matrix size is not a multiple of the Fock dimension");
    const Eigen::Index p = A.rows() / dim, q = A.cols() / dim;
    ExtractedCoeffs out;
    for (std::size_t idx = 0; idx < b.size(); ++idx) {
        const auto x = static_cast<Eigen::Index>(idx);
        CMatrix Aa(p, q), Ba(p, q);
        for (Eigen::Index a = 0; a < p; ++a)
            for (Eigen::Index c = 0; c < q; ++c) {
                Aa(a, c) = A(a * dim + x, c * dim);
                Ba(a, c) = A(a * dim, c * dim + x);
            }
        if (Aa.cwiseAbs().maxCoeff() != 0.0) out.analytic.emplace(b.word_at(idx), Aa);
        if (idx > 0 && Ba.cwiseAbs().maxCoeff() != 0.0) out.coanalytic.emplace(b.word_at(idx), Ba);
    }
    return out;
}

bool is_multi_analytic(const CMatrix& A, int n, int m, double relTol) {
    GradedBasis b(n, m);
    const auto dim = static_cast<Eigen::Index>(b.size());
    if (A.rows() % dim != 0 || A.cols() % dim != 0 || A.rows() == 0) return false;
    auto ex = extract_coeffs(A, n, m);
    FreeSeries f(n, m, static_cast<std::size_t>(A.rows() / dim), static_cast<std::size_t>(A.cols() / dim));
    for (const auto& [w, c] : ex.analytic) f.set(w, c);
    return (eval_at_creation(f, m) - A).norm() <= relTol * (1.0 + A.norm());
}

CMatrix truncated_cayley(const CMatrix& Y, CayleyDirection direction, int n, int m) {
    if (m < 0) throw InputError("degree must be nonnegative");
    if (Y.rows() != Y.cols()) throw InputError("truncated_cayley: operator must be square");
    if (!is_multi_analytic(Y, n, m)) throw InputError("truncated_cayley: operator is not multi-analytic");
    GradedBasis b(n, m);
    const auto dim = static_cast<Eigen::Index>(b.size());
    const Eigen::Index p = Y.rows() / dim;
    double c0 = 0.0;
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index c = 0; c < p; ++c) c0 = std::max(c0, std::abs(Y(a * dim, c * dim)));
    if (c0 > 1e-10 * (1.0 + Y.norm())) throw InputError("truncated_cayley: constant coefficient is not zero");

    // Y^{m+1} = 0, so the Neumann sums below are exact
    const cplx sign = direction == CayleyDirection::Forward ? cplx(1.0) : cplx(-1.0);
    CMatrix Z = Y;
    for (int k = 1; k < m; ++k) Z = Y + sign * (Y * Z);
    return Z;
}

}  // namespace ncft
