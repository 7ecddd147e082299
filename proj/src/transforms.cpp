#include "ncft/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ncft/errors.hpp"

namespace ncft {

CMatrix MomentFunctional::fwd(const Word& w) const {
    auto it = forward.find(w);
    return it != forward.end() ? it->second
                               : CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
}

CMatrix MomentFunctional::bwd(const Word& w) const {
    auto it = backward.find(w);
    return it != backward.end() ? it->second
                                : CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
}

bool MomentFunctional::is_selfadjoint(double tol) const {
    double scale = std::max(1.0, unit.norm());
    if ((unit - unit.adjoint()).norm() > tol * scale) return false;
    for (const auto& [w, c] : forward)
        if ((bwd(w) - c.adjoint()).norm() > tol * scale) return false;
    for (const auto& [w, c] : backward)
        if ((fwd(w).adjoint() - c).norm() > tol * scale) return false;
    return true;
}

void MomentFunctional::validate() const {
    if (n < 1 || n > kMaxGenerators) throw InputError("generator count must be in 1..9");
    if (cutoff < 0) throw InputError("cutoff must be nonnegative");
    if (static_cast<std::size_t>(unit.rows()) != p || static_cast<std::size_t>(unit.cols()) != p)
        throw InputError("moment functional: unit shape mismatch");
    for (const CoeffMap* m : {&forward, &backward})
        for (const auto& [w, c] : *m) {
            if (w.empty()) throw InputError("moment functional: the unit moment belongs in \"unit\"");
            if (w.size() > static_cast<std::size_t>(cutoff)) throw InputError("moment word beyond cutoff");
            if (w.max_letter() > n) throw InputError("moment word uses a letter beyond n");
            if (static_cast<std::size_t>(c.rows()) != p || static_cast<std::size_t>(c.cols()) != p)
                throw InputError("moment shape mismatch");
        }
}

namespace {

int vector_degree(const GradedBasis& b, const CMatrix& v) {
    for (Eigen::Index r = v.rows() - 1; r >= 0; --r)
        if (v.row(r).cwiseAbs().maxCoeff() > 0.0) return b.degree_of(static_cast<std::size_t>(r));
    return 0;
}

void require_tuple_scope(const MomentFunctional& mu, const OperatorTuple& X) {
    if (X.n() != mu.n) throw InputError("tuple size differs from generator count");
    mu.validate();
    JsrEstimate jsr = jsr_estimate(X, mu.cutoff + 1);
    if (!jsr.nilpotent_order && X.row_norm() >= 1.0)
        throw ScopeError("transform: tuple is neither nilpotent nor a strict row contraction");
}

}  // namespace

MomentFunctional from_vector_states(const FockTrunc& ft, const std::vector<WeightedPair>& pairs, int cutoff) {
    if (pairs.empty()) throw InputError("from_vector_states: no vector pairs");
    if (cutoff < 0 || cutoff > ft.N()) throw InputError("from_vector_states: cutoff out of range");
    const auto& b = ft.basis();
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    const Eigen::Index q = pairs[0].xi.cols();
    for (const auto& pr : pairs) {
        if (pr.xi.rows() != dim || pr.eta.rows() != dim || pr.xi.cols() != q || pr.eta.cols() != q || q == 0)
            throw InputError("from_vector_states: vector shape mismatch");
        if (vector_degree(b, pr.xi) > ft.N() - cutoff || vector_degree(b, pr.eta) > ft.N() - cutoff)
            throw InputError("from_vector_states: vector degree exceeds N - cutoff (exactness zone)");
    }

    MomentFunctional mu;
    mu.n = ft.n();
    mu.cutoff = cutoff;
    mu.p = static_cast<std::size_t>(q);
    mu.unit = CMatrix::Zero(q, q);
    MomentFunctional::Realization real{ft, {}};
    for (const auto& pr : pairs) {
        mu.unit += pr.weight * (pr.eta.adjoint() * pr.xi);
        real.states.weights.push_back(pr.weight);
        real.states.xi.push_back(pr.xi);
        real.states.eta.push_back(pr.eta);
    }
    for (std::size_t a = 1; a < b.degree_offset(cutoff + 1); ++a) {
        const Word& alpha = b.word_at(a);
        const int k = static_cast<int>(alpha.size());
        // R_alpha e_beta = e_{beta reverse(alpha)}
        const std::size_t rr = b.rank_in_degree(b.index(reverse(alpha)));
        CMatrix f = CMatrix::Zero(q, q), g = CMatrix::Zero(q, q);
        for (std::size_t beta = 0; beta < b.size(); ++beta) {
            const int db = b.degree_of(beta);
            if (db + k > ft.N()) break;
            const auto t = static_cast<Eigen::Index>(b.degree_offset(db + k) + b.rank_in_degree(beta) * b.power(k) + rr);
            const auto s = static_cast<Eigen::Index>(beta);
            for (const auto& pr : pairs) {
                if (pr.weight == 0.0) continue;
                f += pr.weight * (pr.eta.row(t).adjoint() * pr.xi.row(s));
                g += pr.weight * (pr.eta.row(s).adjoint() * pr.xi.row(t));
            }
        }
        if (f.cwiseAbs().maxCoeff() != 0.0) mu.forward.emplace(alpha, f);
        if (g.cwiseAbs().maxCoeff() != 0.0) mu.backward.emplace(alpha, g);
    }
    mu.realization = std::move(real);
    return mu;
}

CMatrix poisson_transform_of(const MomentFunctional& mu, const OperatorTuple& X) {
    require_tuple_scope(mu, X);
    const auto d = static_cast<Eigen::Index>(X.dim());
    CMatrix out = kron(mu.unit, CMatrix::Identity(d, d));
    for_each_word_product(X, mu.cutoff, [&](const Word& w, const CMatrix& P) {
        if (w.empty()) return;
        Word rw = reverse(w);
        if (auto it = mu.forward.find(rw); it != mu.forward.end()) out += kron(it->second, CMatrix(P.adjoint()));
        if (auto it = mu.backward.find(rw); it != mu.backward.end()) out += kron(it->second, P);
    });
    return out;
}

CMatrix fantappie_transform(const MomentFunctional& mu, const OperatorTuple& X) {
    require_tuple_scope(mu, X);
    const auto d = static_cast<Eigen::Index>(X.dim());
    CMatrix out = kron(mu.unit, CMatrix::Identity(d, d));
    for_each_word_product(X, mu.cutoff, [&](const Word& w, const CMatrix& P) {
        if (w.empty()) return;
        if (auto it = mu.backward.find(reverse(w)); it != mu.backward.end()) out += kron(it->second, P);
    });
    return out;
}

CMatrix herglotz_transform(const MomentFunctional& mu, const OperatorTuple& X) {
    require_tuple_scope(mu, X);
    const auto d = static_cast<Eigen::Index>(X.dim());
    CMatrix out = kron(mu.unit, CMatrix::Identity(d, d));
    for_each_word_product(X, mu.cutoff, [&](const Word& w, const CMatrix& P) {
        if (w.empty()) return;
        if (auto it = mu.backward.find(reverse(w)); it != mu.backward.end()) out += 2.0 * kron(it->second, P);
    });
    return out;
}

PluriharmonicFn poisson_function(const MomentFunctional& mu) {
    mu.validate();
    PluriharmonicFn h(mu.n, mu.cutoff, mu.p);
    h.analytic[Word{}] = mu.unit;
    for (const auto& [w, c] : mu.backward) h.analytic[reverse(w)] = c;
    for (const auto& [w, c] : mu.forward) h.coanalytic[reverse(w)] = c;
    return h;
}

FreeSeries herglotz_series(const MomentFunctional& mu) {
    mu.validate();
    FreeSeries f(mu.n, mu.cutoff, mu.p, mu.p);
    f.set(Word{}, mu.unit);
    for (const auto& [w, c] : mu.backward) f.set(reverse(w), 2.0 * c);
    return f;
}

CMatrix berezin_transform(const FockTrunc& ft, const MomentFunctional& mu, const CMatrix& F, const OperatorTuple& X) {
    if (!mu.realization) throw InputError("berezin_transform: functional has no vector-state realization");
    if (mu.realization->ft.n() != ft.n() || mu.realization->ft.N() != ft.N())
        throw InputError("berezin_transform: realization lives on a different truncation");
    return berezin_transform(ft, mu.realization->states, F, X);
}

CMatrix herglotz_from_isometries(const OperatorTuple& V, const CMatrix& W, const OperatorTuple& X,
                                 const CMatrix& imPart, const CMatrix& Q) {
    if (V.n() != X.n()) throw InputError("herglotz_from_isometries: tuple sizes differ");
    const auto K = static_cast<Eigen::Index>(V.dim());
    const auto d = static_cast<Eigen::Index>(X.dim());
    if (W.rows() != K) throw InputError("herglotz_from_isometries: W must map into the space of V");
    const Eigen::Index p = W.cols();
    if (imPart.rows() != p || imPart.cols() != p) throw InputError("herglotz_from_isometries: imPart shape mismatch");
    CMatrix P = Q.size() == 0 ? CMatrix::Identity(K, K) : Q;
    if (P.rows() != K || P.cols() != K) throw InputError("herglotz_from_isometries: projector shape mismatch");
    for (int i = 0; i < V.n(); ++i)
        for (int j = 0; j < V.n(); ++j) {
            CMatrix G = V[i].adjoint() * V[j];
            if (i == j) G -= CMatrix::Identity(K, K);
            if (operator_norm(P * G * P) > 1e-10) throw InputError("herglotz_from_isometries: V is not isometric");
        }
    JsrEstimate jsr = jsr_estimate(X, static_cast<int>(d) + 1);
    if (!jsr.nilpotent_order) throw ScopeError("herglotz_from_isometries: tuple is not jointly nilpotent");

    check_matrix_size(static_cast<std::size_t>(K * d), static_cast<std::size_t>(K * d));
    CMatrix T = CMatrix::Zero(K * d, K * d);
    for (int i = 0; i < V.n(); ++i) T += kron(CMatrix(V[i].adjoint()), X[i]);
    // T^k vanishes once k reaches the nilpotency order of X
    CMatrix Wd = kron(W, CMatrix::Identity(d, d));
    CMatrix cur = Wd, res = Wd;
    for (int k = 1; k < *jsr.nilpotent_order; ++k) {
        cur = T * cur;
        res += cur;
    }
    CMatrix out = Wd.adjoint() * (2.0 * res - Wd);
    out += cplx(0.0, 1.0) * kron(imPart, CMatrix::Identity(d, d));
    return out;
}

MultiToeplitzMatrix kernel_from_series(const FreeSeries& f, std::optional<int> degree) {
    if (!f.square()) throw InputError("kernel_from_series: coefficients must be square");
    const int m = degree.value_or(f.cutoff());
    if (m < 0) throw InputError("kernel_from_series: degree must be nonnegative");
    MultiToeplitzMatrix K;
    K.n = f.n();
    K.m = m;
    K.p = f.rows();
    K.basis = std::make_shared<const GradedBasis>(f.n(), m);
    const auto& b = *K.basis;
    const auto dim = static_cast<Eigen::Index>(b.size());
    const auto p = static_cast<Eigen::Index>(f.rows());
    K.entries = zeros(b.size() * f.rows(), b.size() * f.rows());
    CMatrix a0 = f.coeff(Word{});
    CMatrix diag = a0 + a0.adjoint();
    for (std::size_t r = 0; r < b.size(); ++r)
        for (std::size_t c = 0; c < b.size(); ++c) {
            CMatrix blk;
            if (r == c)
                blk = diag;
            else if (auto s = left_quotient(b.word_at(r), b.word_at(c)))
                blk = f.coeff(reverse(*s));
            else if (auto s2 = left_quotient(b.word_at(c), b.word_at(r)))
                blk = f.coeff(reverse(*s2)).adjoint();
            else
                continue;
            for (Eigen::Index a = 0; a < p; ++a)
                for (Eigen::Index e = 0; e < p; ++e)
                    K.entries(a * dim + static_cast<Eigen::Index>(r), e * dim + static_cast<Eigen::Index>(c)) = blk(a, e);
        }
    return K;
}

CMatrix radial_operator(const FreeSeries& f, double r, int m) {
    if (!f.square()) throw InputError("radial_operator: coefficients must be square");
    FockTrunc ft(f.n(), m);
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    const auto p = static_cast<Eigen::Index>(f.rows());
    CMatrix half = CMatrix::Zero(p * dim, p * dim);
    for (const auto& [w, c] : f.coeffs()) {
        if (w.empty() || w.size() > static_cast<std::size_t>(m)) continue;
        half += (0.5 * std::pow(r, static_cast<double>(w.size()))) * kron(c, right_word_operator(ft, w));
    }
    CMatrix a0 = f.coeff(Word{});
    return half + half.adjoint() + kron(CMatrix(0.5 * (a0 + a0.adjoint())), CMatrix::Identity(dim, dim));
}

EquivalenceReport positivity_equivalence_check(const FreeSeries& f, int mMax, const std::vector<double>& rGrid,
                                               double tol) {
    if (!f.square()) throw InputError("positivity_equivalence_check: coefficients must be square");
    if (mMax < 0) throw InputError("positivity_equivalence_check: mMax must be nonnegative");
    EquivalenceReport rep;
    rep.mMax = mMax;
    rep.minRadial = rep.minKernel = rep.minBoundary = std::numeric_limits<double>::infinity();
    PluriharmonicFn re = real_part(f);
    for (int m = 0; m <= mMax; ++m) {
        for (double r : rGrid) rep.minRadial = std::min(rep.minRadial, min_eig_hermitian(radial_operator(f, r, m)));
        rep.minKernel = std::min(rep.minKernel, min_eig(kernel_from_series(f, m)));
        rep.minBoundary = std::min(rep.minBoundary, min_eig_hermitian(radial_boundary(re, 1.0, m)));
    }
    rep.radial = rGrid.empty() || rep.minRadial >= -tol;
    rep.kernel = rep.minKernel >= -tol;
    rep.boundary = rep.minBoundary >= -tol;
    rep.agree = rep.radial == rep.kernel && rep.kernel == rep.boundary;
    return rep;
}

FejerReport fejer_check(const MomentFunctional& mu, int m, double tol) {
    if (mu.p != 1) throw InputError("fejer_check: scalar functional required");
    if (m < 1) throw InputError("fejer_check: m must be at least 1");
    if (mu.cutoff < m - 1) throw InputError("fejer_check: moments up to length m - 1 are required");
    if (!mu.is_selfadjoint(1e-12) || mu.unit(0, 0).real() < 0.0)
        throw InputError("fejer_check: functional is not positive");
    for (const auto& [w, c] : mu.forward)
        if (static_cast<int>(w.size()) >= m && std::abs(c(0, 0)) > 1e-12)
            throw InputError("fejer_check: moment of length >= m is nonzero");
    FejerReport rep;
    rep.lhs.assign(static_cast<std::size_t>(m), 0.0);
    rep.bound.assign(static_cast<std::size_t>(m), 0.0);
    for (const auto& [w, c] : mu.forward)
        if (!w.empty() && static_cast<int>(w.size()) < m) rep.lhs[w.size()] += std::norm(c(0, 0));
    const double unit = mu.unit(0, 0).real();
    for (int k = 1; k < m; ++k) {
        rep.lhs[static_cast<std::size_t>(k)] = std::sqrt(rep.lhs[static_cast<std::size_t>(k)]);
        rep.bound[static_cast<std::size_t>(k)] = unit * std::cos(std::numbers::pi / ((m - 1) / k + 2));
        if (rep.lhs[static_cast<std::size_t>(k)] > rep.bound[static_cast<std::size_t>(k)] + tol) rep.passed = false;
    }
    return rep;
}

MomentFunctional radial_functional(const PluriharmonicFn& h, double r) {
    if (r < 0.0 || r >= 1.0) throw InputError("radial_functional: r must lie in [0, 1)");
    h.validate();
    MomentFunctional mu;
    mu.n = h.n;
    mu.cutoff = h.cutoff;
    mu.p = h.p;
    mu.unit = h.A(Word{});
    for (const auto& [w, c] : h.coanalytic) mu.forward[reverse(w)] = std::pow(r, static_cast<double>(w.size())) * c;
    for (const auto& [w, c] : h.analytic)
        if (!w.empty()) mu.backward[reverse(w)] = std::pow(r, static_cast<double>(w.size())) * c;
    return mu;
}

MomentFunctional scale_functional(const MomentFunctional& mu, double r) {
    MomentFunctional out = mu;
    out.realization.reset();
    for (auto& [w, c] : out.forward) c *= std::pow(r, static_cast<double>(w.size()));
    for (auto& [w, c] : out.backward) c *= std::pow(r, static_cast<double>(w.size()));
    return out;
}

}  // namespace ncft
