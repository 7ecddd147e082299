#include "ncft/fock.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "ncft/errors.hpp"

namespace ncft {

struct FockTrunc::Cache {
    std::mutex mu;
    std::vector<std::unique_ptr<CMatrix>> left, right;
};

FockTrunc::FockTrunc(int n, int N)
    : n_(n), N_(N), basis_(std::make_shared<const GradedBasis>(n, N)), cache_(std::make_shared<Cache>()) {
    cache_->left.resize(static_cast<std::size_t>(n));
    cache_->right.resize(static_cast<std::size_t>(n));
}

namespace {

void check_generator(const FockTrunc& ft, int i) {
    if (i < 1 || i > ft.n())
        throw InputError("generator index " + std::to_string(i) + " out of range 1.." + std::to_string(ft.n()));
}

CMatrix build_left(const FockTrunc& ft, int i) {
    const auto& b = ft.basis();
    CMatrix S = zeros(ft.dim(), ft.dim());
    for (std::size_t idx = 0; idx < b.size(); ++idx)
        if (auto t = b.prepend_index(i, idx)) S(static_cast<Eigen::Index>(*t), static_cast<Eigen::Index>(idx)) = 1.0;
    return S;
}

CMatrix build_right(const FockTrunc& ft, int i) {
    const auto& b = ft.basis();
    CMatrix R = zeros(ft.dim(), ft.dim());
    for (std::size_t idx = 0; idx < b.size(); ++idx)
        if (auto t = b.append_index(idx, i)) R(static_cast<Eigen::Index>(*t), static_cast<Eigen::Index>(idx)) = 1.0;
    return R;
}

void check_tuple(const FockTrunc& ft, const OperatorTuple& X) {
    if (X.n() != ft.n())
        throw InputError("operator tuple has " + std::to_string(X.n()) + " entries, expected " +
                         std::to_string(ft.n()));
}

void require_strict_contraction(const OperatorTuple& X) {
    if (X.row_norm() >= 1.0 - 1e-12)
        throw ScopeError("operator tuple is not a strict row contraction (row norm " +
                         std::to_string(X.row_norm()) + ")");
}

}  // namespace

const CMatrix& FockTrunc::S(int i) const {
    check_generator(*this, i);
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& slot = cache_->left[static_cast<std::size_t>(i - 1)];
    if (!slot) slot = std::make_unique<CMatrix>(build_left(*this, i));
    return *slot;
}

const CMatrix& FockTrunc::R(int i) const {
    check_generator(*this, i);
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& slot = cache_->right[static_cast<std::size_t>(i - 1)];
    if (!slot) slot = std::make_unique<CMatrix>(build_right(*this, i));
    return *slot;
}

OperatorTuple::OperatorTuple(std::vector<CMatrix> matrices) : mats_(std::move(matrices)) {
    if (mats_.empty()) throw InputError("operator tuple must have at least one entry");
    if (mats_.size() > static_cast<std::size_t>(kMaxGenerators)) throw InputError("operator tuple has more than 9 entries");
    dim_ = static_cast<std::size_t>(mats_[0].rows());
    for (const auto& M : mats_)
        if (static_cast<std::size_t>(M.rows()) != dim_ || static_cast<std::size_t>(M.cols()) != dim_)
            throw InputError("operator tuple entries must be square of equal size");
    CMatrix G = row_gram();
    rowNorm_ = dim_ == 0 ? 0.0 : std::sqrt(std::max(0.0, max_eig_hermitian(0.5 * (G + G.adjoint()))));
}

CMatrix OperatorTuple::word(const Word& alpha) const {
    CMatrix P = CMatrix::Identity(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k] > n()) throw InputError("word letter exceeds tuple size");
        P = P * mats_[static_cast<std::size_t>(alpha[k] - 1)];
    }
    return P;
}

OperatorTuple OperatorTuple::scaled(double c) const {
    std::vector<CMatrix> m = mats_;
    for (auto& M : m) M *= c;
    return OperatorTuple(std::move(m));
}

CMatrix OperatorTuple::row_gram() const {
    CMatrix G = CMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (const auto& M : mats_) G += M * M.adjoint();
    return G;
}

CMatrix left_creation(const FockTrunc& ft, int i) { return ft.S(i); }
CMatrix right_creation(const FockTrunc& ft, int i) { return ft.R(i); }

CMatrix left_word_operator(const FockTrunc& ft, const Word& alpha) {
    const auto& b = ft.basis();
    CMatrix S = zeros(ft.dim(), ft.dim());
    if (alpha.max_letter() > ft.n()) throw InputError("word letter exceeds generator count");
    if (alpha.size() > static_cast<std::size_t>(ft.N())) return S;
    const int k = static_cast<int>(alpha.size());
    const std::size_t ra = b.rank_in_degree(b.index(alpha));
    for (std::size_t idx = 0; idx < b.size(); ++idx) {
        int d = b.degree_of(idx);
        if (d + k > ft.N()) break;
        std::size_t t = b.degree_offset(d + k) + ra * b.power(d) + b.rank_in_degree(idx);
        S(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(idx)) = 1.0;
    }
    return S;
}

CMatrix right_translation(const FockTrunc& ft, const Word& sigma) {
    const auto& b = ft.basis();
    CMatrix R = zeros(ft.dim(), ft.dim());
    if (sigma.max_letter() > ft.n()) throw InputError("word letter exceeds generator count");
    if (sigma.size() > static_cast<std::size_t>(ft.N())) return R;
    const int k = static_cast<int>(sigma.size());
    const std::size_t rs = b.rank_in_degree(b.index(sigma));
    for (std::size_t idx = 0; idx < b.size(); ++idx) {
        int d = b.degree_of(idx);
        if (d + k > ft.N()) break;
        std::size_t t = b.degree_offset(d + k) + b.rank_in_degree(idx) * b.power(k) + rs;
        R(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(idx)) = 1.0;
    }
    return R;
}

CMatrix right_word_operator(const FockTrunc& ft, const Word& alpha) {
    return right_translation(ft, reverse(alpha));
}

CMatrix degree_projection(const FockTrunc& ft, int k) {
    if (k < 0 || k > ft.N()) throw InputError("degree out of range");
    CMatrix Q = zeros(ft.dim(), ft.dim());
    for (std::size_t i = 0; i < ft.basis().degree_offset(k + 1); ++i)
        Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return Q;
}

CMatrix reconstruction_operator(const FockTrunc& ft, const OperatorTuple& X) {
    check_tuple(ft, X);
    const auto p = static_cast<Eigen::Index>(X.dim());
    const auto& b = ft.basis();
    CMatrix RX = zeros(ft.dim() * X.dim(), ft.dim() * X.dim());
    for (int i = 1; i <= ft.n(); ++i) {
        CMatrix Xs = X[i - 1].adjoint();
        for (std::size_t idx = 0; idx < b.size(); ++idx)
            if (auto t = b.append_index(idx, i))
                RX.block(static_cast<Eigen::Index>(*t) * p, static_cast<Eigen::Index>(idx) * p, p, p) = Xs;
    }
    return RX;
}

CMatrix apply_reconstruction(const FockTrunc& ft, const OperatorTuple& X, const CMatrix& V) {
    check_tuple(ft, X);
    const auto p = static_cast<Eigen::Index>(X.dim());
    if (V.rows() != static_cast<Eigen::Index>(ft.dim()) * p) throw InputError("apply_reconstruction: shape mismatch");
    const auto& b = ft.basis();
    CMatrix out = CMatrix::Zero(V.rows(), V.cols());
    for (int i = 1; i <= ft.n(); ++i) {
        CMatrix Xs = X[i - 1].adjoint();
        for (std::size_t idx = 0; idx < b.size(); ++idx)
            if (auto t = b.append_index(idx, i))
                out.middleRows(static_cast<Eigen::Index>(*t) * p, p).noalias() +=
                    Xs * V.middleRows(static_cast<Eigen::Index>(idx) * p, p);
    }
    return out;
}

CMatrix defect(const OperatorTuple& X) {
    CMatrix G = X.row_gram();
    CMatrix D = CMatrix::Identity(G.rows(), G.cols()) - G;
    return hermitian_sqrt(0.5 * (D + D.adjoint()));
}

CMatrix berezin_kernel(const FockTrunc& ft, const OperatorTuple& X) {
    check_tuple(ft, X);
    require_strict_contraction(X);
    const auto p = static_cast<Eigen::Index>(X.dim());
    const std::size_t total = ft.dim() * X.dim();
    CMatrix RX = reconstruction_operator(ft, X);
    CMatrix resolvent = solve(identity(total) - RX, identity(total));
    CMatrix D = defect(X);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(ft.dim()); ++k)
        resolvent.middleRows(k * p, p) = (D * resolvent.middleRows(k * p, p)).eval();
    return resolvent;
}

CMatrix poisson_kernel(const FockTrunc& ft, const OperatorTuple& X) {
    check_tuple(ft, X);
    require_strict_contraction(X);
    const auto p = static_cast<Eigen::Index>(X.dim());
    const auto& b = ft.basis();
    check_matrix_size(1, X.dim());
    // block alpha holds X_alpha^*, filled parent-first: X_{g_i alpha}^* = X_alpha^* X_i^*
    CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(ft.dim()) * p, p);
    K.topRows(p).setIdentity();
    std::vector<CMatrix> Xs;
    for (int i = 0; i < X.n(); ++i) Xs.push_back(X[i].adjoint());
    for (std::size_t idx = 0; idx < b.size(); ++idx) {
        for (int i = 1; i <= ft.n(); ++i) {
            if (auto t = b.prepend_index(i, idx))
                K.middleRows(static_cast<Eigen::Index>(*t) * p, p).noalias() =
                    K.middleRows(static_cast<Eigen::Index>(idx) * p, p) * Xs[static_cast<std::size_t>(i - 1)];
        }
    }
    CMatrix D = defect(X);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(ft.dim()); ++k)
        K.middleRows(k * p, p) = (D * K.middleRows(k * p, p)).eval();
    return K;
}

CMatrix poisson_transform(const FockTrunc& ft, const CMatrix& F, const OperatorTuple& X) {
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    if (F.rows() != F.cols() || F.rows() % dim != 0 || F.rows() == 0)
        throw InputError("poisson_transform: symbol must be square with size a multiple of the Fock dimension");
    const Eigen::Index q = F.rows() / dim;
    const auto p = static_cast<Eigen::Index>(X.dim());
    CMatrix K = poisson_kernel(ft, X);
    // Kvec row gamma is the p x p block K_gamma flattened column-major
    CMatrix Kvec(dim, p * p);
    for (Eigen::Index g = 0; g < dim; ++g)
        for (Eigen::Index t = 0; t < p; ++t)
            for (Eigen::Index s = 0; s < p; ++s) Kvec(g, s + p * t) = K(g * p + s, t);

    CMatrix out = CMatrix::Zero(q * p, q * p);
    for (Eigen::Index a = 0; a < q; ++a) {
        for (Eigen::Index c = 0; c < q; ++c) {
            auto G = F.block(a * dim, c * dim, dim, dim);
            if (G.cwiseAbs().maxCoeff() == 0.0) continue;
            CMatrix W = G * Kvec;
            CMatrix Wstack(dim * p, p);
            for (Eigen::Index g = 0; g < dim; ++g)
                for (Eigen::Index t = 0; t < p; ++t)
                    for (Eigen::Index s = 0; s < p; ++s) Wstack(g * p + s, t) = W(g, s + p * t);
            CMatrix acc = K.adjoint() * Wstack;
            out.block(a * p, c * p, p, p) = acc;
        }
    }
    return out;
}

CMatrix berezin_transform(const FockTrunc& ft, const VectorStateRealization& mu, const CMatrix& F,
                          const OperatorTuple& X) {
    check_tuple(ft, X);
    require_strict_contraction(X);
    const auto dim = static_cast<Eigen::Index>(ft.dim());
    if (F.rows() != dim || F.cols() != dim) throw InputError("berezin_transform: symbol must be dim x dim");
    if (mu.weights.size() != mu.xi.size() || mu.xi.size() != mu.eta.size() || mu.xi.empty())
        throw InputError("berezin_transform: malformed vector-state realization");
    const auto d = static_cast<Eigen::Index>(X.dim());
    const Eigen::Index q = mu.xi[0].cols();
    CMatrix D = defect(X);
    CMatrix Id = CMatrix::Identity(d, d);

    auto kernel_times = [&](const CMatrix& v) {
        if (v.rows() != dim || v.cols() != q) throw InputError("berezin_transform: vector shape mismatch");
        CMatrix cur = kron(v, Id);
        CMatrix total = cur;
        for (int k = 0; k < ft.N(); ++k) {
            cur = apply_reconstruction(ft, X, cur);
            total += cur;
        }
        for (Eigen::Index g = 0; g < dim; ++g) total.middleRows(g * d, d) = (D * total.middleRows(g * d, d)).eval();
        return total;
    };

    CMatrix out = CMatrix::Zero(q * d, q * d);
    for (std::size_t k = 0; k < mu.xi.size(); ++k) {
        if (mu.weights[k] == 0.0) continue;
        CMatrix Bxi = kernel_times(mu.xi[k]);
        CMatrix Beta = kernel_times(mu.eta[k]);
        CMatrix FB = CMatrix::Zero(Bxi.rows(), Bxi.cols());
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c)
                if (F(r, c) != cplx(0.0)) FB.middleRows(r * d, d) += F(r, c) * Bxi.middleRows(c * d, d);
        out += mu.weights[k] * (Beta.adjoint() * FB);
    }
    return out;
}

CMatrix berezin_zone_gram(const FockTrunc& ft, const OperatorTuple& X, int zoneDeg) {
    check_tuple(ft, X);
    require_strict_contraction(X);
    if (zoneDeg < 0 || zoneDeg > ft.N()) throw InputError("zone degree out of range");
    const auto p = static_cast<Eigen::Index>(X.dim());
    const auto& b = ft.basis();
    const int n = ft.n();
    const std::size_t zone = b.degree_offset(zoneDeg + 1);
    check_matrix_size(zone * X.dim(), zone * X.dim());
    CMatrix D = defect(X);
    std::vector<CMatrix> Xs;
    for (int i = 0; i < n; ++i) Xs.push_back(X[i].adjoint());

    // local trees: the extensions beta*alpha of a word of degree k are indexed
    // by alpha in GradedBasis(n, N - k)
    std::vector<std::unique_ptr<GradedBasis>> trees(static_cast<std::size_t>(zoneDeg) + 1);
    for (int k = 0; k <= zoneDeg; ++k) trees[static_cast<std::size_t>(k)] = std::make_unique<GradedBasis>(n, ft.N() - k);

    // C_beta = (I (x) Delta)(I - R_X)^{-1} (e_beta (x) I), one R_X step per tree level
    std::vector<CMatrix> cols(zone);
    for (std::size_t z = 0; z < zone; ++z) {
        const GradedBasis& tb = *trees[static_cast<std::size_t>(b.degree_of(z))];
        CMatrix U = CMatrix::Zero(static_cast<Eigen::Index>(tb.size()) * p, p);
        U.topRows(p).setIdentity();
        for (std::size_t idx = 0; idx < tb.size(); ++idx)
            for (int i = 1; i <= n; ++i)
                if (auto t = tb.append_index(idx, i))
                    U.middleRows(static_cast<Eigen::Index>(*t) * p, p).noalias() =
                        Xs[static_cast<std::size_t>(i - 1)] * U.middleRows(static_cast<Eigen::Index>(idx) * p, p);
        for (Eigen::Index g = 0; g < static_cast<Eigen::Index>(tb.size()); ++g)
            U.middleRows(g * p, p) = (D * U.middleRows(g * p, p)).eval();
        cols[z] = std::move(U);
    }

    CMatrix G = CMatrix::Zero(static_cast<Eigen::Index>(zone) * p, static_cast<Eigen::Index>(zone) * p);
    for (std::size_t z = 0; z < zone; ++z) {
        const Word& beta = b.word_at(z);
        const int kb = b.degree_of(z);
        const GradedBasis& tb = *trees[static_cast<std::size_t>(kb)];
        // only prefixes of beta share support with beta's column
        for (int kp = 0; kp <= kb; ++kp) {
            std::size_t zp = b.index(beta.prefix(static_cast<std::size_t>(kp)));
            const GradedBasis& tp = *trees[static_cast<std::size_t>(kp)];
            Word sigma = beta.suffix(static_cast<std::size_t>(kb - kp));
            const int ks = kb - kp;
            const std::size_t rs = ks == 0 ? 0 : tp.rank_in_degree(tp.index(sigma));
            CMatrix acc = CMatrix::Zero(p, p);
            for (int j = 0; j <= tb.max_degree(); ++j) {
                const auto len = static_cast<Eigen::Index>(tb.degree_count(j)) * p;
                const auto offB = static_cast<Eigen::Index>(tb.degree_offset(j)) * p;
                const auto offP =
                    static_cast<Eigen::Index>(tp.degree_offset(ks + j) + rs * tp.power(j)) * p;
                acc.noalias() += cols[zp].middleRows(offP, len).adjoint() * cols[z].middleRows(offB, len);
            }
            G.block(static_cast<Eigen::Index>(zp) * p, static_cast<Eigen::Index>(z) * p, p, p) = acc;
            if (zp != z)
                G.block(static_cast<Eigen::Index>(z) * p, static_cast<Eigen::Index>(zp) * p, p, p) = acc.adjoint();
        }
    }
    return G;
}

OperatorTuple isometric_dilation(const OperatorTuple& T, int N) {
    if (T.row_norm() > 1.0 + 1e-12) throw ScopeError("isometric_dilation: tuple is not a row contraction");
    if (N < 0) throw InputError("degree must be nonnegative");
    const int n = T.n();
    const auto p = static_cast<Eigen::Index>(T.dim());
    const Eigen::Index np = n * p;
    FockTrunc ft(n, N);
    const auto& b = ft.basis();
    const Eigen::Index total = p + static_cast<Eigen::Index>(ft.dim()) * np;
    check_matrix_size(static_cast<std::size_t>(total), static_cast<std::size_t>(total));

    CMatrix M = CMatrix::Identity(np, np);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.block(i * p, j * p, p, p) -= T[i].adjoint() * T[j];
    CMatrix DT = hermitian_sqrt(0.5 * (M + M.adjoint()));

    std::vector<CMatrix> V;
    for (int i = 1; i <= n; ++i) {
        CMatrix Vi = CMatrix::Zero(total, total);
        Vi.topLeftCorner(p, p) = T[i - 1];
        Vi.block(p, 0, np, p) = DT.middleCols((i - 1) * p, p);
        for (std::size_t idx = 0; idx < b.size(); ++idx)
            if (auto t = b.prepend_index(i, idx))
                Vi.block(p + static_cast<Eigen::Index>(*t) * np, p + static_cast<Eigen::Index>(idx) * np, np, np)
                    .setIdentity();
        V.push_back(std::move(Vi));
    }
    return OperatorTuple(std::move(V));
}

double tail_bound(double r, int N) {
    if (r < 0.0 || r >= 1.0) throw InputError("tail_bound requires 0 <= r < 1");
    return std::pow(r, N + 1) / std::sqrt(1.0 - r * r);
}

}  // namespace ncft
