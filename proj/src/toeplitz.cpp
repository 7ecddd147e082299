#include "ncft/toeplitz.hpp"

#include <string>

#include "ncft/errors.hpp"

namespace ncft {

OrbitStructure::OrbitStructure(int n, int M, int mFixed) : n_(n), M_(M), mFixed_(mFixed), basis_(n, M) {
    if (mFixed < 0 || mFixed > M) throw InputError("orbit structure: prescribed degree out of range");
    const std::size_t dim = basis_.size();
    check_matrix_size(dim, dim);
    labels_.assign(dim * dim, 0);
    orbits_.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        const int ks = basis_.degree_of(s);
        const std::size_t rs = basis_.rank_in_degree(s);
        for (std::size_t c = 0; c < dim; ++c) {
            const int kc = basis_.degree_of(c);
            if (kc + ks > M) break;
            const std::size_t r = basis_.degree_offset(kc + ks) + rs * basis_.power(kc) + basis_.rank_in_degree(c);
            labels_[r * dim + c] = static_cast<std::int32_t>(s + 1);
            if (r != c) labels_[c * dim + r] = -static_cast<std::int32_t>(s + 1);
            orbits_[s].emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c));
        }
    }
}

CMatrix MultiToeplitzMatrix::block(std::size_t row, std::size_t col) const {
    const auto dim = static_cast<Eigen::Index>(basis->size());
    const auto pp = static_cast<Eigen::Index>(p);
    CMatrix B(pp, pp);
    for (Eigen::Index a = 0; a < pp; ++a)
        for (Eigen::Index c = 0; c < pp; ++c)
            B(a, c) = entries(a * dim + static_cast<Eigen::Index>(row), c * dim + static_cast<Eigen::Index>(col));
    return B;
}

namespace {

std::size_t validate_coeffs(const CoeffMap& coeffs, int n, int m) {
    auto it0 = coeffs.find(Word{});
    if (it0 == coeffs.end()) throw InputError("coefficient b_0 is missing");
    const CMatrix& b0 = it0->second;
    if (b0.rows() != b0.cols() || b0.rows() == 0) throw InputError("b_0 must be a nonempty square matrix");
    if (!is_hermitian(b0)) throw InputError("b_0 must be Hermitian");
    for (const auto& [w, c] : coeffs) {
        if (w.size() > static_cast<std::size_t>(m)) throw InputError("coefficient word \"" + w.str() + "\" exceeds degree");
        if (w.max_letter() > n) throw InputError("coefficient word \"" + w.str() + "\" uses a letter beyond n");
        if (c.rows() != b0.rows() || c.cols() != b0.cols()) throw InputError("coefficient shapes differ");
    }
    return static_cast<std::size_t>(b0.rows());
}

void put_block(CMatrix& M, Eigen::Index dim, std::size_t r, std::size_t c, const CMatrix& B) {
    for (Eigen::Index a = 0; a < B.rows(); ++a)
        for (Eigen::Index b = 0; b < B.cols(); ++b)
            M(a * dim + static_cast<Eigen::Index>(r), b * dim + static_cast<Eigen::Index>(c)) = B(a, b);
}

}  // namespace

MultiToeplitzMatrix assemble_T(const CoeffMap& coeffs, int n, int m) {
    const std::size_t p = validate_coeffs(coeffs, n, m);
    FreeSeries f(n, m, p, p);
    for (const auto& [w, c] : coeffs)
        if (!w.empty()) f.set(w, c);
    CMatrix F = eval_at_creation(f, m);
    MultiToeplitzMatrix T;
    T.n = n;
    T.m = m;
    T.p = p;
    T.basis = std::make_shared<const GradedBasis>(n, m);
    T.entries = F + F.adjoint() +
                kron(coeffs.at(Word{}), CMatrix::Identity(static_cast<Eigen::Index>(T.basis->size()),
                                                          static_cast<Eigen::Index>(T.basis->size())));
    return T;
}

MultiToeplitzMatrix assemble_kernel(const CoeffMap& coeffs, int n, int m) {
    const std::size_t p = validate_coeffs(coeffs, n, m);
    MultiToeplitzMatrix T;
    T.n = n;
    T.m = m;
    T.p = p;
    T.basis = std::make_shared<const GradedBasis>(n, m);
    const auto& b = *T.basis;
    const auto dim = static_cast<Eigen::Index>(b.size());
    T.entries = zeros(p * b.size(), p * b.size());
    auto coeff = [&](const Word& w) -> CMatrix {
        auto it = coeffs.find(w);
        return it != coeffs.end() ? it->second
                                  : CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    };
    for (std::size_t r = 0; r < b.size(); ++r) {
        for (std::size_t c = 0; c < b.size(); ++c) {
            const Word& alpha = b.word_at(r);
            const Word& beta = b.word_at(c);
            if (r == c) {
                put_block(T.entries, dim, r, c, coeff(Word{}));
            } else if (auto s = right_quotient(alpha, beta)) {
                put_block(T.entries, dim, r, c, coeff(*s));
            } else if (auto s2 = right_quotient(beta, alpha)) {
                put_block(T.entries, dim, r, c, coeff(*s2).adjoint());
            }
        }
    }
    return T;
}

CMatrix project_affine(const CMatrix& H, const OrbitStructure& st, const CoeffMap& prescribed) {
    const auto dim = static_cast<Eigen::Index>(st.dim());
    if (H.rows() != H.cols() || H.rows() % dim != 0 || H.rows() == 0) throw InputError("project_affine: size mismatch");
    const Eigen::Index p = H.rows() / dim;
    for (const auto& [w, c] : prescribed) {
        if (w.size() > static_cast<std::size_t>(st.m_fixed()))
            throw InputError("project_affine: prescribed word beyond the fixed degree");
        if (c.rows() != p || c.cols() != p) throw InputError("project_affine: prescribed coefficient shape mismatch");
    }
    CMatrix out = CMatrix::Zero(H.rows(), H.cols());
    CMatrix acc(p, p);
    for (std::size_t s = 0; s < st.dim(); ++s) {
        const auto& orb = st.orbit(s);
        if (st.prescribed(s)) {
            auto it = prescribed.find(st.basis().word_at(s));
            acc = it != prescribed.end() ? it->second : CMatrix::Zero(p, p);
            if (s == 0) acc = 0.5 * (acc + acc.adjoint()).eval();
        } else {
            acc.setZero();
            for (const auto& [r, c] : orb)
                for (Eigen::Index a = 0; a < p; ++a)
                    for (Eigen::Index b = 0; b < p; ++b)
                        acc(a, b) += H(a * dim + r, b * dim + c) + std::conj(H(b * dim + c, a * dim + r));
            acc /= static_cast<double>(2 * orb.size());
        }
        for (const auto& [r, c] : orb)
            for (Eigen::Index a = 0; a < p; ++a)
                for (Eigen::Index b = 0; b < p; ++b) {
                    out(a * dim + r, b * dim + c) = acc(a, b);
                    out(b * dim + c, a * dim + r) = std::conj(acc(a, b));
                }
    }
    return out;
}

double min_eig(const MultiToeplitzMatrix& T) { return min_eig_hermitian(T.entries); }

CoeffMap coefficients_from_orbits(const CMatrix& H, const OrbitStructure& st) {
    const auto dim = static_cast<Eigen::Index>(st.dim());
    const Eigen::Index p = H.rows() / dim;
    CoeffMap out;
    for (std::size_t s = 0; s < st.dim(); ++s) {
        CMatrix B(p, p);
        for (Eigen::Index a = 0; a < p; ++a)
            for (Eigen::Index b = 0; b < p; ++b) B(a, b) = H(a * dim + static_cast<Eigen::Index>(s), b * dim);
        out.emplace(st.basis().word_at(s), std::move(B));
    }
    return out;
}

}  // namespace ncft
