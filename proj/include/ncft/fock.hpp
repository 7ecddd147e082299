// Truncated Fock space P^(N): creation operators, kernels and dilations.
//
// Tensor layout conventions used throughout the library:
//   * Fock-space kernels (R_X, B_X, K_X) act on P^(N) (x) C^p with the Fock
//     index outermost: row = word_index * p + h_index.
//   * Coefficient-first objects (series evaluated at S^(m), multi-Toeplitz
//     matrices) act on C^p (x) P^(m): row = coeff_index * dim + word_index.
#pragma once

#include <memory>
#include <vector>

#include "ncft/cmatrix.hpp"
#include "ncft/word.hpp"

namespace ncft {

class FockTrunc {
public:
    FockTrunc(int n, int N);

    int n() const { return n_; }
    int N() const { return N_; }
    std::size_t dim() const { return basis_->size(); }
    const GradedBasis& basis() const { return *basis_; }
    std::shared_ptr<const GradedBasis> basis_ptr() const { return basis_; }

    // cached compressed creation operators; references stay valid for the
    // lifetime of any copy of this FockTrunc
    const CMatrix& S(int i) const;
    const CMatrix& R(int i) const;

private:
    struct Cache;
    int n_;
    int N_;
    std::shared_ptr<const GradedBasis> basis_;
    std::shared_ptr<Cache> cache_;
};

class OperatorTuple {
public:
    OperatorTuple() = default;
    explicit OperatorTuple(std::vector<CMatrix> matrices);

    int n() const { return static_cast<int>(mats_.size()); }
    std::size_t dim() const { return dim_; }
    const CMatrix& operator[](int i) const { return mats_[static_cast<std::size_t>(i)]; }  // 0-based
    const std::vector<CMatrix>& matrices() const { return mats_; }
    double row_norm() const { return rowNorm_; }

    // X_alpha = X_{i1} ... X_{ik}
    CMatrix word(const Word& alpha) const;
    OperatorTuple scaled(double c) const;
    // sum_i X_i X_i^*
    CMatrix row_gram() const;

private:
    std::vector<CMatrix> mats_;
    std::size_t dim_ = 0;
    double rowNorm_ = 0.0;
};

CMatrix left_creation(const FockTrunc& ft, int i);
CMatrix right_creation(const FockTrunc& ft, int i);

// S_alpha: e_beta -> e_{alpha beta}
CMatrix left_word_operator(const FockTrunc& ft, const Word& alpha);
// e_beta -> e_{beta sigma}.  With R_alpha = R_{i1}...R_{ik} this is R_{reverse(sigma)}.
CMatrix right_translation(const FockTrunc& ft, const Word& sigma);
// R_alpha = R_{i1} ... R_{ik}: e_beta -> e_{beta reverse(alpha)}
CMatrix right_word_operator(const FockTrunc& ft, const Word& alpha);

CMatrix degree_projection(const FockTrunc& ft, int k);

CMatrix reconstruction_operator(const FockTrunc& ft, const OperatorTuple& X);
// applies R_X to a block column V of shape (dim*p) x c
CMatrix apply_reconstruction(const FockTrunc& ft, const OperatorTuple& X, const CMatrix& V);

// Delta_X = (I - sum X_i X_i^*)^{1/2}
CMatrix defect(const OperatorTuple& X);

CMatrix berezin_kernel(const FockTrunc& ft, const OperatorTuple& X);
CMatrix poisson_kernel(const FockTrunc& ft, const OperatorTuple& X);

// K_X^* (F (x) I_p) K_X for F acting on C^q (x) P^(N), with q = F.rows() / dim.
// The result acts on C^q (x) C^p.
CMatrix poisson_transform(const FockTrunc& ft, const CMatrix& F, const OperatorTuple& X);

// Finite sum of weighted vector pairs on P^(N); xi and eta are dim x q.
struct VectorStateRealization {
    std::vector<double> weights;
    std::vector<CMatrix> xi;
    std::vector<CMatrix> eta;
};

// sum_k w_k (eta_k^* (x) I) B_X^* (F (x) I) B_X (xi_k (x) I)
CMatrix berezin_transform(const FockTrunc& ft, const VectorStateRealization& mu, const CMatrix& F,
                          const OperatorTuple& X);

// Gram matrix of the block columns B_X (e_beta (x) I_p) for |beta| <= zoneDeg.
// Columns are built on the extension tree of beta, so the cost does not
// depend on the full Fock dimension squared.
CMatrix berezin_zone_gram(const FockTrunc& ft, const OperatorTuple& X, int zoneDeg);

OperatorTuple isometric_dilation(const OperatorTuple& T, int N);

double tail_bound(double r, int N);

}  // namespace ncft
