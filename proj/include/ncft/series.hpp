// Degree-truncated free power series with matrix coefficients.
#pragma once

#include <limits>
#include <map>
#include <optional>
#include <utility>

#include "ncft/cmatrix.hpp"
#include "ncft/fock.hpp"
#include "ncft/word.hpp"

namespace ncft {

using CoeffMap = std::map<Word, CMatrix>;

class FreeSeries {
public:
    FreeSeries(int n, int cutoff, std::size_t p, std::size_t q);

    static FreeSeries unit(int n, int cutoff, std::size_t p);
    // the scalar series Z_i
    static FreeSeries variable(int n, int cutoff, int i);

    int n() const { return n_; }
    int cutoff() const { return cutoff_; }
    std::size_t rows() const { return p_; }
    std::size_t cols() const { return q_; }
    bool square() const { return p_ == q_; }
    const CoeffMap& coeffs() const { return coeffs_; }

    // zero matrix when absent
    CMatrix coeff(const Word& w) const;
    // stores c, dropping words beyond the cutoff
    void set(const Word& w, const CMatrix& c);
    void add_to(const Word& w, const CMatrix& c);

    FreeSeries operator+(const FreeSeries& g) const;
    FreeSeries operator-(const FreeSeries& g) const;
    FreeSeries operator*(cplx s) const;
    FreeSeries truncated(int newCutoff) const;

    // max over stored words of the Frobenius coefficient difference
    double max_coeff_distance(const FreeSeries& g) const;

private:
    void check_compatible(const FreeSeries& g) const;
    int n_;
    int cutoff_;
    std::size_t p_, q_;
    CoeffMap coeffs_;
};

FreeSeries multiply(const FreeSeries& f, const FreeSeries& g);
// 1 + f + f^2 + ... up to the cutoff
FreeSeries neumann_inverse(const FreeSeries& f);
// (1 - f)^{-1} f
FreeSeries cayley_forward(const FreeSeries& f);
// g (1 + g)^{-1}
FreeSeries cayley_inverse(const FreeSeries& g);

struct JsrEstimate {
    int kmax = 0;
    double value = 0.0;
    std::optional<int> nilpotent_order;
};

JsrEstimate jsr_estimate(const OperatorTuple& X, int kmax);
double radius_estimate(const FreeSeries& f, int kmax);

struct SeriesValue {
    CMatrix value;
    // 0 when the evaluation is exact (nilpotent X of order <= cutoff + 1)
    double tail_bound = 0.0;
    std::optional<int> nilpotent_order;
};

SeriesValue eval_at(const FreeSeries& f, const OperatorTuple& X);
// sum_{|alpha| <= m} kron(A_alpha, S_alpha^(m)) on C^p (x) P^(m)
CMatrix eval_at_creation(const FreeSeries& f, int m);
double hinf_norm_lower(const FreeSeries& f, int m);

enum class CayleyDirection { Forward, Inverse };

// Cayley transform of a nilpotent multi-analytic operator on C^p (x) P^(m).
CMatrix truncated_cayley(const CMatrix& Y, CayleyDirection direction, int n, int m);

struct ExtractedCoeffs {
    CoeffMap analytic;    // A_alpha, |alpha| >= 0
    CoeffMap coanalytic;  // B_alpha, |alpha| >= 1
};

// Fourier coefficients of an operator on C^p (x) P^(N), coefficient-first layout.
// Exactly-zero coefficients are omitted.
ExtractedCoeffs extract_coeffs(const CMatrix& A, int n, int N);

// true when A equals sum_{|alpha| <= m} kron(A_alpha, S_alpha^(m)) built from its
// own extracted coefficients, to relTol
bool is_multi_analytic(const CMatrix& A, int n, int m, double relTol = 1e-10);

// Shared traversal helper: calls fn(word, X_word) for every word of length <= maxDeg,
// parents before children.  Subtrees whose product is exactly zero are skipped.
template <class Fn>
void for_each_word_product(const OperatorTuple& X, int maxDeg, Fn&& fn);

}  // namespace ncft

#include "ncft/detail/series_impl.hpp"
