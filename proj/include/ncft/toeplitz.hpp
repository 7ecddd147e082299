// Multi-Toeplitz matrices T_m on C^p (x) P^(m) and their orbit decomposition.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ncft/cmatrix.hpp"
#include "ncft/series.hpp"
#include "ncft/word.hpp"

namespace ncft {

// Partition of the index pairs (alpha, beta) of P^(M) by right quotient.
// Label of a pair: +(s+1) when alpha = sigma beta (s = index of sigma, the
// diagonal being sigma = g_0), -(s+1) for the transposed position, 0 for the
// zero class.
class OrbitStructure {
public:
    OrbitStructure(int n, int M, int mFixed);

    int n() const { return n_; }
    int M() const { return M_; }
    int m_fixed() const { return mFixed_; }
    const GradedBasis& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    std::int32_t label(std::size_t row, std::size_t col) const { return labels_[row * dim() + col]; }
    // (row, col) pairs with row = sigma col, for sigma = basis word s
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& orbit(std::size_t s) const { return orbits_[s]; }
    bool prescribed(std::size_t s) const { return basis_.degree_of(s) <= mFixed_; }

private:
    int n_, M_, mFixed_;
    GradedBasis basis_;
    std::vector<std::int32_t> labels_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> orbits_;
};

struct MultiToeplitzMatrix {
    int n = 1;
    int m = 0;
    std::size_t p = 1;
    std::shared_ptr<const GradedBasis> basis;
    CMatrix entries;  // coefficient-first layout
    std::shared_ptr<const OrbitStructure> orbits;  // null for left-divisibility kernels

    // p x p block at word positions (row, col)
    CMatrix block(std::size_t row, std::size_t col) const;
};

MultiToeplitzMatrix assemble_T(const CoeffMap& coeffs, int n, int m);
MultiToeplitzMatrix assemble_kernel(const CoeffMap& coeffs, int n, int m);

CMatrix project_affine(const CMatrix& H, const OrbitStructure& structure, const CoeffMap& prescribed);

double min_eig(const MultiToeplitzMatrix& T);

// Reads b_sigma off the orbit representative (sigma, g_0) of an affine iterate.
CoeffMap coefficients_from_orbits(const CMatrix& H, const OrbitStructure& structure);

}  // namespace ncft
