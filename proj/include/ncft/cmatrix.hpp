// Dense complex linear algebra on top of Eigen.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

namespace ncft {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

struct HermitianEig {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // columns, unitary
};

// Soft limit on rows/cols of any matrix built by the library (default 4096).
std::size_t matrix_size_limit();
void set_matrix_size_limit(std::size_t rows);
// throws InputError when a requested shape exceeds the limit
void check_matrix_size(std::size_t rows, std::size_t cols);

CMatrix identity(std::size_t n);
CMatrix zeros(std::size_t rows, std::size_t cols);

CMatrix kron(const CMatrix& A, const CMatrix& B);

double operator_norm(const CMatrix& A);

bool is_hermitian(const CMatrix& A, double relTol = 1e-10);
HermitianEig hermitian_eig(const CMatrix& A);
double min_eig_hermitian(const CMatrix& A);
double max_eig_hermitian(const CMatrix& A);

CMatrix psd_project(const CMatrix& A, double floor);

// Square root of a PSD matrix.  Eigenvalues in [-clamp, 0) are treated as 0;
// anything more negative raises ScopeError.
CMatrix hermitian_sqrt(const CMatrix& A, double clamp = 1e-12);
// A^{-1/2} for positive definite A
CMatrix hermitian_inv_sqrt(const CMatrix& A);

CMatrix solve(const CMatrix& A, const CMatrix& B);

}  // namespace ncft
