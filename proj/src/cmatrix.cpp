#include "ncft/cmatrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "ncft/errors.hpp"

namespace ncft {

namespace {
std::atomic<std::size_t> g_size_limit{4096};
}

std::size_t matrix_size_limit() { return g_size_limit.load(); }
void set_matrix_size_limit(std::size_t rows) { g_size_limit.store(rows); }

void check_matrix_size(std::size_t rows, std::size_t cols) {
    std::size_t lim = g_size_limit.load();
    if (rows > lim || cols > lim)
        throw InputError("matrix of shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds the size limit " + std::to_string(lim));
}

CMatrix identity(std::size_t n) {
    check_matrix_size(n, n);
    return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

CMatrix zeros(std::size_t rows, std::size_t cols) {
    check_matrix_size(rows, cols);
    return CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    const auto r = B.rows(), s = B.cols();
    CMatrix K = zeros(static_cast<std::size_t>(A.rows() * r), static_cast<std::size_t>(A.cols() * s));
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (A(i, j) != cplx(0.0)) K.block(i * r, j * s, r, s) = A(i, j) * B;
    return K;
}

double operator_norm(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    // largest eigenvalue of the smaller Gram matrix
    CMatrix G = A.rows() <= A.cols() ? CMatrix(A * A.adjoint()) : CMatrix(A.adjoint() * A);
    G = 0.5 * (G + G.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    if (top <= 0.0) return 0.0;
    double guess = std::sqrt(top);
    if (A.rows() > 64 && A.cols() > 64) return guess;
    Eigen::JacobiSVD<CMatrix> svd(A);
    return svd.singularValues()(0);
}

bool is_hermitian(const CMatrix& A, double relTol) {
    if (A.rows() != A.cols()) return false;
    return (A - A.adjoint()).norm() <= relTol * (1.0 + A.norm());
}

HermitianEig hermitian_eig(const CMatrix& A) {
    if (!is_hermitian(A)) throw InputError("matrix is not Hermitian within tolerance");
    CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    if (es.info() != Eigen::Success) throw ScopeError("Hermitian eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

double min_eig_hermitian(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    if (!is_hermitian(A)) throw InputError("matrix is not Hermitian within tolerance");
    CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double max_eig_hermitian(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    if (!is_hermitian(A)) throw InputError("matrix is not Hermitian within tolerance");
    CMatrix H = 0.5 * (A + A.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

CMatrix psd_project(const CMatrix& A, double floor) {
    auto eig = hermitian_eig(A);
    RVector lam = eig.eigenvalues.cwiseMax(floor);
    CMatrix P = eig.eigenvectors * lam.cast<cplx>().asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (P + P.adjoint());
}

CMatrix hermitian_sqrt(const CMatrix& A, double clamp) {
    auto eig = hermitian_eig(A);
    RVector lam = eig.eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < 0.0) {
            if (lam(i) < -clamp) throw ScopeError("square root of a matrix with a negative eigenvalue");
            lam(i) = 0.0;
        }
        lam(i) = std::sqrt(lam(i));
    }
    CMatrix R = eig.eigenvectors * lam.cast<cplx>().asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (R + R.adjoint());
}

CMatrix hermitian_inv_sqrt(const CMatrix& A) {
    auto eig = hermitian_eig(A);
    RVector lam = eig.eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) <= 0.0) throw ScopeError("inverse square root of a singular matrix");
        lam(i) = 1.0 / std::sqrt(lam(i));
    }
    CMatrix R = eig.eigenvectors * lam.cast<cplx>().asDiagonal() * eig.eigenvectors.adjoint();
    return 0.5 * (R + R.adjoint());
}

CMatrix solve(const CMatrix& A, const CMatrix& B) {
    if (A.rows() != A.cols() || A.rows() != B.rows()) throw InputError("solve: shape mismatch");
    if (A.rows() == 0) return B;
    Eigen::PartialPivLU<CMatrix> lu(A);
    if (!(lu.rcond() >= 1e-12)) throw ScopeError("solve: matrix is singular to working tolerance");
    CMatrix X = lu.solve(B);
    double bn = B.norm();
    if (!X.allFinite() || !((A * X - B).norm() <= 1e-9 * std::max(bn, 1e-300)))
        throw ScopeError("solve: residual above tolerance");
    return X;
}

}  // namespace ncft
