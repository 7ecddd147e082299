#include "ncft/sampling.hpp"

#include "ncft/errors.hpp"

namespace ncft::sampling {

CMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix A(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) A(r, c) = cplx(g(rng), g(rng));
    return A;
}

namespace {

OperatorTuple rescale(std::vector<CMatrix> mats, double rowNorm) {
    OperatorTuple T(std::move(mats));
    if (T.row_norm() == 0.0) return T;
    return T.scaled(rowNorm / T.row_norm());
}

}  // namespace

OperatorTuple nilpotent_tuple(Rng& rng, int n, int d, double rowNorm) {
    if (d < 1) throw InputError("nilpotent_tuple: dimension must be positive");
    std::vector<CMatrix> mats;
    for (int i = 0; i < n; ++i) {
        CMatrix X = gaussian(rng, d, d);
        X.triangularView<Eigen::Lower>().setZero();
        mats.push_back(std::move(X));
    }
    return rescale(std::move(mats), rowNorm);
}

OperatorTuple dense_tuple(Rng& rng, int n, int d, double rowNorm) {
    std::vector<CMatrix> mats;
    for (int i = 0; i < n; ++i) mats.push_back(gaussian(rng, d, d));
    return rescale(std::move(mats), rowNorm);
}

FreeSeries random_series(Rng& rng, int n, int cutoff, std::size_t p, std::size_t q, int maxDeg, double scale) {
    FreeSeries f(n, cutoff, p, q);
    GradedBasis b(n, std::min(maxDeg, cutoff));
    for (std::size_t i = 1; i < b.size(); ++i)
        f.set(b.word_at(i), scale * gaussian(rng, static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)));
    return f;
}

CMatrix random_fock_vector(Rng& rng, const FockTrunc& ft, int deg, Eigen::Index q) {
    if (deg > ft.N()) throw InputError("random_fock_vector: degree exceeds the truncation");
    const auto rows = static_cast<Eigen::Index>(ft.basis().degree_offset(deg + 1));
    CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(ft.dim()), q);
    v.topRows(rows) = gaussian(rng, rows, q);
    return v / v.norm();
}

}  // namespace ncft::sampling
