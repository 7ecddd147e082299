// Seeded random instances shared by verification, the acceptance suites and tests.
#pragma once

#include <random>

#include "ncft/cmatrix.hpp"
#include "ncft/fock.hpp"
#include "ncft/series.hpp"

namespace ncft::sampling {

using Rng = std::mt19937_64;

// entries with independent standard normal real and imaginary parts
CMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);

// strictly upper-triangular tuple on C^d rescaled to the given row norm
OperatorTuple nilpotent_tuple(Rng& rng, int n, int d, double rowNorm);

// dense tuple rescaled to the given row norm (generically not nilpotent)
OperatorTuple dense_tuple(Rng& rng, int n, int d, double rowNorm);

// every word of length 1..maxDeg gets a gaussian coefficient scaled by scale
FreeSeries random_series(Rng& rng, int n, int cutoff, std::size_t p, std::size_t q, int maxDeg, double scale);

// dim x q block vector supported on words of degree <= deg, unit Frobenius norm
CMatrix random_fock_vector(Rng& rng, const FockTrunc& ft, int deg, Eigen::Index q = 1);

}  // namespace ncft::sampling
