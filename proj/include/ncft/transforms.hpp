// Moment functionals on span{R_a, R_a^*} and their Poisson, Herglotz and
// Fantappie transforms.
#pragma once

#include <optional>
#include <vector>

#include "ncft/fock.hpp"
#include "ncft/pluriharmonic.hpp"
#include "ncft/series.hpp"
#include "ncft/toeplitz.hpp"

namespace ncft {

struct MomentFunctional {
    struct Realization {
        FockTrunc ft;
        VectorStateRealization states;
    };

    int n = 1;
    int cutoff = 0;
    std::size_t p = 1;
    CMatrix unit;      // mu(I)
    CoeffMap forward;  // mu(R_alpha)
    CoeffMap backward; // mu(R_alpha^*)
    std::optional<Realization> realization;

    CMatrix fwd(const Word& w) const;
    CMatrix bwd(const Word& w) const;
    bool is_selfadjoint(double tol = 1e-12) const;
    void validate() const;
};

struct WeightedPair {
    double weight = 1.0;
    CMatrix xi;   // dim x q
    CMatrix eta;  // dim x q
};

MomentFunctional from_vector_states(const FockTrunc& ft, const std::vector<WeightedPair>& pairs, int cutoff);

CMatrix poisson_transform_of(const MomentFunctional& mu, const OperatorTuple& X);
CMatrix herglotz_transform(const MomentFunctional& mu, const OperatorTuple& X);
CMatrix fantappie_transform(const MomentFunctional& mu, const OperatorTuple& X);

// the pluriharmonic function P mu: A_0 = mu(I), A_a = mu(R_{rev a}^*), B_a = mu(R_{rev a})
PluriharmonicFn poisson_function(const MomentFunctional& mu);
// the free series H mu: constant mu(I), coefficient 2 mu(R_{rev a}^*) at a
FreeSeries herglotz_series(const MomentFunctional& mu);

CMatrix berezin_transform(const FockTrunc& ft, const MomentFunctional& mu, const CMatrix& F, const OperatorTuple& X);

// (W^* (x) I)[2(I - sum V_i^* (x) X_i)^{-1} - I](W (x) I) + i imPart (x) I.
// The isometry relations are checked on the range of Q (whole space when empty).
CMatrix herglotz_from_isometries(const OperatorTuple& V, const CMatrix& W, const OperatorTuple& X,
                                 const CMatrix& imPart, const CMatrix& Q = CMatrix());

// kernel [K_f(alpha, beta)] on C^p (x) P^(degree); degree defaults to the cutoff
MultiToeplitzMatrix kernel_from_series(const FreeSeries& f, std::optional<int> degree = std::nullopt);

// (1/2) sum A_a^* (x) r^|a| R_a^* + Re A_0 (x) I + (1/2) sum A_a (x) r^|a| R_a on C^p (x) P^(m)
CMatrix radial_operator(const FreeSeries& f, double r, int m);

struct EquivalenceReport {
    bool radial = true;   // A_r PSD on the grid
    bool kernel = true;   // K_f PSD
    bool boundary = true; // Re f(S^(m)) PSD
    bool agree = true;
    int mMax = 0;
    double minRadial = 0.0;
    double minKernel = 0.0;
    double minBoundary = 0.0;
};
EquivalenceReport positivity_equivalence_check(const FreeSeries& f, int mMax, const std::vector<double>& rGrid,
                                               double tol = 1e-9);

struct FejerReport {
    bool passed = true;
    std::vector<double> lhs;    // index k = 1..m-1, entry 0 unused
    std::vector<double> bound;
};
FejerReport fejer_check(const MomentFunctional& mu, int m, double tol = 1e-10);

MomentFunctional radial_functional(const PluriharmonicFn& h, double r);
// mu_r(R_a) = r^|a| mu(R_a)
MomentFunctional scale_functional(const MomentFunctional& mu, double r);

}  // namespace ncft
