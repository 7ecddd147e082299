// Free pluriharmonic functions  h = sum B_a (x) X_a^* + A_0 (x) I + sum A_a (x) X_a.
#pragma once

#include <vector>

#include "ncft/fock.hpp"
#include "ncft/series.hpp"

namespace ncft {

struct PluriharmonicFn {
    int n = 1;
    int cutoff = 0;
    std::size_t p = 1;
    CoeffMap analytic;    // A_alpha, |alpha| >= 0
    CoeffMap coanalytic;  // B_alpha, |alpha| >= 1

    PluriharmonicFn() = default;
    PluriharmonicFn(int n, int cutoff, std::size_t p);

    CMatrix A(const Word& w) const;
    CMatrix B(const Word& w) const;
    bool is_selfadjoint(double tol = 1e-12) const;
    void validate() const;
};

PluriharmonicFn real_part(const FreeSeries& f);

CMatrix eval(const PluriharmonicFn& h, const OperatorTuple& X);
// h(r S^(m)) on C^p (x) P^(m)
CMatrix radial_boundary(const PluriharmonicFn& h, double r, int m);

// sum kron(R_{rev a}, X_a^*) + I + sum kron(R_{rev a}^*, X_a), Fock factor first
CMatrix pluriharmonic_poisson_kernel(const FockTrunc& ft, const OperatorTuple& X);

struct PositivityReport {
    bool passed = true;
    int mMax = 0;
    std::vector<double> minEigs;  // index m = 0..mMax
};
PositivityReport check_positive(const PluriharmonicFn& h, int mMax, double tol);

struct CoefficientBoundReport {
    bool passed = true;
    double a0Norm = 0.0;
    std::vector<double> degreeNorms;  // index k = 0..cutoff, entry 0 unused
};
CoefficientBoundReport coefficient_bound_check(const PluriharmonicFn& h, double tol = 1e-9);

struct HarnackReport {
    bool passed = true;
    double bound = 0.0;
    double worst = 0.0;  // largest ||h(X)|| over the samples
};
// positivity is verified with check_positive up to max(cutoff, 1) + 1
HarnackReport harnack_check(const PluriharmonicFn& h, const std::vector<OperatorTuple>& samples, double r,
                            double tol = 1e-9);

struct MeanValueReport {
    bool passed = true;
    double discrepancy = 0.0;
    double allowed = 0.0;
};
MeanValueReport mean_value_check(const PluriharmonicFn& h, const OperatorTuple& X, double r, int N,
                                 double tol = 1e-9);

struct MaxPrincipleReport {
    bool nonconstant = false;
    bool violationFound = false;  // some sample with h(X) not below A_0 (x) I
    int samplesUsed = 0;
};
MaxPrincipleReport max_principle_spot_check(const PluriharmonicFn& h, const std::vector<OperatorTuple>& samples,
                                            double tol = 1e-10);

bool is_multi_toeplitz(const CMatrix& A, int n, int N, int margin, double tol);

}  // namespace ncft
