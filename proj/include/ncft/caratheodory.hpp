// Caratheodory interpolation: feasibility, constructive extension, the Cayley
// reductions to and from the Caratheodory-Fejer problem, and verification.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ncft/cmatrix.hpp"
#include "ncft/series.hpp"
#include "ncft/transforms.hpp"

namespace ncft {

struct CaratheodoryProblem {
    int n = 1;
    int m = 0;
    std::size_t p = 1;
    CoeffMap coeffs;  // b_alpha for |alpha| <= m, b_0 included

    CMatrix coeff(const Word& w) const;
    void validate() const;
};

struct FeasibilityReport {
    bool feasible = false;
    double minEig = 0.0;
    std::size_t matrixDim = 0;
    double tol = 0.0;
};

FeasibilityReport check_feasibility(const CaratheodoryProblem& prob, double tol = 1e-9);

struct ExtensionCertificate {
    double minEigTM = 0.0;
    int iterations = 0;
    // Frobenius distance from the final multi-Toeplitz iterate to the PSD cone
    double projResidual = 0.0;
    double prescribedError = 0.0;
    double slack = 0.0;
    // consecutive distances between multi-Toeplitz iterates
    int monotonicityViolations = 0;
    double worstStepIncrease = 0.0;
};

struct ExtensionResult {
    int targetDeg = 0;
    CoeffMap coeffs;
    ExtensionCertificate certificate;
};

enum class ExtensionStatus { Ok, Infeasible, NoConvergence };

struct ExtensionOutcome {
    ExtensionStatus status = ExtensionStatus::NoConvergence;
    FeasibilityReport feasibility;
    // set for Ok; for NoConvergence it carries the last iterate and its certificate
    std::optional<ExtensionResult> result;
};

// slack < 0 selects the floor max(tol, 1e-9 ||b_0||, minEig(T_m) / 2)
ExtensionOutcome extend(const CaratheodoryProblem& prob, int M, double tol = 1e-9, int maxIter = 5000,
                        double slack = -1.0);

struct CFProblem {
    int n = 1;
    int m = 0;
    std::size_t p = 1;
    CoeffMap coeffs;  // A_alpha for |alpha| <= m

    CMatrix coeff(const Word& w) const;
    void validate() const;
};

struct CayleyRouteResult {
    CFProblem cf;
    double xNorm = 0.0;
    double regEps = 0.0;
};

// regEps < 0 selects 1e-10 (1 + ||b_0||)
CayleyRouteResult cayley_route(const CaratheodoryProblem& prob, double regEps = -1.0);

struct CFReport {
    bool passed = false;
    double norm = 0.0;
    // distance between the quotient-indexed matrix and sum kron(A_a, R_a)
    double crossCheckError = 0.0;
    // max_i || [A_m, I (x) S_i^(m)] ||
    double commutatorError = 0.0;
};

// block (alpha, beta) = A_{reverse(tau)} when alpha = beta tau, zero otherwise
CMatrix cf_matrix(const CFProblem& prob);
CFReport cf_check(const CFProblem& prob, double tol = 1e-9);

CaratheodoryProblem cf_to_caratheodory(const CFProblem& prob, double tol = 1e-9);

struct VerificationReport {
    bool passed = true;
    bool prescribedOk = true;
    bool minEigOk = true;
    bool realPartOk = true;
    bool coefficientBoundOk = true;
    double prescribedError = 0.0;
    double minEigTM = 0.0;
    double worstRealPart = 0.0;  // smallest eigenvalue of 2 Re g(X) seen
    int samplesUsed = 0;
    std::string defect;  // names of the failed checks
};

VerificationReport verify_solution(const CaratheodoryProblem& prob, const ExtensionResult& ext, int samples,
                                   std::uint64_t seed, double tol = 1e-8);

// backward(reverse a) = b_a, forward(reverse a) = b_a^*, unit = b_0
MomentFunctional moment_problem_view(const CaratheodoryProblem& prob);

}  // namespace ncft
