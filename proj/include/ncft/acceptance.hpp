// Acceptance suites shared by the `acceptance` test binary and `ncft selftest`.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ncft::acceptance {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Context {
    std::uint64_t seed = kDefaultSeed;
    // deliberately corrupts one computation so the runner must report a failure
    bool canary = false;
};

struct Suite {
    int id = 0;
    std::string name;
    double budgetSeconds = 0.0;
    std::function<Outcome(const Context&)> run;
};

const std::vector<Suite>& suites();

struct SuiteRun {
    int id = 0;
    std::string name;
    bool passed = false;
    bool withinBudget = false;
    double seconds = 0.0;
    double budgetSeconds = 0.0;
    std::string detail;
};

// Runs every suite, printing one PASS/FAIL line each when out is non-null.
// A suite that passes its checks but overruns its budget counts as failed.
std::vector<SuiteRun> run_all(const Context& ctx, std::ostream* out);

// NCFT_SELFTEST_CANARY set to a nonempty value other than "0"
bool canary_from_env();

}  // namespace ncft::acceptance
