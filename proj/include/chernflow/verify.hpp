#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chernflow {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// "[PASS] name: detail" / "[FAIL] name: detail"
std::string format_check_line(const CheckResult& r);

/// Every documented invariant of every module, one result each.
std::vector<CheckResult> run_invariant_checks(std::uint64_t seed);

/// Acceptance criteria 1-9 at their stated tolerances (10, the CLI
/// determinism check, lives in the acceptance binary since it spawns the
/// tool).
std::vector<CheckResult> run_acceptance_criteria(std::uint64_t seed);

/// Invariants followed by criteria; the `verify` subcommand prints these.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed);

}  // namespace chernflow
