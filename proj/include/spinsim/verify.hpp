#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spinsim/montecarlo.hpp"

namespace spinsim {

struct CheckResult {
    std::string module;
    std::string name;
    std::string spin;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::vector<TwoSpin> protocol_spins;
    std::vector<TwoSpin> oracle_spins;
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 1;

    /// Protocol spins 1/2, 3/2, 7/2; oracle spins additionally 1 and 15/2.
    static VerifyOptions defaults();
    /// Every spin goes to the oracle checks; protocol-eligible ones also to the protocol checks.
    static VerifyOptions for_spins(const std::vector<TwoSpin>& spins);
};

std::vector<CheckResult> verify_oracle(TwoSpin two_s, std::uint64_t seed);
std::vector<CheckResult> verify_protocol(TwoSpin two_s, std::int64_t trials, std::uint64_t seed, int workers);
std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// Fixed-width pass/fail table; returns true iff every check passed.
bool print_results(std::ostream& out, const std::vector<CheckResult>& results);

/// Rodrigues rotation of v about a unit axis.
UnitVector3 rotate(const UnitVector3& v, const UnitVector3& axis, double angle);

}  // namespace spinsim
