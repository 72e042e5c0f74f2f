#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace pulsekit {

struct InvariantResult {
    std::string module;
    std::string name;
    double observed = 0;
    double allowed = 0;
    bool pass = false;
};

/// Deliberate defects for negative-control runs of the suite.
enum class Fault {
    None,
    TightenWithoutSqrt,  ///< tighten applies S^{-1} instead of S^{-1/2}
};

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    Fault fault = Fault::None;
};

std::vector<InvariantResult> run_invariants(const VerifyOptions& opts = {});

bool all_pass(const std::vector<InvariantResult>& results);

/// One line per invariant; failures are flagged.
void print_report(std::ostream& out, const std::vector<InvariantResult>& results);

} // namespace pulsekit
