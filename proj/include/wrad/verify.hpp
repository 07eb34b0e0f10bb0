#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wrad/mc.hpp"

namespace wrad {

struct VerifyOptions {
    int grid = 256;
    int64_t samples = 100000;
    uint64_t seed = 0;
    int threads = 0;
};

// Named comparison suites pitting the closed forms against the Monte Carlo
// oracle (plus a few exact dual-route rows). Suite names: "bridge",
// "multibridge", "ito", "fock", or "all".
std::vector<CompareReport> run_verify_suite(const std::string& suite,
                                            const VerifyOptions& options);

bool all_pass(const std::vector<CompareReport>& rows);

}  // namespace wrad
