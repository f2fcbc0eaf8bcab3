#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ninefold/json_io.hpp"

namespace ninefold {

// Fault-injection switches, used by the test harness to prove that the
// selftest catches convention bugs rather than vacuously passing.
// flip_cone_sign makes the cones suite build its reference cone with +d_X
// instead of -d_X; away from characteristic 2 this violates d^2 = 0 as soon
// as d f != 0 and must surface as a counterexample. (Over F2 the two sign
// conventions genuinely coincide, so the flip is undetectable there.)
struct SelftestHooks {
    bool flip_cone_sign = false;
};

struct SuiteResult {
    std::string name;
    int cases = 0;
    int passed = 0;
    std::string failure;                 // empty when every case passed
    std::optional<Json> counterexample;  // minimized failing input

    bool ok() const { return passed == cases; }
};

struct SelftestReport {
    std::uint64_t seed = 0;
    int cases = 0;
    FieldSpec field = FieldSpec::rationals();
    std::vector<SuiteResult> suites;

    bool all_passed() const;
};

// Runs every property suite, `cases` cases each, with one deterministic
// substream per case so results do not depend on execution order. threads <= 1
// runs serially; larger values split the cases of each suite across workers
// without changing any sampled input or the assembled report. Err::Domain for
// cases < 1. On a failing case the suite retries shrunken parameter grids
// (smaller ranks, narrower windows) and reports the smallest failure found.
SelftestReport run_selftest(std::uint64_t seed, int cases, const FieldSpec& field,
                            int threads = 1, const SelftestHooks& hooks = {});

// Runs one named suite ("additivity", "pairing", "pipeline", ...) at
// caller-chosen case parameters, with the same substreams, shrinking, and
// determinism guarantees as the full selftest. Err::Domain for an unknown
// suite name, cases < 1, max_rank < 1, or min_deg > max_deg.
SuiteResult run_property_suite(const std::string& suite, std::uint64_t seed, int cases,
                               const FieldSpec& field, int max_rank, int min_deg,
                               int max_deg, int threads = 1);

// Canonical JSON form: no timings, no thread counts, so identical
// (seed, cases, field) yields byte-identical reports, parallel or not.
Json selftest_report_to_json(const SelftestReport& r);

}  // namespace ninefold
