#pragma once

#include <string>
#include <vector>

#include "dirspec/engine.hpp"

// Versioned run-record format.  All integers are decimal strings and all
// rationals "num/den" strings, so verification is bit-exact across
// platforms.

namespace dirspec {

struct MalformedRecord : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Mode mode = Mode::theorem2;
    Rat lambda;
    Rat epsilon;                                 // theorem2 only
    std::vector<std::pair<int, Rat>> phi_table;  // theorem1 only
    int steps = 0;
    Int enum_limit = 10000000;
};

ParameterSchedule schedule_from_config(const RunConfig& cfg);

struct RunRecord {
    int schema_version = 1;
    RunConfig config;
    ConstructionState state;
    bool has_theta = false;
    ThetaEnclosure theta;
};

RunRecord build_record(const RunConfig& cfg, ConstructionState st);

std::string record_to_json(const RunRecord& rec);
// Throws MalformedRecord on any structural or parse problem.
RunRecord record_from_json(const std::string& text);

// Re-verification of a parsed record: schedule re-derived from the config,
// every step re-checked from the raw vectors, stored derived values
// cross-checked against recomputation.
VerifyResult verify_record(const RunRecord& rec, const Int& enum_limit);

}  // namespace dirspec
