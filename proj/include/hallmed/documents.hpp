#pragma once

#include <json.hpp>

#include "hallmed/builder.hpp"
#include "hallmed/checker.hpp"
#include "hallmed/median.hpp"

namespace hallmed {

// Structured documents emitted by the CLI. Sets are written as arrays of
// element names in canonical order; tree vertices use canonical_vertex_names.

nlohmann::json to_json(const SetSystem& c, const CheckOutcome& outcome);
nlohmann::json to_json(const SetSystem& c, const PartitionCheckOutcome& outcome);
nlohmann::json to_json(const Tree& t, const SetSystem& c, const VerificationReport& report, bool partition);
nlohmann::json trace_to_json(const SetSystem& c, const std::vector<ReductionStep>& trace);

// One-line human summaries.
std::string describe(const SetSystem& c, const CheckOutcome& outcome);
std::string describe(const SetSystem& c, const PartitionCheckOutcome& outcome);

}  // namespace hallmed
