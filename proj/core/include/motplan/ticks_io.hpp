#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "motplan/harness.hpp"

namespace motplan {

/// Header names the nine fixed columns followed by one
/// (agent_id, x, y, vx, vy) group per ground-truth agent. Rows hold the
/// fixed columns, a variable number of (id, x, y, vx, vy, r) track blocks,
/// then the truth blocks.
void write_ticks_csv(std::ostream& out, std::span<const TickRecord> ticks);
void write_ticks_csv(const std::filesystem::path& path, std::span<const TickRecord> ticks);

/// Throws std::runtime_error on malformed input.
std::vector<TickRecord> read_ticks_csv(std::istream& in);
std::vector<TickRecord> read_ticks_csv(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, std::span<const CandidateTrace> trace);

std::string summary_to_json(const RunSummary& summary, const SummaryInputs& inputs);
void write_summary_json(const std::filesystem::path& path, const RunSummary& summary,
                        const SummaryInputs& inputs);

/// Human-readable digest printed by `replay`.
std::string describe_summary(const RunSummary& summary);

}  // namespace motplan
