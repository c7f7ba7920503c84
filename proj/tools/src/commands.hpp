#pragma once

#include "input.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace torilang::cli {

struct Options {
  std::uint64_t seed = 0;
  std::size_t max_order = 12;
  std::vector<long> q = {2, 3, 4, 5, 7};
  bool q_given = false;
  std::size_t samples = 200;
};

/// Largest group order the exhaustive sweep accepts.
inline constexpr std::size_t kMaxSweepOrder = 12;

const std::vector<std::string>& command_names();

/// Report body (task, inputs, cases, verdict) for one command on a document;
/// timing is added by the caller. Throws InputError for missing sections or
/// input the engine rejects.
Json run_command(const std::string& cmd, const InputDocument& doc, const Options& opt);

/// Catalog sweep over groups of order <= max_order and tori for each q, plus
/// `samples` random archimedean data; cases sorted by key.
Json sweep(const Options& opt);

/// Report for invalid input: no cases, verdict "invalid", the issues listed.
Json error_report(const std::string& cmd, const std::vector<InputIssue>& issues);

bool report_passed(const Json& report);

/// Human-readable rendering of a report.
std::string render_pretty(const Json& report);

Json group_json(const FinAbGroup& g);

} // namespace torilang::cli
