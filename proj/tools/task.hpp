#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "grouplat/geodesic.hpp"

namespace grouplat::cli {

using Json = nlohmann::ordered_json;

struct TaskOptions {
  bool compact = false;
  bool timing = false;
  std::optional<std::size_t> check_oracle;
  std::uint64_t expand_budget = kDefaultExpandBudget;
};

/// Runs one task object and returns the result object. Throws grouplat::Error
/// for malformed tasks and failed preconditions.
Json run_task(const Json& task, const TaskOptions& options);

/// Runs only the brute-force oracle matching the task.
Json run_oracle(const Json& task, const TaskOptions& options);

/// DOT rendering of the task's folded or completed graph.
std::string task_dot(const Json& task, const TaskOptions& options);

}  // namespace grouplat::cli
