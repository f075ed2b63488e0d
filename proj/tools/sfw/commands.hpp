#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfw/json_io.hpp"

namespace sfw::cli {

using io::json;

struct Options {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> prefix;
  std::size_t jobs = 1;
  bool why = false;
  std::uint64_t seed = 20261016;
};

struct Check {
  std::string invariant;  // module-qualified, e.g. "filters.normality"
  bool passed = false;
  std::string detail;
};

struct Artifact {
  std::string suffix;  // appended to the scenario id
  json content;
};

struct Report {
  std::string command;
  std::string id;
  std::vector<Check> checks;
  std::vector<std::string> lines;  // human-readable body
  json data = json::object();
  std::vector<Artifact> artifacts;

  bool ok() const;
  void check(std::string invariant, bool passed, std::string detail);
  json to_json() const;
  std::string text() const;
};

const std::vector<std::string>& commands();

/// Throws sfw::Error(SchemaError) on malformed scenarios; check failures are
/// recorded in the report, not thrown.
Report run_scenario(const std::string& command, const json& scenario, const Options& opt);

}  // namespace sfw::cli
