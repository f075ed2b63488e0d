#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sfw/error.hpp"

namespace fs = std::filesystem;
using sfw::cli::json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kBadInput = 2;

json read_scenario(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw sfw::Error(sfw::ErrorCode::SchemaError, "cannot read scenario " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw sfw::Error(sfw::ErrorCode::SchemaError, path + ": " + e.what());
  }
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric-forcing workbench: runs a scenario and writes text and JSON reports."};
  app.require_subcommand(1);
  std::string scenario_path, out_dir = ".";
  std::size_t depth = 0, prefix = 0, jobs = 1;
  bool why = false;
  auto* depth_opt = app.add_option("--depth", depth, "Truncation depth (overrides the scenario)");
  auto* prefix_opt = app.add_option("--prefix", prefix, "Materialized prefix length (overrides the scenario)");
  app.add_option("--scenario", scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Directory for reports and certificates");
  app.add_option("--jobs", jobs, "Parallel jobs for independent checks")->check(CLI::PositiveNumber);
  app.add_flag("--why", why, "Print the path to the first non-symmetric name");
  app.fallthrough();

  std::string run_command;
  for (const auto& c : sfw::cli::commands()) app.add_subcommand(c, "Run a " + c + " scenario");
  app.add_subcommand("run", "Run the command named by the scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    sfw::cli::Options opt;
    if (depth_opt->count()) opt.depth = depth;
    if (prefix_opt->count()) opt.prefix = prefix;
    opt.jobs = jobs;
    opt.why = why;
    if (const char* s = std::getenv("SFW_SEED")) {
      char* end = nullptr;
      opt.seed = std::strtoull(s, &end, 10);
      if (!*s || *end) throw sfw::Error(sfw::ErrorCode::SchemaError, "SFW_SEED must be an unsigned integer");
    }

    json scenario = read_scenario(scenario_path);
    std::string command = app.get_subcommands().front()->get_name();
    if (command == "run") {
      if (!scenario.is_object() || !scenario.contains("command") || !scenario["command"].is_string())
        throw sfw::Error(sfw::ErrorCode::SchemaError, "'run' needs a scenario with a 'command'");
      command = scenario["command"].get<std::string>();
    }
    auto rep = sfw::cli::run_scenario(command, scenario, opt);
    if (!std::regex_match(rep.id, std::regex("[A-Za-z0-9_.-]+")))
      throw sfw::Error(sfw::ErrorCode::SchemaError, "scenario id '" + rep.id + "' is not a plain file name");

    fs::create_directories(out_dir);
    const std::string text = rep.text();
    write_file(fs::path(out_dir) / (rep.id + ".txt"), text);
    write_file(fs::path(out_dir) / (rep.id + ".json"), sfw::io::dump(rep.to_json()));
    for (const auto& a : rep.artifacts) {
      auto p = fs::path(out_dir) / (rep.id + "." + a.suffix + ".json");
      write_file(p, sfw::io::dump(a.content));
    }
    std::cout << text;
    for (const auto& c : rep.checks)
      if (!c.passed) std::cerr << "sfw: invariant violated: " << c.invariant << ": " << c.detail << "\n";
    return rep.ok() ? kOk : kCheckFailed;
  } catch (const sfw::Error& e) {
    std::cerr << "sfw: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "sfw: " << e.what() << "\n";
    return kBadInput;
  }
}
