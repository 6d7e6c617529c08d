#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace smc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Sidecar written next to each output file. No timestamps or hostnames, so
// identical runs give identical bytes.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // argv after the program name, --workers removed
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

std::filesystem::path manifest_path_for(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

// Drops `--workers X` / `--workers=X` so worker count never reaches an output.
std::vector<std::string> strip_workers(const std::vector<std::string>& args);

}  // namespace smc::cli
