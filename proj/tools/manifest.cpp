#include "manifest.hpp"

#include <fstream>

#include "smc/errors.hpp"
#include "smc/io.hpp"

namespace smc::cli {

nlohmann::json RunManifest::to_json() const {
  return {{"tool", "smc"}, {"version", kToolVersion}, {"command", command}, {"args", args},
          {"config", config}, {"inputs", inputs}, {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.args = j.at("args").get<std::vector<std::string>>();
    m.config = j.value("config", nlohmann::json::object());
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.outputs = j.value("outputs", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  write_file_atomic(path, m.to_json().dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed manifest " + path.string() + ": " + e.what());
  }
  return RunManifest::from_json(j);
}

std::vector<std::string> strip_workers(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--workers") {
      ++i;
      continue;
    }
    if (args[i].rfind("--workers=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

}  // namespace smc::cli
