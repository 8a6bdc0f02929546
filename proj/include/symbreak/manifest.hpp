#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace symbreak {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce one pipeline stage byte for byte: re-running
// the recorded subcommand with these fields regenerates identical outputs.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;
  std::uint64_t global_seed = 0;
  std::string instance_file;
  std::string template_label;
  std::string profile_label;
  std::uint32_t generator_product_length = 50;
  std::uint64_t guard_max_points = 1ULL << 20;
  std::uint64_t guard_max_orbit = 100000;
  std::uint64_t guard_max_group = 100000;
  std::vector<std::string> outputs;
};

inline nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["global_seed"] = m.global_seed;
  j["instance_file"] = m.instance_file;
  j["template"] = m.template_label;
  j["profile"] = m.profile_label;
  j["generator_product_length"] = m.generator_product_length;
  j["guards"] = {{"max_points", m.guard_max_points},
                 {"max_orbit", m.guard_max_orbit},
                 {"max_group", m.guard_max_group}};
  j["outputs"] = m.outputs;
  return j;
}

inline void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << manifest_to_json(m).dump(2) << "\n";
}

inline RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  RunManifest m;
  m.tool_version = j.value("tool_version", "");
  m.command = j.value("command", "");
  m.global_seed = j.value("global_seed", 0ULL);
  m.instance_file = j.value("instance_file", "");
  m.template_label = j.value("template", "");
  m.profile_label = j.value("profile", "");
  m.generator_product_length = j.value("generator_product_length", 50U);
  if (j.contains("guards")) {
    m.guard_max_points = j["guards"].value("max_points", 1ULL << 20);
    m.guard_max_orbit = j["guards"].value("max_orbit", 100000ULL);
    m.guard_max_group = j["guards"].value("max_group", 100000ULL);
  }
  m.outputs = j.value("outputs", std::vector<std::string>{});
  return m;
}

}  // namespace symbreak
