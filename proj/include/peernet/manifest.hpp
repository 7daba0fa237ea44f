#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace peernet {

/// Reproducibility record written alongside every command's outputs:
/// the flag snapshot, seed and input digests are enough to re-run the
/// command and compare bytes. Deliberately carries no timestamps so
/// repeated runs stay byte-identical.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> input_digests;
  std::vector<std::string> outputs;
};

/// SHA-256 of a file's bytes as lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Writes manifest.json under `out_dir`.
void write_manifest(const std::filesystem::path& out_dir,
                    const RunManifest& manifest);

}  // namespace peernet
