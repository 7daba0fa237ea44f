#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "peernet/manifest.hpp"

using namespace peernet;
namespace fs = std::filesystem;

namespace {

// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("peernet_test_" + tag + "_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("sha256 digests match the published test vectors") {
  TempDir dir("sha256");
  write_file(dir.path / "abc.txt", "abc");
  CHECK(sha256_file(dir.path / "abc.txt") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  write_file(dir.path / "empty.txt", "");
  CHECK(sha256_file(dir.path / "empty.txt") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

  // Stable across rereads.
  CHECK(sha256_file(dir.path / "abc.txt") == sha256_file(dir.path / "abc.txt"));
  CHECK_THROWS_AS(sha256_file(dir.path / "absent.txt"), std::runtime_error);
}

TEST_CASE("manifests serialize every field and contain no timestamps") {
  RunManifest manifest;
  manifest.command = "simulate";
  manifest.tool_version = "0.1.0";
  manifest.seed = 42;
  manifest.config = {{"n", "26"}, {"c", "0.01"}};
  manifest.input_digests = {{"input.csv", "deadbeef"}};
  manifest.outputs = {"trajectory.csv"};

  const nlohmann::json doc = manifest_to_json(manifest);
  CHECK(doc.at("command") == "simulate");
  CHECK(doc.at("seed") == 42);
  CHECK(doc.at("config").at("n") == "26");
  CHECK(doc.at("inputs").at("input.csv") == "deadbeef");
  CHECK(doc.at("outputs")[0] == "trajectory.csv");
  CHECK(doc.dump().find("time") == std::string::npos);

  TempDir dir("manifest");
  write_manifest(dir.path, manifest);
  std::ifstream in(dir.path / "manifest.json");
  REQUIRE(in.good());
  nlohmann::json reread;
  in >> reread;
  CHECK(reread == doc);
}
