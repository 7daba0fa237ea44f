#include "peernet/manifest.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace peernet {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for digest: " + path.string());
  }

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("cannot initialize SHA-256 context");
  }

  std::array<char, 1 << 16> buffer;
  while (in) {
    in.read(buffer.data(), buffer.size());
    const std::streamsize got = in.gcount();
    if (got > 0 &&
        EVP_DigestUpdate(ctx.get(), buffer.data(),
                         static_cast<std::size_t>(got)) != 1) {
      throw std::runtime_error("SHA-256 update failed");
    }
  }

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int digest_len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), digest.data(), &digest_len) != 1) {
    throw std::runtime_error("SHA-256 finalization failed");
  }

  std::string hex(2 * digest_len, '0');
  static const char* kHexDigits = "0123456789abcdef";
  for (unsigned int i = 0; i < digest_len; ++i) {
    hex[2 * i] = kHexDigits[digest[i] >> 4];
    hex[2 * i + 1] = kHexDigits[digest[i] & 0x0F];
  }
  return hex;
}

nlohmann::json manifest_to_json(const RunManifest& manifest) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : manifest.config) {
    config[key] = value;
  }
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [name, digest] : manifest.input_digests) {
    inputs[name] = digest;
  }
  return {{"command", manifest.command},
          {"tool_version", manifest.tool_version},
          {"seed", manifest.seed},
          {"config", std::move(config)},
          {"inputs", std::move(inputs)},
          {"outputs", manifest.outputs}};
}

void write_manifest(const std::filesystem::path& out_dir,
                    const RunManifest& manifest) {
  const std::filesystem::path path = out_dir / "manifest.json";
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write manifest: " + path.string());
  }
  out << manifest_to_json(manifest).dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("failed writing manifest: " + path.string());
  }
}

}  // namespace peernet
