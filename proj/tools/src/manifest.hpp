#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dkg::cli {

/// FNV-1a 64-bit content hash, hex-encoded. Deterministic bookkeeping hash
/// for the run registry (not cryptographic).
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

/// Write-temp-then-rename; the destination never holds partial content.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// Accumulates artifact entries and emits manifest.json.
class RunManifest {
 public:
  RunManifest(nlohmann::ordered_json config_snapshot, std::string tool_version);

  /// Writes the artifact atomically and records (path, bytes, hash).
  void add_artifact(const std::filesystem::path& dir, const std::string& name,
                    std::string_view content);

  /// Run outcome recorded in the manifest ("ok" unless set otherwise).
  void set_status(std::string status) { status_ = std::move(status); }

  void finish(const std::filesystem::path& dir);

  const nlohmann::ordered_json& entries() const { return artifacts_; }

 private:
  nlohmann::ordered_json config_;
  nlohmann::ordered_json artifacts_;
  std::string version_;
  std::string started_;
  std::string status_ = "ok";
};

/// Registry path out/runs/<config-hash>.
std::filesystem::path registry_dir(const std::filesystem::path& out_root,
                                   const nlohmann::ordered_json& config_snapshot);

}  // namespace dkg::cli
