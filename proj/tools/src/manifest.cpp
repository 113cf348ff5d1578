#include "manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

namespace dkg::cli {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

RunManifest::RunManifest(nlohmann::ordered_json config_snapshot, std::string tool_version)
    : config_(std::move(config_snapshot)),
      artifacts_(nlohmann::ordered_json::array()),
      version_(std::move(tool_version)),
      started_(utc_now()) {}

void RunManifest::add_artifact(const std::filesystem::path& dir, const std::string& name,
                               std::string_view content) {
  atomic_write(dir / name, content);
  artifacts_.push_back({{"path", name},
                        {"bytes", content.size()},
                        {"fnv1a64", fnv1a64_hex(content)}});
}

void RunManifest::finish(const std::filesystem::path& dir) {
  nlohmann::ordered_json m;
  m["versions"] = {{"dkg_lab", version_}, {"manifest", 1}};
  m["status"] = status_;
  m["config"] = config_;
  m["started_utc"] = started_;
  m["finished_utc"] = utc_now();
  m["artifacts"] = artifacts_;
  atomic_write(dir / "manifest.json", m.dump(2) + "\n");
}

std::filesystem::path registry_dir(const std::filesystem::path& out_root,
                                   const nlohmann::ordered_json& config_snapshot) {
  return out_root / "runs" / fnv1a64_hex(config_snapshot.dump());
}

}  // namespace dkg::cli
