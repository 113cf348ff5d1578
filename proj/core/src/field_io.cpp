#include "dkg/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace dkg {

static_assert(std::endian::native == std::endian::little,
              "DKGF field format is little-endian; big-endian hosts are unsupported");

namespace {

constexpr char kMagic[4] = {'D', 'K', 'G', 'F'};

template <typename T>
void append(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(std::string_view& bytes, const char* what) {
  if (bytes.size() < sizeof(T))
    throw std::runtime_error(std::string("field decode: truncated at ") + what);
  T v;
  std::memcpy(&v, bytes.data(), sizeof v);
  bytes.remove_prefix(sizeof v);
  return v;
}

}  // namespace

std::string field_to_bytes(const SpectralField& f) {
  std::string buf;
  buf.reserve(24 + f.coeff.size() * sizeof(cplx));
  buf.append(kMagic, 4);
  append(buf, kFieldFormatVersion);
  append(buf, static_cast<std::uint64_t>(f.grid.n));
  append(buf, f.grid.period);
  buf.append(reinterpret_cast<const char*>(f.coeff.data()), f.coeff.size() * sizeof(cplx));
  return buf;
}

SpectralField field_from_bytes(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw std::runtime_error("field decode: bad magic");
  bytes.remove_prefix(4);
  auto version = take<std::uint32_t>(bytes, "version");
  if (version != kFieldFormatVersion)
    throw std::runtime_error("field decode: unsupported version " + std::to_string(version));
  auto n = take<std::uint64_t>(bytes, "n");
  auto L = take<double>(bytes, "L");
  SpectralField f{Grid(L, static_cast<int>(n))};
  if (bytes.size() < n * sizeof(cplx)) throw std::runtime_error("field decode: truncated payload");
  std::memcpy(f.coeff.data(), bytes.data(), n * sizeof(cplx));
  return f;
}

void write_field(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_field: cannot open " + path.string());
  std::string bytes = field_to_bytes(f);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_field: write failed for " + path.string());
}

SpectralField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field: cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return field_from_bytes(bytes);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(e.what()) + " in " + path.string());
  }
}

}  // namespace dkg
