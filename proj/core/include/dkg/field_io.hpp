#pragma once

#include <filesystem>

#include "dkg/spectral_field.hpp"

namespace dkg {

/// Binary field format "DKGF": little-endian, header
///   magic "DKGF" | u32 version | u64 n | f64 L
/// followed by n coefficients as interleaved re/im f64 pairs.
inline constexpr std::uint32_t kFieldFormatVersion = 1;

std::string field_to_bytes(const SpectralField& f);
SpectralField field_from_bytes(std::string_view bytes);

void write_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_field(const std::filesystem::path& path);

}  // namespace dkg
