#pragma once

// Binary field dumps and intensity CSV export.
//
// Dump layout (little-endian): magic "OAMF", version u32, n u32, dx f64,
// z f64, wavelength f64, then n*n interleaved (re, im) f64 pairs, row-major.

#include <filesystem>

#include "oam/field_grid.hpp"

namespace oam {

inline constexpr std::uint32_t kFieldDumpVersion = 1;

void write_field(const SampledField& field, const std::filesystem::path& path);

SampledField read_field(const std::filesystem::path& path);

/// Intensity as CSV rows (x, y, I) with a header line.
void write_intensity_csv(const SampledField& field, const std::filesystem::path& path);

} // namespace oam
