// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tfw/field.hpp"

namespace tfw {

// Shortest decimal form at 17 significant digits; round-trips to the same
// double.
std::string format_float(double v);

std::string csv_join(const std::vector<std::string>& cells);

void write_text_file(const std::filesystem::path& p, const std::string& content);
std::string read_text_file(const std::filesystem::path& p);

// x,y,z,value rows over the grid in index order
std::string field_csv(const GridFunction& f);

// Binary dump: 16-byte header of four little-endian uint32 (nx, ny, nz,
// format tag 1), then nx*ny*nz little-endian float64 in index order.
std::vector<unsigned char> field_raw(const GridFunction& f);
void write_field_raw(const std::filesystem::path& p, const GridFunction& f);

// FNV-1a 64-bit over the byte content, reported as 16 hex digits
std::uint64_t fnv1a(std::string_view bytes);
std::string checksum_hex(std::string_view bytes);

} // namespace tfw
