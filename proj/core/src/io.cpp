// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tfw {

std::string format_float(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_float: conversion failed");
  return std::string(buf, p);
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += cells[i];
  }
  out += "\n";
  return out;
}

void write_text_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + p.string());
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + p.string());
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

std::string field_csv(const GridFunction& f) {
  const int n = f.lat.n_axis();
  std::string out = "x,y,z,value\n";
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz, ++idx)
        out += csv_join({format_float(grid_coord(f.lat, ix)), format_float(grid_coord(f.lat, iy)),
                         format_float(grid_coord(f.lat, iz)), format_float(f.v[idx])});
  return out;
}

namespace {

void push_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((unsigned char)((v >> (8 * i)) & 0xff));
}

} // namespace

std::vector<unsigned char> field_raw(const GridFunction& f) {
  const std::uint32_t n = std::uint32_t(f.lat.n_axis());
  std::vector<unsigned char> out;
  out.reserve(16 + 8 * f.v.size());
  push_u32(out, n);
  push_u32(out, n);
  push_u32(out, n);
  push_u32(out, 1);
  for (double d : f.v) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    for (int i = 0; i < 8; ++i) out.push_back((unsigned char)((bits >> (8 * i)) & 0xff));
  }
  return out;
}

void write_field_raw(const std::filesystem::path& p, const GridFunction& f) {
  std::vector<unsigned char> bytes = field_raw(f);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + p.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string checksum_hex(std::string_view bytes) {
  std::uint64_t h = fnv1a(bytes);
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = 0;
  return std::string(buf, 16);
}

} // namespace tfw
