// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The sercom authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sercom/snapshot_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace sercom {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'R', 'C', 'M', 'S', 'N', 'P', '1'};
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 32;

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
bool get_le(std::istream& is, T& value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) return false;
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  std::memcpy(&value, bytes.data(), sizeof(T));
  return true;
}

SnapshotSet read_binary(std::istream& is, const std::filesystem::path& path) {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  if (!get_le(is, m) || !get_le(is, n)) io_fail(path, "truncated header");
  if (m == 0 || n == 0 || m * n > kMaxEntries) io_fail(path, "invalid dimensions in header");
  SnapshotSet s;
  s.data.resize(static_cast<Index>(m), static_cast<Index>(n));
  for (std::uint64_t t = 0; t < n; ++t) {
    for (std::uint64_t i = 0; i < m; ++i) {
      double re = 0.0;
      double im = 0.0;
      if (!get_le(is, re) || !get_le(is, im)) io_fail(path, "truncated payload");
      s.data(static_cast<Index>(i), static_cast<Index>(t)) = cdouble(re, im);
    }
  }
  return s;
}

bool next_data_line(std::istream& is, std::string& line, std::size_t& lineno) {
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

bool parse_pair(const std::string& line, double& a, double& b) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  try {
    std::size_t used = 0;
    const std::string lhs = line.substr(0, comma);
    const std::string rhs = line.substr(comma + 1);
    a = std::stod(lhs, &used);
    if (lhs.find_first_not_of(" \t", used) != std::string::npos) return false;
    b = std::stod(rhs, &used);
    if (rhs.find_first_not_of(" \t\r", used) != std::string::npos) return false;
  } catch (const std::logic_error&) {
    return false;
  }
  return true;
}

SnapshotSet read_csv(std::istream& is, const std::filesystem::path& path) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_data_line(is, line, lineno)) io_fail(path, "missing 'M,N' header");
  double mf = 0.0;
  double nf = 0.0;
  if (!parse_pair(line, mf, nf) || mf < 1 || nf < 1 || mf != std::floor(mf) || nf != std::floor(nf) ||
      mf * nf > static_cast<double>(kMaxEntries)) {
    io_fail(path, "line " + std::to_string(lineno) + ": bad 'M,N' header");
  }
  const auto m = static_cast<Index>(mf);
  const auto n = static_cast<Index>(nf);
  SnapshotSet s;
  s.data.resize(m, n);
  for (Index t = 0; t < n; ++t) {
    for (Index i = 0; i < m; ++i) {
      if (!next_data_line(is, line, lineno)) io_fail(path, "expected " + std::to_string(m * n) + " values");
      double re = 0.0;
      double im = 0.0;
      if (!parse_pair(line, re, im)) io_fail(path, "line " + std::to_string(lineno) + ": expected 're,im'");
      s.data(i, t) = cdouble(re, im);
    }
  }
  if (next_data_line(is, line, lineno)) io_fail(path, "line " + std::to_string(lineno) + ": trailing data");
  return s;
}

}  // namespace

void write_snapshots_binary(const SnapshotSet& s, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) io_fail(path, "cannot open for writing");
  os.write(kMagic.data(), kMagic.size());
  put_le(os, static_cast<std::uint64_t>(s.num_sensors()));
  put_le(os, static_cast<std::uint64_t>(s.num_snapshots()));
  for (Index t = 0; t < s.num_snapshots(); ++t) {
    for (Index i = 0; i < s.num_sensors(); ++i) {
      put_le(os, s.data(i, t).real());
      put_le(os, s.data(i, t).imag());
    }
  }
  if (!os) io_fail(path, "write failed");
}

void write_snapshots_csv(const SnapshotSet& s, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) io_fail(path, "cannot open for writing");
  os << s.num_sensors() << ',' << s.num_snapshots() << '\n';
  char buf[64];
  for (Index t = 0; t < s.num_snapshots(); ++t) {
    for (Index i = 0; i < s.num_sensors(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.data(i, t).real(), s.data(i, t).imag());
      os << buf;
    }
  }
  if (!os) io_fail(path, "write failed");
}

SnapshotSet read_snapshots(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) io_fail(path, "cannot open for reading");
  std::array<char, 8> head{};
  is.read(head.data(), head.size());
  if (is.gcount() == static_cast<std::streamsize>(head.size()) && head == kMagic) {
    return read_binary(is, path);
  }
  is.clear();
  is.seekg(0);
  return read_csv(is, path);
}

}  // namespace sercom
