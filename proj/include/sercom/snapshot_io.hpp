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

// Snapshot files.
//
// Binary (".snap"), all integers and floats little-endian:
//   bytes 0..7   magic "SRCMSNP1"
//   bytes 8..15  uint64 M (sensors)
//   bytes 16..23 uint64 N (snapshots)
//   then M*N pairs of float64 (re, im), snapshot-major: y(1)[0..M-1], y(2)[0..M-1], ...
//
// Text (CSV):
//   first non-comment line "M,N"; then M*N lines "re,im" in the same order.
//   Lines starting with '#' and blank lines are ignored.

#pragma once

#include <filesystem>

#include "sercom/array.hpp"

namespace sercom {

void write_snapshots_binary(const SnapshotSet& s, const std::filesystem::path& path);
void write_snapshots_csv(const SnapshotSet& s, const std::filesystem::path& path);

/// Reads either format, detected from the magic bytes. Throws IoError with the path.
SnapshotSet read_snapshots(const std::filesystem::path& path);

}  // namespace sercom
