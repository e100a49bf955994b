// Copyright 2026 The apgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "apgap/records.hpp"

namespace apgap {

inline constexpr u64 kCacheSchemaVersion = 1;

struct ResidueRecords {
    u64 r = 0;
    u64 x_max = 0;  // scan bound reached for this residue (<= cache x_max)
    u64 primes_seen = 0;
    std::vector<RecordEvent> events;
    friend bool operator==(const ResidueRecords&, const ResidueRecords&) = default;
};

/// Persisted record scans for one modulus q.
struct RecordCache {
    u64 schema_version = kCacheSchemaVersion;
    u64 q = 1;
    u64 x_max = 0;  // requested scan bound
    std::vector<ResidueRecords> residues;  // sorted by r, unique
    friend bool operator==(const RecordCache&, const RecordCache&) = default;
};

RecordCache make_cache(u64 q, u64 x_max, std::span<const RecordSet> sets);
std::vector<RecordSet> to_record_sets(const RecordCache& cache);

/// Throws CorruptCache on any invariant violation and SchemaError on an
/// unsupported schema_version.
void validate_cache(const RecordCache& cache);

/// Canonical JSON: sorted keys, one record event per line. Equal caches
/// serialize to identical bytes.
std::string serialize_cache(const RecordCache& cache);
RecordCache parse_cache(const std::string& text);

/// Writes to a temporary sibling file and renames it over `path`. Concurrent
/// writers to one path are not supported.
void save_cache(const RecordCache& cache, const std::filesystem::path& path);
RecordCache load_cache(const std::filesystem::path& path);

/// Union of residues; where both caches hold a residue, the deeper scan wins.
RecordCache merge_caches(const RecordCache& a, const RecordCache& b);

/// One row per record event, columns q,r,n,gap,start,end.
void export_csv(const RecordCache& cache, std::ostream& os);

}  // namespace apgap
