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

#include "apgap/store.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include <json.hpp>

#include "apgap/error.hpp"

namespace apgap {

using nlohmann::json;

RecordCache make_cache(u64 q, u64 x_max, std::span<const RecordSet> sets) {
    RecordCache cache;
    cache.q = q;
    cache.x_max = x_max;
    for (const auto& rs : sets) {
        if (rs.prog.q != q) throw InvalidConfig("record set q does not match cache q");
        cache.residues.push_back({rs.prog.r, rs.x_max, rs.primes_seen, rs.events});
    }
    std::sort(cache.residues.begin(), cache.residues.end(),
              [](const ResidueRecords& a, const ResidueRecords& b) { return a.r < b.r; });
    validate_cache(cache);
    return cache;
}

std::vector<RecordSet> to_record_sets(const RecordCache& cache) {
    std::vector<RecordSet> out;
    out.reserve(cache.residues.size());
    for (const auto& res : cache.residues) {
        out.push_back({Progression{cache.q, res.r}, res.x_max, res.events, res.primes_seen});
    }
    return out;
}

namespace {

[[noreturn]] void corrupt(const std::string& what) { throw CorruptCache("corrupt cache: " + what); }

void validate_residue(const RecordCache& cache, const ResidueRecords& res) {
    const u64 q = cache.q;
    const std::string where = "residue r=" + std::to_string(res.r) + ": ";
    if (res.r < 1 || res.r > q || gcd(q, res.r) != 1) corrupt(where + "not coprime to q");
    if (res.x_max > cache.x_max) corrupt(where + "scan bound exceeds cache x_max");
    if (!res.events.empty() && res.primes_seen < res.events.size() + 1) {
        corrupt(where + "primes_seen too small for its records");
    }
    for (std::size_t i = 0; i < res.events.size(); ++i) {
        const auto& e = res.events[i];
        const std::string at = where + "event " + std::to_string(i + 1) + ": ";
        if (e.n != i + 1) corrupt(at + "record indices must be 1, 2, 3, ...");
        if (e.end <= e.start || e.gap != e.end - e.start) corrupt(at + "gap != end - start");
        if (e.gap % q != 0 || e.gap < q) corrupt(at + "gap is not a positive multiple of q");
        if (e.start % q != res.r % q) corrupt(at + "start is not in the progression");
        if (e.start < res.r) corrupt(at + "start precedes r");
        if (e.end > res.x_max) corrupt(at + "end exceeds the residue scan bound");
        if (i > 0) {
            const auto& prev = res.events[i - 1];
            if (e.gap <= prev.gap) corrupt(at + "gaps must strictly increase");
            if (e.start < prev.end) corrupt(at + "records overlap");
        }
    }
}

template <class T>
T get_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) corrupt(where + "missing field '" + key + "'");
    const json& v = obj.at(key);
    if constexpr (std::is_same_v<T, u64>) {
        if (!v.is_number_unsigned()) corrupt(where + "field '" + key + "' must be a non-negative integer");
        return v.get<u64>();
    } else {
        return v;
    }
}

}  // namespace

void validate_cache(const RecordCache& cache) {
    if (cache.schema_version != kCacheSchemaVersion) {
        throw SchemaError("unsupported cache schema_version " +
                          std::to_string(cache.schema_version) + " (expected " +
                          std::to_string(kCacheSchemaVersion) + ")");
    }
    if (cache.q < 1) corrupt("q must be >= 1");
    for (std::size_t i = 0; i < cache.residues.size(); ++i) {
        if (i > 0 && cache.residues[i].r <= cache.residues[i - 1].r) {
            corrupt("residues must be sorted by r without duplicates");
        }
        validate_residue(cache, cache.residues[i]);
    }
}

std::string serialize_cache(const RecordCache& cache) {
    validate_cache(cache);
    std::ostringstream os;
    os << "{\n";
    os << "  \"q\": " << cache.q << ",\n";
    os << "  \"residues\": [";
    for (std::size_t i = 0; i < cache.residues.size(); ++i) {
        const auto& res = cache.residues[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "    {\n      \"events\": [";
        for (std::size_t j = 0; j < res.events.size(); ++j) {
            const auto& e = res.events[j];
            os << (j == 0 ? "\n" : ",\n");
            os << "        {\"end\": " << e.end << ", \"gap\": " << e.gap << ", \"n\": " << e.n
               << ", \"start\": " << e.start << "}";
        }
        os << (res.events.empty() ? "]" : "\n      ]") << ",\n";
        os << "      \"primes_seen\": " << res.primes_seen << ",\n";
        os << "      \"r\": " << res.r << ",\n";
        os << "      \"x_max\": " << res.x_max << "\n    }";
    }
    os << (cache.residues.empty() ? "]" : "\n  ]") << ",\n";
    os << "  \"schema_version\": " << cache.schema_version << ",\n";
    os << "  \"x_max\": " << cache.x_max << "\n}\n";
    return os.str();
}

RecordCache parse_cache(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        corrupt(std::string("invalid JSON: ") + e.what());
    }
    RecordCache cache;
    cache.schema_version = get_field<u64>(doc, "schema_version", "");
    if (cache.schema_version != kCacheSchemaVersion) validate_cache(cache);  // SchemaError
    cache.q = get_field<u64>(doc, "q", "");
    cache.x_max = get_field<u64>(doc, "x_max", "");
    const json residues = get_field<json>(doc, "residues", "");
    if (!residues.is_array()) corrupt("'residues' must be an array");
    for (const auto& item : residues) {
        ResidueRecords res;
        res.r = get_field<u64>(item, "r", "residue: ");
        const std::string where = "residue r=" + std::to_string(res.r) + ": ";
        res.x_max = get_field<u64>(item, "x_max", where);
        res.primes_seen = get_field<u64>(item, "primes_seen", where);
        const json events = get_field<json>(item, "events", where);
        if (!events.is_array()) corrupt(where + "'events' must be an array");
        for (const auto& ev : events) {
            RecordEvent e;
            e.n = get_field<u64>(ev, "n", where);
            e.gap = get_field<u64>(ev, "gap", where);
            e.start = get_field<u64>(ev, "start", where);
            e.end = get_field<u64>(ev, "end", where);
            res.events.push_back(e);
        }
        cache.residues.push_back(std::move(res));
    }
    validate_cache(cache);
    return cache;
}

void save_cache(const RecordCache& cache, const std::filesystem::path& path) {
    const std::string text = serialize_cache(cache);
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << text;
        out.flush();
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move cache into place at " + path.string());
    }
}

RecordCache load_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open cache " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading " + path.string());
    return parse_cache(ss.str());
}

RecordCache merge_caches(const RecordCache& a, const RecordCache& b) {
    validate_cache(a);
    validate_cache(b);
    if (a.q != b.q) throw InvalidConfig("cannot merge caches with different q");
    std::map<u64, ResidueRecords> merged;
    for (const auto& res : a.residues) merged[res.r] = res;
    for (const auto& res : b.residues) {
        auto it = merged.find(res.r);
        if (it == merged.end() || res.x_max > it->second.x_max) merged[res.r] = res;
    }
    RecordCache out;
    out.q = a.q;
    out.x_max = std::max(a.x_max, b.x_max);
    for (auto& [r, res] : merged) out.residues.push_back(std::move(res));
    return out;
}

void export_csv(const RecordCache& cache, std::ostream& os) {
    os << "q,r,n,gap,start,end\n";
    for (const auto& res : cache.residues) {
        for (const auto& e : res.events) {
            os << cache.q << ',' << res.r << ',' << e.n << ',' << e.gap << ',' << e.start << ','
               << e.end << '\n';
        }
    }
}

}  // namespace apgap
