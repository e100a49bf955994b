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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apgap/bounds.hpp"
#include "apgap/error.hpp"
#include "apgap/fit.hpp"
#include "apgap/iid.hpp"
#include "apgap/records.hpp"
#include "apgap/stats.hpp"
#include "apgap/store.hpp"

namespace apgap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Argument parsing helpers

/// Accepts plain integers and scientific notation ("1e9", "2.5e6") as long
/// as the value is a non-negative integer.
u64 parse_u64(const std::string& text, const std::string& what) {
    const bool digits = !text.empty() && std::all_of(text.begin(), text.end(), ::isdigit);
    try {
        if (digits) return std::stoull(text);
        std::size_t used = 0;
        const long double v = std::stold(text, &used);
        if (used == text.size() && v >= 0 && v == std::floor(v) && v < 18446744073709551616.0L) {
            return static_cast<u64>(v);
        }
    } catch (const std::exception&) {
    }
    throw InvalidConfig(what + ": expected a non-negative integer, got '" + text + "'");
}

double parse_double(const std::string& text, const std::string& what) {
    if (text == "e") return std::numbers::e;
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidConfig(what + ": expected a number, got '" + text + "'");
}

struct IndexRange {
    u64 first = 1;
    u64 last = 1;
    bool single() const { return first == last; }
};

/// "10" or "1..20".
IndexRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    IndexRange r;
    if (dots == std::string::npos) {
        r.first = r.last = parse_u64(text, "--n");
    } else {
        r.first = parse_u64(text.substr(0, dots), "--n");
        r.last = parse_u64(text.substr(dots + 2), "--n");
    }
    if (r.first < 1 || r.last < r.first) throw InvalidConfig("--n: invalid range '" + text + "'");
    return r;
}

// ---------------------------------------------------------------------------
// Output

enum class Format { Json, Csv, Tsv };

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "tsv") return Format::Tsv;
    throw InvalidConfig("unknown format '" + s + "' (expected json, csv or tsv)");
}

struct OutputSpec {
    std::string format = "json";
    std::string destination = "-";  // "-" is standard output
};

void add_output_flags(CLI::App* cmd, OutputSpec& spec, const std::string& default_format) {
    spec.format = default_format;
    cmd->add_option("--format", spec.format, "Output format: json, csv or tsv (gnuplot)")
        ->capture_default_str();
    cmd->add_option("-o,--output", spec.destination, "Output file ('-' for stdout)")
        ->capture_default_str();
}

void emit(const std::string& text, const std::string& destination, std::ostream& out) {
    if (destination.empty() || destination == "-") {
        out << text;
        return;
    }
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + destination + " for writing");
    file << text;
    if (!file) throw IoError("failed writing " + destination);
}

/// Numeric table rendered as CSV or as gnuplot TSV ('#' header, tabs,
/// 9 significant digits).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string render(Format format) const {
        std::ostringstream os;
        const char sep = format == Format::Csv ? ',' : '\t';
        if (format == Format::Tsv) os << "# ";
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? std::string(1, sep) : "") << columns[i];
        os << '\n';
        char buf[64];
        const char* fmt = format == Format::Csv ? "%.17g" : "%.9g";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << sep;
                if (std::isnan(row[i])) {
                    os << "nan";
                } else {
                    std::snprintf(buf, sizeof buf, fmt, row[i]);
                    os << buf;
                }
            }
            os << '\n';
        }
        return os.str();
    }
};

std::string render(const json& doc, const Table& table, const OutputSpec& spec) {
    const Format f = parse_format(spec.format);
    if (f == Format::Json) return doc.dump(2) + "\n";
    return table.render(f);
}

double as_double(u64 v) { return static_cast<double>(v); }

json nullable(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------------------
// Ensemble access shared by stats and fit

struct LoadedCache {
    RecordCache cache;
    std::vector<RecordSet> sets;
};

LoadedCache load(const std::string& path) {
    LoadedCache lc;
    lc.cache = load_cache(path);
    lc.sets = to_record_sets(lc.cache);
    return lc;
}

Ensemble ensemble_for(const LoadedCache& lc, u64 n, bool allow_incomplete) {
    Ensemble ens = build_ensemble(lc.sets, n);
    ens.q = lc.cache.q;
    if (!allow_incomplete) require_complete(ens);
    if (ens.values.empty()) {
        throw EmptyInput("no residue of q=" + std::to_string(lc.cache.q) + " has a record n=" +
                         std::to_string(n));
    }
    return ens;
}

json summary_json(const SummaryStats& s) {
    return {{"count", s.count}, {"min", s.min},       {"q1", s.q1},
            {"median", s.median}, {"q3", s.q3},       {"max", s.max},
            {"mean", s.mean},   {"stddev", s.stddev}, {"skewness", s.skewness},
            {"degenerate", s.degenerate}};
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    std::string q, x_max;
    std::vector<std::string> residues;
    std::string segment_size = std::to_string(kDefaultSegmentSize);
    std::string max_records = "0";
    std::string out;
    unsigned threads = 0;
    bool quiet = false;
};

int cmd_scan(const ScanArgs& a, std::ostream& err) {
    const u64 q = parse_u64(a.q, "--q");
    const u64 x_max = parse_u64(a.x_max, "--x-max");
    SieveConfig cfg{x_max, parse_u64(a.segment_size, "--segment-size")};
    std::vector<u64> residues;
    if (a.residues.empty()) {
        residues = admissible_residues(q);
    } else {
        for (const auto& r : a.residues) residues.push_back(parse_u64(r, "--r"));
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    }
    for (u64 r : residues) Progression::make(q, r);

    const auto t0 = std::chrono::steady_clock::now();
    std::mutex progress_mutex;
    std::size_t done = 0;
    std::size_t reported = 0;
    const std::size_t total = residues.size();
    auto progress = [&](const RecordSet&) {
        if (a.quiet) return;
        std::lock_guard lock(progress_mutex);
        ++done;
        if (done == total || done * 10 / total > reported) {
            reported = done * 10 / total;
            err << "scan q=" << q << ": " << done << "/" << total << " residues\n";
        }
    };
    auto sets = scan_residues(q, residues, cfg, parse_u64(a.max_records, "--max-records"),
                              a.threads, progress);
    save_cache(make_cache(q, x_max, sets), a.out);
    if (!a.quiet) {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t records = 0;
        for (const auto& s : sets) records += s.events.size();
        err << "wrote " << a.out << ": " << total << " residues, " << records << " records, "
            << secs << " s\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
    std::string cache, n;
    bool allow_incomplete = false;
    OutputSpec output;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
    const auto lc = load(a.cache);
    const IndexRange range = parse_range(a.n);
    json rows = json::array();
    Table table{{"n", "count", "complete", "censored", "min", "q1", "median", "q3", "max", "mean",
                 "stddev", "skewness", "degenerate", "median_censored"},
                {}};
    for (u64 n = range.first; n <= range.last; ++n) {
        const Ensemble ens = ensemble_for(lc, n, a.allow_incomplete);
        const auto values = ens.gaps();
        const SummaryStats s = summarize(values);
        const auto cmed = censored_median(ens);
        json row = summary_json(s);
        row["n"] = n;
        row["complete"] = ens.complete;
        row["censored"] = ens.censored.size();
        row["median_censored"] = nullable(cmed);
        rows.push_back(row);
        table.rows.push_back({as_double(n), as_double(s.count), ens.complete ? 1.0 : 0.0,
                              as_double(ens.censored.size()), s.min, s.q1, s.median, s.q3, s.max,
                              s.mean, s.stddev, s.skewness, s.degenerate ? 1.0 : 0.0,
                              cmed.value_or(std::nan(""))});
    }
    json doc = {{"q", lc.cache.q},
                {"x_max", lc.cache.x_max},
                {"quartile_rule", kQuartileRule},
                {"skewness_rule", kSkewnessRule},
                {"rows", rows}};
    emit(render(doc, table, a.output), a.output.destination, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// tau (also reachable as fit --model tau)

struct TauArgs {
    std::string cache;
    std::string x_min = "1000";
    std::string steps;  // empty: as many as the cache depth allows
    std::string ratio = "e";
    OutputSpec output;
};

struct TauResult {
    json doc;
    Table table;
    std::optional<TauModelFit> fit;
};

TauResult compute_tau(const TauArgs& a) {
    const auto lc = load(a.cache);
    const u64 x_min = parse_u64(a.x_min, "--x-min");
    const double ratio = parse_double(a.ratio, "--ratio");
    if (x_min < 1 || !(ratio > 1)) throw InvalidConfig("tau grid needs x-min >= 1 and ratio > 1");

    u64 depth = std::numeric_limits<u64>::max();
    for (const auto& rs : lc.sets) depth = std::min(depth, rs.x_max);
    std::vector<u64> grid;
    if (a.steps.empty()) {
        for (int k = 0;; ++k) {
            const auto x = static_cast<u64>(std::llround(static_cast<double>(x_min) * std::pow(ratio, k)));
            if (e_times(x) > depth) break;
            grid.push_back(x);
        }
    } else {
        const u64 steps = parse_u64(a.steps, "--steps");
        for (u64 k = 0; k < steps; ++k) {
            grid.push_back(static_cast<u64>(
                std::llround(static_cast<double>(x_min) * std::pow(ratio, static_cast<double>(k)))));
        }
    }
    if (grid.empty()) {
        throw OutOfScanRange("cache depth " + std::to_string(depth) +
                             " is too shallow for x-min " + std::to_string(x_min));
    }

    TauResult res;
    std::vector<FitPoint> points;
    for (u64 x : grid) {
        points.push_back({as_double(x), mean_record_count_increment(lc.sets, x)});
    }
    json fit_json = nullptr;
    std::string fit_error;
    try {
        res.fit = fit_tau_model(points);
        fit_json = {{"kappa", res.fit->kappa},
                    {"delta", res.fit->delta},
                    {"points_used", res.fit->points_used},
                    {"limit", TauModelFit::limit()}};
    } catch (const Error& e) {
        fit_error = e.what();
    }
    json rows = json::array();
    res.table.columns = {"x", "tau_hat", "model"};
    for (const auto& p : points) {
        const double model = res.fit ? (*res.fit)(p.x) : std::nan("");
        rows.push_back({{"x", static_cast<u64>(p.x)}, {"tau_hat", p.y}, {"model", nullable(res.fit ? std::optional(model) : std::nullopt)}});
        res.table.rows.push_back({p.x, p.y, model});
    }
    res.doc = {{"q", lc.cache.q},    {"x_max", lc.cache.x_max}, {"ratio", ratio},
               {"points", rows},     {"fit", fit_json}};
    if (!fit_error.empty()) res.doc["fit_error"] = fit_error;
    return res;
}

int cmd_tau(const TauArgs& a, std::ostream& out) {
    const TauResult res = compute_tau(a);
    emit(render(res.doc, res.table, a.output), a.output.destination, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string cache, model, n;
    std::string method = "moments";
    std::string bins;  // empty: automatic
    bool allow_incomplete = false;
    TauArgs tau;
    OutputSpec output;
};

json quad_json(const QuadFit& f) {
    return {{"a", f.a},
            {"b", f.b},
            {"c", f.c},
            {"rms_residual", f.rms_residual},
            {"form", f.form == QuadForm::TwoTerm ? "two_term" : "three_term"}};
}

int cmd_fit(FitArgs a, std::ostream& out) {
    if (a.model == "tau") {
        a.tau.cache = a.cache;
        a.tau.output = a.output;
        const TauResult res = compute_tau(a.tau);
        if (!res.fit) throw InsufficientPoints(res.doc.value("fit_error", "tau fit failed"));
        json doc = res.doc;
        doc["model"] = "tau";
        emit(render(doc, res.table, a.output), a.output.destination, out);
        return kOk;
    }

    const auto lc = load(a.cache);
    if (a.n.empty()) throw InvalidConfig("--n is required for model " + a.model);
    const IndexRange range = parse_range(a.n);
    json doc = {{"model", a.model}, {"q", lc.cache.q}, {"x_max", lc.cache.x_max}};
    Table table;

    if (a.model == "quad-median" || a.model == "quad-max") {
        const bool use_max = a.model == "quad-max";
        std::vector<FitPoint> points;
        double y_max = 0;
        for (u64 n = range.first; n <= range.last; ++n) {
            const Ensemble ens = ensemble_for(lc, n, a.allow_incomplete);
            double y = 0;
            if (use_max) {
                y = summarize(ens.gaps()).max;
            } else if (ens.complete) {
                y = median(ens.gaps());
            } else {
                const auto cm = censored_median(ens);
                if (!cm) throw IncompleteEnsemble("median undetermined at n=" + std::to_string(n));
                y = *cm;
            }
            points.push_back({as_double(n), y});
            y_max = std::max(y_max, y);
        }
        const QuadFit f = fit_quadratic(points, use_max ? QuadForm::ThreeTerm : QuadForm::TwoTerm);
        doc["fit"] = quad_json(f);
        doc["fit"]["rms_relative"] = y_max > 0 ? f.rms_residual / y_max : 0.0;
        json pts = json::array();
        table.columns = {"n", use_max ? "max" : "median", "model"};
        for (const auto& p : points) {
            pts.push_back({p.x, p.y});
            table.rows.push_back({p.x, p.y, f(p.x)});
        }
        doc["points"] = pts;
    } else if (a.model == "gumbel" || a.model == "lognormal") {
        if (!range.single()) throw InvalidConfig("--n must be a single index for " + a.model);
        const Ensemble ens = ensemble_for(lc, range.first, a.allow_incomplete);
        const auto values = ens.gaps();
        std::optional<std::size_t> bins;
        if (!a.bins.empty()) bins = parse_u64(a.bins, "--bins");
        const Histogram h = histogram(values, bins);
        std::function<double(double)> pdf;
        if (a.model == "gumbel") {
            GumbelMethod method;
            if (a.method == "moments") {
                method = GumbelMethod::Moments;
            } else if (a.method == "mle") {
                method = GumbelMethod::Mle;
            } else {
                throw InvalidConfig("--method must be moments or mle");
            }
            const GumbelParams g = fit_gumbel(values, method);
            doc["fit"] = {{"mu", g.mu}, {"beta", g.beta}, {"method", a.method},
                          {"model_skewness", MathConstants::gumbel_skewness()}};
            pdf = [g](double x) { return g.pdf(x); };
        } else {
            const LognormalParams l = fit_lognormal(values);
            doc["fit"] = {{"log_mu", l.log_mu}, {"log_sigma", l.log_sigma},
                          {"model_skewness", l.skewness()}};
            pdf = [l](double x) { return l.pdf(x); };
        }
        doc["n"] = range.first;
        doc["summary"] = summary_json(summarize(values));
        doc["histogram"] = {{"bin_edges", h.bin_edges}, {"counts", h.counts}, {"total", h.total}};
        table.columns = {"bin_center", "empirical_density", "model_density"};
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            table.rows.push_back({h.bin_center(i), h.density(i), pdf(h.bin_center(i))});
        }
    } else if (a.model == "skew-power") {
        std::vector<FitPoint> points;
        for (u64 n = range.first; n <= range.last; ++n) {
            const Ensemble ens = ensemble_for(lc, n, a.allow_incomplete);
            points.push_back({as_double(n), skewness(ens.gaps())});
        }
        const PowerLawFit f = fit_power_law(points);
        doc["fit"] = {{"c", f.c},
                      {"alpha", f.alpha},
                      {"rms_log_residual", f.rms_log_residual},
                      {"n_at_skewness_0_1", f.n_at(0.1)}};
        json pts = json::array();
        table.columns = {"n", "skewness", "model"};
        for (const auto& p : points) {
            pts.push_back({p.x, p.y});
            table.rows.push_back({p.x, p.y, f(p.x)});
        }
        doc["points"] = pts;
    } else {
        throw InvalidConfig("unknown model '" + a.model +
                            "' (quad-median, quad-max, gumbel, lognormal, skew-power, tau)");
    }
    emit(render(doc, table, a.output), a.output.destination, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
    std::string cache_dir;
    std::string variant = "q";
    std::string n_max = "14";
    std::string q_min, q_max;
    OutputSpec output;
};

int cmd_audit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
    const BoundVariant variant = parse_bound_variant(a.variant);
    if (!fs::is_directory(a.cache_dir)) throw IoError("cache directory not found: " + a.cache_dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.cache_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    if (files.empty()) throw IoError("no .json caches in " + a.cache_dir);
    std::sort(files.begin(), files.end());

    const u64 q_lo = a.q_min.empty() ? 0 : parse_u64(a.q_min, "--q-min");
    const u64 q_hi = a.q_max.empty() ? std::numeric_limits<u64>::max() : parse_u64(a.q_max, "--q-max");
    std::map<u64, RecordCache> by_q;
    for (const auto& f : files) {
        RecordCache c = load_cache(f);
        if (c.q < q_lo || c.q > q_hi) continue;
        auto it = by_q.find(c.q);
        if (it == by_q.end()) {
            by_q.emplace(c.q, std::move(c));
        } else {
            it->second = merge_caches(it->second, c);
        }
    }
    std::vector<RecordSet> sets;
    for (const auto& [q, cache] : by_q) {
        auto s = to_record_sets(cache);
        sets.insert(sets.end(), s.begin(), s.end());
    }
    const BoundReport report = audit_bounds(sets, parse_u64(a.n_max, "--n-max"), variant);
    const Format f = parse_format(a.output.format);
    emit(f == Format::Json ? to_json(report).dump(2) + "\n" : to_csv(report), a.output.destination, out);
    err << "audit " << to_string(variant) << ": " << report.checked << " records checked, "
        << report.exceptions.size() << " exceptions\n";
    return report.exceptions.empty() ? kOk : kExceptionsFound;
}

// ---------------------------------------------------------------------------
// iid

struct IidArgs {
    std::string n = "10000";
    std::string trials = "10000";
    std::string seed = "1";
    std::string dist = "exponential";
    unsigned threads = 0;
    OutputSpec output;
};

int cmd_iid(const IidArgs& a, std::ostream& out) {
    IidRunConfig cfg;
    cfg.sequence_length = parse_u64(a.n, "--n");
    cfg.trials = parse_u64(a.trials, "--trials");
    cfg.seed = parse_u64(a.seed, "--seed");
    cfg.distribution = parse_iid_distribution(a.dist);
    cfg.threads = a.threads;
    const IidResult res = simulate_record_counts(cfg);
    const double expected = expected_iid_records(cfg.sequence_length);
    const double z = res.standard_error > 0 ? (res.mean_records - expected) / res.standard_error : 0.0;
    json doc = {{"sequence_length", cfg.sequence_length},
                {"trials", cfg.trials},
                {"distribution", to_string(cfg.distribution)},
                {"seed", cfg.seed},
                {"prng", "xoshiro256starstar"},
                {"mean_records", res.mean_records},
                {"stddev_records", res.stddev_records},
                {"standard_error", res.standard_error},
                {"expected_records", expected},
                {"z_score", z},
                {"histogram",
                 {{"bin_edges", res.histogram.bin_edges},
                  {"counts", res.histogram.counts},
                  {"total", res.histogram.total}}}};
    Table table{{"records", "trials"}, {}};
    for (std::size_t i = 0; i < res.histogram.counts.size(); ++i) {
        table.rows.push_back({res.histogram.bin_center(i), as_double(res.histogram.counts[i])});
    }
    emit(render(doc, table, a.output), a.output.destination, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// export / classic

int cmd_export(const std::string& cache, const std::string& destination, std::ostream& out) {
    std::ostringstream os;
    export_csv(load_cache(cache), os);
    emit(os.str(), destination, out);
    return kOk;
}

int cmd_classic(const std::string& cache, const OutputSpec& output, std::ostream& out) {
    const auto lc = load(cache);
    if (lc.cache.q != 1 || lc.sets.size() != 1) throw InvalidConfig("classic needs the q = 1 cache");
    const auto rows = classic_reality_check(lc.sets.front());
    json jrows = json::array();
    Table table{{"n", "gap", "start", "end", "n_squared", "quad_model", "log2_end"}, {}};
    bool within = true;
    for (const auto& r : rows) {
        within = within && static_cast<double>(r.gap) <= r.n_squared;
        jrows.push_back({{"n", r.n}, {"gap", r.gap}, {"start", r.start}, {"end", r.end},
                         {"n_squared", r.n_squared}, {"quad_model", r.quad_model},
                         {"log2_end", r.log2_end}});
        table.rows.push_back({as_double(r.n), as_double(r.gap), as_double(r.start), as_double(r.end),
                              r.n_squared, r.quad_model, r.log2_end});
    }
    json doc = {{"x_max", lc.sets.front().x_max}, {"all_within_n_squared", within}, {"rows", jrows}};
    emit(render(doc, table, output), output.destination, out);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"record gaps between primes in arithmetic progressions r + kq", "apgap"};
    app.require_subcommand(1);

    ScanArgs scan;
    auto* c_scan = app.add_subcommand("scan", "Sieve progressions r + kq and cache their record gaps");
    c_scan->add_option("--q", scan.q, "Modulus q >= 1")->required();
    c_scan->add_option("--x-max", scan.x_max, "Scan bound on prime values (1e9 notation accepted)")->required();
    c_scan->add_option("--r", scan.residues, "Residues to scan (default: every r coprime to q)");
    c_scan->add_option("--segment-size", scan.segment_size, "Progression indices per sieve segment")->capture_default_str();
    c_scan->add_option("--max-records", scan.max_records,
                       "Stop a residue once it has this many records (0 = scan to x-max)")->capture_default_str();
    c_scan->add_option("--out", scan.out, "Cache file to write")->required();
    c_scan->add_option("--threads", scan.threads, "Worker threads (0 = all cores)")->capture_default_str();
    c_scan->add_flag("--quiet", scan.quiet, "No progress output");

    StatsArgs stats;
    auto* c_stats = app.add_subcommand("stats", "Summary statistics of the n-th record gap over residues");
    c_stats->add_option("--cache", stats.cache, "Cache file")->required();
    c_stats->add_option("--n", stats.n, "Record index n or range A..B")->required();
    c_stats->add_flag("--allow-incomplete", stats.allow_incomplete, "Summarize incomplete ensembles");
    add_output_flags(c_stats, stats.output, "json");

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit", "Fit growth laws and distributions to cached records");
    c_fit->add_option("--cache", fit.cache, "Cache file")->required();
    c_fit->add_option("--model", fit.model,
                      "quad-median, quad-max, gumbel, lognormal, skew-power or tau")->required();
    c_fit->add_option("--n", fit.n, "Record index n or range A..B");
    c_fit->add_option("--method", fit.method, "Gumbel fit: moments or mle")->capture_default_str();
    c_fit->add_option("--bins", fit.bins, "Histogram bins (default: Freedman-Diaconis)");
    c_fit->add_flag("--allow-incomplete", fit.allow_incomplete, "Use incomplete ensembles");
    c_fit->add_option("--x-min", fit.tau.x_min, "tau: first grid point")->capture_default_str();
    c_fit->add_option("--steps", fit.tau.steps, "tau: number of grid points");
    c_fit->add_option("--ratio", fit.tau.ratio, "tau: grid ratio ('e' or a number)")->capture_default_str();
    add_output_flags(c_fit, fit.output, "json");

    AuditArgs audit;
    auto* c_audit = app.add_subcommand("audit", "Check record gaps against phi(q)n^2 + (n+2)M ln^2 q");
    c_audit->add_option("--cache-dir", audit.cache_dir, "Directory of cache files")->required();
    c_audit->add_option("--variant", audit.variant, "q (M = q) or phi (M = phi(q))")->capture_default_str();
    c_audit->add_option("--n-max", audit.n_max, "Largest record index checked")->capture_default_str();
    c_audit->add_option("--q-min", audit.q_min, "Skip caches with smaller q");
    c_audit->add_option("--q-max", audit.q_max, "Skip caches with larger q");
    add_output_flags(c_audit, audit.output, "json");

    TauArgs tau;
    auto* c_tau = app.add_subcommand("tau", "Mean record count in [x, e x] and the tau(q, x) model");
    c_tau->add_option("--cache", tau.cache, "Cache file")->required();
    c_tau->add_option("--x-min", tau.x_min, "First grid point")->capture_default_str();
    c_tau->add_option("--steps", tau.steps, "Number of grid points (default: as deep as the cache allows)");
    c_tau->add_option("--ratio", tau.ratio, "Grid ratio ('e' or a number)")->capture_default_str();
    add_output_flags(c_tau, tau.output, "json");

    IidArgs iid;
    auto* c_iid = app.add_subcommand("iid", "Simulate record counts of i.i.d. sequences");
    c_iid->add_option("--n", iid.n, "Sequence length N")->capture_default_str();
    c_iid->add_option("--trials", iid.trials, "Number of sequences")->capture_default_str();
    c_iid->add_option("--seed", iid.seed, "64-bit seed")->capture_default_str();
    c_iid->add_option("--dist", iid.dist, "uniform, exponential or gumbel")->capture_default_str();
    c_iid->add_option("--threads", iid.threads, "Worker threads (0 = all cores)")->capture_default_str();
    add_output_flags(c_iid, iid.output, "json");

    std::string export_cache, export_out = "-";
    auto* c_export = app.add_subcommand("export", "Export a cache as CSV (q,r,n,gap,start,end)");
    c_export->add_option("--cache", export_cache, "Cache file")->required();
    c_export->add_option("-o,--output", export_out, "CSV file ('-' for stdout)")->capture_default_str();

    std::string classic_cache;
    OutputSpec classic_output;
    auto* c_classic = app.add_subcommand("classic", "Classical record prime gaps against n^2 envelopes");
    c_classic->add_option("--cache", classic_cache, "Cache of the q = 1 scan")->required();
    add_output_flags(c_classic, classic_output, "json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kError;
    }

    try {
        if (*c_scan) return cmd_scan(scan, err);
        if (*c_stats) return cmd_stats(stats, out);
        if (*c_fit) return cmd_fit(fit, out);
        if (*c_audit) return cmd_audit(audit, out, err);
        if (*c_tau) return cmd_tau(tau, out);
        if (*c_iid) return cmd_iid(iid, out);
        if (*c_export) return cmd_export(export_cache, export_out, out);
        if (*c_classic) return cmd_classic(classic_cache, classic_output, out);
    } catch (const std::exception& e) {
        err << "apgap: error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

}  // namespace apgap::cli
