#ifndef DLSMC_BENCH_HPP
#define DLSMC_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"
#include "oracle.hpp"
#include "solver.hpp"

namespace dlsmc {

class BenchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One solver run. `clique` holds sorted 1-based ids: the solution for a
// successful run, the best clique seen otherwise.
struct RunRecord {
    std::string instance;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    int pd = 1;
    std::size_t tcs = 0;
    std::uint64_t max_steps = 0;
    bool success = false;
    std::uint64_t steps = 0;
    double time_s = 0.0;
    std::size_t clique_size = 0;
    std::vector<std::size_t> clique;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline std::uint64_t derive_run_seed(std::uint64_t seed, std::size_t run_index) {
    return seed ^ static_cast<std::uint64_t>(run_index);
}

struct ExperimentOptions {
    unsigned threads = 1;
    // When set, receives one perturbation trace per run (indexed by run).
    std::vector<std::vector<PerturbationEvent>>* traces = nullptr;
};

inline RunRecord make_record(const Graph& g, const std::string& instance, std::size_t run, const SolverConfig& cfg,
                             const SolverResult& r) {
    if (r.found() && (!verify_clique(g, r.clique) || r.clique.size() < cfg.target_size))
        throw std::logic_error("solver reported an invalid clique on " + instance);
    RunRecord rec;
    rec.instance = instance;
    rec.run = run;
    rec.seed = cfg.seed;
    rec.pd = cfg.penalty_delay;
    rec.tcs = cfg.target_size;
    rec.max_steps = cfg.max_steps;
    rec.success = r.found();
    rec.steps = r.steps;
    rec.time_s = r.elapsed_seconds;
    rec.clique_size = r.clique.size();
    rec.clique.reserve(r.clique.size());
    for (Vertex v : r.clique) rec.clique.push_back(static_cast<std::size_t>(v) + 1);
    return rec;
}

// `runs` independent solves; run i uses seed cfg.seed ^ i. Records come back
// ordered by run index regardless of thread scheduling.
inline std::vector<RunRecord> run_experiment(const Graph& g, const std::string& instance, const SolverConfig& cfg,
                                             std::size_t runs, const ExperimentOptions& opts = {}) {
    if (runs < 1) throw BenchError("run_experiment: runs must be >= 1");
    std::vector<RunRecord> records(runs);
    std::vector<std::vector<PerturbationEvent>> traces(opts.traces ? runs : 0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < runs; i = next++) {
            try {
                SolverConfig run_cfg = cfg;
                run_cfg.seed = derive_run_seed(cfg.seed, i);
                run_cfg.instrument = cfg.instrument || opts.traces != nullptr;
                SolverResult r = solve(g, run_cfg);
                records[i] = make_record(g, instance, i, run_cfg, r);
                if (opts.traces) traces[i] = std::move(r.trace);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(runs)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (opts.traces) *opts.traces = std::move(traces);
    return records;
}

// ---------------------------------------------------------------------------
// Run-time distribution statistics.

// Midpoint of the two central order statistics for even counts.
inline double median(std::vector<double> xs) {
    if (xs.empty()) throw BenchError("median of empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t k = xs.size();
    return k % 2 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

struct RunTimeStats {
    std::vector<double> samples;  // sorted ascending
    double mean = 0;
    double median = 0;
    double stddev = 0;            // sample (n - 1) standard deviation; 0 for one sample
    double variation_coefficient = 0;
};

inline RunTimeStats run_time_stats(std::vector<double> samples) {
    if (samples.empty()) throw BenchError("run_time_stats: empty sample");
    std::sort(samples.begin(), samples.end());
    RunTimeStats s;
    const double k = static_cast<double>(samples.size());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / k;
    s.median = median(samples);
    double sq = 0;
    for (double x : samples) sq += (x - s.mean) * (x - s.mean);
    s.stddev = samples.size() > 1 ? std::sqrt(sq / (k - 1)) : 0.0;
    s.variation_coefficient = s.mean > 0 ? s.stddev / s.mean : 0.0;
    s.samples = std::move(samples);
    return s;
}

struct RtdSummary {
    std::size_t runs = 0;
    std::size_t successes = 0;
    double success_rate = 0;
    std::optional<RunTimeStats> steps;    // successful runs only
    std::optional<RunTimeStats> seconds;  // successful runs only
    std::size_t distinct_solutions = 0;
    // max(avg, min) of the clique sizes over all runs, failed runs included.
    std::size_t max_clique = 0;
    double avg_clique = 0;
    std::size_t min_clique = 0;
    // Informational only: total steps / total seconds over all runs.
    double steps_per_second = 0;
};

inline RtdSummary summarize(std::span<const RunRecord> records) {
    if (records.empty()) throw BenchError("summarize: no records");
    RtdSummary s;
    s.runs = records.size();
    std::vector<double> steps, seconds;
    std::set<std::vector<std::size_t>> solutions;
    double total_steps = 0, total_time = 0, size_sum = 0;
    s.min_clique = records.front().clique_size;
    for (const auto& r : records) {
        total_steps += static_cast<double>(r.steps);
        total_time += r.time_s;
        size_sum += static_cast<double>(r.clique_size);
        s.max_clique = std::max(s.max_clique, r.clique_size);
        s.min_clique = std::min(s.min_clique, r.clique_size);
        if (!r.success) continue;
        ++s.successes;
        steps.push_back(static_cast<double>(r.steps));
        seconds.push_back(r.time_s);
        if (r.clique.size() >= r.tcs) {
            auto c = r.clique;
            std::sort(c.begin(), c.end());
            solutions.insert(std::move(c));
        }
    }
    s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.runs);
    s.avg_clique = size_sum / static_cast<double>(s.runs);
    if (!steps.empty()) {
        s.steps = run_time_stats(std::move(steps));
        s.seconds = run_time_stats(std::move(seconds));
    }
    s.distinct_solutions = solutions.size();
    s.steps_per_second = total_time > 0 ? total_steps / total_time : 0.0;
    return s;
}

struct CdfPoint {
    double value;
    double cum_prob;
};

// Empirical CDF points (x_(i), i/k).
inline std::vector<CdfPoint> rtd_cdf(std::vector<double> samples) {
    if (samples.empty()) throw BenchError("rtd_cdf: empty sample");
    std::sort(samples.begin(), samples.end());
    std::vector<CdfPoint> out;
    out.reserve(samples.size());
    const double k = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out.push_back({samples[i], static_cast<double>(i + 1) / k});
    return out;
}

// Exponential distribution parameterised by its median m: 1 - 2^(-x/m).
inline double exponential_cdf(double m, double x) { return x <= 0 ? 0.0 : 1.0 - std::exp2(-x / m); }

struct ExponentialFit {
    double median;
    double ks_distance;
};

// Fits ed[m] with m the empirical median and reports the two-sided
// Kolmogorov-Smirnov distance between the sample and the fit.
inline ExponentialFit exponential_fit(std::vector<double> samples) {
    if (samples.empty()) throw BenchError("exponential_fit: empty sample");
    for (double x : samples)
        if (!(x > 0)) throw BenchError("exponential_fit: samples must be positive");
    std::sort(samples.begin(), samples.end());
    const double m = median(samples);
    const double k = static_cast<double>(samples.size());
    double d = 0;
    // Walk distinct values so tied samples are treated as one atom.
    for (std::size_t i = 0; i < samples.size();) {
        std::size_t j = i;
        while (j < samples.size() && samples[j] == samples[i]) ++j;
        const double f = exponential_cdf(m, samples[i]);
        d = std::max({d, static_cast<double>(j) / k - f, f - static_cast<double>(i) / k});
        i = j;
    }
    return {m, d};
}

struct SweepRow {
    int pd;
    double success_rate;
    std::optional<double> median_steps;
    std::optional<double> median_seconds;
};

inline std::vector<SweepRow> pd_sweep(const Graph& g, const std::string& instance, SolverConfig base,
                                      std::span<const int> pd_values, std::size_t runs,
                                      const ExperimentOptions& opts = {}) {
    if (pd_values.empty()) throw BenchError("pd_sweep: no penalty delay values");
    std::vector<SweepRow> rows;
    for (int pd : pd_values) {
        base.penalty_delay = pd;
        const auto records = run_experiment(g, instance, base, runs, {opts.threads, nullptr});
        const auto s = summarize(records);
        SweepRow row{pd, s.success_rate, std::nullopt, std::nullopt};
        if (s.steps) {
            row.median_steps = s.steps->median;
            row.median_seconds = s.seconds->median;
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Dominance ranking between two algorithms on one instance.

// Published or measured per-instance performance. Fields a source does not
// report stay empty.
struct InstanceResult {
    std::optional<double> max_size;
    std::optional<double> avg_size;
    std::optional<double> min_size;
    double success_rate = 0;              // fraction of runs reaching the best-known size
    std::optional<double> avg_time;       // scaled CPU seconds
    std::optional<std::size_t> best_known;
};

struct AlgorithmSummary {
    std::string name;
    std::map<std::string, InstanceResult> instances;
};

enum class Dominant { a, b, inconclusive };

struct RankVerdict {
    Dominant dominant = Dominant::inconclusive;
    int criterion = 5;  // which ranking rule decided (5 = none)
};

namespace detail {

inline bool found_best(const InstanceResult& r, double best_known) {
    if (r.max_size) return *r.max_size >= best_known;
    return r.success_rate > 0;
}

inline bool always_succeeds(const InstanceResult& r) { return r.success_rate >= 1.0; }

// a is at least as good as b on every measure and strictly better on one.
inline bool pareto_better(const InstanceResult& a, const InstanceResult& b) {
    if (!a.max_size || !b.max_size || !a.avg_size || !b.avg_size || !a.avg_time || !b.avg_time) return false;
    const bool no_worse = *a.max_size >= *b.max_size && *a.avg_size >= *b.avg_size && *a.avg_time <= *b.avg_time;
    const bool better = *a.max_size > *b.max_size || *a.avg_size > *b.avg_size || *a.avg_time < *b.avg_time;
    return no_worse && better;
}

} // namespace detail

// Applies, in order: (1) sole finder of the best-known size; (2) both always
// succeed: lower average time; (3) exactly one always succeeds; (4) neither
// always succeeds: largest max, highest average and lowest time together;
// (5) otherwise no verdict.
inline RankVerdict rank_algorithms(const AlgorithmSummary& a, const AlgorithmSummary& b, const std::string& instance,
                                   std::optional<std::size_t> best_known = std::nullopt) {
    const auto ia = a.instances.find(instance);
    const auto ib = b.instances.find(instance);
    if (ia == a.instances.end() || ib == b.instances.end())
        throw BenchError("rank_algorithms: no data for instance '" + instance + "'");
    const InstanceResult& ra = ia->second;
    const InstanceResult& rb = ib->second;

    if (!best_known) best_known = ra.best_known ? ra.best_known : rb.best_known;
    double target = 0;
    if (best_known) {
        target = static_cast<double>(*best_known);
    } else {
        if (!ra.max_size && !rb.max_size) throw BenchError("rank_algorithms: best-known size unknown for '" + instance + "'");
        target = std::max(ra.max_size.value_or(0), rb.max_size.value_or(0));
    }

    const bool fa = detail::found_best(ra, target);
    const bool fb = detail::found_best(rb, target);
    if (fa != fb) return {fa ? Dominant::a : Dominant::b, 1};

    const bool sa = detail::always_succeeds(ra);
    const bool sb = detail::always_succeeds(rb);
    if (sa && sb) {
        if (ra.avg_time && rb.avg_time && *ra.avg_time != *rb.avg_time)
            return {*ra.avg_time < *rb.avg_time ? Dominant::a : Dominant::b, 2};
        return {};
    }
    if (sa != sb) return {sa ? Dominant::a : Dominant::b, 3};

    if (detail::pareto_better(ra, rb)) return {Dominant::a, 4};
    if (detail::pareto_better(rb, ra)) return {Dominant::b, 4};
    return {};
}

// Per-instance summary of measured runs. Success means reaching the run's
// target size; the average time is over successful runs when there are any.
inline AlgorithmSummary summarize_algorithm(const std::string& name, std::span<const RunRecord> records) {
    std::map<std::string, std::vector<const RunRecord*>> by_instance;
    for (const auto& r : records) by_instance[r.instance].push_back(&r);
    AlgorithmSummary out{name, {}};
    for (const auto& [instance, runs] : by_instance) {
        InstanceResult res;
        double size_sum = 0, time_ok = 0, time_all = 0;
        std::size_t ok = 0, target = 0;
        double mx = 0, mn = static_cast<double>(runs.front()->clique_size);
        for (const RunRecord* r : runs) {
            const auto sz = static_cast<double>(r->clique_size);
            mx = std::max(mx, sz);
            mn = std::min(mn, sz);
            size_sum += sz;
            time_all += r->time_s;
            target = std::max(target, r->tcs);
            if (r->success) {
                ++ok;
                time_ok += r->time_s;
            }
        }
        const auto k = static_cast<double>(runs.size());
        res.max_size = mx;
        res.min_size = mn;
        res.avg_size = size_sum / k;
        res.success_rate = static_cast<double>(ok) / k;
        res.avg_time = ok ? time_ok / static_cast<double>(ok) : time_all / k;
        res.best_known = target;
        out.instances[instance] = res;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Instrumentation aggregation.

struct InstrumentationCdfs {
    std::vector<CdfPoint> improving_steps;
    std::vector<CdfPoint> plateau_swaps;
    std::vector<CdfPoint> penalised_vertices;
    std::vector<CdfPoint> relative_mobility;  // empty when no event carries a mobility value
};

inline InstrumentationCdfs aggregate_instrumentation(std::span<const std::vector<PerturbationEvent>> traces) {
    std::vector<double> improving, swaps, penalised, mobility;
    for (const auto& trace : traces)
        for (const auto& ev : trace) {
            improving.push_back(static_cast<double>(ev.improving_steps));
            swaps.push_back(static_cast<double>(ev.plateau_swaps));
            penalised.push_back(static_cast<double>(ev.penalised_vertices));
            if (ev.relative_mobility) mobility.push_back(*ev.relative_mobility);
        }
    if (improving.empty()) throw BenchError("aggregate_instrumentation: no perturbation events");
    InstrumentationCdfs out;
    out.improving_steps = rtd_cdf(std::move(improving));
    out.plateau_swaps = rtd_cdf(std::move(swaps));
    out.penalised_vertices = rtd_cdf(std::move(penalised));
    if (!mobility.empty()) out.relative_mobility = rtd_cdf(std::move(mobility));
    return out;
}

// ---------------------------------------------------------------------------
// Exports.

inline constexpr const char* kRunRecordHeader = "instance,run,seed,pd,tcs,max_steps,success,steps,time_s,clique_size,clique";
inline constexpr const char* kSummaryHeader = "algorithm,instance,best_known,max_size,avg_size,min_size,success_rate,avg_time";

namespace detail {

inline std::string format_fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string join_ids(const std::vector<std::size_t>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(ids[i]);
    }
    return s;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw BenchError("csv line " + std::to_string(lineno) + ": unterminated quote");
    return fields;
}

template <class T>
T parse_number(const std::string& s, std::size_t lineno, const char* what) {
    std::istringstream in(s);
    T value{};
    if (!(in >> value) || !(in >> std::ws).eof())
        throw BenchError("csv line " + std::to_string(lineno) + ": bad " + what + " '" + s + "'");
    return value;
}

inline std::optional<double> parse_optional(const std::string& s, std::size_t lineno, const char* what) {
    if (s.empty()) return std::nullopt;
    return parse_number<double>(s, lineno, what);
}

} // namespace detail

inline void write_records_csv(std::ostream& out, std::span<const RunRecord> records) {
    out << kRunRecordHeader << '\n';
    for (const auto& r : records) {
        out << detail::csv_escape(r.instance) << ',' << r.run << ',' << r.seed << ',' << r.pd << ',' << r.tcs << ','
            << r.max_steps << ',' << (r.success ? 1 : 0) << ',' << r.steps << ',' << detail::format_fixed6(r.time_s)
            << ',' << r.clique_size << ",\"" << detail::join_ids(r.clique) << "\"\n";
    }
}

inline std::vector<RunRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw BenchError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRunRecordHeader) throw BenchError("csv: unexpected header '" + line + "'");
    std::vector<RunRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto f = detail::split_csv_line(line, lineno);
        if (f.size() != 11) throw BenchError("csv line " + std::to_string(lineno) + ": expected 11 fields");
        RunRecord r;
        r.instance = f[0];
        r.run = detail::parse_number<std::size_t>(f[1], lineno, "run");
        r.seed = detail::parse_number<std::uint64_t>(f[2], lineno, "seed");
        r.pd = detail::parse_number<int>(f[3], lineno, "pd");
        r.tcs = detail::parse_number<std::size_t>(f[4], lineno, "tcs");
        r.max_steps = detail::parse_number<std::uint64_t>(f[5], lineno, "max_steps");
        if (f[6] != "0" && f[6] != "1") throw BenchError("csv line " + std::to_string(lineno) + ": bad success flag");
        r.success = f[6] == "1";
        r.steps = detail::parse_number<std::uint64_t>(f[7], lineno, "steps");
        r.time_s = detail::parse_number<double>(f[8], lineno, "time_s");
        r.clique_size = detail::parse_number<std::size_t>(f[9], lineno, "clique_size");
        std::istringstream ids(f[10]);
        std::size_t id = 0;
        while (ids >> id) r.clique.push_back(id);
        if (!ids.eof()) throw BenchError("csv line " + std::to_string(lineno) + ": bad clique field");
        if (r.clique.size() != r.clique_size)
            throw BenchError("csv line " + std::to_string(lineno) + ": clique_size does not match clique");
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::json to_json(const RunRecord& r) {
    return {{"instance", r.instance}, {"run", r.run},         {"seed", r.seed},
            {"pd", r.pd},             {"tcs", r.tcs},         {"max_steps", r.max_steps},
            {"success", r.success},   {"steps", r.steps},     {"time_s", r.time_s},
            {"clique_size", r.clique_size}, {"clique", r.clique}};
}

inline void write_records_jsonl(std::ostream& out, std::span<const RunRecord> records) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline void write_cdf_csv(std::ostream& out, std::span<const CdfPoint> points) {
    out << "value,cum_prob\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", p.value, p.cum_prob);
        out << buf;
    }
}

// Summary rows: algorithm,instance,best_known,max_size,avg_size,min_size,
// success_rate,avg_time. Empty fields mean "not reported". success_rate is
// a fraction in [0, 1].
inline std::vector<AlgorithmSummary> read_summary_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw BenchError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSummaryHeader) throw BenchError("csv: unexpected header '" + line + "'");
    std::map<std::string, AlgorithmSummary> algos;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        const auto f = detail::split_csv_line(line, lineno);
        if (f.size() != 8) throw BenchError("csv line " + std::to_string(lineno) + ": expected 8 fields");
        InstanceResult r;
        if (!f[2].empty()) r.best_known = detail::parse_number<std::size_t>(f[2], lineno, "best_known");
        r.max_size = detail::parse_optional(f[3], lineno, "max_size");
        r.avg_size = detail::parse_optional(f[4], lineno, "avg_size");
        r.min_size = detail::parse_optional(f[5], lineno, "min_size");
        r.success_rate = detail::parse_number<double>(f[6], lineno, "success_rate");
        r.avg_time = detail::parse_optional(f[7], lineno, "avg_time");
        if (r.success_rate < 0 || r.success_rate > 1)
            throw BenchError("csv line " + std::to_string(lineno) + ": success_rate outside [0, 1]");
        if (r.min_size && r.avg_size && r.max_size && !(*r.min_size <= *r.avg_size && *r.avg_size <= *r.max_size))
            throw BenchError("csv line " + std::to_string(lineno) + ": expected min <= avg <= max");
        auto& algo = algos[f[0]];
        algo.name = f[0];
        algo.instances[f[1]] = r;
    }
    std::vector<AlgorithmSummary> out;
    for (auto& [_, a] : algos) out.push_back(std::move(a));
    return out;
}

} // namespace dlsmc

#endif // DLSMC_BENCH_HPP
