// dlsmc: command-line front end for the DLS-MC maximum clique solver.
//
//   dlsmc solve  <file> --tcs N [--pd K] [--max-steps S] [--seed X] [--binary]
//   dlsmc bench  <file> --tcs N --runs R [--pd K] [--max-steps S] [--seed X]
//                [--csv PATH] [--jsonl PATH] [--instrument [--cdf-prefix P]]
//   dlsmc sweep  <file> --tcs N --pd-list K1,K2,... --runs R [...]
//   dlsmc oracle <file> [--enumerate]
//   dlsmc rank   --a results_a.csv --b results_b.csv

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <dlsmc/dlsmc.hpp>

namespace {

using namespace dlsmc;

std::string instance_name(const std::string& path) {
    std::string name = std::filesystem::path(path).filename().string();
    for (const char* suffix : {".b", ".clq", ".col", ".txt"})
        if (name.ends_with(suffix)) name.resize(name.size() - std::string_view(suffix).size());
    return name;
}

Graph load(const std::string& path, bool binary) {
    return load_dimacs(path, binary ? std::optional<bool>(true) : std::nullopt,
                       [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; });
}

std::string ids_1based(const std::vector<Vertex>& clique) {
    std::string s;
    for (Vertex v : clique) {
        if (!s.empty()) s += ' ';
        s += std::to_string(v + 1);
    }
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

struct RunOptions {
    std::string file;
    std::size_t tcs = 0;
    int pd = 1;
    std::uint64_t max_steps = 100'000'000;
    std::uint64_t seed = 0;
    bool binary = false;
    std::size_t runs = 1;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("file", o.file, "DIMACS instance (.clq or .clq.b)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--tcs", o.tcs, "target clique size")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--max-steps", o.max_steps, "step budget per run");
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_flag("--binary", o.binary, "force the DIMACS binary parser");
}

void print_summary(const std::string& name, const RtdSummary& s) {
    std::printf("instance        %s\n", name.c_str());
    std::printf("success         %zu/%zu (%.2f)\n", s.successes, s.runs, s.success_rate);
    std::printf("clique size     %zu(%.2f,%zu)\n", s.max_clique, s.avg_clique, s.min_clique);
    if (s.steps) {
        const auto& st = *s.steps;
        std::printf("steps           mean %.1f  median %.1f  sd %.1f  cv %.3f\n", st.mean, st.median, st.stddev,
                    st.variation_coefficient);
        const auto& sec = *s.seconds;
        std::printf("seconds         mean %.6f  median %.6f\n", sec.mean, sec.median);
        if (st.samples.front() > 0) {
            const auto fit = exponential_fit(st.samples);
            std::printf("exp fit (steps) m %.1f  ks %.4f\n", fit.median, fit.ks_distance);
        }
    }
    std::printf("distinct sols   %zu\n", s.distinct_solutions);
    std::printf("steps/second    %.0f\n", s.steps_per_second);
}

int cmd_solve(const RunOptions& o) {
    const Graph g = load(o.file, o.binary);
    SolverConfig cfg{o.tcs, o.pd, o.max_steps, o.seed};
    const auto r = solve(g, cfg);
    std::printf("instance  %s (n=%zu, m=%zu)\n", instance_name(o.file).c_str(), g.order(), g.size());
    std::printf("status    %s\n", r.found() ? "found" : "failed");
    std::printf("size      %zu (best %zu, target %zu)\n", r.clique.size(), r.best_size, o.tcs);
    std::printf("steps     %llu\n", static_cast<unsigned long long>(r.steps));
    std::printf("time_s    %.6f\n", r.elapsed_seconds);
    std::printf("clique    %s\n", ids_1based(r.clique).c_str());
    return r.found() ? 0 : 1;
}

int cmd_bench(const RunOptions& o, const std::string& csv, const std::string& jsonl, bool instrument,
              std::string cdf_prefix) {
    const Graph g = load(o.file, o.binary);
    const std::string name = instance_name(o.file);
    SolverConfig cfg{o.tcs, o.pd, o.max_steps, o.seed};
    std::vector<std::vector<PerturbationEvent>> traces;
    const auto records = run_experiment(g, name, cfg, o.runs, {o.threads, instrument ? &traces : nullptr});
    print_summary(name, summarize(records));
    if (!csv.empty()) {
        auto out = open_out(csv);
        write_records_csv(out, records);
    }
    if (!jsonl.empty()) {
        auto out = open_out(jsonl);
        write_records_jsonl(out, records);
    }
    const bool any_events = std::any_of(traces.begin(), traces.end(), [](const auto& t) { return !t.empty(); });
    if (instrument && !any_events) std::printf("cdf exports     none (no run perturbed)\n");
    if (instrument && any_events) {
        if (cdf_prefix.empty()) cdf_prefix = name;
        const auto cdfs = aggregate_instrumentation(traces);
        const std::pair<const char*, const std::vector<CdfPoint>*> exports[] = {
            {"_improving_steps.csv", &cdfs.improving_steps},
            {"_plateau_swaps.csv", &cdfs.plateau_swaps},
            {"_penalised_vertices.csv", &cdfs.penalised_vertices},
            {"_relative_mobility.csv", &cdfs.relative_mobility}};
        for (const auto& [suffix, points] : exports) {
            auto out = open_out(cdf_prefix + suffix);
            write_cdf_csv(out, *points);
        }
        std::printf("cdf exports     %s_*.csv\n", cdf_prefix.c_str());
    }
    return 0;
}

int cmd_sweep(const RunOptions& o, const std::vector<int>& pds, const std::string& csv) {
    const Graph g = load(o.file, o.binary);
    const std::string name = instance_name(o.file);
    SolverConfig cfg{o.tcs, 1, o.max_steps, o.seed};
    const auto rows = pd_sweep(g, name, cfg, pds, o.runs, {o.threads, nullptr});
    std::FILE* table = stdout;
    std::printf("pd,success_rate,median_steps,median_seconds\n");
    std::ofstream file;
    if (!csv.empty()) {
        file = open_out(csv);
        file << "pd,success_rate,median_steps,median_seconds\n";
    }
    for (const auto& r : rows) {
        char line[160];
        const std::string steps = r.median_steps ? std::to_string(*r.median_steps) : "";
        const std::string secs = r.median_seconds ? std::to_string(*r.median_seconds) : "";
        std::snprintf(line, sizeof line, "%d,%.4f,%s,%s\n", r.pd, r.success_rate, steps.c_str(), secs.c_str());
        std::fputs(line, table);
        if (file) file << line;
    }
    return 0;
}

int cmd_oracle(const std::string& file, bool binary, bool enumerate) {
    const Graph g = load(file, binary);
    const auto best = max_clique_exact(g);
    std::printf("omega     %zu\n", best.size);
    std::printf("witness   %s\n", ids_1based(best.witness).c_str());
    if (enumerate) {
        const auto all = enumerate_maximum_cliques(g);
        std::printf("maximum cliques: %zu\n", all.size());
        for (const auto& c : all) std::printf("  %s\n", ids_1based(c).c_str());
    }
    return 0;
}

AlgorithmSummary load_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    in.clear();
    in.seekg(0);
    if (header == kSummaryHeader) {
        auto algos = read_summary_csv(in);
        if (algos.size() != 1) throw std::runtime_error("'" + path + "' must describe exactly one algorithm");
        return algos.front();
    }
    const auto records = read_records_csv(in);
    return summarize_algorithm(std::filesystem::path(path).stem().string(), records);
}

int cmd_rank(const std::string& path_a, const std::string& path_b) {
    const auto a = load_summary(path_a);
    const auto b = load_summary(path_b);
    std::printf("instance,dominant,criterion\n");
    for (const auto& [instance, _] : a.instances) {
        if (!b.instances.contains(instance)) continue;
        const auto v = rank_algorithms(a, b, instance);
        const std::string who = v.dominant == Dominant::a ? a.name : v.dominant == Dominant::b ? b.name : "inconclusive";
        std::printf("%s,%s,%d\n", instance.c_str(), who.c_str(), v.criterion);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DLS-MC maximum clique solver"};
    app.require_subcommand(1);

    RunOptions solve_opts, bench_opts, sweep_opts;
    auto* solve_cmd = app.add_subcommand("solve", "run the solver once");
    add_common(solve_cmd, solve_opts);
    solve_cmd->add_option("--pd", solve_opts.pd, "penalty delay")->check(CLI::PositiveNumber);

    std::string csv, jsonl, cdf_prefix, sweep_csv;
    bool instrument = false;
    auto* bench_cmd = app.add_subcommand("bench", "independent runs with run-time statistics");
    add_common(bench_cmd, bench_opts);
    bench_cmd->add_option("--runs", bench_opts.runs, "number of runs")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--pd", bench_opts.pd, "penalty delay")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--threads", bench_opts.threads, "worker threads");
    bench_cmd->add_option("--csv", csv, "write run records as CSV");
    bench_cmd->add_option("--jsonl", jsonl, "write run records as JSON lines");
    bench_cmd->add_flag("--instrument", instrument, "collect per-perturbation traces and export CDFs");
    bench_cmd->add_option("--cdf-prefix", cdf_prefix, "path prefix for CDF exports (default: instance name)");

    std::vector<int> pd_list;
    auto* sweep_cmd = app.add_subcommand("sweep", "success rate and median run-time across penalty delays");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--pd-list", pd_list, "comma-separated penalty delays")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--runs", sweep_opts.runs, "runs per penalty delay")->required()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--threads", sweep_opts.threads, "worker threads");
    sweep_cmd->add_option("--csv", sweep_csv, "also write the table to PATH");

    std::string oracle_file;
    bool oracle_binary = false, enumerate = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact maximum clique for small graphs");
    oracle_cmd->add_option("file", oracle_file, "DIMACS instance")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_flag("--enumerate", enumerate, "list every maximum clique");
    oracle_cmd->add_flag("--binary", oracle_binary, "force the DIMACS binary parser");

    std::string rank_a, rank_b;
    auto* rank_cmd = app.add_subcommand("rank", "dominance verdict per shared instance");
    rank_cmd->add_option("--a", rank_a, "run-record or summary CSV for algorithm A")->required()->check(CLI::ExistingFile);
    rank_cmd->add_option("--b", rank_b, "run-record or summary CSV for algorithm B")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) return cmd_solve(solve_opts);
        if (*bench_cmd) return cmd_bench(bench_opts, csv, jsonl, instrument, cdf_prefix);
        if (*sweep_cmd) return cmd_sweep(sweep_opts, pd_list, sweep_csv);
        if (*oracle_cmd) return cmd_oracle(oracle_file, oracle_binary, enumerate);
        if (*rank_cmd) return cmd_rank(rank_a, rank_b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
