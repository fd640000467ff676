// memsim: run, sweep, gen, check and compare.
//
// Exit codes: 0 success, 1 validation failure or timing violation,
// 2 I/O or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memsim/checker.hpp"
#include "memsim/command_log.hpp"
#include "memsim/config.hpp"
#include "memsim/runner.hpp"
#include "memsim/stats.hpp"
#include "memsim/trace_io.hpp"
#include "memsim/workload.hpp"

namespace {

using namespace memsim;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

struct ConfigOptions {
    std::string path;
    std::vector<std::string> overrides;

    void attach(CLI::App* app) {
        app->add_option("--config", path, "JSON configuration file")->check(CLI::ExistingFile);
        app->add_option("--set", overrides, "Override a config key, e.g. --set queueSize=8 or timing.tRP=10");
    }

    SimConfig load() const {
        SimConfig cfg = path.empty() ? SimConfig{} : load_config(path);
        for (const auto& o : overrides) apply_override(cfg, o);
        if (auto msgs = validate(cfg); !msgs.empty()) {
            std::string all;
            for (const auto& m : msgs) all += (all.empty() ? "" : "; ") + m;
            throw ConfigValidationError("invalid configuration: " + all);
        }
        return cfg;
    }
};

void print_summary(const RunSummary& s, const SimResult& r) {
    std::printf("cycles simulated   %lld%s\n", static_cast<long long>(r.cyclesSimulated),
                r.drained ? " (drained)" : " (horizon reached)");
    std::printf("requests completed %zu (reads %zu, writes %zu), incomplete %zu\n", s.requestsCompleted,
                s.completedReads, s.completedWrites, s.requestsIncomplete);
    std::printf("mean latency       %.3f (read %.3f sd %.3f, write %.3f sd %.3f)\n", s.meanLatency,
                s.meanReadLatency, s.stddevReadLatency, s.meanWriteLatency, s.stddevWriteLatency);
    for (const auto& c : s.breakdown) std::printf("  %-16s %10.3f  %6.2f%%\n", c.name.c_str(), c.meanCycles, c.percent);
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const ConfigValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const WorkloadError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const CompareError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle-level DRAM controller and channel simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // run
    auto* run = app.add_subcommand("run", "Simulate a trace and write per-request records");
    ConfigOptions runCfg;
    runCfg.attach(run);
    std::string runTrace, runOut;
    run->add_option("--trace", runTrace, "Trace file")->required();
    run->add_option("--out", runOut, "Output directory")->required();

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run one simulation per queue size");
    ConfigOptions swCfg;
    swCfg.attach(sw);
    std::string swTrace, swOut;
    std::uint32_t swMin = 2, swMax = 1024;
    unsigned swThreads = 0;
    sw->add_option("--trace", swTrace, "Trace file")->required();
    sw->add_option("--out", swOut, "Output directory")->required();
    sw->add_option("--min", swMin, "Smallest queue size")->capture_default_str();
    sw->add_option("--max", swMax, "Largest queue size")->capture_default_str();
    sw->add_option("--threads", swThreads, "Concurrent runs (0: hardware concurrency)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
    ConfigOptions genCfg;
    genCfg.attach(gen);
    WorkloadSpec spec;
    std::string genKind = "conv2d", genOut;
    gen->add_option("--kind", genKind, "conv2d | attention | simple | vecsim")->capture_default_str();
    gen->add_option("--out", genOut, "Trace file to write")->required();
    gen->add_option("--seed", spec.seed, "PRNG seed")->capture_default_str();
    gen->add_option("--count", spec.requestCount, "Number of requests")->capture_default_str();
    gen->add_option("--rate", spec.issueRate, "Mean requests per cycle")->capture_default_str();
    gen->add_option("--footprint", spec.footprint, "Footprint in bytes")->capture_default_str();
    gen->add_option("--rw-ratio", spec.rwRatio, "Fraction of reads (vecsim)")->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "Verify a command log against the timing rules");
    ConfigOptions checkCfg;
    checkCfg.attach(check);
    std::string checkLog;
    check->add_option("log", checkLog, "Command log CSV")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "Completion-cycle differences, candidate minus reference");
    std::string cmpRef, cmpCand;
    cmp->add_option("reference", cmpRef, "Reference records CSV")->required();
    cmp->add_option("candidate", cmpCand, "Candidate records CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kIoError;
    }

    if (*run) {
        return guarded([&] {
            const auto cfg = runCfg.load();
            const auto trace = parse_trace(runTrace, cfg.topology);
            const auto o = run_to_directory(cfg, trace, runTrace, runOut);
            print_summary(o.summary, o.result);
            return kOk;
        });
    }

    if (*sw) {
        return guarded([&] {
            const auto cfg = swCfg.load();
            const auto trace = parse_trace(swTrace, cfg.topology);
            const auto sizes = power_of_two_sizes(swMin, swMax);
            if (sizes.empty()) throw ConfigValidationError("no power of two between --min and --max");
            const auto res = sweep(cfg, trace, sizes, swThreads);
            std::filesystem::create_directories(swOut);
            {
                std::ofstream out(std::filesystem::path(swOut) / "sweep.csv", std::ios::binary);
                write_sweep_csv(res.points, out);
                if (res.error) out << "# partial: " << *res.error << '\n';
            }
            if (!res.points.empty()) {
                std::ofstream out(std::filesystem::path(swOut) / "pareto.csv", std::ios::binary);
                write_pareto_csv(pareto_report(res.points), out);
            }
            for (const auto& p : res.points) {
                std::printf("queueSize %5u  mean %10.3f  read %10.3f  write %10.3f  completed %zu\n", p.queueSize,
                            p.meanLatency, p.meanReadLatency, p.meanWriteLatency, p.requestsCompleted);
            }
            if (res.error) {
                std::cerr << "sweep aborted: " << *res.error << '\n';
                return kInvalid;
            }
            return kOk;
        });
    }

    if (*gen) {
        return guarded([&] {
            auto kind = parse_workload_kind(genKind);
            if (!kind) throw WorkloadError("unknown workload kind '" + genKind + "'");
            spec.kind = *kind;
            const auto cfg = genCfg.load();
            const auto trace = generate(spec, cfg.topology);
            write_trace(trace, std::filesystem::path(genOut));
            std::printf("wrote %zu requests to %s\n", trace.size(), genOut.c_str());
            return kOk;
        });
    }

    if (*check) {
        return guarded([&] {
            const auto cfg = checkCfg.load();
            const auto log = read_command_log(std::filesystem::path(checkLog));
            const auto violations = check_command_log(log, cfg);
            for (const auto& v : violations) std::cout << format_violation(v) << '\n';
            std::cout << violations.size() << " violation(s) in " << log.size() << " commands\n";
            return violations.empty() ? kOk : kInvalid;
        });
    }

    if (*cmp) {
        return guarded([&] {
            const auto ref = read_completions_csv(std::filesystem::path(cmpRef));
            const auto cand = read_completions_csv(std::filesystem::path(cmpCand));
            const auto c = compare(ref, cand);
            std::printf("op,count,meanDiff,stddevDiff\n");
            std::printf("READ,%zu,%.6f,%.6f\n", c.reads.count, c.reads.mean, c.reads.stddev);
            std::printf("WRITE,%zu,%.6f,%.6f\n", c.writes.count, c.writes.mean, c.writes.stddev);
            std::printf("ALL,%zu,%.6f,%.6f\n", c.all.count, c.all.mean, c.all.stddev);
            return kOk;
        });
    }
    return kIoError;
}
