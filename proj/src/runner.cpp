#include "memsim/runner.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "memsim/command_log.hpp"

namespace memsim {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init");
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

}  // namespace

RunOutcome run_to_directory(const SimConfig& cfg, const std::vector<MemoryRequest>& trace,
                            const std::filesystem::path& tracePath, const std::filesystem::path& outDir) {
    std::filesystem::create_directories(outDir);
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome o;
    o.result = simulate(cfg, trace);
    o.summary = summarize(o.result.records, cfg.statsWindow);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    {
        auto out = open_out(outDir / "records.csv");
        write_records_csv(o.result.records, out);
    }
    {
        auto out = open_out(outDir / "windows.csv");
        write_windows_csv(o.summary.perWindowMeans, out);
    }
    {
        auto out = open_out(outDir / "breakdown.csv");
        write_breakdown_csv(o.summary.breakdown, out);
    }
    write_command_log(o.result.commandLog, outDir / "commands.csv");

    nlohmann::ordered_json m;
    m["version"] = kVersion;
    m["config"] = nlohmann::ordered_json::parse(serialize_config(cfg));
    m["trace"] = {{"path", tracePath.string()}, {"sha256", tracePath.empty() ? "" : sha256_file(tracePath)}};
    m["outputDir"] = outDir.string();
    m["cyclesSimulated"] = o.result.cyclesSimulated;
    m["drained"] = o.result.drained;
    m["requestsCompleted"] = o.summary.requestsCompleted;
    m["wallSeconds"] = wall;
    auto out = open_out(outDir / "manifest.json");
    out << m.dump(2) << '\n';
    return o;
}

SweepPoint sweep_point(std::uint32_t queueSize, std::span<const RequestRecord> records) {
    const auto s = summarize(records);
    SweepPoint p;
    p.queueSize = queueSize;
    p.meanReadLatency = s.meanReadLatency;
    p.meanWriteLatency = s.meanWriteLatency;
    p.meanLatency = s.meanLatency;
    p.requestsCompleted = s.requestsCompleted;
    p.reqQueueShare = s.breakdown.empty() ? 0.0 : s.breakdown[0].percent;
    return p;
}

SweepResult sweep(const SimConfig& base, const std::vector<MemoryRequest>& trace,
                  std::span<const std::uint32_t> sizes, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, sizes.size())));

    std::vector<std::optional<SweepPoint>> slots(sizes.size());
    std::map<std::size_t, std::string> errors;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&] {
        for (std::size_t i; !abort && (i = next++) < sizes.size();) {
            try {
                SimConfig cfg = base;
                cfg.queueSize = sizes[i];
                if (auto msgs = validate(cfg); !msgs.empty()) throw ConfigError(msgs.front());
                Simulator sim(cfg, trace);
                auto res = sim.run();
                slots[i] = sweep_point(sizes[i], res.records);
            } catch (const std::exception& e) {
                std::lock_guard lock(mu);
                errors.emplace(i, "queueSize " + std::to_string(sizes[i]) + ": " + e.what());
                abort = true;
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();

    SweepResult r;
    for (auto& s : slots)
        if (s) r.points.push_back(*s);
    if (!errors.empty()) r.error = errors.begin()->second;
    return r;
}

std::vector<std::uint32_t> power_of_two_sizes(std::uint32_t lo, std::uint32_t hi) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t s = 1; s <= hi; s <<= 1)
        if (s >= lo) out.push_back(static_cast<std::uint32_t>(s));
    return out;
}

namespace {

struct Moments {
    std::size_t n = 0;
    long double sum = 0, sumSq = 0;
    void add(Cycle d) {
        ++n;
        sum += d;
        sumSq += static_cast<long double>(d) * d;
    }
    OpDifference get() const {
        OpDifference o;
        o.count = n;
        if (n == 0) return o;
        const long double mean = sum / n;
        const long double var = std::max<long double>(0, sumSq / n - mean * mean);
        o.mean = static_cast<double>(mean);
        o.stddev = static_cast<double>(std::sqrt(var));
        return o;
    }
};

}  // namespace

Comparison compare(std::span<const CompletionRow> reference, std::span<const CompletionRow> candidate) {
    std::map<ReqId, const CompletionRow*> ref;
    for (const auto& r : reference)
        if (!ref.emplace(r.reqId, &r).second) throw CompareError("duplicate reqId " + std::to_string(r.reqId) + " in reference");
    if (candidate.size() != reference.size()) {
        throw CompareError("request sets differ: " + std::to_string(reference.size()) + " reference rows vs " +
                           std::to_string(candidate.size()) + " candidate rows");
    }
    Moments reads, writes, all;
    std::map<ReqId, bool> seen;
    for (const auto& c : candidate) {
        auto it = ref.find(c.reqId);
        if (it == ref.end()) throw CompareError("reqId " + std::to_string(c.reqId) + " missing from reference");
        if (!seen.emplace(c.reqId, true).second) throw CompareError("duplicate reqId " + std::to_string(c.reqId) + " in candidate");
        if (it->second->op != c.op) throw CompareError("reqId " + std::to_string(c.reqId) + " has a different op");
        const Cycle d = c.completionCycle - it->second->completionCycle;
        (c.op == Op::Read ? reads : writes).add(d);
        all.add(d);
    }
    return Comparison{reads.get(), writes.get(), all.get()};
}

}  // namespace memsim
