#include "memsim/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace memsim {

namespace {

__extension__ typedef __int128 Wide;

// Exact integer accumulation; the floating point result depends only on the
// multiset of samples, not on the order they were added.
struct Accumulator {
    std::size_t n = 0;
    Wide sum = 0;
    Wide sumSq = 0;

    void add(Cycle v) {
        ++n;
        sum += v;
        sumSq += static_cast<Wide>(v) * v;
    }
    double mean() const { return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n); }
    double stddev() const {
        if (n == 0) return 0.0;
        const Wide num = static_cast<Wide>(n) * sumSq - sum * sum;
        return std::sqrt(static_cast<double>(num)) / static_cast<double>(n);
    }
};

std::string hex(std::uint64_t v) {
    char buf[24] = "0x";
    auto [ptr, ec] = std::to_chars(buf + 2, buf + sizeof(buf), v, 16);
    (void)ec;
    return std::string(buf, ptr);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

std::vector<WindowMean> window_profile(std::span<const RequestRecord> records, Cycle windowSize) {
    if (windowSize < 1) throw std::invalid_argument("window size must be positive");
    std::map<Cycle, Accumulator> bins;
    for (const auto& r : records) {
        if (!r.completed()) continue;
        bins[r.enqueueCycle / windowSize].add(r.latency());
    }
    std::vector<WindowMean> out;
    out.reserve(bins.size());
    for (const auto& [bin, acc] : bins) out.push_back(WindowMean{bin * windowSize, acc.mean(), acc.n});
    return out;
}

std::vector<BreakdownComponent> breakdown_report(std::span<const RequestRecord> records) {
    Accumulator reqQueue, scheduler, service, transit, latency;
    for (const auto& r : records) {
        if (!r.completed()) continue;
        reqQueue.add(r.req_queue_wait());
        scheduler.add(r.scheduler_wait());
        service.add(r.service_cycles());
        transit.add(r.response_transit());
        latency.add(r.latency());
    }
    const double total = latency.mean();
    auto component = [&](const char* name, const Accumulator& acc) {
        return BreakdownComponent{name, acc.mean(), total > 0 ? 100.0 * acc.mean() / total : 0.0};
    };
    return {component("reqQueueWait", reqQueue), component("schedulerWait", scheduler),
            component("serviceCycles", service), component("responseTransit", transit)};
}

RunSummary summarize(std::span<const RequestRecord> records, Cycle windowSize) {
    RunSummary s;
    Accumulator all, reads, writes, stall;
    for (const auto& r : records) {
        if (!r.completed()) {
            ++s.requestsIncomplete;
            continue;
        }
        all.add(r.latency());
        stall.add(r.frontend_stall());
        (r.op == Op::Read ? reads : writes).add(r.latency());
    }
    s.completedReads = reads.n;
    s.completedWrites = writes.n;
    s.requestsCompleted = all.n;
    s.meanLatency = all.mean();
    s.meanReadLatency = reads.mean();
    s.meanWriteLatency = writes.mean();
    s.stddevReadLatency = reads.stddev();
    s.stddevWriteLatency = writes.stddev();
    s.meanFrontendStall = stall.mean();
    s.perWindowMeans = window_profile(records, windowSize);
    s.breakdown = breakdown_report(records);
    return s;
}

std::vector<ParetoPoint> pareto_report(std::span<const SweepPoint> points) {
    std::vector<ParetoPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(ParetoPoint{p.queueSize, p.requestsCompleted, p.meanLatency, false});
    for (auto& p : out) {
        for (const auto& q : out) {
            const bool noWorse = q.requestsCompleted >= p.requestsCompleted && q.meanLatency <= p.meanLatency;
            const bool better = q.requestsCompleted > p.requestsCompleted || q.meanLatency < p.meanLatency;
            if (noWorse && better) {
                p.dominated = true;
                break;
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.requestsCompleted != b.requestsCompleted) return a.requestsCompleted < b.requestsCompleted;
        return a.meanLatency < b.meanLatency;
    });
    return out;
}

void write_records_csv(std::span<const RequestRecord> records, std::ostream& out) {
    out << "reqId,op,address,flatBankId,traceCycle,enqueueCycle,dispatchCycle,activateStart,activateAck,"
           "rwStart,rwAck,prechargeAck,completionCycle,latency,data\n";
    for (const auto& r : records) {
        if (!r.completed()) continue;
        out << r.reqId << ',' << to_string(r.op) << ',' << hex(r.address) << ',' << r.flatBankId << ','
            << r.traceCycle << ',' << r.enqueueCycle << ',' << r.dispatchCycle << ',' << r.activateStart << ','
            << r.activateAck << ',' << r.rwStart << ',' << r.rwAck << ',' << r.prechargeAck << ','
            << r.completionCycle << ',' << r.latency() << ',' << hex(r.data) << '\n';
    }
}

void write_windows_csv(std::span<const WindowMean> windows, std::ostream& out) {
    out << "windowStart,meanLatency,count\n";
    for (const auto& w : windows) out << w.windowStart << ',' << w.meanLatency << ',' << w.count << '\n';
}

void write_breakdown_csv(std::span<const BreakdownComponent> components, std::ostream& out) {
    out << "component,meanCycles,percent\n";
    for (const auto& c : components) out << c.name << ',' << c.meanCycles << ',' << c.percent << '\n';
}

void write_sweep_csv(std::span<const SweepPoint> points, std::ostream& out) {
    out << "queueSize,meanReadLatency,meanWriteLatency,meanLatency,requestsCompleted,reqQueueShare\n";
    for (const auto& p : points) {
        out << p.queueSize << ',' << p.meanReadLatency << ',' << p.meanWriteLatency << ',' << p.meanLatency << ','
            << p.requestsCompleted << ',' << p.reqQueueShare << '\n';
    }
}

void write_pareto_csv(std::span<const ParetoPoint> points, std::ostream& out) {
    out << "requestsCompleted,meanLatency,queueSize,dominated\n";
    for (const auto& p : points) {
        out << p.requestsCompleted << ',' << p.meanLatency << ',' << p.queueSize << ',' << (p.dominated ? 1 : 0)
            << '\n';
    }
}

std::vector<CompletionRow> read_completions_csv(std::istream& in, const std::string& sourceName) {
    std::string raw;
    if (!std::getline(in, raw)) return {};
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto header = split_csv(raw);
    auto column = [&](std::string_view name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error(sourceName + ": missing column '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto idCol = column("reqId");
    const auto opCol = column("op");
    const auto doneCol = column("completionCycle");

    std::vector<CompletionRow> rows;
    std::size_t lineNo = 1;
    while (std::getline(in, raw)) {
        ++lineNo;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        const auto cells = split_csv(raw);
        auto fail = [&](const char* what) {
            throw std::runtime_error(sourceName + ":" + std::to_string(lineNo) + ": " + what);
        };
        if (cells.size() <= std::max({idCol, opCol, doneCol})) fail("too few fields");
        CompletionRow row;
        auto [p1, e1] = std::from_chars(cells[idCol].data(), cells[idCol].data() + cells[idCol].size(), row.reqId);
        if (e1 != std::errc() || p1 != cells[idCol].data() + cells[idCol].size()) fail("bad reqId");
        auto op = parse_op(cells[opCol]);
        if (!op) fail("bad op");
        row.op = *op;
        auto [p2, e2] = std::from_chars(cells[doneCol].data(), cells[doneCol].data() + cells[doneCol].size(),
                                        row.completionCycle);
        if (e2 != std::errc() || p2 != cells[doneCol].data() + cells[doneCol].size()) fail("bad completionCycle");
        rows.push_back(row);
    }
    return rows;
}

std::vector<CompletionRow> read_completions_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_completions_csv(in, path.string());
}

}  // namespace memsim
