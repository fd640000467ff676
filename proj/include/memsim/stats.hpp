#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "memsim/types.hpp"

namespace memsim {

/// Lifecycle of one request. Cycles are kNever until the stage happened.
struct RequestRecord {
    ReqId reqId = 0;
    Op op = Op::Read;
    std::uint64_t address = 0;
    std::uint32_t flatBankId = 0;
    Cycle traceCycle = 0;
    Cycle enqueueCycle = kNever;
    Cycle dispatchCycle = kNever;
    Cycle activateStart = kNever;
    Cycle activateAck = kNever;
    Cycle rwStart = kNever;
    Cycle rwAck = kNever;
    Cycle prechargeAck = kNever;
    Cycle completionCycle = kNever;
    std::uint64_t data = 0;  ///< value returned to a READ

    bool completed() const { return completionCycle != kNever; }
    Cycle frontend_stall() const { return enqueueCycle - traceCycle; }
    Cycle req_queue_wait() const { return dispatchCycle - enqueueCycle; }
    Cycle scheduler_wait() const { return activateStart - dispatchCycle; }
    Cycle service_cycles() const { return prechargeAck - activateStart; }
    Cycle response_transit() const { return completionCycle - prechargeAck; }
    Cycle latency() const { return completionCycle - enqueueCycle; }
};

struct WindowMean {
    Cycle windowStart = 0;
    double meanLatency = 0.0;
    std::size_t count = 0;
};

struct BreakdownComponent {
    std::string name;
    double meanCycles = 0.0;
    double percent = 0.0;
};

struct RunSummary {
    std::size_t completedReads = 0;
    std::size_t completedWrites = 0;
    std::size_t requestsCompleted = 0;
    std::size_t requestsIncomplete = 0;  ///< in flight or never enqueued at the horizon
    double meanLatency = 0.0;
    double meanReadLatency = 0.0;
    double meanWriteLatency = 0.0;
    double stddevReadLatency = 0.0;
    double stddevWriteLatency = 0.0;
    double meanFrontendStall = 0.0;
    std::vector<WindowMean> perWindowMeans;
    std::vector<BreakdownComponent> breakdown;
};

/// Mean latency of completed requests binned by enqueue cycle; empty bins omitted.
std::vector<WindowMean> window_profile(std::span<const RequestRecord> records, Cycle windowSize = 1000);

/// Mean of each latency component over completed requests, with its share of
/// the mean latency. Order: reqQueueWait, schedulerWait, serviceCycles,
/// responseTransit.
std::vector<BreakdownComponent> breakdown_report(std::span<const RequestRecord> records);

RunSummary summarize(std::span<const RequestRecord> records, Cycle windowSize = 1000);

struct SweepPoint {
    std::uint32_t queueSize = 0;
    double meanReadLatency = 0.0;
    double meanWriteLatency = 0.0;
    double meanLatency = 0.0;
    std::size_t requestsCompleted = 0;
    double reqQueueShare = 0.0;  ///< percent of mean latency spent in reqQueue
};

struct ParetoPoint {
    std::uint32_t queueSize = 0;
    std::size_t requestsCompleted = 0;
    double meanLatency = 0.0;
    bool dominated = false;
};

/// Sorted by requestsCompleted (ties by latency). A point is dominated when
/// another completes at least as many requests at no higher latency and is
/// strictly better in one of the two.
std::vector<ParetoPoint> pareto_report(std::span<const SweepPoint> points);

// CSV writers. Column sets are fixed; see README.
void write_records_csv(std::span<const RequestRecord> records, std::ostream& out);
void write_windows_csv(std::span<const WindowMean> windows, std::ostream& out);
void write_breakdown_csv(std::span<const BreakdownComponent> components, std::ostream& out);
void write_sweep_csv(std::span<const SweepPoint> points, std::ostream& out);
void write_pareto_csv(std::span<const ParetoPoint> points, std::ostream& out);

/// Rows of a records CSV needed for cross-simulator comparison.
struct CompletionRow {
    ReqId reqId = 0;
    Op op = Op::Read;
    Cycle completionCycle = 0;
};
std::vector<CompletionRow> read_completions_csv(std::istream& in, const std::string& sourceName);
std::vector<CompletionRow> read_completions_csv(const std::filesystem::path& path);

}  // namespace memsim
