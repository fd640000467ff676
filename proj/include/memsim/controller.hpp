#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "memsim/bank_scheduler.hpp"
#include "memsim/config.hpp"
#include "memsim/hierarchy.hpp"
#include "memsim/rr_arbiter.hpp"
#include "memsim/timed_fifo.hpp"
#include "memsim/types.hpp"

namespace memsim {

struct ReqQueueEntry {
    MemoryRequest request;
    BankCoordinates coords;
};

/// A command leaving a bank scheduler, stamped with the emission cycle.
struct SchedulerEvent {
    Cycle cycle = 0;
    std::uint32_t flatBankId = 0;
    CommandKind kind = CommandKind::Activate;
    std::optional<ReqId> reqId;
};

/// Global reqQueue, per-bank schedulers, the command arbiter and respQueue.
class Controller {
public:
    Controller(const SimConfig& cfg, MemoryHierarchy& memory, std::vector<SchedulerEvent>* events = nullptr);

    bool can_enqueue() const { return !reqQueue_.full(); }
    void enqueue(const MemoryRequest& req, Cycle now);

    /// Multi-dequeue: scans reqQueue oldest first and moves every request whose
    /// scheduler has room, at most one per scheduler per cycle.
    std::size_t dispatch_tick(Cycle now);

    void tick_schedulers(Cycle now);

    /// Grants at most one pending scheduler command into the memory command queue.
    std::optional<BankCommand> arbitrate_commands(Cycle now);

    bool can_accept_response() const { return !respQueue_.full(); }
    /// Offers `resp` to every scheduler; exactly one must accept.
    void broadcast_response(const MemoryResponse& resp, Cycle now);

    /// Oldest finished request visible this cycle, if any.
    std::optional<CompletionToken> pop_completion(Cycle now);

    const TimedFifo<ReqQueueEntry>& req_queue() const { return reqQueue_; }
    const TimedFifo<CompletionToken>& resp_queue() const { return respQueue_; }
    const std::vector<BankScheduler>& schedulers() const { return schedulers_; }
    std::vector<BankScheduler>& schedulers() { return schedulers_; }
    const RoundRobinArbiter& arbiter() const { return arbiter_; }

private:
    void record(Cycle now, const BankCommand& cmd, std::uint32_t bank);

    Topology topology_;
    MemoryHierarchy& memory_;
    TimedFifo<ReqQueueEntry> reqQueue_;
    std::vector<BankScheduler> schedulers_;
    RoundRobinArbiter arbiter_;
    TimedFifo<CompletionToken> respQueue_;
    std::vector<SchedulerEvent>* events_;
};

}  // namespace memsim
