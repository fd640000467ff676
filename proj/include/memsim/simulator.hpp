#pragma once

#include <memory>
#include <vector>

#include "memsim/command_log.hpp"
#include "memsim/config.hpp"
#include "memsim/controller.hpp"
#include "memsim/hierarchy.hpp"
#include "memsim/stats.hpp"
#include "memsim/types.hpp"

namespace memsim {

struct SimResult {
    std::vector<RequestRecord> records;  ///< indexed by reqId
    std::vector<CommandLogEntry> commandLog;
    std::vector<SchedulerEvent> events;
    Cycle cyclesSimulated = 0;
    bool drained = false;  ///< every trace request completed before maxCycles
    std::size_t enqueued = 0;
    std::size_t dispatched = 0;
    std::size_t completed = 0;
};

/// Trace-driven, cycle-by-cycle model of one controller and channel.
///
/// Per cycle, in order: frontend enqueue, dispatch, scheduler issue, command
/// arbitration, channel (bank completions, response arbitration, request
/// routing, bank issue), response broadcast, completion.
class Simulator {
public:
    Simulator(const SimConfig& cfg, std::vector<MemoryRequest> trace);
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    /// Advances one cycle.
    void step();
    /// Steps until maxCycles or until every request has completed.
    SimResult run();

    Cycle now() const { return now_; }
    bool drained() const { return completed_ == trace_.size(); }

    const Controller& controller() const { return *controller_; }
    const MemoryHierarchy& memory() const { return *memory_; }
    const std::vector<RequestRecord>& records() const { return records_; }
    const std::vector<CommandLogEntry>& command_log() const { return commandLog_; }
    const std::vector<SchedulerEvent>& events() const { return events_; }

private:
    void frontend_tick();
    void finalize(const CompletionToken& token);

    SimConfig cfg_;
    std::vector<MemoryRequest> trace_;
    std::vector<RequestRecord> records_;
    std::vector<CommandLogEntry> commandLog_;
    std::vector<SchedulerEvent> events_;
    std::unique_ptr<MemoryHierarchy> memory_;
    std::unique_ptr<Controller> controller_;
    std::size_t nextTrace_ = 0;
    std::size_t dispatched_ = 0;
    std::size_t completed_ = 0;
    Cycle now_ = 0;
};

/// Convenience wrapper: builds a Simulator and runs it.
SimResult simulate(const SimConfig& cfg, std::vector<MemoryRequest> trace);

}  // namespace memsim
