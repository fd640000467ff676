#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "memsim/config.hpp"
#include "memsim/timed_fifo.hpp"
#include "memsim/types.hpp"

namespace memsim {

enum class SchedulerState : std::uint8_t {
    Idle,
    IssueAct,
    WaitAct,
    IssueRw,
    WaitRw,
    IssuePre,
    WaitPre,
    IssueRef,
    WaitRef,
    SrefEnterPending,
    SelfRefresh,
    SrefExitPending,
};

std::string_view to_string(SchedulerState s);

/// Lifecycle timestamps a bank scheduler collects for one request.
struct RequestProgress {
    MemoryRequest request;
    BankCoordinates coords;
    Cycle dispatchCycle = 0;
    Cycle activateStart = kNever;  ///< ACTIVATE emitted
    Cycle activateAck = kNever;
    Cycle rwStart = kNever;        ///< READ/WRITE emitted
    Cycle rwAck = kNever;
    Cycle prechargeAck = kNever;
    std::uint64_t readData = 0;
};

/// Emitted by a scheduler when the closed-page sequence of a request is done.
struct CompletionToken {
    RequestProgress progress;
};

struct AckOutcome {
    std::optional<BankCommand> next;
    std::optional<CompletionToken> completion;
};

/// Closed-page FSM for one bank:
///
///     IDLE -> ACTIVATE -> READ|WRITE -> PRECHARGE -> IDLE
///     IDLE -> REFRESH -> IDLE
///     IDLE -> SREF_ENTER -> SREF -> SREF_EXIT -> IDLE
///
/// Every command is emitted into a single pending slot drained by the
/// controller's arbiter; the scheduler then waits for the matching ack.
class BankScheduler {
public:
    BankScheduler(std::uint32_t flatBankId, const SimConfig& cfg);

    bool can_accept() const { return !queue_.full(); }
    void enqueue(const MemoryRequest& req, const BankCoordinates& coords, Cycle now);

    /// Runs the issue priority for this cycle: refresh, new request,
    /// self-refresh entry, self-refresh exit. Returns the emitted command.
    std::optional<BankCommand> tick(Cycle now);

    bool has_pending() const { return pending_.has_value(); }
    const BankCommand& pending() const { return *pending_; }
    /// Hands the pending command to the arbiter; the FSM moves to its wait state.
    BankCommand take_pending(Cycle now);

    /// True when `resp` is addressed to this scheduler.
    bool matches(const MemoryResponse& resp) const;
    /// Throws SimulationError when the ack does not fit the current state.
    AckOutcome on_ack(const MemoryResponse& resp, Cycle now);

    SchedulerState state() const { return state_; }
    std::uint32_t flat_id() const { return flatBankId_; }
    std::size_t queued() const { return queue_.size(); }
    std::size_t queue_capacity() const { return queue_.capacity(); }
    bool busy() const { return current_.has_value(); }
    Cycle last_refresh() const { return lastRefreshCycle_; }
    Cycle idle_since() const { return idleSince_; }
    const std::optional<RequestProgress>& current() const { return current_; }

    /// For unit tests that start the FSM from a given point in time.
    void set_last_refresh(Cycle c) { lastRefreshCycle_ = c; }

private:
    BankCommand make_command(CommandKind kind) const;
    void emit(BankCommand cmd, SchedulerState issueState);
    [[noreturn]] void unexpected(const MemoryResponse& resp) const;

    std::uint32_t flatBankId_;
    BankCoordinates bankCoords_;
    TimingParams timing_;
    TimedFifo<RequestProgress> queue_;
    SchedulerState state_ = SchedulerState::Idle;
    std::optional<RequestProgress> current_;
    std::optional<BankCommand> pending_;
    Cycle lastRefreshCycle_ = 0;
    Cycle idleSince_ = 0;
};

}  // namespace memsim
