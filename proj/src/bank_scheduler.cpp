#include "memsim/bank_scheduler.hpp"

#include <array>
#include <string>

#include "memsim/address_map.hpp"

namespace memsim {

namespace {

constexpr std::array<std::string_view, 12> kStateNames = {
    "IDLE",      "ISSUE_ACT", "WAIT_ACT", "ISSUE_RW",           "WAIT_RW", "ISSUE_PRE",
    "WAIT_PRE",  "ISSUE_REF", "WAIT_REF", "SREF_ENTER_PENDING", "SREF",    "SREF_EXIT_PENDING",
};

}  // namespace

std::string_view to_string(SchedulerState s) { return kStateNames[static_cast<std::size_t>(s)]; }

BankScheduler::BankScheduler(std::uint32_t flatBankId, const SimConfig& cfg)
    : flatBankId_(flatBankId),
      bankCoords_(bank_coordinates(flatBankId, cfg.topology)),
      timing_(cfg.timing),
      queue_(cfg.scheduler_queue_capacity()) {}

void BankScheduler::enqueue(const MemoryRequest& req, const BankCoordinates& coords, Cycle now) {
    if (coords.flatBankId != flatBankId_) {
        throw SimulationError("scheduler " + std::to_string(flatBankId_) + " given request " +
                              std::to_string(req.reqId) + " for bank " + std::to_string(coords.flatBankId));
    }
    RequestProgress p;
    p.request = req;
    p.coords = coords;
    p.dispatchCycle = now;
    queue_.push(std::move(p), now);
}

BankCommand BankScheduler::make_command(CommandKind kind) const {
    BankCommand cmd;
    cmd.kind = kind;
    if (is_request_command(kind)) {
        cmd.coords = current_->coords;
        cmd.reqId = current_->request.reqId;
        cmd.intent = current_->request.op;
        cmd.address = current_->request.address;
        if (kind == CommandKind::Write) cmd.data = current_->request.data;
    } else {
        cmd.coords = bankCoords_;
    }
    return cmd;
}

void BankScheduler::emit(BankCommand cmd, SchedulerState issueState) {
    pending_ = std::move(cmd);
    state_ = issueState;
}

std::optional<BankCommand> BankScheduler::tick(Cycle now) {
    if (pending_) return std::nullopt;

    if (state_ == SchedulerState::Idle) {
        if (now >= lastRefreshCycle_ + timing_.tREFI) {
            // The next deadline counts from this emission, keeping refreshes periodic.
            lastRefreshCycle_ = now;
            emit(make_command(CommandKind::Refresh), SchedulerState::IssueRef);
        } else if (queue_.head_visible(now)) {
            current_ = queue_.pop();
            current_->activateStart = now;
            emit(make_command(CommandKind::Activate), SchedulerState::IssueAct);
        } else if (queue_.empty() && now - idleSince_ >= timing_.selfRefreshIdleThreshold) {
            emit(make_command(CommandKind::SrefEnter), SchedulerState::SrefEnterPending);
        } else {
            return std::nullopt;
        }
        return pending_;
    }

    if (state_ == SchedulerState::SelfRefresh && queue_.head_visible(now)) {
        emit(make_command(CommandKind::SrefExit), SchedulerState::SrefExitPending);
        return pending_;
    }
    return std::nullopt;
}

BankCommand BankScheduler::take_pending(Cycle now) {
    if (!pending_) throw SimulationError("scheduler " + std::to_string(flatBankId_) + ": no pending command");
    BankCommand cmd = std::move(*pending_);
    pending_.reset();
    cmd.issueCycle = now;
    switch (state_) {
        case SchedulerState::IssueAct: state_ = SchedulerState::WaitAct; break;
        case SchedulerState::IssueRw: state_ = SchedulerState::WaitRw; break;
        case SchedulerState::IssuePre: state_ = SchedulerState::WaitPre; break;
        case SchedulerState::IssueRef: state_ = SchedulerState::WaitRef; break;
        default: break;  // SREF entry/exit keep one state for issue and wait
    }
    return cmd;
}

bool BankScheduler::matches(const MemoryResponse& resp) const {
    if (resp.coords.flatBankId != flatBankId_) return false;
    if (resp.reqId) return current_ && current_->request.reqId == *resp.reqId;
    return true;
}

void BankScheduler::unexpected(const MemoryResponse& resp) const {
    std::string msg = "scheduler " + std::to_string(flatBankId_) + ": unexpected " +
                      std::string(to_string(resp.kind)) + " ack in state " + std::string(to_string(state_));
    if (resp.reqId) msg += " (reqId " + std::to_string(*resp.reqId) + ")";
    throw SimulationError(msg);
}

AckOutcome BankScheduler::on_ack(const MemoryResponse& resp, Cycle now) {
    if (!matches(resp) || pending_) unexpected(resp);

    AckOutcome out;
    switch (state_) {
        case SchedulerState::WaitAct:
            if (resp.kind != CommandKind::Activate) unexpected(resp);
            current_->activateAck = now;
            current_->rwStart = now;
            emit(make_command(current_->request.op == Op::Read ? CommandKind::Read : CommandKind::Write),
                 SchedulerState::IssueRw);
            out.next = pending_;
            break;
        case SchedulerState::WaitRw: {
            const auto expected = current_->request.op == Op::Read ? CommandKind::Read : CommandKind::Write;
            if (resp.kind != expected) unexpected(resp);
            current_->rwAck = now;
            if (resp.kind == CommandKind::Read) current_->readData = resp.data;
            emit(make_command(CommandKind::Precharge), SchedulerState::IssuePre);
            out.next = pending_;
            break;
        }
        case SchedulerState::WaitPre:
            if (resp.kind != CommandKind::Precharge) unexpected(resp);
            current_->prechargeAck = now;
            out.completion = CompletionToken{std::move(*current_)};
            current_.reset();
            state_ = SchedulerState::Idle;
            idleSince_ = now;
            break;
        case SchedulerState::WaitRef:
            if (resp.kind != CommandKind::Refresh) unexpected(resp);
            state_ = SchedulerState::Idle;
            break;
        case SchedulerState::SrefEnterPending:
            if (resp.kind != CommandKind::SrefEnter) unexpected(resp);
            state_ = SchedulerState::SelfRefresh;
            break;
        case SchedulerState::SrefExitPending:
            if (resp.kind != CommandKind::SrefExit) unexpected(resp);
            state_ = SchedulerState::Idle;
            // Self-refresh kept the cells alive; the refresh interval restarts here.
            lastRefreshCycle_ = now;
            idleSince_ = now;
            break;
        default:
            unexpected(resp);
    }
    return out;
}

}  // namespace memsim
