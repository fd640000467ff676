#include "memsim/controller.hpp"

#include <string>

#include "memsim/address_map.hpp"

namespace memsim {

Controller::Controller(const SimConfig& cfg, MemoryHierarchy& memory, std::vector<SchedulerEvent>* events)
    : topology_(cfg.topology),
      memory_(memory),
      reqQueue_(cfg.queueSize),
      arbiter_(cfg.topology.total_banks()),
      respQueue_(cfg.queueSize),
      events_(events) {
    schedulers_.reserve(cfg.topology.total_banks());
    for (std::uint32_t b = 0; b < cfg.topology.total_banks(); ++b) schedulers_.emplace_back(b, cfg);
}

void Controller::record(Cycle now, const BankCommand& cmd, std::uint32_t bank) {
    if (events_) events_->push_back(SchedulerEvent{now, bank, cmd.kind, cmd.reqId});
}

void Controller::enqueue(const MemoryRequest& req, Cycle now) {
    reqQueue_.push(ReqQueueEntry{req, map_address(req.address, topology_)}, now);
}

std::size_t Controller::dispatch_tick(Cycle now) {
    auto& entries = reqQueue_.entries();
    std::vector<bool> served(schedulers_.size(), false);
    std::size_t open = 0;
    for (const auto& s : schedulers_) open += s.can_accept() ? 1 : 0;

    std::size_t dispatched = 0;
    for (auto it = entries.begin(); it != entries.end() && open > 0;) {
        if (it->pushedAt >= now) break;
        const auto bank = it->value.coords.flatBankId;
        auto& sched = schedulers_[bank];
        if (!served[bank] && sched.can_accept()) {
            served[bank] = true;
            --open;
            sched.enqueue(it->value.request, it->value.coords, now);
            it = entries.erase(it);
            ++dispatched;
        } else {
            ++it;
        }
    }
    return dispatched;
}

void Controller::tick_schedulers(Cycle now) {
    for (auto& s : schedulers_) {
        if (auto cmd = s.tick(now)) record(now, *cmd, s.flat_id());
    }
}

std::optional<BankCommand> Controller::arbitrate_commands(Cycle now) {
    if (!memory_.can_accept()) return std::nullopt;
    auto winner = arbiter_.pick([&](std::size_t i) { return schedulers_[i].has_pending(); });
    if (!winner) return std::nullopt;
    arbiter_.grant(*winner);
    BankCommand cmd = schedulers_[*winner].take_pending(now);
    memory_.submit(cmd, now);
    return cmd;
}

void Controller::broadcast_response(const MemoryResponse& resp, Cycle now) {
    BankScheduler* owner = nullptr;
    std::size_t accepted = 0;
    for (auto& s : schedulers_) {
        if (s.matches(resp)) {
            owner = &s;
            ++accepted;
        }
    }
    if (accepted != 1) {
        std::string msg = std::string(to_string(resp.kind)) + " response for bank " +
                          std::to_string(resp.coords.flatBankId);
        if (resp.reqId) msg += " reqId " + std::to_string(*resp.reqId);
        msg += " accepted by " + std::to_string(accepted) + " schedulers at cycle " + std::to_string(now);
        throw SimulationError(msg);
    }

    AckOutcome outcome = owner->on_ack(resp, now);
    if (outcome.next) record(now, *outcome.next, owner->flat_id());
    if (outcome.completion) respQueue_.push(std::move(*outcome.completion), now);
}

std::optional<CompletionToken> Controller::pop_completion(Cycle now) {
    if (!respQueue_.head_visible(now)) return std::nullopt;
    return respQueue_.pop();
}

}  // namespace memsim
