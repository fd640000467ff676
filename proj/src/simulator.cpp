#include "memsim/simulator.hpp"

#include <string>

#include "memsim/address_map.hpp"

namespace memsim {

Simulator::Simulator(const SimConfig& cfg, std::vector<MemoryRequest> trace)
    : cfg_(cfg), trace_(std::move(trace)) {
    records_.reserve(trace_.size());
    for (std::size_t i = 0; i < trace_.size(); ++i) {
        const auto& req = trace_[i];
        if (req.reqId != i) {
            throw SimulationError("trace request at position " + std::to_string(i) + " has reqId " +
                                  std::to_string(req.reqId));
        }
        if (i > 0 && req.traceCycle < trace_[i - 1].traceCycle) {
            throw SimulationError("trace cycles must be nondecreasing (reqId " + std::to_string(i) + ")");
        }
        RequestRecord r;
        r.reqId = req.reqId;
        r.op = req.op;
        r.address = req.address;
        r.flatBankId = map_address(req.address, cfg_.topology).flatBankId;
        r.traceCycle = req.traceCycle;
        records_.push_back(r);
    }
    memory_ = std::make_unique<MemoryHierarchy>(cfg_, &commandLog_);
    controller_ = std::make_unique<Controller>(cfg_, *memory_, &events_);
}

void Simulator::frontend_tick() {
    while (nextTrace_ < trace_.size() && trace_[nextTrace_].traceCycle <= now_ && controller_->can_enqueue()) {
        controller_->enqueue(trace_[nextTrace_], now_);
        records_[nextTrace_].enqueueCycle = now_;
        ++nextTrace_;
    }
}

void Simulator::finalize(const CompletionToken& token) {
    const auto& p = token.progress;
    auto& r = records_.at(p.request.reqId);
    if (r.completed()) {
        throw SimulationError("duplicate completion for reqId " + std::to_string(p.request.reqId));
    }
    r.dispatchCycle = p.dispatchCycle;
    r.activateStart = p.activateStart;
    r.activateAck = p.activateAck;
    r.rwStart = p.rwStart;
    r.rwAck = p.rwAck;
    r.prechargeAck = p.prechargeAck;
    r.completionCycle = now_;
    r.data = r.op == Op::Read ? p.readData : p.request.data;
    ++completed_;
}

void Simulator::step() {
    frontend_tick();
    dispatched_ += controller_->dispatch_tick(now_);
    controller_->tick_schedulers(now_);
    controller_->arbitrate_commands(now_);
    memory_->tick(now_);
    if (memory_->response_ready(now_) && controller_->can_accept_response()) {
        controller_->broadcast_response(memory_->pop_response(), now_);
    }
    if (auto done = controller_->pop_completion(now_)) finalize(*done);
    ++now_;
}

SimResult Simulator::run() {
    while (now_ < cfg_.maxCycles && !drained()) step();

    SimResult result;
    result.cyclesSimulated = now_;
    result.drained = drained();
    result.enqueued = nextTrace_;
    result.dispatched = dispatched_;
    result.completed = completed_;
    result.records = records_;
    result.commandLog = commandLog_;
    result.events = events_;
    return result;
}

SimResult simulate(const SimConfig& cfg, std::vector<MemoryRequest> trace) {
    Simulator sim(cfg, std::move(trace));
    return sim.run();
}

}  // namespace memsim
