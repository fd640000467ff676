#include "memsim/dram_bank.hpp"

#include <algorithm>
#include <string>

namespace memsim {

namespace {

Cycle after(Cycle last, Cycle gap) { return last == kNever ? kNever : last + gap; }

std::string bank_prefix(std::uint32_t id) { return "bank " + std::to_string(id) + ": "; }

}  // namespace

void RankTiming::record_activate(Cycle start) {
    std::shift_left(recentActivates.begin(), recentActivates.end(), 1);
    recentActivates[3] = start;
}

DramBank::DramBank(std::uint32_t flatBankId, const TimingParams& timing)
    : flatBankId_(flatBankId), timing_(timing) {}

void DramBank::check_legal(const BankCommand& cmd) const {
    auto fail = [&](const char* why) {
        throw SimulationError(bank_prefix(flatBankId_) + std::string(to_string(cmd.kind)) + " " + why);
    };
    switch (cmd.kind) {
        case CommandKind::Activate:
            if (mode_ != BankMode::Precharged) fail("requires a precharged bank");
            break;
        case CommandKind::Read:
        case CommandKind::Write:
            if (mode_ != BankMode::Active) fail("requires an active bank");
            if (openRow_ != cmd.coords.row) fail("targets a row that is not open");
            break;
        case CommandKind::Precharge:
            if (mode_ != BankMode::Active) fail("requires an active bank");
            break;
        case CommandKind::Refresh:
        case CommandKind::SrefEnter:
            if (mode_ != BankMode::Precharged) fail("requires a precharged bank");
            break;
        case CommandKind::SrefExit:
            if (mode_ != BankMode::SelfRefresh) fail("requires self-refresh mode");
            break;
    }
}

Cycle DramBank::duration(const BankCommand& cmd) const {
    switch (cmd.kind) {
        case CommandKind::Activate:
            return cmd.intent == Op::Read ? timing_.tRCDRD : timing_.tRCDWR;
        case CommandKind::Read:
        case CommandKind::Write:
            return timing_.tCL;
        case CommandKind::Precharge:
            return timing_.tRP;
        case CommandKind::Refresh:
            return timing_.tRFC;
        case CommandKind::SrefEnter:
            return timing_.tSREFEnter;
        case CommandKind::SrefExit:
            return timing_.tSREFExit;
    }
    return 0;
}

Cycle DramBank::earliest_start(const BankCommand& cmd, Cycle now, const RankTiming& rank,
                               const BankGroupTiming& group) const {
    check_legal(cmd);
    Cycle earliest = std::max(now, busyUntil_);
    switch (cmd.kind) {
        case CommandKind::Activate:
            earliest = std::max({earliest, after(rank.last_activate(), timing_.tRRDL),
                                 after(rank.fourth_previous_activate(), timing_.tFAW)});
            break;
        case CommandKind::Read:
            earliest = std::max({earliest, activateReady_, after(group.lastReadStart, timing_.tCCDL),
                                 after(group.lastWriteEnd, timing_.tWTR)});
            break;
        case CommandKind::Write:
            earliest = std::max({earliest, activateReady_, after(group.lastWriteStart, timing_.tCCDL)});
            break;
        default:
            break;
    }
    return earliest;
}

Cycle DramBank::service(const BankCommand& cmd, Cycle start, RankTiming& rank, BankGroupTiming& group) {
    if (inService_) {
        throw SimulationError(bank_prefix(flatBankId_) + "overlapping service: " + std::string(to_string(cmd.kind)) +
                              " at " + std::to_string(start) + " while busy until " + std::to_string(busyUntil_));
    }
    if (start < earliest_start(cmd, start, rank, group)) {
        throw SimulationError(bank_prefix(flatBankId_) + std::string(to_string(cmd.kind)) + " started early at " +
                              std::to_string(start));
    }

    const Cycle end = start + duration(cmd);
    switch (cmd.kind) {
        case CommandKind::Activate:
            mode_ = BankMode::Active;
            openRow_ = cmd.coords.row;
            activateReady_ = end;
            rank.record_activate(start);
            break;
        case CommandKind::Read:
            group.lastReadStart = start;
            break;
        case CommandKind::Write:
            group.lastWriteStart = start;
            group.lastWriteEnd = end;
            break;
        case CommandKind::Precharge:
            mode_ = BankMode::Precharged;
            openRow_.reset();
            activateReady_ = kNever;
            break;
        case CommandKind::Refresh:
            mode_ = BankMode::Refreshing;
            break;
        case CommandKind::SrefEnter:
            mode_ = BankMode::SelfRefresh;
            break;
        case CommandKind::SrefExit:
            break;
    }
    inService_ = cmd;
    serviceStart_ = start;
    busyUntil_ = end;
    return end;
}

MemoryResponse DramBank::complete(DataStore& store) {
    if (!inService_) throw SimulationError(bank_prefix(flatBankId_) + "completion without a command in service");
    const BankCommand cmd = *inService_;
    inService_.reset();

    MemoryResponse resp;
    resp.kind = cmd.kind;
    resp.coords = cmd.coords;
    resp.reqId = cmd.reqId;
    resp.startCycle = serviceStart_;
    resp.completionCycle = busyUntil_;

    switch (cmd.kind) {
        case CommandKind::Read:
            resp.data = store.read(cmd.address);
            break;
        case CommandKind::Write:
            store.write(cmd.address, cmd.data);
            break;
        case CommandKind::Refresh:
            mode_ = BankMode::Precharged;
            break;
        case CommandKind::SrefExit:
            mode_ = BankMode::Precharged;
            break;
        default:
            break;
    }
    return resp;
}

}  // namespace memsim
