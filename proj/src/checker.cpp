#include "memsim/checker.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>

namespace memsim {

namespace {

struct BankTrack {
    // Previous command on the bank and when it ends.
    std::optional<CommandLogEntry> prev;
    Cycle prevEnd = 0;
    // Closed-page position: 0 none, 1 after ACT, 2 after RD/WR; 3 in self refresh.
    int phase = 0;
    std::optional<ReqId> seqReq;
    std::optional<std::uint64_t> seqRow;
    Cycle refreshDue = 0;
    int activatesSinceDue = 0;
};

class Checker {
public:
    Checker(std::span<const CommandLogEntry> log, const SimConfig& cfg)
        : log_(log), t_(cfg.timing), topo_(cfg.topology),
          banks_(cfg.topology.numRanks * cfg.topology.numBankGroups * cfg.topology.numBanks),
          rankActs_(cfg.topology.numRanks),
          groupLastRead_(cfg.topology.numRanks * cfg.topology.numBankGroups, kNever),
          groupLastWrite_(cfg.topology.numRanks * cfg.topology.numBankGroups, kNever),
          groupLastWriteEnd_(cfg.topology.numRanks * cfg.topology.numBankGroups, kNever) {
        for (auto& b : banks_) b.refreshDue = t_.tREFI;
    }

    std::vector<Violation> run() {
        Cycle last = kNever;
        for (std::size_t i = 0; i < log_.size(); ++i) {
            const auto& e = log_[i];
            if (e.cycle < last) add(e, "order", "cycle goes backwards");
            last = e.cycle;
            if (e.flatBankId >= banks_.size()) {
                add(e, "bank", "no such bank");
                continue;
            }
            visit(i);
        }
        return std::move(out_);
    }

private:
    std::uint32_t group_of(std::uint32_t flat) const { return flat / topo_.numBanks; }
    std::uint32_t rank_of(std::uint32_t flat) const { return flat / (topo_.numBanks * topo_.numBankGroups); }

    void add(const CommandLogEntry& e, std::string rule, std::string detail) {
        out_.push_back(Violation{e.cycle, e.flatBankId, std::move(rule), std::move(detail)});
    }

    // The access an ACTIVATE prepares is the op of the next column command
    // of the same request on the same bank.
    std::optional<CommandKind> column_after(std::size_t i) const {
        const auto& act = log_[i];
        for (std::size_t j = i + 1; j < log_.size(); ++j) {
            const auto& e = log_[j];
            if (e.flatBankId != act.flatBankId) continue;
            if (e.kind == CommandKind::Read || e.kind == CommandKind::Write) return e.kind;
            return std::nullopt;
        }
        return std::nullopt;
    }

    Cycle length(std::size_t i) const {
        switch (log_[i].kind) {
            case CommandKind::Activate: {
                auto next = column_after(i);
                if (!next) return std::min(t_.tRCDRD, t_.tRCDWR);
                return *next == CommandKind::Read ? t_.tRCDRD : t_.tRCDWR;
            }
            case CommandKind::Read:
            case CommandKind::Write: return t_.tCL;
            case CommandKind::Precharge: return t_.tRP;
            case CommandKind::Refresh: return t_.tRFC;
            case CommandKind::SrefEnter: return t_.tSREFEnter;
            case CommandKind::SrefExit: return t_.tSREFExit;
        }
        return 0;
    }

    void visit(std::size_t i) {
        const auto& e = log_[i];
        auto& b = banks_[e.flatBankId];

        if (b.prev && e.cycle < b.prevEnd) {
            std::ostringstream msg;
            msg << to_string(e.kind) << " starts " << (b.prevEnd - e.cycle) << " cycles before "
                << to_string(b.prev->kind) << " from " << b.prev->cycle << " ends";
            const char* rule = "bank";
            switch (b.prev->kind) {
                case CommandKind::Activate: rule = "tRCD"; break;
                case CommandKind::Read:
                case CommandKind::Write: rule = "tCL"; break;
                case CommandKind::Precharge: rule = "tRP"; break;
                case CommandKind::Refresh: rule = "tRFC"; break;
                default: break;
            }
            add(e, rule, msg.str());
        }
        b.prev = e;
        b.prevEnd = e.cycle + length(i);

        grammar(e, b);
        timing(e);
        refresh(e, b);
    }

    void grammar(const CommandLogEntry& e, BankTrack& b) {
        auto bad = [&](const char* why) { add(e, "grammar", std::string(to_string(e.kind)) + ": " + why); };
        switch (e.kind) {
            case CommandKind::Activate:
                if (b.phase != 0) bad("bank not precharged");
                if (!e.row || !e.reqId) bad("missing row or reqId");
                b.phase = 1;
                b.seqReq = e.reqId;
                b.seqRow = e.row;
                break;
            case CommandKind::Read:
            case CommandKind::Write:
                if (b.phase != 1) bad("no open row");
                else if (e.reqId != b.seqReq) bad("reqId differs from ACTIVATE");
                else if (e.row != b.seqRow) bad("row differs from open row");
                b.phase = 2;
                break;
            case CommandKind::Precharge:
                if (b.phase != 2) bad("no completed column access");
                else if (e.reqId != b.seqReq) bad("reqId differs from ACTIVATE");
                b.phase = 0;
                b.seqReq.reset();
                b.seqRow.reset();
                break;
            case CommandKind::Refresh:
            case CommandKind::SrefEnter:
                if (b.phase != 0) bad("bank not precharged");
                if (e.kind == CommandKind::SrefEnter) b.phase = 3;
                break;
            case CommandKind::SrefExit:
                if (b.phase != 3) bad("bank not in self refresh");
                b.phase = 0;
                break;
        }
    }

    void timing(const CommandLogEntry& e) {
        const auto rank = rank_of(e.flatBankId);
        const auto group = group_of(e.flatBankId);
        auto gap_rule = [&](Cycle prev, Cycle minGap, const char* rule) {
            if (prev != kNever && e.cycle - prev < minGap) {
                add(e, rule, "gap " + std::to_string(e.cycle - prev) + " < " + std::to_string(minGap));
            }
        };
        switch (e.kind) {
            case CommandKind::Activate: {
                auto& acts = rankActs_[rank];
                if (!acts.empty()) gap_rule(acts.back(), t_.tRRDL, "tRRDL");
                if (acts.size() >= 4) gap_rule(acts[acts.size() - 4], t_.tFAW, "tFAW");
                acts.push_back(e.cycle);
                if (acts.size() > 4) acts.pop_front();
                break;
            }
            case CommandKind::Read:
                gap_rule(groupLastRead_[group], t_.tCCDL, "tCCDL");
                if (groupLastWriteEnd_[group] != kNever && e.cycle - groupLastWriteEnd_[group] < t_.tWTR) {
                    add(e, "tWTR", "read " + std::to_string(e.cycle - groupLastWriteEnd_[group]) +
                                       " cycles after write end");
                }
                groupLastRead_[group] = e.cycle;
                break;
            case CommandKind::Write:
                gap_rule(groupLastWrite_[group], t_.tCCDL, "tCCDL");
                groupLastWrite_[group] = e.cycle;
                groupLastWriteEnd_[group] = e.cycle + t_.tCL;
                break;
            default: break;
        }
    }

    void refresh(const CommandLogEntry& e, BankTrack& b) {
        switch (e.kind) {
            case CommandKind::Refresh:
                b.refreshDue = e.cycle + t_.tREFI;
                b.activatesSinceDue = 0;
                break;
            case CommandKind::SrefExit:
                b.refreshDue = e.cycle + t_.tSREFExit + t_.tREFI;
                b.activatesSinceDue = 0;
                break;
            case CommandKind::SrefEnter:
                b.refreshDue = std::numeric_limits<Cycle>::max();
                break;
            case CommandKind::Activate:
                if (e.cycle > b.refreshDue && ++b.activatesSinceDue > 1) {
                    add(e, "refresh", "REFRESH due at " + std::to_string(b.refreshDue) + " still pending");
                }
                break;
            default: break;
        }
    }

    std::span<const CommandLogEntry> log_;
    TimingParams t_;
    Topology topo_;
    std::vector<BankTrack> banks_;
    std::vector<std::deque<Cycle>> rankActs_;
    std::vector<Cycle> groupLastRead_;
    std::vector<Cycle> groupLastWrite_;
    std::vector<Cycle> groupLastWriteEnd_;
    std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> check_command_log(std::span<const CommandLogEntry> log, const SimConfig& cfg) {
    return Checker(log, cfg).run();
}

std::string format_violation(const Violation& v) {
    std::ostringstream os;
    os << "cycle " << v.cycle << " bank " << v.flatBankId << " " << v.rule << ": " << v.detail;
    return os.str();
}

}  // namespace memsim
