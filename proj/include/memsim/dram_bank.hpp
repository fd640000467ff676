#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "memsim/config.hpp"
#include "memsim/types.hpp"

namespace memsim {

/// Sparse backing store; unwritten addresses read as zero.
class DataStore {
public:
    std::uint64_t read(std::uint64_t address) const {
        auto it = cells_.find(address);
        return it == cells_.end() ? 0 : it->second;
    }
    void write(std::uint64_t address, std::uint64_t value) { cells_[address] = value; }
    std::size_t size() const { return cells_.size(); }

private:
    std::unordered_map<std::uint64_t, std::uint64_t> cells_;
};

/// ACTIVATE history shared by the banks of one rank (tRRDL, tFAW).
struct RankTiming {
    std::array<Cycle, 4> recentActivates{kNever, kNever, kNever, kNever};  ///< oldest first

    Cycle last_activate() const { return recentActivates[3]; }
    Cycle fourth_previous_activate() const { return recentActivates[0]; }
    void record_activate(Cycle start);
};

/// Column-command history shared by the banks of one bank group (tCCDL, tWTR).
struct BankGroupTiming {
    Cycle lastReadStart = kNever;
    Cycle lastWriteStart = kNever;
    Cycle lastWriteEnd = kNever;
};

enum class BankMode : std::uint8_t { Precharged, Active, Refreshing, SelfRefresh };

/// Timing model of one bank: accepts one command at a time, holds it for its
/// service duration and produces the acknowledgement at completion.
class DramBank {
public:
    DramBank(std::uint32_t flatBankId, const TimingParams& timing);

    /// Earliest cycle `cmd` may start, never earlier than `now`. Throws
    /// SimulationError if the command is illegal in the current mode.
    Cycle earliest_start(const BankCommand& cmd, Cycle now, const RankTiming& rank,
                         const BankGroupTiming& group) const;

    /// Starts `cmd` at `start`; returns the completion cycle.
    Cycle service(const BankCommand& cmd, Cycle start, RankTiming& rank, BankGroupTiming& group);

    /// Finishes the command in service at its completion cycle. READ data is
    /// sampled and WRITE data committed here.
    MemoryResponse complete(DataStore& store);

    Cycle duration(const BankCommand& cmd) const;

    bool busy() const { return inService_.has_value(); }
    Cycle busy_until() const { return busyUntil_; }
    BankMode mode() const { return mode_; }
    std::optional<std::uint64_t> open_row() const { return openRow_; }
    std::uint32_t flat_id() const { return flatBankId_; }

private:
    void check_legal(const BankCommand& cmd) const;

    std::uint32_t flatBankId_;
    TimingParams timing_;
    BankMode mode_ = BankMode::Precharged;
    std::optional<std::uint64_t> openRow_;
    Cycle activateReady_ = kNever;  ///< ACTIVATE completion (tRCD elapsed)
    Cycle busyUntil_ = 0;
    std::optional<BankCommand> inService_;
    Cycle serviceStart_ = 0;
};

}  // namespace memsim
