#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "memsim/types.hpp"

namespace memsim {

/// Bank timing parameters, all in controller cycles.
struct TimingParams {
    Cycle tRP = 14;      ///< row precharge
    Cycle tFAW = 30;     ///< four-activate window (per rank)
    Cycle tRRDL = 6;     ///< ACT to ACT (per rank)
    Cycle tRCDRD = 14;   ///< ACT to READ
    Cycle tRCDWR = 14;   ///< ACT to WRITE
    Cycle tCCDL = 2;     ///< RD to RD / WR to WR (per bank group)
    Cycle tWTR = 8;      ///< end of WRITE to READ (per bank group)
    Cycle tRFC = 260;    ///< refresh duration
    Cycle tREFI = 3600;  ///< refresh interval
    Cycle tCL = 14;      ///< READ/WRITE service time
    Cycle tSREFEnter = 1;
    Cycle tSREFExit = 260;
    Cycle selfRefreshIdleThreshold = 1000;

    bool operator==(const TimingParams&) const = default;
};

struct Topology {
    std::uint32_t numRanks = 2;
    std::uint32_t numBankGroups = 4;  ///< per rank
    std::uint32_t numBanks = 4;       ///< per bank group
    std::uint32_t rowBits = 16;
    std::uint32_t colBits = 11;
    std::uint32_t addressBits = 32;

    std::uint32_t rank_bits() const;
    std::uint32_t bank_group_bits() const;
    std::uint32_t bank_bits() const;
    std::uint32_t total_banks() const { return numRanks * numBankGroups * numBanks; }
    std::uint32_t banks_per_rank() const { return numBankGroups * numBanks; }

    bool operator==(const Topology&) const = default;
};

struct SimConfig {
    TimingParams timing;
    Topology topology;
    std::uint32_t queueSize = 128;
    /// Upper bound on a bank scheduler's local queue; the effective depth is
    /// min(queueSize, schedulerQueueDepth).
    std::uint32_t schedulerQueueDepth = 2;
    Cycle maxCycles = 100000;
    Cycle statsWindow = 1000;

    std::uint32_t scheduler_queue_capacity() const;

    bool operator==(const SimConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The file parsed but the resulting configuration violates an invariant.
class ConfigValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Returns one human-readable message per violated invariant.
std::vector<std::string> validate(const SimConfig& cfg);

/// Missing keys keep their defaults. Throws ConfigError on parse, unknown-key,
/// type or validation failures.
SimConfig load_config(const std::filesystem::path& path);
SimConfig parse_config(std::string_view text, std::string_view sourceName = "<config>");

std::string serialize_config(const SimConfig& cfg);
void save_config(const SimConfig& cfg, const std::filesystem::path& path);

/// Applies one `key=value` override. Keys are either bare field names
/// ("tRP", "queueSize") or section-qualified ("timing.tRP").
void apply_override(SimConfig& cfg, std::string_view assignment);

}  // namespace memsim
