#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace memsim {

/// Simulation time in controller clock cycles.
using Cycle = std::int64_t;
using ReqId = std::uint64_t;

/// Sentinel for "never happened"; arithmetic on it is never performed.
inline constexpr Cycle kNever = std::numeric_limits<Cycle>::min();

enum class Op : std::uint8_t { Read, Write };

std::string_view to_string(Op op);
std::optional<Op> parse_op(std::string_view text);

/// One trace line.
struct MemoryRequest {
    ReqId reqId = 0;
    std::uint64_t address = 0;
    Op op = Op::Read;
    Cycle traceCycle = 0;
    std::uint64_t data = 0;  ///< meaningful for writes only

    bool operator==(const MemoryRequest&) const = default;
};

/// Location of an address inside the channel.
struct BankCoordinates {
    std::uint32_t rank = 0;
    std::uint32_t bankGroup = 0;
    std::uint32_t bank = 0;
    std::uint64_t row = 0;
    std::uint64_t column = 0;
    std::uint32_t flatBankId = 0;

    bool operator==(const BankCoordinates&) const = default;
};

enum class CommandKind : std::uint8_t {
    Activate,
    Read,
    Write,
    Precharge,
    Refresh,
    SrefEnter,
    SrefExit,
};

std::string_view to_string(CommandKind kind);
std::optional<CommandKind> parse_command_kind(std::string_view text);

/// True for commands that originate from a trace request (carry a reqId).
constexpr bool is_request_command(CommandKind k) {
    return k == CommandKind::Activate || k == CommandKind::Read || k == CommandKind::Write ||
           k == CommandKind::Precharge;
}

struct BankCommand {
    CommandKind kind = CommandKind::Activate;
    BankCoordinates coords;
    std::optional<ReqId> reqId;
    Op intent = Op::Read;     ///< access the ACTIVATE prepares (selects tRCDRD/tRCDWR)
    std::uint64_t address = 0;
    std::uint64_t data = 0;   ///< WRITE payload
    Cycle issueCycle = 0;     ///< cycle the command entered the memory command queue
};

struct MemoryResponse {
    CommandKind kind = CommandKind::Activate;
    BankCoordinates coords;
    std::optional<ReqId> reqId;
    std::uint64_t data = 0;   ///< READ payload
    Cycle startCycle = 0;
    Cycle completionCycle = 0;
};

/// Unrecoverable inconsistency inside the simulated hardware.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace memsim
