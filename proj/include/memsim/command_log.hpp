#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "memsim/types.hpp"

namespace memsim {

/// One command as it started service at a bank.
///
/// CSV form: `cycle,flatBankId,kind,row,reqId`; `row` is empty for REFRESH
/// and SREF_* rows and `reqId` is empty when the command has no originating
/// request.
struct CommandLogEntry {
    Cycle cycle = 0;
    std::uint32_t flatBankId = 0;
    CommandKind kind = CommandKind::Activate;
    std::optional<std::uint64_t> row;
    std::optional<ReqId> reqId;

    bool operator==(const CommandLogEntry&) const = default;
};

class LogFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCommandLogHeader = "cycle,flatBankId,kind,row,reqId";

void write_command_log(std::span<const CommandLogEntry> log, std::ostream& out);
void write_command_log(std::span<const CommandLogEntry> log, const std::filesystem::path& path);
std::vector<CommandLogEntry> read_command_log(std::istream& in);
std::vector<CommandLogEntry> read_command_log(const std::filesystem::path& path);

}  // namespace memsim
