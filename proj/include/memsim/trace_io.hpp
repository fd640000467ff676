#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "memsim/config.hpp"
#include "memsim/types.hpp"

namespace memsim {

/// Trace line grammar:
///
///     <hex-address> <READ|WRITE> <decimal-cycle> [<hex-data>]
///
/// Fields are whitespace separated, `#` starts a comment, blank lines are
/// skipped. Only WRITE lines may carry data.
class TraceError : public std::runtime_error {
public:
    TraceError(std::string source, std::size_t line, const std::string& message);

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Payload used for a WRITE whose trace line has no data field.
constexpr std::uint64_t synthetic_data(std::uint64_t address, ReqId reqId) { return address ^ reqId; }

std::vector<MemoryRequest> parse_trace(std::istream& in, const Topology& topology,
                                       std::string_view sourceName = "<trace>");
std::vector<MemoryRequest> parse_trace(const std::filesystem::path& path, const Topology& topology);

/// WRITE lines always carry their data so the output re-parses identically.
void write_trace(std::span<const MemoryRequest> requests, std::ostream& out);
void write_trace(std::span<const MemoryRequest> requests, const std::filesystem::path& path);

}  // namespace memsim
