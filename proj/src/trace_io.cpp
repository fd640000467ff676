#include "memsim/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace memsim {

namespace {

bool parse_hex(std::string_view text, std::uint64_t& out) {
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, 16);
    return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_decimal(std::string_view text, Cycle& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, 10);
    return ec == std::errc() && ptr == text.data() + text.size() && out >= 0;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

std::string hex(std::uint64_t v) {
    std::ostringstream s;
    s << "0x" << std::hex << v;
    return s.str();
}

}  // namespace

TraceError::TraceError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::vector<MemoryRequest> parse_trace(std::istream& in, const Topology& topology, std::string_view sourceName) {
    const std::string source(sourceName);
    const bool fullWidth = topology.addressBits >= 64;
    const std::uint64_t addressLimit = fullWidth ? 0 : std::uint64_t{1} << topology.addressBits;

    std::vector<MemoryRequest> requests;
    std::string raw;
    std::size_t lineNo = 0;
    Cycle lastCycle = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() < 3 || fields.size() > 4) {
            throw TraceError(source, lineNo, "expected '<hex-address> <READ|WRITE> <cycle> [<hex-data>]'");
        }

        MemoryRequest req;
        req.reqId = requests.size();
        if (!parse_hex(fields[0], req.address)) {
            throw TraceError(source, lineNo, "bad address '" + std::string(fields[0]) + "'");
        }
        if (!fullWidth && req.address >= addressLimit) {
            throw TraceError(source, lineNo, "address " + hex(req.address) + " exceeds " +
                                                 std::to_string(topology.addressBits) + "-bit address space");
        }
        auto op = parse_op(fields[1]);
        if (!op) throw TraceError(source, lineNo, "bad opcode '" + std::string(fields[1]) + "'");
        req.op = *op;
        if (!parse_decimal(fields[2], req.traceCycle)) {
            throw TraceError(source, lineNo, "bad cycle '" + std::string(fields[2]) + "'");
        }
        if (!requests.empty() && req.traceCycle < lastCycle) {
            throw TraceError(source, lineNo, "non-monotonic cycle " + std::to_string(req.traceCycle) +
                                                 " after " + std::to_string(lastCycle));
        }
        if (fields.size() == 4) {
            if (req.op != Op::Write) throw TraceError(source, lineNo, "data field is only allowed on WRITE");
            if (!parse_hex(fields[3], req.data)) {
                throw TraceError(source, lineNo, "bad data '" + std::string(fields[3]) + "'");
            }
        } else if (req.op == Op::Write) {
            req.data = synthetic_data(req.address, req.reqId);
        }
        lastCycle = req.traceCycle;
        requests.push_back(req);
    }
    return requests;
}

std::vector<MemoryRequest> parse_trace(const std::filesystem::path& path, const Topology& topology) {
    std::ifstream in(path);
    if (!in) throw TraceError(path.string(), 0, "cannot open trace file");
    return parse_trace(in, topology, path.string());
}

void write_trace(std::span<const MemoryRequest> requests, std::ostream& out) {
    for (const auto& r : requests) {
        out << hex(r.address) << ' ' << to_string(r.op) << ' ' << r.traceCycle;
        if (r.op == Op::Write) out << ' ' << hex(r.data);
        out << '\n';
    }
}

void write_trace(std::span<const MemoryRequest> requests, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file " + path.string());
    write_trace(requests, out);
    if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

}  // namespace memsim
