#include "memsim/command_log.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace memsim {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

void write_command_log(std::span<const CommandLogEntry> log, std::ostream& out) {
    out << kCommandLogHeader << '\n';
    for (const auto& e : log) {
        out << e.cycle << ',' << e.flatBankId << ',' << to_string(e.kind) << ',';
        if (e.row) out << *e.row;
        out << ',';
        if (e.reqId) out << *e.reqId;
        out << '\n';
    }
}

void write_command_log(std::span<const CommandLogEntry> log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write command log " + path.string());
    write_command_log(log, out);
}

std::vector<CommandLogEntry> read_command_log(std::istream& in) {
    std::vector<CommandLogEntry> log;
    std::string raw;
    std::size_t lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        if (lineNo == 1 && raw == kCommandLogHeader) continue;

        auto fail = [&](const std::string& what) {
            throw LogFormatError("command log line " + std::to_string(lineNo) + ": " + what);
        };
        const auto cells = split_csv(raw);
        if (cells.size() != 5) fail("expected 5 fields");
        CommandLogEntry e;
        if (!parse_number(cells[0], e.cycle)) fail("bad cycle");
        if (!parse_number(cells[1], e.flatBankId)) fail("bad flatBankId");
        auto kind = parse_command_kind(cells[2]);
        if (!kind) fail("bad kind '" + std::string(cells[2]) + "'");
        e.kind = *kind;
        if (!cells[3].empty()) {
            std::uint64_t row = 0;
            if (!parse_number(cells[3], row)) fail("bad row");
            e.row = row;
        }
        if (!cells[4].empty()) {
            ReqId id = 0;
            if (!parse_number(cells[4], id)) fail("bad reqId");
            e.reqId = id;
        }
        log.push_back(e);
    }
    return log;
}

std::vector<CommandLogEntry> read_command_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open command log " + path.string());
    return read_command_log(in);
}

}  // namespace memsim
