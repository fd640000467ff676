#include "memsim/types.hpp"

#include <array>

namespace memsim {

namespace {

constexpr std::array<std::string_view, 7> kCommandNames = {
    "ACTIVATE", "READ", "WRITE", "PRECHARGE", "REFRESH", "SREF_ENTER", "SREF_EXIT",
};

}  // namespace

std::string_view to_string(Op op) { return op == Op::Read ? "READ" : "WRITE"; }

std::optional<Op> parse_op(std::string_view text) {
    if (text == "READ") return Op::Read;
    if (text == "WRITE") return Op::Write;
    return std::nullopt;
}

std::string_view to_string(CommandKind kind) { return kCommandNames[static_cast<std::size_t>(kind)]; }

std::optional<CommandKind> parse_command_kind(std::string_view text) {
    for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
        if (kCommandNames[i] == text) return static_cast<CommandKind>(i);
    }
    return std::nullopt;
}

}  // namespace memsim
