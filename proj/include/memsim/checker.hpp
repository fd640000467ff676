#pragma once

#include <span>
#include <string>
#include <vector>

#include "memsim/command_log.hpp"
#include "memsim/config.hpp"

namespace memsim {

struct Violation {
    Cycle cycle = 0;
    std::uint32_t flatBankId = 0;
    std::string rule;    ///< e.g. "tFAW", "grammar", "refresh"
    std::string detail;
};

/// Re-verifies a command log offline against the timing rules and the
/// closed-page grammar. Shares no code with the simulator's bank model.
///
/// Rules, with `start` the logged cycle:
///   bank     - a command starts only after the previous one on the bank ended
///              (covers tRP, tRCDRD/WR, tCL, tRFC and the SREF durations)
///   tRRDL    - consecutive ACTIVATEs of a rank
///   tFAW     - at most four ACTIVATEs of a rank in any tFAW window
///   tCCDL    - consecutive READs, and consecutive WRITEs, of a bank group
///   tWTR     - READ after the end of a WRITE in the same bank group
///   grammar  - per bank: ACT, RD|WR, PRE of one request on one row, with
///              REFRESH and SREF_ENTER/SREF_EXIT only between sequences
///   refresh  - once a REFRESH is due (tREFI after the previous one, or after
///              self-refresh exit), at most one ACTIVATE starts before it
///
/// A log truncated at the simulation horizon may end mid-sequence.
std::vector<Violation> check_command_log(std::span<const CommandLogEntry> log, const SimConfig& cfg);

std::string format_violation(const Violation& v);

}  // namespace memsim
