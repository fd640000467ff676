#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memsim/config.hpp"
#include "memsim/simulator.hpp"
#include "memsim/stats.hpp"
#include "memsim/types.hpp"

namespace memsim {

inline constexpr const char* kVersion = "1.0.0";

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct RunOutcome {
    SimResult result;
    RunSummary summary;
};

/// Simulates `trace` and writes records.csv, windows.csv, breakdown.csv,
/// commands.csv and manifest.json into `outDir`.
RunOutcome run_to_directory(const SimConfig& cfg, const std::vector<MemoryRequest>& trace,
                            const std::filesystem::path& tracePath, const std::filesystem::path& outDir);

SweepPoint sweep_point(std::uint32_t queueSize, std::span<const RequestRecord> records);

struct SweepResult {
    std::vector<SweepPoint> points;  ///< in size order; only runs that finished
    std::optional<std::string> error;  ///< first failure, when the sweep aborted
};

/// One run per queue size on copies of `base`, up to `threads` at a time.
/// Each run owns its state; results do not depend on the thread count.
SweepResult sweep(const SimConfig& base, const std::vector<MemoryRequest>& trace,
                  std::span<const std::uint32_t> sizes, unsigned threads = 0);

/// Powers of two from `lo` to `hi`, inclusive.
std::vector<std::uint32_t> power_of_two_sizes(std::uint32_t lo, std::uint32_t hi);

struct OpDifference {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct Comparison {
    OpDifference reads;
    OpDifference writes;
    OpDifference all;
};

class CompareError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-request completion-cycle differences, candidate minus reference,
/// matched by reqId. Throws CompareError when the request sets or ops differ.
Comparison compare(std::span<const CompletionRow> reference, std::span<const CompletionRow> candidate);

}  // namespace memsim
