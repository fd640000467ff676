#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "memsim/config.hpp"
#include "memsim/types.hpp"

namespace memsim {

enum class WorkloadKind : std::uint8_t { Conv2d, Attention, Simple, VecSim };

std::string_view to_string(WorkloadKind kind);
std::optional<WorkloadKind> parse_workload_kind(std::string_view text);

/// Synthetic microbenchmark description. Elements are 8 bytes wide.
///
///   CONV2D     3x3 sliding window over an n x n input (row-major); each
///              output element is 9 reads followed by one write to a
///              separate n x n output image. n = floor(sqrt(footprint / 16)).
///   ATTENTION  per query row: alternating reads of that row (reused) and of
///              each key row, then reads of value rows interleaved with
///              writes of the output row.
///   SIMPLE     WRITE a, READ a for consecutive addresses a.
///   VECSIM     uniform random reads over the footprint; writes (probability
///              1 - rwRatio) go to a 64-element reduction region.
///
/// Arrival gaps are geometric with mean 1 / issueRate cycles.
struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::Conv2d;
    std::uint64_t footprint = 1 << 20;  ///< bytes
    std::size_t requestCount = 1000;
    double issueRate = 1.0;  ///< requests per cycle, mean
    double rwRatio = 0.9;    ///< fraction of reads (VECSIM)
    std::uint64_t seed = 1;
};

class WorkloadError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic for a fixed spec. Throws WorkloadError for an invalid spec
/// or a footprint that does not fit the address space.
std::vector<MemoryRequest> generate(const WorkloadSpec& spec, const Topology& topology);

}  // namespace memsim
