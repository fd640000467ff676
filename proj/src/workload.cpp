#include "memsim/workload.hpp"

#include <cmath>
#include <random>
#include <string>

#include "memsim/trace_io.hpp"

namespace memsim {

namespace {

constexpr std::uint64_t kElement = 8;

// Geometric on {0, 1, ...} with success probability p, by inversion.
class Arrivals {
public:
    Arrivals(double rate, std::mt19937_64& rng) : rng_(rng), logq_(std::log1p(-rate / (1.0 + rate))) {}

    Cycle next() {
        const Cycle at = now_;
        const double u = std::generate_canonical<double, 53>(rng_);
        now_ += static_cast<Cycle>(std::floor(std::log1p(-u) / logq_));
        return at;
    }

private:
    std::mt19937_64& rng_;
    double logq_;
    Cycle now_ = 0;
};

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

// Each pattern yields (address, op) pairs; the driver assigns ids and cycles.
struct Access {
    std::uint64_t address;
    Op op;
};

void conv2d(const WorkloadSpec& s, std::vector<Access>& out) {
    const auto n = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(s.footprint / (2 * kElement))));
    if (n < 3) throw WorkloadError("conv2d footprint too small for a 3x3 window");
    const std::uint64_t outBase = n * n * kElement;
    while (out.size() < s.requestCount) {
        for (std::uint64_t y = 0; y + 2 < n && out.size() < s.requestCount; ++y) {
            for (std::uint64_t x = 0; x + 2 < n && out.size() < s.requestCount; ++x) {
                for (std::uint64_t dy = 0; dy < 3; ++dy)
                    for (std::uint64_t dx = 0; dx < 3; ++dx)
                        out.push_back({((y + dy) * n + (x + dx)) * kElement, Op::Read});
                out.push_back({outBase + (y * n + x) * kElement, Op::Write});
            }
        }
    }
}

void attention(const WorkloadSpec& s, std::vector<Access>& out) {
    constexpr std::uint64_t d = 8;  // elements per row
    const std::uint64_t rows = s.footprint / (4 * d * kElement);
    if (rows < 1) throw WorkloadError("attention footprint too small");
    const std::uint64_t matrix = rows * d * kElement;
    auto at = [&](std::uint64_t m, std::uint64_t row, std::uint64_t col) {
        return m * matrix + (row * d + col) * kElement;
    };
    while (out.size() < s.requestCount) {
        for (std::uint64_t i = 0; i < rows; ++i) {
            for (std::uint64_t j = 0; j < rows; ++j) {
                out.push_back({at(0, i, j % d), Op::Read});
                out.push_back({at(1, j, i % d), Op::Read});
            }
            for (std::uint64_t k = 0; k < d; ++k) {
                out.push_back({at(2, (i + k) % rows, k), Op::Read});
                out.push_back({at(3, i, k), Op::Write});
            }
            if (out.size() >= s.requestCount) break;
        }
    }
}

void simple(const WorkloadSpec& s, std::vector<Access>& out) {
    const std::uint64_t slots = s.footprint / kElement;
    for (std::uint64_t k = 0; out.size() < s.requestCount; ++k) {
        const std::uint64_t a = (k % slots) * kElement;
        out.push_back({a, Op::Write});
        out.push_back({a, Op::Read});
    }
}

void vecsim(const WorkloadSpec& s, std::mt19937_64& rng, std::vector<Access>& out) {
    const std::uint64_t slots = s.footprint / kElement;
    const std::uint64_t reduction = std::min<std::uint64_t>(64, slots);
    std::bernoulli_distribution isRead(s.rwRatio);
    while (out.size() < s.requestCount) {
        if (isRead(rng)) {
            out.push_back({uniform_below(rng, slots) * kElement, Op::Read});
        } else {
            out.push_back({(slots - reduction + uniform_below(rng, reduction)) * kElement, Op::Write});
        }
    }
}

}  // namespace

std::string_view to_string(WorkloadKind kind) {
    switch (kind) {
        case WorkloadKind::Conv2d: return "conv2d";
        case WorkloadKind::Attention: return "attention";
        case WorkloadKind::Simple: return "simple";
        case WorkloadKind::VecSim: return "vecsim";
    }
    return "?";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view text) {
    for (auto k : {WorkloadKind::Conv2d, WorkloadKind::Attention, WorkloadKind::Simple, WorkloadKind::VecSim}) {
        if (text == to_string(k)) return k;
    }
    return std::nullopt;
}

std::vector<MemoryRequest> generate(const WorkloadSpec& spec, const Topology& topology) {
    if (spec.requestCount < 1) throw WorkloadError("requestCount must be at least 1");
    if (!(spec.issueRate > 0.0) || !std::isfinite(spec.issueRate)) throw WorkloadError("issueRate must be positive");
    if (!(spec.rwRatio >= 0.0 && spec.rwRatio <= 1.0)) throw WorkloadError("rwRatio must be in [0, 1]");
    if (spec.footprint < kElement) throw WorkloadError("footprint smaller than one element");
    if (topology.addressBits < 64 && spec.footprint > (std::uint64_t{1} << topology.addressBits)) {
        throw WorkloadError("footprint " + std::to_string(spec.footprint) + " exceeds the " +
                            std::to_string(topology.addressBits) + "-bit address space");
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<Access> accesses;
    accesses.reserve(spec.requestCount + 16);
    switch (spec.kind) {
        case WorkloadKind::Conv2d: conv2d(spec, accesses); break;
        case WorkloadKind::Attention: attention(spec, accesses); break;
        case WorkloadKind::Simple: simple(spec, accesses); break;
        case WorkloadKind::VecSim: vecsim(spec, rng, accesses); break;
    }
    accesses.resize(spec.requestCount);

    Arrivals arrivals(spec.issueRate, rng);
    std::vector<MemoryRequest> trace;
    trace.reserve(accesses.size());
    for (std::size_t i = 0; i < accesses.size(); ++i) {
        MemoryRequest r;
        r.reqId = i;
        r.address = accesses[i].address;
        r.op = accesses[i].op;
        r.traceCycle = arrivals.next();
        if (r.op == Op::Write) r.data = synthetic_data(r.address, r.reqId);
        trace.push_back(r);
    }
    return trace;
}

}  // namespace memsim
