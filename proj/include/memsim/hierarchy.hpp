#pragma once

#include <cstdint>
#include <vector>

#include "memsim/command_log.hpp"
#include "memsim/config.hpp"
#include "memsim/dram_bank.hpp"
#include "memsim/rr_arbiter.hpp"
#include "memsim/timed_fifo.hpp"
#include "memsim/types.hpp"

namespace memsim {

enum class NodeLevel : std::uint8_t { Channel, Rank, BankGroup };

/// Interior level of the channel tree. Commands fan out through the request
/// queues; acknowledgements are merged upward by a round-robin arbiter.
struct HierarchyNode {
    HierarchyNode(NodeLevel level, std::size_t queueSize, std::vector<std::uint32_t> children);

    NodeLevel level;
    std::vector<std::uint32_t> children;  ///< node indices, or flat bank ids below a bank group
    TimedFifo<BankCommand> requestQueue;
    TimedFifo<MemoryResponse> responseQueue;
    RoundRobinArbiter arbiter;
};

/// Leaf: a bank with its own request and response queue.
struct BankPort {
    BankPort(std::uint32_t flatBankId, const TimingParams& timing, std::size_t queueSize);

    DramBank bank;
    TimedFifo<BankCommand> requestQueue;
    TimedFifo<MemoryResponse> responseQueue;
};

/// One memory channel: channel -> ranks -> bank groups -> banks. Every hop
/// costs one cycle in each direction.
class MemoryHierarchy {
public:
    MemoryHierarchy(const SimConfig& cfg, std::vector<CommandLogEntry>* commandLog = nullptr);

    /// The channel request queue doubles as the controller's memory command queue.
    bool can_accept() const { return !nodes_[0].requestQueue.full(); }
    void submit(BankCommand cmd, Cycle now);

    /// Bank completions, upward arbitration, downward routing, bank issue.
    void tick(Cycle now);

    void complete_banks(Cycle now);
    void arbitrate_up(Cycle now);
    void route_down(Cycle now);
    void start_banks(Cycle now);

    /// Moves at most one response from `nodeIndex`'s children into its queue.
    bool arbitrate_node(std::size_t nodeIndex, Cycle now);
    /// Forwards the node's visible request entries one hop; returns the count.
    std::size_t route_node(std::size_t nodeIndex, Cycle now);

    bool response_ready(Cycle now) const { return nodes_[0].responseQueue.head_visible(now); }
    MemoryResponse pop_response() { return nodes_[0].responseQueue.pop(); }

    const HierarchyNode& node(std::size_t i) const { return nodes_[i]; }
    HierarchyNode& node(std::size_t i) { return nodes_[i]; }
    std::size_t node_count() const { return nodes_.size(); }
    const BankPort& bank(std::uint32_t flatBankId) const { return banks_[flatBankId]; }
    BankPort& bank(std::uint32_t flatBankId) { return banks_[flatBankId]; }
    std::size_t bank_count() const { return banks_.size(); }

    std::size_t rank_node(std::uint32_t rank) const { return 1 + rank; }
    std::size_t bank_group_node(std::uint32_t rank, std::uint32_t bankGroup) const;

    const DataStore& data() const { return data_; }
    DataStore& data() { return data_; }

    /// Commands anywhere in the request path or in service, plus responses in flight.
    std::size_t in_flight() const;

private:
    std::uint32_t child_slot(const HierarchyNode& node, const BankCoordinates& c) const;
    TimedFifo<BankCommand>& child_request_queue(const HierarchyNode& node, std::uint32_t child);
    TimedFifo<MemoryResponse>& child_response_queue(const HierarchyNode& node, std::uint32_t child);

    Topology topology_;
    std::vector<HierarchyNode> nodes_;
    std::vector<BankPort> banks_;
    std::vector<RankTiming> rankTiming_;
    std::vector<BankGroupTiming> groupTiming_;
    DataStore data_;
    std::vector<CommandLogEntry>* log_;
};

}  // namespace memsim
