#include "memsim/hierarchy.hpp"

#include <numeric>

namespace memsim {

HierarchyNode::HierarchyNode(NodeLevel lvl, std::size_t queueSize, std::vector<std::uint32_t> kids)
    : level(lvl),
      children(std::move(kids)),
      requestQueue(queueSize),
      responseQueue(queueSize),
      arbiter(children.size()) {}

BankPort::BankPort(std::uint32_t flatBankId, const TimingParams& timing, std::size_t queueSize)
    : bank(flatBankId, timing), requestQueue(queueSize), responseQueue(queueSize) {}

MemoryHierarchy::MemoryHierarchy(const SimConfig& cfg, std::vector<CommandLogEntry>* commandLog)
    : topology_(cfg.topology),
      rankTiming_(cfg.topology.numRanks),
      groupTiming_(cfg.topology.numRanks * cfg.topology.numBankGroups),
      log_(commandLog) {
    const auto& t = cfg.topology;
    const std::size_t q = cfg.queueSize;

    std::vector<std::uint32_t> ranks(t.numRanks);
    std::iota(ranks.begin(), ranks.end(), 1u);
    nodes_.emplace_back(NodeLevel::Channel, q, std::move(ranks));

    for (std::uint32_t r = 0; r < t.numRanks; ++r) {
        std::vector<std::uint32_t> groups(t.numBankGroups);
        std::iota(groups.begin(), groups.end(), static_cast<std::uint32_t>(bank_group_node(r, 0)));
        nodes_.emplace_back(NodeLevel::Rank, q, std::move(groups));
    }
    for (std::uint32_t r = 0; r < t.numRanks; ++r) {
        for (std::uint32_t g = 0; g < t.numBankGroups; ++g) {
            std::vector<std::uint32_t> banks(t.numBanks);
            std::iota(banks.begin(), banks.end(), (r * t.numBankGroups + g) * t.numBanks);
            nodes_.emplace_back(NodeLevel::BankGroup, q, std::move(banks));
        }
    }

    banks_.reserve(t.total_banks());
    for (std::uint32_t b = 0; b < t.total_banks(); ++b) banks_.emplace_back(b, cfg.timing, q);
}

std::size_t MemoryHierarchy::bank_group_node(std::uint32_t rank, std::uint32_t bankGroup) const {
    return 1 + topology_.numRanks + rank * topology_.numBankGroups + bankGroup;
}

void MemoryHierarchy::submit(BankCommand cmd, Cycle now) {
    cmd.issueCycle = now;
    nodes_[0].requestQueue.push(std::move(cmd), now);
}

std::uint32_t MemoryHierarchy::child_slot(const HierarchyNode& node, const BankCoordinates& c) const {
    switch (node.level) {
        case NodeLevel::Channel:
            return c.rank;
        case NodeLevel::Rank:
            return c.bankGroup;
        case NodeLevel::BankGroup:
            return c.bank;
    }
    return 0;
}

TimedFifo<BankCommand>& MemoryHierarchy::child_request_queue(const HierarchyNode& node, std::uint32_t child) {
    const auto target = node.children[child];
    return node.level == NodeLevel::BankGroup ? banks_[target].requestQueue : nodes_[target].requestQueue;
}

TimedFifo<MemoryResponse>& MemoryHierarchy::child_response_queue(const HierarchyNode& node, std::uint32_t child) {
    const auto target = node.children[child];
    return node.level == NodeLevel::BankGroup ? banks_[target].responseQueue : nodes_[target].responseQueue;
}

std::size_t MemoryHierarchy::route_node(std::size_t nodeIndex, Cycle now) {
    auto& node = nodes_[nodeIndex];
    auto& entries = node.requestQueue.entries();
    std::vector<bool> used(node.children.size(), false);
    std::size_t moved = 0;

    for (auto it = entries.begin(); it != entries.end();) {
        if (it->pushedAt >= now) break;  // later entries are younger still
        const auto slot = child_slot(node, it->value.coords);
        auto& dest = child_request_queue(node, slot);
        if (!used[slot] && !dest.full()) {
            used[slot] = true;
            dest.push(std::move(it->value), now);
            it = entries.erase(it);
            ++moved;
        } else {
            ++it;
        }
    }
    return moved;
}

bool MemoryHierarchy::arbitrate_node(std::size_t nodeIndex, Cycle now) {
    auto& node = nodes_[nodeIndex];
    if (node.responseQueue.full()) return false;
    auto winner = node.arbiter.pick([&](std::size_t child) {
        return child_response_queue(node, static_cast<std::uint32_t>(child)).head_visible(now);
    });
    if (!winner) return false;
    node.responseQueue.push(child_response_queue(node, static_cast<std::uint32_t>(*winner)).pop(), now);
    node.arbiter.grant(*winner);
    return true;
}

void MemoryHierarchy::complete_banks(Cycle now) {
    for (auto& port : banks_) {
        if (port.bank.busy() && port.bank.busy_until() <= now && !port.responseQueue.full()) {
            port.responseQueue.push(port.bank.complete(data_), now);
        }
    }
}

void MemoryHierarchy::arbitrate_up(Cycle now) {
    for (std::size_t i = nodes_.size(); i-- > 0;) arbitrate_node(i, now);
}

void MemoryHierarchy::route_down(Cycle now) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) route_node(i, now);
}

void MemoryHierarchy::start_banks(Cycle now) {
    for (auto& port : banks_) {
        if (port.bank.busy() || !port.requestQueue.head_visible(now)) continue;
        const BankCommand& cmd = port.requestQueue.front();
        const auto& c = cmd.coords;
        auto& rank = rankTiming_[c.rank];
        auto& group = groupTiming_[c.rank * topology_.numBankGroups + c.bankGroup];
        if (port.bank.earliest_start(cmd, now, rank, group) > now) continue;

        BankCommand started = port.requestQueue.pop();
        port.bank.service(started, now, rank, group);
        if (log_) {
            CommandLogEntry e;
            e.cycle = now;
            e.flatBankId = c.flatBankId;
            e.kind = started.kind;
            if (is_request_command(started.kind)) e.row = started.coords.row;
            e.reqId = started.reqId;
            log_->push_back(e);
        }
    }
}

void MemoryHierarchy::tick(Cycle now) {
    complete_banks(now);
    arbitrate_up(now);
    route_down(now);
    start_banks(now);
}

std::size_t MemoryHierarchy::in_flight() const {
    std::size_t n = 0;
    for (const auto& node : nodes_) n += node.requestQueue.size() + node.responseQueue.size();
    for (const auto& port : banks_) {
        n += port.requestQueue.size() + port.responseQueue.size() + (port.bank.busy() ? 1 : 0);
    }
    return n;
}

}  // namespace memsim
