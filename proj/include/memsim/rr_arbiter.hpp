#pragma once

#include <cstddef>
#include <optional>

namespace memsim {

/// Round-robin arbiter over `size` requesters. The search starts at the
/// pointer; after a grant the pointer moves one past the winner and stays put
/// when nothing is granted.
class RoundRobinArbiter {
public:
    explicit RoundRobinArbiter(std::size_t size) : size_(size) {}

    template <typename Pred>
    std::optional<std::size_t> pick(Pred&& requesting) const {
        for (std::size_t i = 0; i < size_; ++i) {
            const std::size_t idx = (pointer_ + i) % size_;
            if (requesting(idx)) return idx;
        }
        return std::nullopt;
    }

    void grant(std::size_t winner) { pointer_ = (winner + 1) % size_; }

    std::size_t pointer() const { return pointer_; }
    std::size_t size() const { return size_; }

private:
    std::size_t size_;
    std::size_t pointer_ = 0;
};

}  // namespace memsim
