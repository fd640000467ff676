#pragma once

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <utility>

#include "memsim/types.hpp"

namespace memsim {

/// Bounded FIFO modelling one register stage: an entry pushed in cycle N is
/// visible to its consumer from cycle N+1 on.
template <typename T>
class TimedFifo {
public:
    struct Entry {
        T value;
        Cycle pushedAt;
    };

    explicit TimedFifo(std::size_t capacity) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool full() const { return entries_.size() >= capacity_; }

    void push(T value, Cycle now) {
        if (full()) throw SimulationError("push into a full queue");
        entries_.push_back(Entry{std::move(value), now});
    }

    bool head_visible(Cycle now) const { return !entries_.empty() && entries_.front().pushedAt < now; }
    const T& front() const { return entries_.front().value; }

    T pop() {
        T v = std::move(entries_.front().value);
        entries_.pop_front();
        return v;
    }

    // Multi-dequeue support: in-order scan with removal of selected entries.
    std::deque<Entry>& entries() { return entries_; }
    const std::deque<Entry>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::deque<Entry> entries_;
};

}  // namespace memsim
