#pragma once

// Delayed spike delivery. Time is measured in integer simulation steps.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace snnrc {

using neuron_id = std::uint32_t;

struct spike_event {
    neuron_id target = 0;
    double payload = 0.0;
    std::int64_t deliver_at = 0;
};

struct synapse {
    neuron_id target = 0;
    double payload = 0.0;
};

class spike_queue {
public:
    void push(const spike_event& ev) { pending_[ev.deliver_at].push_back(ev); ++size_; }

    /// Invokes `fn(event)` for every event due at or before `step`, in
    /// delivery-time then insertion order, and removes them.
    template <typename Fn>
    void drain_until(std::int64_t step, Fn&& fn)
    {
        auto it = pending_.begin();
        while (it != pending_.end() && it->first <= step) {
            for (const spike_event& ev : it->second) fn(ev);
            size_ -= it->second.size();
            it = pending_.erase(it);
        }
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Events currently scheduled for exactly `step`.
    std::span<const spike_event> due_at(std::int64_t step) const
    {
        auto it = pending_.find(step);
        if (it == pending_.end()) return {};
        return it->second;
    }

private:
    std::map<std::int64_t, std::vector<spike_event>> pending_;
    std::size_t size_ = 0;
};

/// Enqueues one event per outgoing synapse, due at now + delay. A spike
/// emitted during step `now` is consumed by the next drain, so a zero delay
/// means delivery on the following step.
void schedule_spike(spike_queue& queue, std::span<const synapse> fanout, std::int64_t now, std::int64_t delay);

}  // namespace snnrc
