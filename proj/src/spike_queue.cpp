#include "snnrc/spike_queue.hpp"

#include "snnrc/error.hpp"

namespace snnrc {

void schedule_spike(spike_queue& queue, std::span<const synapse> fanout, std::int64_t now, std::int64_t delay)
{
    if (delay < 0) throw config_error{"spike delay must be non-negative"};
    for (const synapse& s : fanout) queue.push({s.target, s.payload, now + delay});
}

}  // namespace snnrc
