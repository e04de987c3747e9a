#include "manetsim/engine.hpp"

#include <stdexcept>
#include <utility>

namespace manetsim {

void Engine::schedule(Seconds fire_time, EventKind kind) {
    if (fire_time < now_) {
        throw std::logic_error("schedule: event in the past");
    }
    queue_.push(Event{fire_time, next_sequence_++, std::move(kind)});
}

void Engine::run(Seconds until, const std::function<void(const Event&)>& dispatch) {
    while (!queue_.empty() && queue_.top().fire_time <= until) {
        Event ev = queue_.top();
        queue_.pop();
        now_ = ev.fire_time;
        dispatch(ev);
    }
    if (now_ < until) {
        now_ = until;
    }
}

} // namespace manetsim
