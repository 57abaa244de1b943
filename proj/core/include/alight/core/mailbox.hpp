#pragma once

#include <mutex>
#include <optional>

namespace alight {

/// Single-slot mailbox: a post overwrites any unread value, take() empties it.
template <typename T>
class LatestValueMailbox {
public:
    void post(T value) {
        std::lock_guard lock(mutex_);
        if (slot_) ++dropped_;
        slot_ = std::move(value);
    }

    std::optional<T> take() {
        std::lock_guard lock(mutex_);
        std::optional<T> out;
        out.swap(slot_);
        return out;
    }

    std::optional<T> peek() const {
        std::lock_guard lock(mutex_);
        return slot_;
    }

    /// Number of values overwritten before being read.
    std::size_t dropped() const {
        std::lock_guard lock(mutex_);
        return dropped_;
    }

private:
    mutable std::mutex mutex_;
    std::optional<T> slot_;
    std::size_t dropped_ = 0;
};

}  // namespace alight
