#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>

namespace ransomtrace {

/// Time source abstraction so tests can drive retries and rate limits
/// against a stub clock instead of sleeping for real.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::nanoseconds now() = 0;
    virtual void sleep_for(std::chrono::nanoseconds d) = 0;
};

class SystemClock : public Clock {
public:
    std::chrono::nanoseconds now() override;
    void sleep_for(std::chrono::nanoseconds d) override;
};

/// Test clock: `now` advances only through sleeps, which are recorded.
class FakeClock : public Clock {
public:
    std::chrono::nanoseconds now() override { return now_; }
    void sleep_for(std::chrono::nanoseconds d) override {
        now_ += d;
        total_slept_ += d;
    }
    std::chrono::nanoseconds total_slept() const { return total_slept_; }

private:
    std::chrono::nanoseconds now_{0};
    std::chrono::nanoseconds total_slept_{0};
};

/// Enforces a minimum spacing of 1/rate seconds between grants; shared
/// across all in-flight requests of a provider.
class RateLimiter {
public:
    RateLimiter(double per_second, std::shared_ptr<Clock> clock);

    /// Blocks (via the clock) until the next request may go out.
    void acquire();

private:
    std::chrono::nanoseconds interval_;
    std::shared_ptr<Clock> clock_;
    std::mutex mutex_;
    std::chrono::nanoseconds next_allowed_{0};
    bool first_ = true;
};

/// Exponential backoff with deterministic seedable jitter: the k-th
/// retry waits base * 2^k * (1 + j), j drawn from [0, 0.5) by a seeded
/// generator.
class Backoff {
public:
    Backoff(std::uint64_t seed, std::chrono::nanoseconds base = std::chrono::milliseconds(100),
            std::chrono::nanoseconds cap = std::chrono::seconds(10));

    std::chrono::nanoseconds delay(int retry_index);

private:
    std::mt19937_64 rng_;
    std::chrono::nanoseconds base_;
    std::chrono::nanoseconds cap_;
};

}  // namespace ransomtrace
