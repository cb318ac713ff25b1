#include "ransomtrace/rate_limiter.hpp"

#include <thread>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

std::chrono::nanoseconds SystemClock::now() {
    return std::chrono::steady_clock::now().time_since_epoch();
}

void SystemClock::sleep_for(std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); }

RateLimiter::RateLimiter(double per_second, std::shared_ptr<Clock> clock)
    : clock_(std::move(clock)) {
    if (per_second <= 0) throw Error("rate limit must be positive");
    interval_ = std::chrono::nanoseconds(static_cast<std::int64_t>(1e9 / per_second));
}

void RateLimiter::acquire() {
    std::lock_guard lock(mutex_);
    auto now = clock_->now();
    if (first_) {
        first_ = false;
        next_allowed_ = now + interval_;
        return;
    }
    if (now < next_allowed_) {
        clock_->sleep_for(next_allowed_ - now);
        now = next_allowed_;
    }
    next_allowed_ = now + interval_;
}

Backoff::Backoff(std::uint64_t seed, std::chrono::nanoseconds base, std::chrono::nanoseconds cap)
    : rng_(seed), base_(base), cap_(cap) {}

std::chrono::nanoseconds Backoff::delay(int retry_index) {
    std::uniform_real_distribution<double> jitter(0.0, 0.5);
    double scale = static_cast<double>(std::int64_t{1} << std::min(retry_index, 20));
    auto d = std::chrono::nanoseconds(
        static_cast<std::int64_t>(static_cast<double>(base_.count()) * scale *
                                  (1.0 + jitter(rng_))));
    return std::min(d, cap_);
}

}  // namespace ransomtrace
