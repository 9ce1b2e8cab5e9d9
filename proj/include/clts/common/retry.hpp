#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <thread>

namespace clts {

struct RetryPolicy {
    int max_retries = 3;
    std::chrono::milliseconds base_delay{500};
    std::chrono::milliseconds max_delay{30000};
};

/// Exponential backoff with full jitter: attempt k (0-based) sleeps a
/// uniform draw from [0, min(max_delay, base_delay * 2^k)].
inline std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt,
                                               std::uint64_t jitter_seed) {
    if (policy.base_delay.count() <= 0) return std::chrono::milliseconds{0};
    const auto cap = std::min<std::int64_t>(policy.max_delay.count(),
                                            policy.base_delay.count() << std::min(attempt, 20));
    std::mt19937_64 rng(jitter_seed + static_cast<std::uint64_t>(attempt));
    std::uniform_int_distribution<std::int64_t> dist(0, cap);
    return std::chrono::milliseconds{dist(rng)};
}

/// Calls fn() up to max_retries + 1 times. `Retryable` exceptions trigger
/// another attempt; the last one propagates.
template <typename Retryable, typename Fn>
auto with_retries(const RetryPolicy& policy, std::uint64_t jitter_seed, Fn&& fn) {
    for (int attempt = 0;; ++attempt) {
        try {
            return fn();
        } catch (const Retryable&) {
            if (attempt >= policy.max_retries) throw;
            std::this_thread::sleep_for(backoff_delay(policy, attempt, jitter_seed));
        }
    }
}

}  // namespace clts
