#pragma once

#include <cstdint>
#include <random>

namespace ordgsd {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Stream for trial `index`, attempt `attempt` under a master seed. The
/// result depends only on the three integers, never on scheduling order.
Rng derive_stream(std::uint64_t master, std::uint64_t index, std::uint64_t attempt = 0);

}  // namespace ordgsd
