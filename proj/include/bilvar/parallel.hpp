#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace bilvar {

/// Worker count from BILVAR_THREADS (default: hardware concurrency, >= 1).
unsigned thread_count();

/// Runs fn(i) for i in [0, n) on up to thread_count() threads. Each index is
/// handled exactly once; callers write results to index-owned slots, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
/// Calls made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// splitmix64 finalizer of (seed, stream); used to derive per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace bilvar
