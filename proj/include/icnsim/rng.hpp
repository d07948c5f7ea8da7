#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace icnsim {

// One deterministic random stream.  Every consumer of randomness in a run
// gets its own stream, keyed by (run seed, owner id, purpose tag), so that
// adding a draw in one place can never shift the values seen elsewhere.
//
// Unit draws are built from the raw 64-bit output instead of
// uniform_real_distribution so the exact sequence does not depend on the
// standard library in use.
class RngStream {
public:
  RngStream() : RngStream(0, 0, 0) {}

  RngStream(std::uint64_t seed, std::uint64_t owner, std::uint64_t tag) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(owner), static_cast<std::uint32_t>(owner >> 32),
        static_cast<std::uint32_t>(tag),  static_cast<std::uint32_t>(tag >> 32)};
    gen_.seed(seq);
  }

  // Uniform in [0, 1).  53 mantissa bits of one mt19937_64 output.
  double next_unit() {
    if (forced_) return *forced_;
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).  n = 0 is a caller bug; returns 0.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) return 0;
    // rejection sampling keeps the distribution exact and the stream
    // platform-independent
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t next_between(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Test hook: make next_unit() return a constant (e.g. exactly 0.0 or 1.0)
  // so probabilistic decisions can be pinned down in traces.
  void force_unit(std::optional<double> v) { forced_ = v; }

private:
  std::mt19937_64 gen_;
  std::optional<double> forced_;
};

// Stream purpose tags.  Owner is a node id where one exists, 0 otherwise.
namespace rng_tag {
constexpr std::uint64_t topology = 1;
constexpr std::uint64_t workload = 2;
constexpr std::uint64_t engine = 3;   // loss and jitter draws
constexpr std::uint64_t strategy = 4; // per-node caching decisions
constexpr std::uint64_t cs = 5;       // random-replacement evictions
} // namespace rng_tag

} // namespace icnsim
