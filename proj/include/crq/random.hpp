#pragma once

#include <cstdint>
#include <random>

namespace crq {

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, mt19937_64 itself is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace crq
