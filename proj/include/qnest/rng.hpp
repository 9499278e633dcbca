#pragma once

#include <cstdint>
#include <random>

namespace qnest {

/// Deterministic 64-bit seeded random stream.
///
/// The engine is std::mt19937_64, whose update rule and output sequence are
/// fixed by the C++ standard, so a given seed produces the same draws on
/// every platform. Unit doubles are derived from the top 53 bits of each
/// output word: u = (x >> 11) * 2^-53, uniform on [0, 1).
///
/// Streams are caller-owned and never shared between concurrent samplers.
class ShotRng {
  public:
    explicit ShotRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace qnest
