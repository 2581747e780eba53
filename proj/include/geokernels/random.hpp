#pragma once

#include <array>
#include <cstdint>

namespace geokernels {

/// Philox4x32-10 counter-based generator.
///
/// A generator is identified by (seed, stream); split() derives independent
/// streams, so draw i of sample j never depends on how many samples were
/// requested.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  Philox split(std::uint64_t stream) const;

  std::uint32_t next_u32();
  /// Uniform in (0, 1), 53 random bits.
  double uniform();
  /// Standard normal, Box–Muller on two uniforms.
  double normal();

  /// The raw block function, exposed for testing against known answers.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace geokernels
