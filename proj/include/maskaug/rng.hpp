#pragma once

#include <cstdint>
#include <string_view>

namespace maskaug {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a, 64-bit. Stable across platforms; used for seed derivation and
/// text hashing.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Seed for one (global seed, epoch, video) draw. Independent of the order in
/// which samples are visited.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t epoch,
                          std::string_view video_id) noexcept;

/// Portable deterministic generator.
///
/// The state is a 64-bit counter advanced by the golden-ratio increment and
/// passed through `mix64` (SplitMix64). Uniform doubles take the top 53 bits.
/// Normal variates use the Box-Muller transform on two uniforms: the cosine
/// branch is returned first and the sine branch is cached for the next call.
/// Every value is therefore reproducible bit-for-bit from the seed alone.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1).
  double uniform() noexcept;
  /// Uniform integer in [0, n). `n` must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  /// Standard normal.
  double normal() noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace maskaug
