#include "maskaug/rng.hpp"

#include <cmath>
#include <numbers>

namespace maskaug {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t epoch,
                          std::string_view video_id) noexcept {
  std::uint64_t h = mix64(global_seed + kGoldenGamma);
  h = mix64(h ^ (epoch + kGoldenGamma));
  return mix64(h ^ fnv1a64(video_id));
}

std::uint64_t SeededRng::next_u64() noexcept {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double SeededRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv;
}

std::uint64_t SeededRng::uniform_index(std::uint64_t n) noexcept {
  // Rejection keeps the draw unbiased for any n.
  const std::uint64_t limit = -n % n;  // == 2^64 mod n
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= limit) return x % n;
  }
}

double SeededRng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * kTwoPow53Inv;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace maskaug
