#ifndef ROTOR_RNG_HPP
#define ROTOR_RNG_HPP

#include <bit>
#include <concepts>
#include <cstdint>
#include <string_view>

namespace rotor {

// splitmix64 finalizer; also used as the stable seed-derivation hash.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic stream generator. Self-contained so that sequences are
// bit-identical across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t x, r;
    do {
      x = next_u64();
      r = x % bound;
    } while (x - r > 0ULL - bound);
    return r;
  }

  // Top bits of one draw; exact for power-of-two ranges.
  std::uint64_t next_bits(unsigned bits) {
    return bits == 0 ? 0 : next_u64() >> (64 - bits);
  }

  double next_double() {  // [0, 1), 53 bits
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Stable seed derivation: adding experiment cells must never perturb the
// sequences of existing ones, so seeds hash cell identity, never position.
class SeedHash {
 public:
  explicit SeedHash(std::uint64_t base) : h_(mix64(base ^ 0x5bf03635d78b35b1ULL)) {}

  template <std::integral T>
  SeedHash& add(T v) {
    h_ = mix64(h_ ^ static_cast<std::uint64_t>(v));
    return *this;
  }

  SeedHash& add(std::string_view s) {
    std::uint64_t acc = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
      acc ^= c;
      acc *= 0x100000001b3ULL;
    }
    return add(acc);
  }

  SeedHash& add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }

  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_;
};

}  // namespace rotor

#endif
