#ifndef DEEPFRI_CHANNEL_HPP
#define DEEPFRI_CHANNEL_HPP

#include <cstdint>
#include <string_view>

#include "deepfri/gf2n.hpp"

namespace deepfri {

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Simulated verifier randomness: a counter-based splittable PRNG. Every draw
// is a pure function of (seed, counter), so identical seeds replay identical
// transcripts and experiments can fan out over independent child channels.
class Channel {
 public:
  explicit Channel(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

  // Child channels depend only on (seed, tag), not on the parent's position.
  Channel child(std::string_view tag) const {
    return Channel(detail::splitmix64(seed_ ^ detail::fnv1a64(tag)));
  }

  uint64_t next_u64() { return detail::splitmix64(seed_ + 0x632be59bd9b4e019ULL * ++counter_); }

  FieldElement field_element(const Field& field) {
    return field.element(next_u64() & field.mask());
  }

  // Uniform in [0, bound) by rejection sampling.
  uint64_t index(uint64_t bound) {
    DFRI_REQUIRE(bound > 0, ErrorCode::kBadArgument, "empty range");
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
    for (;;) {
      uint64_t v = next_u64();
      if (v < limit || limit == 0) return v % bound;
    }
  }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

}  // namespace deepfri

#endif  // DEEPFRI_CHANNEL_HPP
