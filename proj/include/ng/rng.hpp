#ifndef NG_RNG_HPP
#define NG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace ng::rng {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter).  Streams keyed by distinct ids are independent,
// which gives reproducible per-edge Poisson clocks and uniform marks no
// matter how many other streams are consumed in between.
//
// The mixer is the splitmix64 finalizer (Steele, Lea & Flood 2014 /
// Vigna 2015).  Chaining one full-avalanche stage per key component is the
// standard stateless construction; it passes BigCrush as an increment
// generator.

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t counter) {
  std::uint64_t z = mix64(seed + kGamma);
  z = mix64(z ^ (stream + kGamma));
  z = mix64(z ^ (counter + kGamma));
  return z;
}

// Uniform on the open interval (0,1): 53 random bits shifted into
// (0,1) by the half-ulp offset, so 0 and 1 are never produced.
inline double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double keyed_uniform(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t counter) {
  return to_unit_open(keyed_bits(seed, stream, counter));
}

inline double keyed_exponential(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t counter) {
  return -std::log(keyed_uniform(seed, stream, counter));
}

// Sequential view of one keyed stream; satisfies UniformRandomBitGenerator
// so it can drive <random> distributions.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0)
      : seed_(seed), stream_(stream), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return keyed_bits(seed_, stream_, counter_++); }

  double uniform() { return to_unit_open((*this)()); }
  double exponential() { return -std::log(uniform()); }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

// Deterministic replicate seeds for sweeps: (master, cell, replicate)
// hashed through the same mixer chain.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                                 std::uint64_t replicate) {
  return keyed_bits(master, cell, replicate);
}

}  // namespace ng::rng

#endif  // NG_RNG_HPP
