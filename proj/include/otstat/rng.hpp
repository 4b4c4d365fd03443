#pragma once

#include "otstat/math.hpp"

#include <cstdint>
#include <random>

namespace otstat {

namespace detail {

//! splitmix64 round; used to mix seeds and tags into substream keys.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace detail

//! Derive a substream key from a root seed and up to three tags.
//! The mixing is a fixed counter scheme, so streams do not depend on the
//! order in which sibling streams are consumed.
inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t tag0,
                                    std::uint64_t tag1 = 0,
                                    std::uint64_t tag2 = 0)
{
  std::uint64_t s = root;
  std::uint64_t k = detail::splitmix64(s);
  s ^= tag0 + 0x632be59bd9b4e019ULL;
  k ^= detail::splitmix64(s);
  s ^= tag1 + 0x9e6c63d0a0e4b5f1ULL;
  k ^= detail::splitmix64(s);
  s ^= tag2 + 0xc2b2ae3d27d4eb4fULL;
  k ^= detail::splitmix64(s);
  return k;
}

//! Seeded random stream with platform-stable real-valued draws.
//! Normal variates go through normal_quantile rather than
//! std::normal_distribution so that output depends only on the engine.
class Rng {
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {
  }

  //! Uniform draw in the open interval (0, 1).
  double uniform01()
  {
    const std::uint64_t bits = engine_() >> 11; // 53 random bits
    return static_cast<double>(bits) * 0x1.0p-53 + 0x1.0p-54;
  }

  //! Uniform draw in (lo, hi).
  double uniform(double lo, double hi)
  {
    return lo + (hi - lo) * uniform01();
  }

  //! N(mean, sd^2) draw by inverse-cdf sampling.
  double normal(double mean = 0.0, double sd = 1.0)
  {
    return mean + sd * normal_quantile(uniform01());
  }

  //! Integer in [0, n).
  std::uint64_t below(std::uint64_t n)
  {
    return engine_() % n;
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace otstat
