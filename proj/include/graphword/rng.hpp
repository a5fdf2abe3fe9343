#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace graphword {

// All randomness in the toolkit flows from one master seed through named
// sub-streams, so that e.g. drawing extra negatives never perturbs the
// embedding init. Stream ids are FNV-1a hashes of (seed, name).

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::uint64_t v, std::uint64_t h) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (i * 8)) & 0xFFu;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name) {
  return fnv1a64(master, fnv1a64(name));
}

inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name,
                                    std::uint64_t index) {
  return fnv1a64(index, substream_seed(master, name));
}

inline std::mt19937_64 substream(std::uint64_t master, std::string_view name) {
  return std::mt19937_64(substream_seed(master, name));
}

inline std::mt19937_64 substream(std::uint64_t master, std::string_view name,
                                 std::uint64_t index) {
  return std::mt19937_64(substream_seed(master, name, index));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Box-Muller normal sampler. std::normal_distribution is avoided because its
// draw sequence differs across standard libraries; this one is fixed.
class NormalSampler {
 public:
  explicit NormalSampler(std::mt19937_64 eng) : eng_(eng) {}
  NormalSampler(std::uint64_t master, std::string_view name)
      : eng_(substream(master, name)) {}

  double operator()(double sigma = 1.0) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_ * sigma;
    }
    const double u1 = 1.0 - uniform01(eng_);  // (0, 1]
    const double u2 = uniform01(eng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta) * sigma;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace graphword
