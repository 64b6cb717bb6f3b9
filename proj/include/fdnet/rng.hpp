#pragma once

#include <cstdint>
#include <random>

namespace fdnet {

// Seedable random stream. A stream is identified by (seed, stream_id); two
// streams built from the same pair produce bit-identical draw sequences, so
// per-trial streams can be consumed in any order or from any thread.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();

  // Uniform integer in [0, n), rejection-sampled so every value is equally
  // likely. n must be nonzero.
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fdnet
