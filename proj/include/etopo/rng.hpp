#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace etopo {

// Purpose tags for derived RNG streams. Each purpose draws from its own
// stream so that enabling one feature never shifts another feature's draws.
enum class Stream : std::uint64_t {
  trial = 1,
  placement = 2,
  generation = 3,
  routing = 4,
  noise = 5,
};

std::uint64_t splitmix64(std::uint64_t& state);

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);
inline std::uint64_t derive_seed(std::uint64_t root, Stream stream) {
  return derive_seed(root, static_cast<std::uint64_t>(stream));
}

// mt19937_64 output is fixed by the standard, the distribution helpers below
// are written out so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t index(std::uint64_t bound);

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace etopo
