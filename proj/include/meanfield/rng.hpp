#ifndef MEANFIELD_RNG_HPP_
#define MEANFIELD_RNG_HPP_

#include <cstdint>
#include <random>

namespace meanfield {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream seed for replica r under a master seed. Streams are decorrelated by
// double mixing; replica 0 with master m is not the same stream as master m+1.
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t r) {
  return splitmix64(splitmix64(master) ^ splitmix64(r ^ 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uni_(engine_); }
  double normal() { return norm_(engine_); }
  // Exponential waiting time with the given rate.
  double exponential(double rate) {
    return std::exponential_distribution<double>(rate)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uni_{0.0, 1.0};
  std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace meanfield

#endif  // MEANFIELD_RNG_HPP_
