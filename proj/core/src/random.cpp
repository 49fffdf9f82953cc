#include "ordgsd/random.hpp"

namespace ordgsd {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng derive_stream(std::uint64_t master, std::uint64_t index, std::uint64_t attempt) {
  std::uint64_t s = mix_seed(master);
  s = mix_seed(s ^ index);
  s = mix_seed(s ^ (attempt * 0x632be59bd9b4e019ULL));
  return Rng(s);
}

}  // namespace ordgsd
