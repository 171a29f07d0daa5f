#include "matgraph/rng.hpp"

#include "matgraph/error.hpp"
#include "matgraph/normal.hpp"

namespace matgraph {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(stream_ * 0xd1b54a32d192ed03ULL));
  return splitmix64(key + splitmix64(counter_++));
}

double Rng::uniform() {
  // 53 random bits, shifted half a step off zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidParameter("Rng::below: n must be positive");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

double Rng::normal() { return normal_quantile(uniform()); }

Rng Rng::substream(std::uint64_t index) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream_ + 0x632be59bd9b4e019ULL)), index);
}

}  // namespace matgraph
