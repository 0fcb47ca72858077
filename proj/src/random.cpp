#include "npop/random.hpp"

namespace npop {

Engine make_engine(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(counter), hi(counter), lo(stream), hi(stream)};
  return Engine(seq);
}

}  // namespace npop
