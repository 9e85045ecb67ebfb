#include "roguewave/rng.hpp"

namespace roguewave {

namespace {

std::seed_seq make_seed_seq(std::uint64_t master_seed, std::uint64_t stream,
                            std::uint64_t index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffU); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(master_seed), hi(master_seed), lo(stream),
                       hi(stream),      lo(index),       hi(index)};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream,
                           std::uint64_t index) {
  auto seq = make_seed_seq(master_seed, stream, index);
  engine_.seed(seq);
}

}  // namespace roguewave
