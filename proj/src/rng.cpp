#include "ecgen/rng.hpp"

namespace ecgen::rng {

std::uint64_t derive_stream_seed(std::uint64_t global_seed, std::string_view id) {
  std::uint64_t h = global_seed;
  for (unsigned char c : id) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64_finalize(h);
}

}  // namespace ecgen::rng
