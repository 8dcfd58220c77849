#pragma once

#include <cstdint>
#include <string_view>

namespace evsim {

// 64-bit FNV-1a, used to derive stream identifiers from component path
// strings such as "mzi/bs1" or "screen/detector/042".
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Counter-based splitmix64 generator. Each component owns one stream:
// the root seed fixes the starting counter and the stream id selects an
// odd Weyl increment, so streams never share a sequence and results do
// not depend on the order in which other components consume numbers.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
      : state_(root_seed ^ (stream_id * 0x9e3779b97f4a7c15ull)),
        increment_((stream_id << 1) | 1ull) {}
  RngStream(std::uint64_t root_seed, std::string_view path)
      : RngStream(root_seed, fnv1a64(path)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull * increment_;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution. Built from the raw integer
  // directly so sequences are identical across platforms and standard
  // library versions.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t increment_ = 1;
};

}  // namespace evsim
