#include "orthantmc/random.hpp"

#include "orthantmc/normal.hpp"

namespace orthantmc {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = std::uint64_t(kMult0) * c[0];
  const std::uint64_t p1 = std::uint64_t(kMult1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  k[0] += kWeyl0;
  k[1] += kWeyl1;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) philox_round(counter, key);
  return counter;
}

std::uint64_t RandomStream::next_u64() {
  if (buffer_pos_ >= 2) {
    // 128-bit counter = (block index, stream id); key = master seed.
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_index_),
        static_cast<std::uint32_t>(block_index_ >> 32),
        static_cast<std::uint32_t>(stream_id_),
        static_cast<std::uint32_t>(stream_id_ >> 32)};
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(master_seed_),
        static_cast<std::uint32_t>(master_seed_ >> 32)};
    const auto out = philox4x32_10(ctr, key);
    buffer_[0] = (std::uint64_t(out[0]) << 32) | out[1];
    buffer_[1] = (std::uint64_t(out[2]) << 32) | out[3];
    buffer_pos_ = 0;
    ++block_index_;
  }
  return buffer_[buffer_pos_++];
}

double RandomStream::next_uniform() {
  // 53-bit mantissa shifted to the open interval: lies in
  // [2^-54, 1 - 2^-54], never exactly 0 or 1.
  const std::uint64_t bits = next_u64() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_normal() { return normal_quantile(next_uniform()); }

std::vector<double> sample_uniform(RandomStream& stream, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = stream.next_uniform();
  return out;
}

std::vector<double> sample_standard_normal(RandomStream& stream, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = stream.next_normal();
  return out;
}

}  // namespace orthantmc
