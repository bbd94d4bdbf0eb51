#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace orthantmc {

// One application of the Philox4x32-10 block cipher. Exposed for
// known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Counter-based random stream. A (master_seed, stream_id) pair names a
// reproducible sequence of draws; distinct stream_ids give statistically
// independent substreams, so parallel consumers each own one stream_id and
// results do not depend on scheduling. Copyable; single-owner mutable state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_id = 0) noexcept
      : master_seed_(master_seed), stream_id_(stream_id) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Fresh stream with the same master seed and the given substream index.
  RandomStream substream(std::uint64_t stream_id) const noexcept {
    return RandomStream(master_seed_, stream_id);
  }

  std::uint64_t next_u64();

  // Uniform strictly inside (0,1); 53 significant bits.
  double next_uniform();

  // Standard normal via the inverse CDF, one uniform per draw.
  double next_normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffer_pos_ = 2;  // 2 = empty, refill on next draw
};

std::vector<double> sample_uniform(RandomStream& stream, std::size_t n);
std::vector<double> sample_standard_normal(RandomStream& stream, std::size_t n);

}  // namespace orthantmc
