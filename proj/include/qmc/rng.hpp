#pragma once

#include <cstdint>
#include <string_view>

namespace qmc {

/// Deterministic counter-seeded generator (xoshiro256**). Substreams are
/// derived by hashing a tag into the seed, so a run seed plus a stable set
/// of tags fully determines every random draw regardless of the order in
/// which streams are consumed.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    /// Independent stream derived from this stream's seed and a tag.
    RngStream substream(std::uint64_t tag) const;
    RngStream substream(std::string_view label) const;

    std::uint64_t next_u64();
    /// Uniform on [0,1) with 53 random bits.
    double next_double();
    /// Uniform on (0,1), never exactly 0 or 1; safe for quantile transforms.
    double next_open();
    /// Uniform integer on [0,n), n >= 1.
    std::uint32_t next_below(std::uint32_t n);
    /// Standard normal via the inverse-CDF transform.
    double next_normal();

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

} // namespace qmc
