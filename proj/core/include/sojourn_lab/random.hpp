#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sojourn_lab {

/*!
 * Counter-based random stream built on the Philox-4x32-10 block cipher.
 *
 * A stream is addressed by a 64-bit key (the experiment seed) and a 64-bit
 * stream id (typically the replication index). The cipher input counter is
 * (block index, stream id), so any (key, stream id) pair yields an
 * independent sequence that can be created on any thread without
 * coordination. Satisfies UniformRandomBitGenerator with 64-bit output.
 */
class CounterRng
{
  public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    CounterRng(std::uint64_t key, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    std::uint64_t key() const noexcept { return key_value_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    //! Ten rounds of Philox-4x32 on one counter block.
    static Block philox4x32_10(Block counter, Key key) noexcept;

  private:
    void refill() noexcept;

    std::uint64_t key_value_;
    std::uint64_t stream_id_;
    std::uint64_t block_index_ = 0;
    Block buffer_{};
    int next_word_ = 2;  // in 64-bit units; 2 means the buffer is spent
};

//! Stream for replication `index` of an experiment seeded with `seed`.
inline CounterRng replication_stream(std::uint64_t seed, std::uint64_t index) noexcept
{
    return CounterRng{seed, index};
}

//! Uniform double in [0, 1) using the top 53 bits of one draw.
inline double uniform01(CounterRng& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace sojourn_lab
