#include "sojourn_lab/random.hpp"

namespace sojourn_lab {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) noexcept
{
    std::uint64_t const product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

inline CounterRng::Block philox_round(CounterRng::Block const& ctr, CounterRng::Key const& key) noexcept
{
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMul0, ctr[0], lo0, hi0);
    mulhilo(kMul1, ctr[2], lo1, hi1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

CounterRng::CounterRng(std::uint64_t key, std::uint64_t stream_id) noexcept
    : key_value_{key}, stream_id_{stream_id}
{
}

CounterRng::Block CounterRng::philox4x32_10(Block counter, Key key) noexcept
{
    counter = philox_round(counter, key);
    for (int round = 1; round < 10; ++round)
    {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        counter = philox_round(counter, key);
    }
    return counter;
}

void CounterRng::refill() noexcept
{
    Block const counter{static_cast<std::uint32_t>(block_index_),
                        static_cast<std::uint32_t>(block_index_ >> 32),
                        static_cast<std::uint32_t>(stream_id_),
                        static_cast<std::uint32_t>(stream_id_ >> 32)};
    Key const key{static_cast<std::uint32_t>(key_value_),
                  static_cast<std::uint32_t>(key_value_ >> 32)};
    buffer_ = philox4x32_10(counter, key);
    ++block_index_;
    next_word_ = 0;
}

CounterRng::result_type CounterRng::operator()() noexcept
{
    if (next_word_ == 2)
    {
        refill();
    }
    auto const lo = buffer_[2 * next_word_];
    auto const hi = buffer_[2 * next_word_ + 1];
    ++next_word_;
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

}  // namespace sojourn_lab
