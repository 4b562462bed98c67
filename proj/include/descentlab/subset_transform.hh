#ifndef DESCENTLAB_SUBSET_TRANSFORM_HH
#define DESCENTLAB_SUBSET_TRANSFORM_HH

#include <descentlab/exact.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace descentlab {

namespace detail {

// Runs body(lo, hi) over [0, count) split into at most `workers` slices and
// joins before returning.
template <class Body>
void parallel_slices(std::size_t count, unsigned workers, Body&& body)
{
  if (workers <= 1 || count < 4096) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  std::size_t step = (count + workers - 1) / workers;
  for (std::size_t lo = 0; lo < count; lo += step)
    pool.emplace_back([&body, lo, hi = std::min(count, lo + step)] { body(lo, hi); });
}

} // namespace detail

/// v[S] <- sum over T subset of S of v[T]. The size of v must be a power of two.
template <class T>
void subset_zeta(std::span<T> v, unsigned workers = 1)
{
  const std::size_t size = v.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    detail::parallel_slices(size / 2, workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        std::size_t s = ((k & ~(bit - 1)) << 1) | (k & (bit - 1)) | bit;
        v[s] += v[s ^ bit];
      }
    });
  }
}

/// v[S] <- sum over T subset of S of (-1)^{|S-T|} v[T]; inverse of subset_zeta.
template <class T>
void subset_mobius(std::span<T> v, unsigned workers = 1)
{
  const std::size_t size = v.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    detail::parallel_slices(size / 2, workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        std::size_t s = ((k & ~(bit - 1)) << 1) | (k & (bit - 1)) | bit;
        v[s] -= v[s ^ bit];
      }
    });
  }
}

/// Dense array of bits indexed by subset masks, with the subset-sum
/// transform over GF(2) done 64 masks at a time.
class ParityBits {
public:
  explicit ParityBits(unsigned universe)
    : universe_(universe),
      words_(universe >= 6 ? (std::size_t{1} << (universe - 6)) : 1, 0)
  {}

  unsigned universe() const { return universe_; }
  std::size_t size() const { return std::size_t{1} << universe_; }

  bool get(std::uint64_t mask) const { return (words_[mask >> 6] >> (mask & 63)) & 1u; }
  void flip(std::uint64_t mask) { words_[mask >> 6] ^= std::uint64_t{1} << (mask & 63); }
  void set(std::uint64_t mask, bool value)
  {
    if (get(mask) != value)
      flip(mask);
  }

  /// bit[S] <- XOR over T subset of S of bit[T]. Over GF(2) this is both the
  /// zeta and the Mobius transform.
  void subset_transform()
  {
    static constexpr std::uint64_t low_half[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
      0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
    const unsigned in_word = std::min(universe_, 6u);
    for (unsigned i = 0; i < in_word; ++i) {
      const unsigned shift = 1u << i;
      for (auto& w : words_)
        w ^= (w & low_half[i]) << shift;
    }
    if (universe_ < 6) {
      words_[0] &= universe_ == 0 ? 1u : ((std::uint64_t{1} << size()) - 1);
      return;
    }
    for (std::size_t bit = 1; bit < words_.size(); bit <<= 1)
      for (std::size_t s = 0; s < words_.size(); ++s)
        if (s & bit)
          words_[s] ^= words_[s ^ bit];
  }

  std::uint64_t count() const
  {
    std::uint64_t c = 0;
    const std::uint64_t keep =
      universe_ >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
    for (auto w : words_)
      c += static_cast<std::uint64_t>(std::popcount(w & keep));
    return c;
  }

private:
  unsigned universe_;
  std::vector<std::uint64_t> words_;
};

} // namespace descentlab

#endif
