// Independent reference computations shared by the unit tests. Nothing here
// calls into the library's counting code.
#ifndef DESCENTLAB_TEST_ORACLES_HH
#define DESCENTLAB_TEST_ORACLES_HH

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// Multinomial by Pascal's rule on the last part: m(g) = sum_i m(g - e_i).
inline std::uint64_t multinomial_pascal(std::vector<unsigned> parts)
{
  unsigned total = std::accumulate(parts.begin(), parts.end(), 0u);
  if (total == 0)
    return 1;
  std::uint64_t sum = 0;
  for (auto& p : parts) {
    if (p == 0)
      continue;
    --p;
    sum += multinomial_pascal(parts);
    ++p;
  }
  return sum;
}

// beta_n(S) for every S subset of [n-1] by listing permutations.
inline std::vector<std::uint64_t> beta_by_permutations(unsigned n)
{
  std::vector<unsigned> pi(n);
  std::iota(pi.begin(), pi.end(), 1u);
  std::vector<std::uint64_t> out(std::size_t{1} << (n - 1), 0);
  do {
    std::uint64_t d = 0;
    for (unsigned i = 0; i + 1 < n; ++i)
      if (pi[i] > pi[i + 1])
        d |= std::uint64_t{1} << i;
    ++out[d];
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

// Signed version: descents at i in [n] where pi_{i-1} > pi_i and pi_0 = 0.
inline std::vector<std::uint64_t> signed_beta_by_permutations(unsigned n)
{
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 1);
  std::vector<std::uint64_t> out(std::size_t{1} << n, 0);
  do {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      std::vector<int> pi(n + 1, 0);
      for (unsigned i = 0; i < n; ++i)
        pi[i + 1] = (signs >> i) & 1u ? -base[i] : base[i];
      std::uint64_t d = 0;
      for (unsigned i = 1; i <= n; ++i)
        if (pi[i - 1] > pi[i])
          d |= std::uint64_t{1} << (i - 1);
      ++out[d];
    }
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

// Number of alternating permutations pi_1 > pi_2 < pi_3 > ... of [n].
inline std::uint64_t alternating_count(unsigned n)
{
  std::vector<unsigned> pi(n);
  std::iota(pi.begin(), pi.end(), 1u);
  std::uint64_t c = 0;
  do {
    bool ok = true;
    for (unsigned i = 0; i + 1 < n && ok; ++i)
      ok = (i % 2 == 0) ? pi[i] > pi[i + 1] : pi[i] < pi[i + 1];
    c += ok;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return c;
}

} // namespace oracle

#endif
