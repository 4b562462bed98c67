#include <descentlab/descent.hh>

#include <algorithm>
#include <numeric>
#include <string>

namespace descentlab {

namespace {

// C(a, b) for a <= 63 in 128-bit words.
class BinomialRows {
public:
  explicit BinomialRows(unsigned n) : n_(n), rows_((n + 1) * (n + 1), 0)
  {
    for (unsigned a = 0; a <= n; ++a) {
      at(a, 0) = 1;
      for (unsigned b = 1; b <= a; ++b)
        at(a, b) = at(a - 1, b - 1) + (b <= a - 1 ? at(a - 1, b) : 0);
    }
  }
  Word128 operator()(unsigned a, unsigned b) const { return rows_[a * (n_ + 1) + b]; }

private:
  Word128& at(unsigned a, unsigned b) { return rows_[a * (n_ + 1) + b]; }
  unsigned n_;
  std::vector<Word128> rows_;
};

// Multinomial of the composition of n cut at the set bits of `cuts` (subset of [n-1]).
Word128 multinomial_at(const BinomialRows& c, unsigned n, std::uint64_t cuts)
{
  Word128 r = 1;
  unsigned prev = 0;
  for (std::uint64_t b = cuts; b != 0; b &= b - 1) {
    unsigned s = static_cast<unsigned>(std::countr_zero(b)) + 1;
    r *= c(s, s - prev);
    prev = s;
  }
  return r * c(n, n - prev);
}

// Signed statistic: blocks are cut at positions i-1 for every i >= 2 in S; the
// first block is forced positive unless 1 is in S, every other entry takes
// either sign freely.
Word128 alpha_signed_at(const BinomialRows& c, unsigned n, std::uint64_t s)
{
  const std::uint64_t cuts = s >> 1;
  Word128 m = multinomial_at(c, n, cuts);
  unsigned free_signs = n;
  if ((s & 1u) == 0) {
    unsigned first_block = cuts == 0 ? n : static_cast<unsigned>(std::countr_zero(cuts)) + 1;
    free_signs -= first_block;
  }
  return m << free_signs;
}

void check_table_size(unsigned n, bool is_signed, const DescentLimits& limits)
{
  if (n < 1)
    throw ContractViolation("descent tables need n >= 1");
  unsigned cap = is_signed ? limits.max_signed : limits.max_unsigned;
  if (n > cap)
    throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the configured " +
                             (is_signed ? std::string("signed") : std::string("unsigned")) +
                             " table limit " + std::to_string(cap));
}

std::uint64_t mod_u128(Word128 v, std::uint64_t m)
{
  return static_cast<std::uint64_t>(v % m);
}

} // namespace

DescentTable::DescentTable(unsigned n, bool is_signed, std::vector<Word128> values)
  : n_(n), signed_(is_signed), values_(std::move(values))
{
  if (n_ < 1)
    throw ContractViolation("DescentTable: n must be positive");
  if (universe() > 40)
    throw ResourceLimitError("DescentTable: universe too large");
  if (values_.size() != (std::size_t{1} << universe()))
    throw ContractViolation("DescentTable: expected 2^" + std::to_string(universe()) +
                            " entries, got " + std::to_string(values_.size()));
  ExactInt order = factorial(n_);
  if (signed_)
    order <<= n_;
  if (mpz_sizeinbase(order.get_mpz_t(), 2) > 127)
    throw ResourceLimitError("DescentTable: group order does not fit 128-bit entries");
  fits_u64_ = std::all_of(values_.begin(), values_.end(),
                          [](Word128 v) { return (v >> 64) == 0; });
}

ExactInt DescentTable::at(const SubsetMask& s) const
{
  if (s.universe != universe())
    throw ContractViolation("DescentTable::at: subset universe mismatch");
  return at(s.bits);
}

ExactInt DescentTable::total() const
{
  Word128 sum = 0;
  for (Word128 v : values_)
    sum += v;
  return to_exact(sum);
}

ExactInt DescentTable::max() const
{
  return to_exact(*std::max_element(values_.begin(), values_.end()));
}

ExactInt alpha(unsigned n, const SubsetMask& s)
{
  if (n < 1 || s.universe != n - 1)
    throw ContractViolation("alpha: subset must live in [n-1]");
  return multinomial(n, subset_to_composition(s));
}

ExactInt alpha_signed(unsigned n, const SubsetMask& s)
{
  if (n < 1 || s.universe != n)
    throw ContractViolation("alpha_signed: subset must live in [n]");
  const std::uint64_t cuts = s.bits >> 1;
  ExactInt r = multinomial(n, Composition(mask_to_parts(cuts, n)));
  unsigned free_signs = n;
  if (!s.contains(1))
    free_signs -= mask_to_parts(cuts, n).front();
  return r << free_signs;
}

DescentTable beta_table(unsigned n, bool is_signed, const DescentLimits& limits,
                        unsigned workers)
{
  check_table_size(n, is_signed, limits);
  const unsigned universe = is_signed ? n : n - 1;
  const std::size_t size = std::size_t{1} << universe;
  const BinomialRows c(n);
  std::vector<Word128> values(size);
  detail::parallel_slices(size, workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s)
      values[s] = is_signed ? alpha_signed_at(c, n, s) : multinomial_at(c, n, s);
  });
  // Every intermediate of the transform counts permutations with a prescribed
  // descent pattern, so it stays in [0, n!] and unsigned arithmetic is exact.
  subset_mobius(std::span<Word128>(values), workers);
  return DescentTable(n, is_signed, std::move(values));
}

DescentTable brute_force_table(unsigned n, bool is_signed, const DescentLimits& limits)
{
  if (n < 1)
    throw ContractViolation("brute_force_table: n must be positive");
  unsigned cap = is_signed ? limits.max_brute_signed : limits.max_brute_unsigned;
  if (n > cap)
    throw ResourceLimitError("brute_force_table: n=" + std::to_string(n) +
                             " above oracle limit " + std::to_string(cap));
  const unsigned universe = is_signed ? n : n - 1;
  std::vector<Word128> values(std::size_t{1} << universe, 0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    if (!is_signed) {
      std::uint64_t d = 0;
      for (unsigned i = 1; i < n; ++i)
        if (perm[i - 1] > perm[i])
          d |= std::uint64_t{1} << (i - 1);
      ++values[d];
      continue;
    }
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      std::uint64_t d = 0;
      int prev = 0;
      for (unsigned i = 1; i <= n; ++i) {
        int cur = ((signs >> (i - 1)) & 1u) ? -perm[i - 1] : perm[i - 1];
        if (prev > cur)
          d |= std::uint64_t{1} << (i - 1);
        prev = cur;
      }
      ++values[d];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return DescentTable(n, is_signed, std::move(values));
}

ParityBits beta_parity(unsigned n, const DescentLimits& limits)
{
  if (n < 1)
    throw ContractViolation("beta_parity: n must be positive");
  if (n > limits.max_parity)
    throw ResourceLimitError("beta_parity: n=" + std::to_string(n) +
                             " above parity limit " + std::to_string(limits.max_parity));
  ParityBits bits(n - 1);
  // alpha_n(S) is odd exactly when the partial sums of D(S) form a chain of
  // binary submasks of n (no carries in the column addition), so the odd
  // entries are enumerated directly instead of testing all 2^(n-1) sets.
  auto walk = [&](auto&& self, unsigned current, std::uint64_t mask) -> void {
    bits.flip(mask);
    const unsigned rest = n & ~current;
    for (unsigned add = rest; add != 0; add = (add - 1) & rest) {
      const unsigned next = current | add;
      if (next != n)
        self(self, next, mask | (std::uint64_t{1} << (next - 1)));
    }
  };
  walk(walk, 0u, 0);
  bits.subset_transform();
  return bits;
}

Rational rho(unsigned n, const DescentLimits& limits)
{
  ParityBits bits = beta_parity(n, limits);
  Rational r(to_exact(bits.count()), pow2(n - 1));
  r.canonicalize();
  return r;
}

Rational rho_from_table(const DescentTable& table)
{
  if (table.is_signed())
    throw ContractViolation("rho_from_table: unsigned table required");
  std::uint64_t odd = 0;
  for (Word128 v : table.raw_values())
    odd += static_cast<std::uint64_t>(v & 1u);
  Rational r(to_exact(odd), pow2(table.universe()));
  r.canonicalize();
  return r;
}

std::vector<std::uint64_t> residue_counts(const DescentTable& table, std::uint64_t m)
{
  if (m < 1)
    throw ContractViolation("residue_counts: modulus must be positive");
  std::vector<std::uint64_t> counts(m, 0);
  auto values = table.raw_values();
  if (table.fits_u64()) {
    for (Word128 v : values)
      ++counts[static_cast<std::uint64_t>(v) % m];
  } else {
    for (Word128 v : values)
      ++counts[mod_u128(v, m)];
  }
  return counts;
}

ResidueHistogram residue_histogram(const DescentTable& table, std::uint64_t m, unsigned order)
{
  if (m < 1)
    throw ContractViolation("residue_histogram: modulus must be positive");
  ResidueHistogram h;
  h.m = m;
  h.order = order;
  h.counts.assign(m, 0);
  auto values = table.raw_values();
  if (order == 0) {
    auto counts = residue_counts(table, m);
    for (std::uint64_t r = 0; r < m; ++r)
      h.counts[r] = to_exact(counts[r]);
    return h;
  }
  if (order == 1) {
    // Sum of all entries is the group order, which fits 128 bits.
    std::vector<Word128> sums(m, 0);
    for (Word128 v : values)
      sums[mod_u128(v, m)] += v;
    for (std::uint64_t r = 0; r < m; ++r)
      h.counts[r] = to_exact(sums[r]);
    return h;
  }
  ExactInt weight, factor;
  for (Word128 v : values) {
    if (v < order)
      continue; // falling factorial vanishes
    weight = to_exact(v);
    for (unsigned i = 1; i < order; ++i) {
      factor = to_exact(v - i);
      weight *= factor;
    }
    h.counts[mod_u128(v, m)] += weight;
  }
  return h;
}

ModPPrediction::ModPPrediction(unsigned n, std::uint64_t q) : n_(n), q_(q)
{
  PrimePower pp = as_prime_power(q);
  if (pp.prime == 0)
    throw ContractViolation("mod_p_prediction: q must be a prime power >= 2");
  if (n == 0 || n % q != 0)
    throw ContractViolation("mod_p_prediction: q must divide n");
  p_ = pp.prime;
  r_ = static_cast<unsigned>(n / q);
  DescentLimits wide;
  wide.max_unsigned = std::max(wide.max_unsigned, r_);
  DescentTable t = beta_table(r_, false, wide);
  beta_r_.assign(t.raw_values().begin(), t.raw_values().end());
}

std::uint64_t ModPPrediction::operator()(std::uint64_t mask) const
{
  std::uint64_t quotient = 0;
  unsigned outside = 0;
  for (std::uint64_t b = mask; b != 0; b &= b - 1) {
    std::uint64_t s = static_cast<std::uint64_t>(std::countr_zero(b)) + 1;
    if (s % q_ == 0)
      quotient |= std::uint64_t{1} << (s / q_ - 1);
    else
      ++outside;
  }
  std::uint64_t v = mod_u128(beta_r_[quotient], p_);
  if (outside % 2 == 1)
    v = (p_ - v) % p_;
  return v;
}

std::uint64_t mod_p_prediction(unsigned n, std::uint64_t q, const SubsetMask& s)
{
  if (n < 1 || s.universe != n - 1)
    throw ContractViolation("mod_p_prediction: subset must live in [n-1]");
  return ModPPrediction(n, q)(s.bits);
}

TwicePrimeClasses twice_prime_classes(const DescentTable& table, std::uint64_t p)
{
  if (!is_prime(p))
    throw ContractViolation("twice_prime_classes: p must be prime");
  auto counts = residue_counts(table, 2 * p);
  TwicePrimeClasses c;
  c.p = p;
  c.plus_one = counts[1];
  c.minus_one = counts[2 * p - 1];
  c.p_minus_one = counts[p - 1];
  c.p_plus_one = counts[(p + 1) % (2 * p)];
  std::uint64_t all = 0;
  for (auto x : counts)
    all += x;
  // p = 2 makes the four residues collide; count distinct ones only.
  std::uint64_t named = c.plus_one + c.minus_one + c.p_minus_one + c.p_plus_one;
  if (p == 2)
    named = counts[1] + counts[3];
  c.other = all - named;
  return c;
}

} // namespace descentlab
