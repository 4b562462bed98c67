#include <descentlab/numbers.hh>

#include <algorithm>
#include <sstream>

namespace descentlab {

std::string to_string(Word128 v)
{
  if (v == 0)
    return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string format_dyadic(const Rational& r)
{
  const ExactInt& den = r.get_den();
  const ExactInt& num = r.get_num();
  if (den == 1)
    return num.get_str();
  std::size_t k = mpz_scan1(den.get_mpz_t(), 0);
  if (den != pow2(static_cast<unsigned>(k)))
    return num.get_str() + "/" + den.get_str();
  if (k == 1)
    return num.get_str() + "/2";
  return num.get_str() + "/2^" + std::to_string(k);
}

Composition::Composition(std::vector<unsigned> parts) : parts_(std::move(parts))
{
  for (unsigned p : parts_) {
    if (p == 0)
      throw ContractViolation("composition parts must be positive");
    total_ += p;
  }
}

std::string Composition::str() const
{
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    os << (i ? "," : "") << parts_[i];
  return os.str();
}

SubsetMask::SubsetMask(unsigned universe_, std::uint64_t bits_)
  : universe(universe_), bits(bits_)
{
  if (universe > 63)
    throw ContractViolation("subset universe too large for a 64-bit mask");
  if ((bits & ~full_mask(universe)) != 0)
    throw ContractViolation("subset has members outside its universe");
}

SubsetMask SubsetMask::of(unsigned universe, std::initializer_list<unsigned> elems)
{
  std::uint64_t bits = 0;
  for (unsigned e : elems) {
    if (e < 1 || e > universe)
      throw ContractViolation("subset element outside universe");
    bits |= std::uint64_t{1} << (e - 1);
  }
  return SubsetMask(universe, bits);
}

std::vector<unsigned> SubsetMask::elements() const
{
  std::vector<unsigned> out;
  for (std::uint64_t b = bits; b != 0; b &= b - 1)
    out.push_back(static_cast<unsigned>(std::countr_zero(b)) + 1);
  return out;
}

std::string SubsetMask::str() const
{
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (unsigned e : elements()) {
    os << (first ? "" : ",") << e;
    first = false;
  }
  os << '}';
  return os.str();
}

std::uint64_t BinaryExpansion::value() const
{
  std::uint64_t v = 0;
  for (unsigned e : exponents)
    v += std::uint64_t{1} << e;
  return v;
}

BinaryExpansion binary_expansion(std::uint64_t n)
{
  BinaryExpansion b;
  for (int j = 63; j >= 0; --j)
    if ((n >> j) & 1u)
      b.exponents.push_back(static_cast<unsigned>(j));
  return b;
}

ExactInt factorial(unsigned n)
{
  ExactInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

ExactInt binomial(unsigned n, unsigned k)
{
  if (k > n)
    return 0;
  ExactInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

ExactInt multinomial(unsigned n, const Composition& gamma)
{
  if (gamma.total() != n)
    throw ContractViolation("multinomial: composition total " +
                            std::to_string(gamma.total()) + " != " + std::to_string(n));
  // Product of binomials C(s_r, gamma_r) over the partial sums s_r.
  ExactInt r = 1;
  unsigned partial = 0;
  for (unsigned part : gamma.parts()) {
    partial += part;
    r *= binomial(partial, part);
  }
  return r;
}

unsigned carries_base_p(const Composition& gamma, unsigned p)
{
  if (p < 2)
    throw ContractViolation("carries_base_p: base must be at least 2");
  if (gamma.size() == 0)
    throw ContractViolation("carries_base_p: empty composition");
  std::vector<unsigned> rest = gamma.parts();
  unsigned carries = 0;
  unsigned long carry = 0;
  bool any = true;
  while (any || carry != 0) {
    any = false;
    unsigned long column = carry;
    for (unsigned& x : rest) {
      column += x % p;
      x /= p;
      any = any || x != 0;
    }
    carry = column / p;
    carries += static_cast<unsigned>(carry);
  }
  return carries;
}

unsigned valuation(const ExactInt& v, unsigned p)
{
  if (v == 0)
    throw ContractViolation("valuation of zero");
  ExactInt x = abs(v);
  unsigned k = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++k;
  }
  return k;
}

bool is_multinomial_odd(const Composition& gamma)
{
  unsigned seen = 0;
  for (unsigned part : gamma.parts()) {
    if (seen & part)
      return false;
    seen |= part;
  }
  return true;
}

std::vector<unsigned> mask_to_parts(std::uint64_t bits, unsigned n)
{
  std::vector<unsigned> parts;
  if (n == 0)
    return parts;
  unsigned prev = 0;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) {
    unsigned s = static_cast<unsigned>(std::countr_zero(b)) + 1;
    parts.push_back(s - prev);
    prev = s;
  }
  parts.push_back(n - prev);
  return parts;
}

std::uint64_t parts_to_mask(const std::vector<unsigned>& parts)
{
  std::uint64_t bits = 0;
  unsigned partial = 0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    partial += parts[i];
    bits |= std::uint64_t{1} << (partial - 1);
  }
  return bits;
}

Composition subset_to_composition(const SubsetMask& s)
{
  return Composition(mask_to_parts(s.bits, s.universe + 1));
}

SubsetMask composition_to_subset(const Composition& gamma)
{
  if (gamma.total() == 0)
    throw ContractViolation("composition_to_subset: empty composition");
  return SubsetMask(gamma.total() - 1, parts_to_mask(gamma.parts()));
}

std::vector<unsigned> essential_elements(unsigned n)
{
  if (n == 0)
    throw ContractViolation("essential_elements: n must be positive");
  std::vector<unsigned> out;
  // Proper nonempty bit-submasks of n.
  for (unsigned sub = (n - 1) & n; sub != 0; sub = (sub - 1) & n)
    out.push_back(sub);
  std::sort(out.begin(), out.end());
  return out;
}

ExactInt euler_number(unsigned n)
{
  // Seidel: row k has k+1 entries, T(k,0)=0, T(k,i)=T(k,i-1)+T(k-1,k-i).
  std::vector<ExactInt> row{1};
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<ExactInt> next(k + 1);
    next[0] = 0;
    for (unsigned i = 1; i <= k; ++i)
      next[i] = next[i - 1] + row[k - i];
    row = std::move(next);
  }
  return row.back();
}

ExactInt signed_euler_number(unsigned n)
{
  // Derivative polynomials of 1/(cos x - sin x): P_{k+1} = (1+u^2) P_k' + u P_k,
  // and the Springer number is P_n(1). Each step is additions of scaled rows.
  std::vector<ExactInt> poly{1};
  for (unsigned k = 0; k < n; ++k) {
    std::vector<ExactInt> next(poly.size() + 1);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      if (poly[d] == 0)
        continue;
      if (d >= 1)
        next[d - 1] += poly[d] * static_cast<unsigned long>(d);
      next[d + 1] += poly[d] * static_cast<unsigned long>(d + 1);
    }
    poly = std::move(next);
  }
  ExactInt sum = 0;
  for (const auto& c : poly)
    sum += c;
  return sum;
}

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      lo.push_back(d);
      if (d != n / d)
        hi.push_back(n / d);
    }
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

int mobius(std::uint64_t n)
{
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0)
        return 0;
      sign = -sign;
    }
  }
  if (n > 1)
    sign = -sign;
  return sign;
}

std::uint64_t totient(std::uint64_t n)
{
  std::uint64_t r = n;
  for (std::uint64_t p : prime_factors(n))
    r = r / p * (p - 1);
  return r;
}

std::uint64_t radical(std::uint64_t n)
{
  std::uint64_t r = 1;
  for (std::uint64_t p : prime_factors(n))
    r *= p;
  return r;
}

PrimePower as_prime_power(std::uint64_t q)
{
  auto ps = prime_factors(q);
  if (ps.size() != 1)
    return {};
  PrimePower pp{ps[0], 0};
  while (q > 1) {
    q /= ps[0];
    ++pp.exponent;
  }
  return pp;
}

} // namespace descentlab
