#ifndef DESCENTLAB_NUMBERS_HH
#define DESCENTLAB_NUMBERS_HH

#include <descentlab/exact.hh>

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace descentlab {

/// An ordered list of positive integers. The empty composition has total 0.
class Composition {
public:
  Composition() = default;
  explicit Composition(std::vector<unsigned> parts);
  Composition(std::initializer_list<unsigned> parts)
    : Composition(std::vector<unsigned>(parts)) {}

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned total() const { return total_; }
  std::size_t size() const { return parts_.size(); }
  unsigned operator[](std::size_t i) const { return parts_[i]; }

  std::string str() const;

  friend bool operator==(const Composition&, const Composition&) = default;

private:
  std::vector<unsigned> parts_;
  unsigned total_ = 0;
};

/// A subset of [universe] stored as a bitmask: bit (i-1) is set iff i is a
/// member. Descent sets of S_n live in universe n-1, signed ones in universe n.
struct SubsetMask {
  unsigned universe = 0;
  std::uint64_t bits = 0;

  SubsetMask() = default;
  SubsetMask(unsigned universe, std::uint64_t bits);
  static SubsetMask of(unsigned universe, std::initializer_list<unsigned> elems);

  bool contains(unsigned i) const
  {
    return i >= 1 && i <= universe && ((bits >> (i - 1)) & 1u);
  }
  unsigned size() const { return static_cast<unsigned>(std::popcount(bits)); }
  /// Members in increasing order.
  std::vector<unsigned> elements() const;
  std::string str() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
};

inline std::uint64_t full_mask(unsigned universe)
{
  return universe >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << universe) - 1);
}

struct BinaryExpansion {
  std::vector<unsigned> exponents; // strictly decreasing
  unsigned popcount() const { return static_cast<unsigned>(exponents.size()); }
  std::uint64_t value() const;
};

BinaryExpansion binary_expansion(std::uint64_t n);

ExactInt factorial(unsigned n);
ExactInt binomial(unsigned n, unsigned k);

/// n! / prod(gamma_i!). Throws ContractViolation if gamma.total() != n.
ExactInt multinomial(unsigned n, const Composition& gamma);

/// Number of carries in the base-p column addition of the parts of gamma.
unsigned carries_base_p(const Composition& gamma, unsigned p);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const ExactInt& v, unsigned p);

bool is_multinomial_odd(const Composition& gamma);

/// The bijection D from subsets of [n-1] (n = S.universe + 1) to compositions of n.
Composition subset_to_composition(const SubsetMask& s);
SubsetMask composition_to_subset(const Composition& gamma);

/// Same bijection on raw bits, for hot loops.
std::vector<unsigned> mask_to_parts(std::uint64_t bits, unsigned n);
std::uint64_t parts_to_mask(const std::vector<unsigned>& parts);

/// Elements of [n-1] that are sums of a nonempty proper subset of the binary
/// powers of n, in increasing order.
std::vector<unsigned> essential_elements(unsigned n);

/// Euler (up/down) number E_n via the Seidel boustrophedon triangle.
ExactInt euler_number(unsigned n);

/// Springer number: number of alternating signed permutations of size n.
ExactInt signed_euler_number(unsigned n);

// Small-integer number theory used by the residue machinery.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n); // distinct, increasing
std::vector<std::uint64_t> divisors(std::uint64_t n);      // increasing
int mobius(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);
std::uint64_t radical(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
};
/// Decomposes q = p^t with t >= 1; returns prime 0 if q is not a prime power.
PrimePower as_prime_power(std::uint64_t q);

} // namespace descentlab

#endif
