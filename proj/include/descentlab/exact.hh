#ifndef DESCENTLAB_EXACT_HH
#define DESCENTLAB_EXACT_HH

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace descentlab {

/// Arbitrary-precision signed integer used for every statistic and coefficient.
using ExactInt = mpz_class;

/// Exact rational in canonical form.
using Rational = mpq_class;

/// Fixed-width storage for table entries whose magnitude is bounded a priori.
using Word128 = unsigned __int128;

// Raised when a documented precondition is not met by the caller.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Raised when a request exceeds a configured size limit.
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline ExactInt to_exact(Word128 v)
{
  ExactInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  ExactInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

inline ExactInt to_exact(std::uint64_t v)
{
  return ExactInt(static_cast<unsigned long>(v));
}

inline std::string to_string(const ExactInt& v) { return v.get_str(); }

std::string to_string(Word128 v);

/// Formats a rational whose denominator is a power of two as "a/2^k".
std::string format_dyadic(const Rational& r);

inline ExactInt pow2(unsigned k)
{
  ExactInt r = 1;
  r <<= k;
  return r;
}

} // namespace descentlab

#endif
