#ifndef DESCENTLAB_CYCLO_HH
#define DESCENTLAB_CYCLO_HH

#include <descentlab/descent.hh>
#include <descentlab/exact.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace descentlab {

/// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<ExactInt> coeffs);
  static IntPoly monomial(std::size_t degree, const ExactInt& c = 1);
  /// t^k - 1
  static IntPoly x_pow_minus_one(std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  ExactInt operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ExactInt(0); }
  const std::vector<ExactInt>& coefficients() const { return coeffs_; }
  const ExactInt& leading() const;

  ExactInt eval(const ExactInt& x) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const ExactInt& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const ExactInt& c) { return a *= c; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);

  /// Remainder on division by a monic polynomial, computed by exact integer
  /// long division.
  IntPoly remainder(const IntPoly& monic) const;
  /// Quotient and remainder by a monic divisor.
  std::pair<IntPoly, IntPoly> divmod(const IntPoly& monic) const;

  /// p * (t^d - 1) and exact p / (t^d - 1) (throws if not divisible).
  IntPoly times_binomial(std::size_t d) const;
  IntPoly over_binomial(std::size_t d) const;

  std::string str() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

private:
  void trim();
  std::vector<ExactInt> coeffs_;
};

/// Phi_k, memoized; safe to call from several threads.
const IntPoly& cyclotomic(std::uint64_t k);

/// R_j(t) = sum_S beta(S)^(falling j) t^(beta(S) mod m) as a polynomial of degree < m.
IntPoly weighted_residue_poly(const DescentTable& table, std::uint64_t m, unsigned order);

enum class DivisibilityMethod {
  /// Multiply by the Phi_m idempotent of Q[t]/(t^m - 1), whose entries are
  /// Ramanujan sums; exact integer arithmetic, O(m * 2^omega(m)).
  projection,
  /// Exact long division by Phi_m.
  remainder,
};

/// True iff Phi_m divides the j-th weighted reduction R_j. Phi_m^(J+1)
/// divides Q iff this holds for every j = 0..J.
bool divides_order(const DescentTable& table, std::uint64_t m, unsigned j,
                   DivisibilityMethod method = DivisibilityMethod::projection);

/// Phi_m divides sum_r counts[r] t^r (counts has length m).
bool phi_divides_cyclic(const std::vector<ExactInt>& counts, std::uint64_t m);

/// Largest k <= cap with Phi_m^k | Q.
unsigned multiplicity(const DescentTable& table, std::uint64_t m, unsigned cap);

struct GaussianInt {
  ExactInt re;
  ExactInt im;
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
  std::string str() const;
};

enum class SpecialPoint { one, minus_one, i };

/// Q(1), Q(-1) or Q(i) from the m = 1, 2, 4 residue histograms.
GaussianInt eval_special(const DescentTable& table, SpecialPoint point);

/// Q(zeta) for a primitive m-th root zeta, as the remainder of R_0 mod Phi_m.
IntPoly eval_at_primitive_root(const DescentTable& table, std::uint64_t m);

/// Checks 2 Q(zeta) = scale * (zeta + zeta^-1) in Z[t]/Phi_m, i.e.
/// Q(zeta) = scale * Re(zeta).
bool equals_real_part_multiple(const DescentTable& table, std::uint64_t m,
                               const Rational& scale);

struct DerivativeCheck {
  std::uint64_t p = 0;
  ExactInt euler;          // E_{p-1}
  ExactInt magnitude;      // 2^p p E_{p-1}
  ExactInt stated;         // (-1)^{(p-1)/2} * magnitude
  bool stated_holds = false;   // 2 zeta Q'(zeta) = stated * (zeta - zeta^-1)
  bool negated_holds = false;  // same with -stated
  bool phi_divides = false;
  bool phi_squared_divides = false;
  bool ok() const { return stated_holds && phi_divides && !phi_squared_divides; }
};

/// zeta Q+-'_p(zeta) = Im(zeta) i (-1)^{(p-1)/2} 2^p p E_{p-1} for zeta a
/// primitive 4p-th root, checked in the power basis of Z[t]/Phi_{4p} after
/// writing Im(zeta) i = (zeta - zeta^{-1}) / 2 and clearing the 2.
DerivativeCheck signed_derivative_check(std::uint64_t p);

enum class CandidatePolicy { heuristic, exhaustive };
std::string policy_name(CandidatePolicy p);
CandidatePolicy parse_policy(const std::string& s);

/// Candidate indices m in [2, bound] under a policy.
std::vector<std::uint64_t> scan_candidates(unsigned n, std::uint64_t bound,
                                           CandidatePolicy policy);

struct CyclotomicFactor {
  std::uint64_t m = 0;
  unsigned multiplicity = 0;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct FactorReport {
  unsigned n = 0;
  bool is_signed = false;
  CandidatePolicy policy = CandidatePolicy::heuristic;
  std::uint64_t bound = 0;
  unsigned max_multiplicity = 0;
  std::vector<CyclotomicFactor> factors; // sorted by m

  /// "Phi_2^2 Phi_10", or "-" when empty.
  std::string factor_string() const;
  /// n=<n> signed=<0|1> policy=<name> bound=<B>: <factors>
  std::string to_text() const;
  std::string to_json() const;
  std::optional<unsigned> multiplicity_of(std::uint64_t m) const;
};

/// Parses "Phi_2^2 Phi_10" (or "-") into factors; accepts Phi_m^1 too.
std::vector<CyclotomicFactor> parse_factor_string(const std::string& s);

struct FactorScanOptions {
  std::uint64_t bound = 10000;
  unsigned max_multiplicity = 3;
  CandidatePolicy policy = CandidatePolicy::heuristic;
  unsigned workers = 1;
};

FactorReport factor_scan(const DescentTable& table, const FactorScanOptions& options = {});

} // namespace descentlab

#endif
