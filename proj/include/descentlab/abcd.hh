#ifndef DESCENTLAB_ABCD_HH
#define DESCENTLAB_ABCD_HH

#include <descentlab/descent.hh>
#include <descentlab/exact.hh>

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace descentlab {

/// Homogeneous polynomial in the non-commuting letters a, b. Words of length
/// `degree` are bit-encoded: bit i set means letter b at position i+1, so the
/// coefficient of u_S sits at the mask of S.
class AbPoly {
public:
  explicit AbPoly(unsigned degree);

  unsigned degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  const ExactInt& operator[](std::uint64_t mask) const { return coeffs_.at(mask); }
  ExactInt& operator[](std::uint64_t mask) { return coeffs_.at(mask); }
  const std::vector<ExactInt>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  std::size_t odd_count() const;

  friend bool operator==(const AbPoly&, const AbPoly&) = default;

private:
  unsigned degree_;
  std::vector<ExactInt> coeffs_;
};

/// "aab"-style spelling of an ab-word mask of the given length.
std::string ab_word(std::uint64_t mask, unsigned degree);
/// Inverse of ab_word; throws ContractViolation on letters other than a, b.
std::uint64_t ab_mask(const std::string& word);

/// Polynomial in c (weight 1) and d (weight 2), keyed by words over {c, d}.
class CdPoly {
public:
  explicit CdPoly(unsigned degree) : degree_(degree) {}

  unsigned degree() const { return degree_; }
  const std::map<std::string, ExactInt>& terms() const { return terms_; }
  ExactInt coefficient(const std::string& word) const;
  void add(const std::string& word, const ExactInt& value);

  void dump(std::ostream& os) const;
  std::string str() const;

  friend bool operator==(const CdPoly&, const CdPoly&) = default;

private:
  unsigned degree_;
  std::map<std::string, ExactInt> terms_; // zero coefficients are never stored
};

/// Weight of a cd-word (c = 1, d = 2); throws on other letters.
unsigned cd_weight(const std::string& word);

/// All cd-words of the given weight, in lexicographic order (c < d).
std::vector<std::string> cd_words(unsigned degree);

/// Raised when an ab-polynomial is not a combination of c and d. The
/// residual is what is left after eliminating every cd leading term.
class NotInSpanError : public std::runtime_error {
public:
  NotInSpanError(const std::string& what, AbPoly residual)
    : std::runtime_error(what), residual_(std::move(residual)) {}
  const AbPoly& residual() const { return residual_; }

private:
  AbPoly residual_;
};

/// Evaluation a_i = 1, b_i = -1 for i in T, b_i = 1 otherwise.
struct SignVector {
  unsigned universe = 0;
  std::uint64_t t = 0;
  SignVector(unsigned universe, std::uint64_t t);
};

AbPoly ab_index(std::span<const ExactInt> h, unsigned degree);
AbPoly ab_index(const DescentTable& table);

CdPoly ab_to_cd(const AbPoly& p);
AbPoly cd_to_ab(const CdPoly& p);

/// ab -> 2d scanning left to right, every other letter -> c.
CdPoly omega(const AbPoly& p);

/// a * p.
AbPoly prepend_a(const AbPoly& p);

ExactInt signed_sum(const AbPoly& p, const SignVector& t);
ExactInt signed_sum(const DescentTable& table, const SignVector& t);

/// True when T has a maximal run [s, t] of consecutive elements of odd length.
bool has_isolated_odd_interval(std::uint64_t t, unsigned universe);

/// [u a v] Psi(B_{m+n}) + [u b v] Psi(B_{m+n}) compared with two right-hand sides:
///   product: C(m+n, m) * [u]Psi(B_m) * [v]Psi(B_n)
///   sum:     C(m+n, m) * [u]Psi(B_m) + [v]Psi(B_n)
struct MacMahonCheck {
  ExactInt lhs;
  ExactInt product_rhs;
  ExactInt sum_rhs;
  bool product_holds = false;
  bool sum_holds = false;
};

MacMahonCheck macmahon_multiplication_check(unsigned m, unsigned n, const std::string& u,
                                            const std::string& v);

/// sum_i alpha_i c^i d c^{deg-i-2}, i = 0..deg-2.
CdPoly single_d_sum(unsigned degree, const std::vector<ExactInt>& alpha);

} // namespace descentlab

#endif
