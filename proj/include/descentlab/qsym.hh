#ifndef DESCENTLAB_QSYM_HH
#define DESCENTLAB_QSYM_HH

#include <descentlab/exact.hh>
#include <descentlab/numbers.hh>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace descentlab {

enum class QBasis { M, L };

/// Homogeneous quasisymmetric function of a fixed degree n, stored densely:
/// the composition gamma of n is keyed by its subset image D^{-1}(gamma)
/// in [n-1]. An optional modulus is fixed at construction; all coefficients
/// are then kept reduced to [0, modulus).
class QSymPoly {
public:
  explicit QSymPoly(unsigned degree, QBasis basis = QBasis::M,
                    std::optional<std::uint64_t> modulus = std::nullopt);

  unsigned degree() const { return degree_; }
  QBasis basis() const { return basis_; }
  std::optional<std::uint64_t> modulus() const { return modulus_; }
  std::size_t size() const { return coeffs_.size(); }

  const ExactInt& operator[](std::uint64_t mask) const { return coeffs_.at(mask); }
  const ExactInt& coefficient(const Composition& gamma) const;
  void set(std::uint64_t mask, const ExactInt& value);
  void add(std::uint64_t mask, const ExactInt& value);
  void add(const Composition& gamma, const ExactInt& value);
  const std::vector<ExactInt>& coefficients() const { return coeffs_; }

  /// Monomial basis element M_gamma (or L_gamma when basis is L).
  static QSymPoly basis_element(const Composition& gamma, QBasis basis = QBasis::M,
                                std::optional<std::uint64_t> modulus = std::nullopt);

  /// Coefficients reduced modulo m. Only allowed on unreduced polynomials or
  /// when m divides the current modulus.
  QSymPoly reduced(std::uint64_t m) const;

  std::size_t nonzero_count() const;

  /// One "parts : coefficient" line per nonzero coefficient, in mask order.
  void dump(std::ostream& os) const;
  std::string dump() const;

  friend bool operator==(const QSymPoly&, const QSymPoly&) = default;

private:
  void normalize(ExactInt& v) const;

  unsigned degree_;
  QBasis basis_;
  std::optional<std::uint64_t> modulus_;
  std::vector<ExactInt> coeffs_;
};

QSymPoly m_to_l(const QSymPoly& p);
QSymPoly l_to_m(const QSymPoly& p);

/// Quasi-shuffle (overlapping shuffle) product in the M basis.
QSymPoly operator*(const QSymPoly& a, const QSymPoly& b);

/// All quasi-shuffles of two compositions, with multiplicity.
std::vector<std::vector<unsigned>> quasi_shuffles(const std::vector<unsigned>& a,
                                                  const std::vector<unsigned>& b);

/// An ordered list of disjoint nonempty blocks covering [k].
struct OrderedSetPartition {
  std::vector<std::vector<unsigned>> blocks;
};

/// Every ordered set partition of [k] (k <= 8), in a fixed deterministic order.
std::vector<OrderedSetPartition> ordered_set_partitions(unsigned k);

inline constexpr unsigned kMaxOrderedPartitionSize = 8;

/// M_(m_1) ... M_(m_k) as a sum over ordered set partitions of [k], each block
/// contributing the sum of its m_i as one part.
QSymPoly product_monomial_singletons(const std::vector<unsigned>& parts,
                                     std::optional<std::uint64_t> modulus = std::nullopt);

/// Size caps for expanding F(B_n) and F_B(C_n).
struct QSymLimits {
  unsigned max_exact = 12;
  unsigned max_reduced = 18;
  unsigned max_frobenius = 24;
};

/// F(B_n) = M_(1)^n in the M basis, optionally reduced. Up to max_exact (or
/// max_reduced with a modulus) the power is expanded directly; beyond that a
/// prime modulus p uses M_(1)^(p^i) = M_(p^i) mod p on the base-p digits of n.
QSymPoly f_boolean(unsigned n, std::optional<std::uint64_t> modulus = std::nullopt,
                   const QSymLimits& limits = {});

/// Number of odd L-coefficients of a degree-n polynomial given in the M basis
/// mod 2. Works on packed bits, so it handles n up to 31.
std::uint64_t odd_l_coefficient_count(unsigned degree,
                                      const std::vector<std::uint64_t>& odd_m_masks);

/// Type B quasisymmetric function of degree n+1 in the basis M^B or L^B. The
/// composition (g0, g1, ..., gm) of n+1 is keyed by its subset image in [n];
/// M^B_(g0,...,gm) = s^(g0-1) M_(g1,...,gm).
class BQSymPoly {
public:
  explicit BQSymPoly(unsigned n, QBasis basis = QBasis::M,
                     std::optional<std::uint64_t> modulus = std::nullopt);

  /// n, where the polynomial has degree n+1.
  unsigned rank() const { return n_; }
  unsigned degree() const { return n_ + 1; }
  QBasis basis() const { return basis_; }
  std::optional<std::uint64_t> modulus() const { return modulus_; }

  const ExactInt& operator[](std::uint64_t mask) const { return coeffs_.at(mask); }
  const ExactInt& coefficient(const Composition& gamma) const;
  void add(std::uint64_t mask, const ExactInt& value);
  const std::vector<ExactInt>& coefficients() const { return coeffs_; }

  /// Multiplies by (s + scale * M_(1)), raising the degree by one.
  BQSymPoly times_s_plus(const ExactInt& scale) const;

  void dump(std::ostream& os) const;

  friend bool operator==(const BQSymPoly&, const BQSymPoly&) = default;

private:
  friend BQSymPoly mb_to_lb(const BQSymPoly& p);
  friend BQSymPoly lb_to_mb(const BQSymPoly& p);
  void normalize(ExactInt& v) const;

  unsigned n_;
  QBasis basis_;
  std::optional<std::uint64_t> modulus_;
  std::vector<ExactInt> coeffs_;
};

BQSymPoly mb_to_lb(const BQSymPoly& p);
BQSymPoly lb_to_mb(const BQSymPoly& p);

/// F_B(C_n) = (s + 2 M_(1))^n in the M^B basis.
BQSymPoly f_cubical_B(unsigned n, std::optional<std::uint64_t> modulus = std::nullopt,
                      const QSymLimits& limits = {});

} // namespace descentlab

#endif
