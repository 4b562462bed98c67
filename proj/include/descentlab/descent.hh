#ifndef DESCENTLAB_DESCENT_HH
#define DESCENTLAB_DESCENT_HH

#include <descentlab/exact.hh>
#include <descentlab/numbers.hh>
#include <descentlab/subset_transform.hh>

#include <cstdint>
#include <span>
#include <vector>

namespace descentlab {

/// Size caps for table construction. These are configuration: going past them
/// raises ResourceLimitError instead of truncating.
struct DescentLimits {
  unsigned max_unsigned = 24;
  unsigned max_signed = 18;
  unsigned max_brute_unsigned = 9;
  unsigned max_brute_signed = 7;
  unsigned max_parity = 31;
};

/// Full map S -> beta_n(S) (or the signed statistic) over every subset of the
/// universe [n-1] (unsigned) or [n] (signed), indexed by mask.
///
/// Entries are held in 128-bit words: every entry is at most the group order
/// n! (or 2^n n!), and the constructor rejects n for which that bound would
/// not fit, so the stored values are exact.
class DescentTable {
public:
  DescentTable(unsigned n, bool is_signed, std::vector<Word128> values);

  unsigned n() const { return n_; }
  bool is_signed() const { return signed_; }
  unsigned universe() const { return signed_ ? n_ : n_ - 1; }
  std::size_t size() const { return values_.size(); }

  ExactInt at(std::uint64_t mask) const { return to_exact(values_.at(mask)); }
  ExactInt at(const SubsetMask& s) const;
  Word128 raw(std::uint64_t mask) const { return values_[mask]; }
  std::span<const Word128> raw_values() const { return values_; }

  /// Sum of all entries: n! unsigned, 2^n n! signed.
  ExactInt total() const;
  ExactInt max() const;
  /// True when every entry is below 2^64.
  bool fits_u64() const { return fits_u64_; }

  friend bool operator==(const DescentTable& a, const DescentTable& b)
  {
    return a.n_ == b.n_ && a.signed_ == b.signed_ && a.values_ == b.values_;
  }

private:
  unsigned n_;
  bool signed_;
  std::vector<Word128> values_;
  bool fits_u64_ = true;
};

/// counts[r] = sum over S with beta(S) = r (mod m) of beta(S)(beta(S)-1)...(beta(S)-j+1).
struct ResidueHistogram {
  std::uint64_t m = 1;
  unsigned order = 0;
  std::vector<ExactInt> counts;
};

/// Number of permutations of [n] whose descent set is contained in S.
ExactInt alpha(unsigned n, const SubsetMask& s);

/// Number of signed permutations of [n] whose descent set (with pi_0 = 0) is
/// contained in S, for S a subset of [n].
ExactInt alpha_signed(unsigned n, const SubsetMask& s);

/// Exact table built from alpha by the subset Mobius transform.
DescentTable beta_table(unsigned n, bool is_signed, const DescentLimits& limits = {},
                        unsigned workers = 1);

/// Table built by enumerating every (signed) permutation; independent oracle.
DescentTable brute_force_table(unsigned n, bool is_signed, const DescentLimits& limits = {});

/// Parity of beta_n(S) for every S subset of [n-1], computed over GF(2).
ParityBits beta_parity(unsigned n, const DescentLimits& limits = {});

/// Proportion of subsets S of [n-1] with beta_n(S) odd, via the GF(2) path.
Rational rho(unsigned n, const DescentLimits& limits = {});

/// Same proportion read off an exact unsigned table.
Rational rho_from_table(const DescentTable& table);

ResidueHistogram residue_histogram(const DescentTable& table, std::uint64_t m,
                                   unsigned order = 0);

/// Plain residue counts for order 0; the hot path of the factor scan.
std::vector<std::uint64_t> residue_counts(const DescentTable& table, std::uint64_t m);

/// Right-hand side of the mod-p congruence for n = r q, q = p^t:
/// (-1)^{|S - q[r-1]|} beta_r(S/q) mod p, returned in [0, p).
std::uint64_t mod_p_prediction(unsigned n, std::uint64_t q, const SubsetMask& s);

/// Bulk form of mod_p_prediction: holds beta_r once for all subsets S.
class ModPPrediction {
public:
  ModPPrediction(unsigned n, std::uint64_t q);
  std::uint64_t prime() const { return p_; }
  std::uint64_t operator()(std::uint64_t mask) const;

private:
  unsigned n_;
  std::uint64_t q_;
  std::uint64_t p_;
  unsigned r_;
  std::vector<Word128> beta_r_;
};

/// Class sizes of beta values at residues 1, -1, p-1, p+1 modulo 2p.
struct TwicePrimeClasses {
  std::uint64_t p = 0;
  std::uint64_t plus_one = 0;   // = 1
  std::uint64_t minus_one = 0;  // = 2p-1
  std::uint64_t p_minus_one = 0;
  std::uint64_t p_plus_one = 0;
  std::uint64_t other = 0;      // anything else
};
TwicePrimeClasses twice_prime_classes(const DescentTable& table, std::uint64_t p);

} // namespace descentlab

#endif
