#include <descentlab/abcd.hh>
#include <descentlab/qsym.hh>
#include <descentlab/table_io.hh>
#include <descentlab/verify.hh>

#include <algorithm>
#include <bit>
#include <functional>
#include <iomanip>
#include <istream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace descentlab {

// ---------------------------------------------------------------- report

void VerifyReport::add(const std::string& suite, const std::string& name, bool ok,
                       const std::string& detail)
{
  results_.push_back({suite, name, ok ? CheckStatus::pass : CheckStatus::fail, detail});
}

void VerifyReport::info(const std::string& suite, const std::string& name, const std::string& detail)
{
  results_.push_back({suite, name, CheckStatus::info, detail});
}

void VerifyReport::append(const VerifyReport& other)
{
  results_.insert(results_.end(), other.results_.begin(), other.results_.end());
}

std::size_t VerifyReport::failures() const
{
  return static_cast<std::size_t>(std::count_if(
    results_.begin(), results_.end(), [](auto& r) { return r.status == CheckStatus::fail; }));
}

std::size_t VerifyReport::passes() const
{
  return static_cast<std::size_t>(std::count_if(
    results_.begin(), results_.end(), [](auto& r) { return r.status == CheckStatus::pass; }));
}

void VerifyReport::print(std::ostream& os) const
{
  for (const auto& r : results_) {
    os << (r.status == CheckStatus::pass ? "PASS" : r.status == CheckStatus::fail ? "FAIL" : "INFO")
       << "  " << r.suite << "  " << r.name;
    if (!r.detail.empty())
      os << "  " << r.detail;
    os << '\n';
  }
  os << "summary: " << passes() << " passed, " << failures() << " failed\n";
}

// ---------------------------------------------------------------- reference data

const std::map<unsigned, std::string>& reference_unsigned_factors()
{
  static const std::map<unsigned, std::string> rows{
    {3, "Phi_2"},
    {4, "Phi_4^2"},
    {5, "Phi_2^2 Phi_10"},
    {6, "Phi_2^2 Phi_6^2 Phi_10"},
    {7, "Phi_2"},
    {8, "Phi_4^2 Phi_28"},
    {9, "Phi_2^2 Phi_6 Phi_18"},
    {10, "Phi_2^2 Phi_6 Phi_10^2 Phi_18 Phi_30"},
    {11, "Phi_2 Phi_6 Phi_22"},
    {12, "Phi_2^2 Phi_6 Phi_10 Phi_18 Phi_22^2 Phi_66 Phi_110 Phi_198"},
    {13, "Phi_2 Phi_26"},
    {14, "Phi_2^2 Phi_4 Phi_14^2 Phi_26 Phi_28 Phi_182"},
    {15, "-"},
    {16, "Phi_4^2 Phi_12 Phi_20 Phi_44 Phi_52 Phi_60 Phi_156 Phi_220 Phi_260 Phi_572"},
    {17, "Phi_2^2 Phi_34"},
    {18, "Phi_2^2 Phi_6^2 Phi_18 Phi_34 Phi_102 Phi_306"},
    {19, "Phi_2 Phi_38"},
    {20, "Phi_2^2 Phi_6 Phi_10 Phi_30 Phi_34 Phi_38^2 Phi_102 Phi_114 Phi_170 Phi_190 Phi_510 "
         "Phi_570 Phi_646 Phi_1938 Phi_3230 Phi_9690"},
    {21, "Phi_2 Phi_6 Phi_14 Phi_42"},
    {22, "Phi_2^2 Phi_14 Phi_22^2 Phi_154"},
    {23, "-"},
  };
  return rows;
}

const std::map<unsigned, std::string>& reference_signed_factors()
{
  static const std::map<unsigned, std::string> rows{
    {2, "Phi_4"},
    {3, "Phi_4 Phi_8 Phi_12"},
    {4, "Phi_4 Phi_16 Phi_32"},
    {5, "Phi_4 Phi_16 Phi_20 Phi_32 Phi_80"},
    {6, "Phi_4 Phi_8 Phi_24 Phi_32 Phi_40 Phi_96 Phi_120 Phi_160"},
    {7, "Phi_4 Phi_8 Phi_24 Phi_28 Phi_32 Phi_56 Phi_168 Phi_224"},
    {8, "Phi_4 Phi_32 Phi_64 Phi_224 Phi_448 Phi_512"},
    {9, "Phi_4 Phi_12 Phi_32 Phi_36 Phi_64 Phi_96 Phi_192 Phi_288 Phi_448 Phi_512^2 Phi_576 "
        "Phi_1344 Phi_1536 Phi_4032 Phi_4608"},
    {10, "Phi_4 Phi_8 Phi_24 Phi_40 Phi_64 Phi_72 Phi_120 Phi_192 Phi_320 Phi_360 Phi_448 "
         "Phi_512 Phi_960 Phi_1344 Phi_1536 Phi_2240 Phi_2560 Phi_6720 Phi_7680"},
    {11, "Phi_4 Phi_8 Phi_40 Phi_44 Phi_64 Phi_88 Phi_192 Phi_320 Phi_440 Phi_512 Phi_704 "
         "Phi_960 Phi_2112 Phi_2560 Phi_3520 Phi_5632"},
    {12, "Phi_4 Phi_16 Phi_32 Phi_48 Phi_96 Phi_160 Phi_176 Phi_288 Phi_352 Phi_480 Phi_512 "
         "Phi_528 Phi_1056 Phi_1440 Phi_1536 Phi_1760 Phi_2560 Phi_3168 Phi_4608 Phi_5280 Phi_5632"},
    {13, "Phi_4 Phi_16 Phi_32 Phi_48 Phi_52 Phi_160 Phi_208 Phi_352 Phi_416 Phi_512^2 Phi_624 "
         "Phi_1536 Phi_1760 Phi_2080 Phi_4576 Phi_5632 Phi_6656"},
    {14, "Phi_4 Phi_8 Phi_32 Phi_56 Phi_104 Phi_224 Phi_352 Phi_416 Phi_512 Phi_728 Phi_1536 "
         "Phi_2464 Phi_2912 Phi_3584 Phi_4576 Phi_5632 Phi_6656"},
    {15, "Phi_4 Phi_8 Phi_12 Phi_20 Phi_24 Phi_32 Phi_40 Phi_56 Phi_60 Phi_96 Phi_120 Phi_160 "
         "Phi_168 Phi_224 Phi_280 Phi_416 Phi_480 Phi_512 Phi_672 Phi_840 Phi_1120 Phi_1248 "
         "Phi_1536 Phi_2080 Phi_2560 Phi_2912 Phi_3360 Phi_5632 Phi_6240 Phi_6656 Phi_7680 Phi_8736"},
    {16, "Phi_4 Phi_64 Phi_128 Phi_192 Phi_320 Phi_640 Phi_896 Phi_960 Phi_1024 Phi_1664 "
         "Phi_3072 Phi_4480 Phi_5120 Phi_8320"},
    {17, "Phi_4 Phi_64 Phi_68 Phi_128 Phi_640 Phi_896 Phi_1024^2 Phi_1088 Phi_2176 Phi_4480 Phi_5120"},
    {18, "Phi_4 Phi_8 Phi_24 Phi_72 Phi_128 Phi_136 Phi_384 Phi_408 Phi_640 Phi_1024 Phi_1152 "
         "Phi_1224 Phi_1920 Phi_2176 Phi_3072 Phi_5760 Phi_6528 Phi_9216"},
  };
  return rows;
}

const std::map<unsigned, Rational>& reference_rho()
{
  static const std::map<unsigned, Rational> rows{
    {1, Rational(1)},
    {3, Rational(1, 2)},
    {7, Rational(1, 2)},
    {15, Rational(29, 64)},
    {31, Rational(3991, 8192)},
  };
  return rows;
}

std::map<unsigned, std::string> parse_golden(std::istream& is)
{
  std::map<unsigned, std::string> rows;
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#')
      continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ContractViolation("golden line without ':' : " + line);
    unsigned n = static_cast<unsigned>(std::stoul(line.substr(0, colon)));
    std::string rest = line.substr(colon + 1);
    rest.erase(0, rest.find_first_not_of(' '));
    parse_factor_string(rest); // validates
    rows[n] = rest;
  }
  return rows;
}

RowComparison compare_row(const FactorReport& report, const std::string& printed)
{
  RowComparison c;
  const auto want = parse_factor_string(printed);
  for (const auto& f : want)
    if (report.multiplicity_of(f.m) != f.multiplicity)
      c.missing.push_back(f);
  for (const auto& f : report.factors)
    if (std::find(want.begin(), want.end(), f) == want.end())
      c.extra.push_back(f);
  return c;
}

// ---------------------------------------------------------------- suites

namespace {

std::string factors_text(const std::vector<CyclotomicFactor>& fs)
{
  FactorReport r;
  r.factors = fs;
  return r.factor_string();
}

class Tables {
public:
  explicit Tables(const VerifyOptions& o) : opts_(o) {}
  const DescentTable& get(unsigned n, bool s)
  {
    auto key = std::make_pair(n, s);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, load_or_build(n, s, opts_.cache_dir, {}, opts_.workers)).first;
    return it->second;
  }

private:
  const VerifyOptions& opts_;
  std::map<std::pair<unsigned, bool>, DescentTable> cache_;
};

std::string str(const ExactInt& v) { return v.get_str(); }
std::string str(std::uint64_t v) { return std::to_string(v); }

unsigned pick(const VerifyOptions& o, unsigned normal, unsigned desk)
{
  if (o.max_n)
    return *o.max_n;
  return o.desk_scale ? desk : normal;
}

// beta table equals enumeration of (signed) permutations
void suite_oracle(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  const unsigned un = std::min(pick(o, 8, 9), 9u);
  const unsigned sn = std::min(o.max_n ? *o.max_n : (o.desk_scale ? 7u : 6u), 7u);
  for (unsigned n = 1; n <= un; ++n)
    r.add("oracle", "unsigned n=" + std::to_string(n), tables.get(n, false) == brute_force_table(n, false));
  for (unsigned n = 1; n <= sn; ++n)
    r.add("oracle", "signed n=" + std::to_string(n), tables.get(n, true) == brute_force_table(n, true));
}

void suite_sums(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  const unsigned un = std::min(pick(o, 16, 20), 24u);
  for (unsigned n = 1; n <= un; ++n) {
    const auto& t = tables.get(n, false);
    bool sym = true;
    const auto full = full_mask(n - 1);
    for (std::uint64_t s = 0; s < t.size() && sym; ++s)
      sym = t.raw(s) == t.raw(full ^ s);
    const std::string tag = "unsigned n=" + std::to_string(n);
    r.add("sums", tag + " total", t.total() == factorial(n), "n! = " + str(factorial(n)));
    r.add("sums", tag + " max", t.max() == euler_number(n), "E_n = " + str(euler_number(n)));
    r.add("sums", tag + " empty set", t.raw(0) == 1);
    r.add("sums", tag + " complement symmetry", sym);
  }
  const unsigned sn = std::min(pick(o, 12, 14), 18u);
  for (unsigned n = 1; n <= sn; ++n) {
    const auto& t = tables.get(n, true);
    const std::string tag = "signed n=" + std::to_string(n);
    r.add("sums", tag + " total", t.total() == pow2(n) * factorial(n));
    r.add("sums", tag + " max", t.max() == signed_euler_number(n),
          "Springer = " + str(signed_euler_number(n)));
    // alpha+- is the subset sum of beta+-
    std::vector<ExactInt> zeta(t.size());
    for (std::uint64_t s = 0; s < t.size(); ++s)
      zeta[s] = t.at(s);
    subset_zeta(std::span<ExactInt>(zeta));
    bool alpha_ok = true;
    for (std::uint64_t s = 0; s < t.size() && alpha_ok && n <= 10; ++s)
      alpha_ok = zeta[s] == alpha_signed(n, SubsetMask(n, s));
    if (n <= 10)
      r.add("sums", tag + " signed alpha closed form", alpha_ok);
  }
}

void suite_rho(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  for (const auto& [n, want] : reference_rho()) {
    if (n > 15 && !o.desk_scale)
      continue;
    const Rational got = rho(n);
    r.add("rho", "table row n=" + std::to_string(n), got == want,
          "rho = " + format_dyadic(got) + ", 1/2 - rho = " + format_dyadic(Rational(1, 2) - got));
  }
  const unsigned top = std::min(pick(o, 20, 31), 31u);
  std::map<unsigned, Rational> by_k;
  std::map<unsigned, unsigned> first_n;
  for (unsigned n = 1; n <= top; ++n) {
    const Rational v = rho(n);
    const unsigned k = static_cast<unsigned>(std::popcount(n));
    auto [it, fresh] = by_k.try_emplace(k, v);
    if (fresh)
      first_n[k] = n;
    else
      r.add("rho", "popcount invariance n=" + std::to_string(n), it->second == v,
            "k=" + std::to_string(k) + " rho=" + format_dyadic(v) + " vs n=" +
              std::to_string(first_n[k]));
  }
  const unsigned exact_top = std::min(top, 16u);
  for (unsigned n = 1; n <= exact_top; ++n)
    r.add("rho", "parity path equals exact table n=" + std::to_string(n),
          rho(n) == rho_from_table(tables.get(n, false)));
}

void suite_parity(const VerifyOptions& o, Tables&, VerifyReport& r)
{
  // nonessential elements do not change parity
  const unsigned top = std::min(pick(o, 16, 20), 31u);
  for (unsigned n = 2; n <= top; ++n) {
    const auto bits = beta_parity(n);
    const auto ess = essential_elements(n);
    bool ok = true;
    for (unsigned i = 1; i < n && ok; ++i) {
      if (std::binary_search(ess.begin(), ess.end(), i))
        continue;
      const std::uint64_t b = std::uint64_t{1} << (i - 1);
      for (std::uint64_t s = 0; s < bits.size() && ok; ++s)
        if (!(s & b))
          ok = bits.get(s) == bits.get(s | b);
    }
    r.add("parity", "nonessential elements keep parity n=" + std::to_string(n), ok);
  }
  // parity on essential subsets reduces to n = 2^k - 1
  const unsigned top27 = std::min(pick(o, 20, 24), 31u);
  for (unsigned n = 2; n <= top27; ++n) {
    const unsigned k = static_cast<unsigned>(std::popcount(n));
    if (k > 4 || k < 2)
      continue;
    const auto bits = beta_parity(n);
    const auto small = beta_parity((1u << k) - 1);
    const auto ess = essential_elements(n);
    bool ok = ess.size() == (1u << k) - 2;
    for (std::uint64_t hat = 0; ok && hat < (std::uint64_t{1} << ess.size()); ++hat) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < ess.size(); ++i)
        if ((hat >> i) & 1u)
          s |= std::uint64_t{1} << (ess[i] - 1);
      ok = bits.get(s) == small.get(hat);
    }
    r.add("parity", "essential subsets follow n=2^k-1, n=" + std::to_string(n), ok);
  }
  // alpha odd exactly for chains of binary submasks
  for (unsigned n = 2; n <= std::min(top, 14u); ++n) {
    bool ok = true;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << (n - 1)) && ok; ++s) {
      const auto parts = mask_to_parts(s, n);
      unsigned seen = 0;
      bool chain = true;
      for (unsigned g : parts) {
        chain = chain && (seen & g) == 0;
        seen |= g;
      }
      ok = chain == (mpz_odd_p(alpha(n, SubsetMask(n - 1, s)).get_mpz_t()) != 0);
    }
    r.add("parity", "odd alpha iff disjoint binary parts n=" + std::to_string(n), ok);
  }
}

void suite_mod4(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  std::vector<unsigned> powers;
  if (o.n) {
    if (std::has_single_bit(*o.n) && *o.n >= 4)
      powers.push_back(*o.n);
  } else {
    powers = {4, 8, 16};
  }
  for (unsigned n : powers) {
    const auto& t = tables.get(n, false);
    const auto c = residue_counts(t, 4);
    const std::uint64_t half = std::uint64_t{1} << (n - 2);
    r.add("mod4", "unsigned n=" + std::to_string(n) + " classes (1,3)",
          c[1] == half && c[3] == half && c[0] == 0 && c[2] == 0,
          "counts (" + str(c[1]) + ", " + str(c[3]) + ")");
    bool pointwise = true;
    const std::uint64_t mid = std::uint64_t{1} << (n / 2 - 1);
    for (std::uint64_t s = 0; s < t.size() && pointwise; ++s) {
      const int sign = std::popcount(s & ~mid) % 2 ? 3 : 1;
      pointwise = static_cast<int>(t.raw(s) % 4) == sign;
    }
    r.add("mod4", "unsigned n=" + std::to_string(n) + " sign rule", pointwise);
    if (n <= 16) {
      auto f = f_boolean(n, 4);
      QSymPoly expect(n, QBasis::M, 4);
      expect.add(Composition{n}, 1);
      expect.add(Composition{n / 2, n / 2}, 2);
      r.add("mod4", "F(B_" + std::to_string(n) + ") mod 4", f == expect);
    }
  }
  std::vector<unsigned> signed_ns;
  if (o.n)
    signed_ns.push_back(*o.n);
  else
    for (unsigned n = 2; n <= std::min(pick(o, 12, 14), 18u); ++n)
      signed_ns.push_back(n);
  for (unsigned n : signed_ns) {
    if (n < 2)
      continue;
    const auto c = residue_counts(tables.get(n, true), 4);
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    r.add("mod4", "signed n=" + std::to_string(n) + " classes (1,3)", c[1] == half && c[3] == half,
          "counts (" + str(c[1]) + ", " + str(c[3]) + ")");
  }
}

void suite_signed(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  const unsigned top = std::min(pick(o, 12, 14), 18u);
  for (unsigned n = 1; n <= top; ++n) {
    const auto& t = tables.get(n, true);
    bool odd = true;
    for (auto v : t.raw_values())
      odd = odd && (v & 1) == 1;
    r.add("signed", "all entries odd n=" + std::to_string(n), odd);
    if (n >= 2)
      r.add("signed", "Phi_4 divides n=" + std::to_string(n), divides_order(t, 4, 0));
  }
  for (unsigned n = 1; n <= std::min(top, 10u); ++n) {
    const auto l = mb_to_lb(f_cubical_B(n));
    const auto& t = tables.get(n, true);
    bool ok = true;
    for (std::uint64_t s = 0; s < t.size() && ok; ++s)
      ok = l[s] == t.at(s);
    r.add("signed", "(s + 2M_1)^n gives the table n=" + std::to_string(n), ok);
  }
}

void suite_modp(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  std::vector<std::pair<unsigned, std::uint64_t>> cases{
    {6, 3}, {9, 9}, {9, 3}, {10, 5}, {12, 3}, {14, 7}, {15, 5}, {15, 3}, {18, 9}};
  for (unsigned q : {3u, 5u, 7u, 9u, 11u, 13u})
    cases.emplace_back(q, q);
  for (unsigned q : {3u, 5u, 7u, 9u})
    cases.emplace_back(2 * q, q);
  if (o.desk_scale)
    for (auto c : std::vector<std::pair<unsigned, std::uint64_t>>{{20, 5}, {21, 7}, {16, 4}, {24, 8}})
      cases.push_back(c);
  std::set<std::pair<unsigned, std::uint64_t>> done;
  for (auto [n, q] : cases) {
    if (!done.insert({n, q}).second)
      continue;
    const auto& t = tables.get(n, false);
    ModPPrediction pred(n, q);
    bool ok = true;
    for (std::uint64_t s = 0; s < t.size() && ok; ++s)
      ok = static_cast<std::uint64_t>(t.raw(s) % pred.prime()) == pred(s);
    r.add("modp", "n=" + std::to_string(n) + " q=" + std::to_string(q), ok);
  }
  // worked example: beta_9({4}) = C(9,4) - 1 = 125, predicted -1 mod 3
  const auto& t9 = tables.get(9, false);
  const std::uint64_t s4 = 1u << 3;
  r.add("modp", "beta_9({4}) = 125 = 2 mod 3",
        t9.at(s4) == 125 && ModPPrediction(9, 9)(s4) == 2);
}

void suite_mod2p(const VerifyOptions&, Tables& tables, VerifyReport& r)
{
  for (auto [n, p] : std::vector<std::pair<unsigned, std::uint64_t>>{
         {5, 5}, {9, 3}, {6, 3}, {10, 5}, {14, 7}, {18, 3}}) {
    const auto c = twice_prime_classes(tables.get(n, false), p);
    const bool half = rho(n) == Rational(1, 2);
    const std::uint64_t quarter = std::uint64_t{1} << (n - 3);
    const bool ok = c.plus_one == c.minus_one && c.p_minus_one == c.p_plus_one && c.other == 0 &&
                    (!half || (c.plus_one == quarter && c.p_minus_one == quarter));
    r.add("mod2p", "n=" + std::to_string(n) + " p=" + std::to_string(p), ok,
          "classes 1,-1,p-1,p+1 = " + str(c.plus_one) + "," + str(c.minus_one) + "," +
            str(c.p_minus_one) + "," + str(c.p_plus_one) + (half ? " (rho = 1/2)" : ""));
  }
}

void suite_qsym(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  for (unsigned n = 1; n <= 10; ++n) {
    const auto l = m_to_l(f_boolean(n));
    const auto& t = tables.get(n, false);
    bool ok = true;
    for (std::uint64_t s = 0; s < t.size() && ok; ++s)
      ok = l[s] == t.at(s);
    r.add("qsym", "L-coefficients of M_1^n are beta n=" + std::to_string(n), ok);
  }
  for (unsigned j = 0; j <= 4; ++j) {
    const unsigned n = 1u << j;
    const auto f = f_boolean(n, 2);
    r.add("qsym", "M_1^" + std::to_string(n) + " = M_(" + std::to_string(n) + ") mod 2",
          f.nonzero_count() == 1 && f.coefficient(Composition{n}) == 1);
  }
  for (unsigned a = 1; a <= 7; ++a)
    for (unsigned b = a; a + b <= 8; ++b)
      r.add("qsym", "product F(B_" + std::to_string(a) + ") F(B_" + std::to_string(b) + ")",
            f_boolean(a) * f_boolean(b) == f_boolean(a + b));
  for (unsigned n = 1; n <= 8; ++n)
    r.add("qsym", "ordered partitions give M_1^" + std::to_string(n),
          product_monomial_singletons(std::vector<unsigned>(n, 1)) == f_boolean(n));
  const unsigned top = std::min(pick(o, 18, 24), 24u);
  std::map<unsigned, std::pair<Rational, unsigned>> by_k;
  for (unsigned n = 1; n <= top; ++n) {
    const auto f = f_boolean(n, 2);
    std::vector<std::uint64_t> odd;
    for (std::uint64_t s = 0; s < f.size(); ++s)
      if (f[s] != 0)
        odd.push_back(s);
    const Rational share =
      Rational(static_cast<unsigned long>(odd_l_coefficient_count(n, odd))) / Rational(pow2(n - 1));
    const unsigned k = static_cast<unsigned>(std::popcount(n));
    auto [it, fresh] = by_k.try_emplace(k, share, n);
    r.add("qsym", "odd L-coefficients depend on popcount n=" + std::to_string(n),
          it->second.first == share && share == rho(n), "share " + format_dyadic(share));
  }
}

void suite_abcd(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  const unsigned bn = std::min(pick(o, 10, 10), 12u);
  for (unsigned n = 1; n <= bn; ++n) {
    const auto psi = ab_index(tables.get(n, false));
    r.add("abcd", "cd round trip B_" + std::to_string(n), cd_to_ab(ab_to_cd(psi)) == psi);
  }
  for (unsigned n = 1; n <= 9; ++n) {
    const auto psi = ab_index(tables.get(n, true));
    const auto cd = ab_to_cd(psi);
    r.add("abcd", "cd round trip C_" + std::to_string(n), cd_to_ab(cd) == psi);
    const auto image = omega(prepend_a(ab_index(tables.get(n, false))));
    r.add("abcd", "Psi(C_" + std::to_string(n) + ") = omega(a Psi(B_" + std::to_string(n) + "))",
          cd == image);
    bool mod2 = true;
    for (const auto& [w, c] : image.terms())
      mod2 = mod2 && ((w == std::string(n, 'c')) == (mpz_odd_p(c.get_mpz_t()) != 0));
    r.add("abcd", "omega image is c^" + std::to_string(n) + " mod 2", mod2);
  }
  auto vanish = [&](unsigned n, bool s) {
    const auto& t = tables.get(n, s);
    const unsigned u = t.universe();
    std::size_t tested = 0;
    bool ok = true;
    for (std::uint64_t m = 0; m < t.size() && ok; ++m)
      if (has_isolated_odd_interval(m, u)) {
        ++tested;
        ok = signed_sum(t, SignVector(u, m)) == 0;
      }
    r.add("abcd", std::string("signed sums vanish ") + (s ? "C_" : "B_") + std::to_string(n), ok,
          std::to_string(tested) + " sign vectors");
  };
  for (unsigned n = 2; n <= 10; ++n)
    vanish(n, false);
  for (unsigned n = 1; n <= 8; ++n)
    vanish(n, true);
  for (unsigned n = 2; n <= 12; ++n)
    r.add("abcd", "half the coefficients of sum c^i d c^j are odd, n=" + std::to_string(n),
          cd_to_ab(single_d_sum(n, std::vector<ExactInt>(n - 1, 1))).odd_count() ==
            (std::size_t{1} << (n - 1)));
  std::mt19937_64 rng(20240501);
  bool random_ok = true;
  for (int trial = 0; trial < 200 && random_ok; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 11);
    std::vector<ExactInt> a(n - 1);
    for (auto& x : a)
      x = static_cast<long>(rng() % 41) - 20;
    a[rng() % a.size()] = 2 * (static_cast<long>(rng() % 20) - 10) + 1;
    random_ok = cd_to_ab(single_d_sum(n, a)).odd_count() == (std::size_t{1} << (n - 1));
  }
  r.add("abcd", "half odd for 200 random single-d sums", random_ok);
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned k = (p - 1) / 2;
    const auto cd = ab_to_cd(ab_index(tables.get(p, true)));
    const ExactInt want = pow2(k) * ExactInt(p) * euler_number(p - 1);
    const ExactInt got = cd.coefficient(std::string(k, 'd') + "c");
    r.add("abcd", "[d^" + std::to_string(k) + " c] Psi(C_" + std::to_string(p) + ")", got == want,
          str(got));
  }
}

void suite_macmahon(const VerifyOptions&, Tables&, VerifyReport& r)
{
  std::size_t total = 0, product = 0, sum = 0;
  for (unsigned m = 1; m <= 5; ++m)
    for (unsigned n = 1; m + n <= 9; ++n)
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << (m - 1)); ++u)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << (n - 1)); ++v) {
          auto c = macmahon_multiplication_check(m, n, ab_word(u, m - 1), ab_word(v, n - 1));
          ++total;
          product += c.product_holds;
          sum += c.sum_holds;
        }
  r.add("macmahon", "product reading holds for all words, m+n <= 9", product == total,
        std::to_string(product) + "/" + std::to_string(total));
  r.info("macmahon", "printed sum reading",
         "holds in " + std::to_string(sum) + "/" + std::to_string(total) +
           " cases (m=n=1: lhs 2, sum reading 3)");
}

void suite_cyclo(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  std::mt19937_64 rng(99991);
  const int samples = o.desk_scale ? 100 : 20;
  bool all = true;
  std::string bad;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t k = 1 + rng() % 10000;
    IntPoly prod(std::vector<ExactInt>{1});
    for (auto d : divisors(k))
      prod = prod * cyclotomic(d);
    if (prod != IntPoly::x_pow_minus_one(k)) {
      all = false;
      bad = std::to_string(k);
    }
  }
  r.add("cyclo", "product of Phi_d over d | k is t^k - 1 (" + std::to_string(samples) + " random k)",
        all, bad);
  r.add("cyclo", "Phi_9(1) = 3", cyclotomic(9).eval(1) == 3);
  // odd prime powers never divide
  for (unsigned n = 2; n <= 12; ++n) {
    const auto& t = tables.get(n, false);
    bool ok = eval_special(t, SpecialPoint::one).re == pow2(n - 1);
    for (std::uint64_t q : {3u, 5u, 7u, 9u})
      ok = ok && !divides_order(t, q, 0);
    r.add("cyclo", "Phi_q does not divide Q_" + std::to_string(n) + " for q = 3,5,7,9", ok);
  }
  // Phi_2q(-1) = p must divide Q(-1) = 2^n (1/2 - rho(n))
  auto no_2q = [&](unsigned n, std::uint64_t min_p, bool direct) {
    const Rational qm1 = Rational(pow2(n)) * (Rational(1, 2) - rho(n));
    bool ok = true;
    for (std::uint64_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
      const auto pp = as_prime_power(q);
      if (pp.prime < min_p)
        continue;
      const ExactInt v = qm1.get_num();
      ok = ok && v != 0 && v % ExactInt(static_cast<unsigned long>(pp.prime)) != 0;
      if (direct)
        ok = ok && !divides_order(tables.get(n, false), 2 * q, 0);
    }
    return ok;
  };
  for (unsigned n : {4u, 8u, 16u})
    r.add("cyclo", "Phi_2q does not divide Q_" + std::to_string(n) + " (power of two)",
          no_2q(n, 3, true));
  r.add("cyclo", "Phi_2q does not divide Q_15 for p >= 5", no_2q(15, 5, true));
  if (o.desk_scale)
    r.add("cyclo", "Phi_2q does not divide Q_31 for p >= 11 (from Q(-1))", no_2q(31, 11, false));
  // special values
  for (unsigned n = 1; n <= std::min(pick(o, 14, 16), 20u); ++n) {
    const auto& t = tables.get(n, false);
    const Rational want = Rational(pow2(n)) * (Rational(1, 2) - rho(n));
    r.add("cyclo", "Q_" + std::to_string(n) + "(-1) = 2^n (1/2 - rho)",
          Rational(eval_special(t, SpecialPoint::minus_one).re) == want);
  }
  r.add("cyclo", "Q_15(-1) = 1536",
        eval_special(tables.get(15, false), SpecialPoint::minus_one).re == 1536);
  for (unsigned n : {4u, 8u, 16u})
    r.add("cyclo", "Q_" + std::to_string(n) + "(i) = 0",
          eval_special(tables.get(n, false), SpecialPoint::i) == GaussianInt{0, 0});
  for (unsigned q : {5u, 9u, 11u, 13u, 17u}) {
    const auto p = as_prime_power(q).prime;
    r.add("cyclo", "Q_" + std::to_string(q) + "(zeta_" + std::to_string(2 * p) + ") = 2^q Re(zeta)(rho - 1/2)",
          equals_real_part_multiple(tables.get(q, false), 2 * p,
                                    Rational(pow2(q)) * (rho(q) - Rational(1, 2))));
  }
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    const auto p = as_prime_power(q).prime;
    r.add("cyclo", "Q_" + std::to_string(2 * q) + "(zeta_" + std::to_string(2 * p) + ") = 2^2q Re(zeta)(rho(q) - 1/2)",
          equals_real_part_multiple(tables.get(2 * q, false), 2 * p,
                                    Rational(pow2(2 * q)) * (rho(q) - Rational(1, 2))));
  }
  // projection test versus long division and the zero class
  bool agree = true;
  for (unsigned n = 3; n <= 10 && agree; ++n) {
    const auto& t = tables.get(n, false);
    for (std::uint64_t m = 2; m <= 200 && agree; ++m)
      agree = divides_order(t, m, 0) == eval_at_primitive_root(t, m).is_zero() &&
              divides_order(t, m, 1) == divides_order(t, m, 1, DivisibilityMethod::remainder);
  }
  r.add("cyclo", "projection test agrees with remainders, n <= 10, m <= 200", agree);
}

void suite_quadratic(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  auto certify = [&](unsigned n, bool s, std::uint64_t m, unsigned k, bool exact) {
    const auto& t = tables.get(n, s);
    const unsigned got = multiplicity(t, m, k + 1);
    const bool ok = exact ? got == k : got >= k;
    r.add("quadratic",
          std::string(s ? "signed " : "") + "Phi_" + std::to_string(m) + (k > 1 ? "^" + std::to_string(k) : "") +
            (exact ? " exactly" : "") + " divides Q_" + std::to_string(n),
          ok, "multiplicity " + std::to_string(got));
  };
  std::vector<unsigned> two_ones{5, 6, 9, 10, 12};
  if (o.desk_scale)
    for (unsigned n : {17u, 18u, 20u})
      two_ones.push_back(n);
  for (unsigned n : two_ones)
    certify(n, false, 2, 2, false);
  for (unsigned n : {4u, 8u, 16u})
    certify(n, false, 4, 2, false);
  for (auto [n, p] : std::vector<std::pair<unsigned, std::uint64_t>>{{6, 3}, {10, 5}, {18, 3}})
    certify(n, false, 2 * p, 2, false);
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u})
    certify(static_cast<unsigned>(p), true, 4 * p, 1, true);
}

void suite_derivative(const VerifyOptions& o, Tables&, VerifyReport& r)
{
  std::vector<std::uint64_t> primes{3, 5, 7};
  if (o.p)
    primes = {*o.p};
  else if (o.desk_scale)
    primes.insert(primes.end(), {11, 13});
  for (auto p : primes) {
    const auto c = signed_derivative_check(p);
    r.add("derivative", "p=" + std::to_string(p) + " closed form in Z[t]/Phi_" + std::to_string(4 * p),
          c.ok(), "magnitude " + str(c.magnitude) + ", coefficient " + str(c.stated));
  }
}

void suite_tables(const VerifyOptions& o, Tables& tables, VerifyReport& r)
{
  for (const auto& [n, want] : reference_rho()) {
    if (n > 15 && !o.desk_scale)
      continue;
    r.add("tables", "table 1 row n=" + std::to_string(n), rho(n) == want, format_dyadic(want));
  }
  FactorScanOptions scan;
  scan.workers = o.workers;
  const unsigned utop = o.n ? *o.n : (o.desk_scale ? 23u : 14u);
  const unsigned ulow = o.n ? *o.n : 3u;
  for (unsigned n = ulow; n <= utop; ++n) {
    auto it = reference_unsigned_factors().find(n);
    if (it == reference_unsigned_factors().end())
      continue;
    const auto rep = factor_scan(tables.get(n, false), scan);
    const auto cmp = compare_row(rep, it->second);
    if (n == 16) {
      // the printed row is a subset of what the scan certifies
      r.add("tables", "table 2 row 16 contains printed factors", cmp.missing.empty(),
            rep.factor_string());
      if (!cmp.extra.empty())
        r.info("tables", "table 2 row 16 extra factors", factors_text(cmp.extra));
    } else {
      r.add("tables", "table 2 row " + std::to_string(n), cmp.exact(),
            cmp.exact() ? rep.factor_string()
                        : "missing " + factors_text(cmp.missing) + " extra " + factors_text(cmp.extra));
    }
  }
  const unsigned stop = o.n ? *o.n : (o.desk_scale ? 18u : 10u);
  const unsigned slow = o.n ? *o.n : 2u;
  for (unsigned n = slow; n <= stop; ++n) {
    auto it = reference_signed_factors().find(n);
    if (it == reference_signed_factors().end())
      continue;
    const auto rep = factor_scan(tables.get(n, true), scan);
    const auto cmp = compare_row(rep, it->second);
    r.add("tables", "table 3 row " + std::to_string(n), cmp.exact(),
          cmp.exact() ? rep.factor_string()
                      : "missing " + factors_text(cmp.missing) + " extra " + factors_text(cmp.extra));
  }
}

using SuiteFn = std::function<void(const VerifyOptions&, Tables&, VerifyReport&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites()
{
  static const std::vector<std::pair<std::string, SuiteFn>> list{
    {"oracle", suite_oracle},       {"sums", suite_sums},         {"rho", suite_rho},
    {"parity", suite_parity},       {"mod4", suite_mod4},         {"signed", suite_signed},
    {"modp", suite_modp},       {"mod2p", suite_mod2p},       {"qsym", suite_qsym},
    {"abcd", suite_abcd},           {"macmahon", suite_macmahon}, {"cyclo", suite_cyclo},
    {"quadratic", suite_quadratic}, {"derivative", suite_derivative}, {"tables", suite_tables},
  };
  return list;
}

} // namespace

const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suites())
      v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& options)
{
  VerifyReport report;
  Tables tables(options);
  bool found = false;
  for (const auto& [suite, fn] : suites()) {
    if (name == "all" || name == suite) {
      found = true;
      try {
        fn(options, tables, report);
      } catch (const ResourceLimitError&) {
        throw;
      } catch (const std::exception& e) {
        report.add(suite, "suite raised an exception", false, e.what());
      }
    }
  }
  if (!found)
    throw ContractViolation("unknown suite: " + name);
  return report;
}

// ---------------------------------------------------------------- observations

std::string to_string(ObservationStatus s)
{
  switch (s) {
  case ObservationStatus::holds:
    return "holds";
  case ObservationStatus::fails:
    return "fails";
  case ObservationStatus::outside_policy:
    return "outside-policy";
  }
  return "?";
}

std::vector<Observation> observations(const ObservationOptions& options)
{
  std::vector<Observation> out;
  auto emit = [&](const std::string& id, unsigned n, bool s, ObservationStatus st, std::string detail) {
    out.push_back({id, n, s, st, std::move(detail)});
  };
  auto verdict = [](bool b) { return b ? ObservationStatus::holds : ObservationStatus::fails; };
  const bool exhaustive = options.scan.policy == CandidatePolicy::exhaustive;

  for (unsigned n = 3; n <= options.max_n; ++n) {
    const auto table = load_or_build(n, false, options.cache_dir, {}, options.scan.workers);
    const auto rep = factor_scan(table, options.scan);
    const auto& fs = rep.factors;
    std::set<std::uint64_t> idx;
    for (const auto& f : fs)
      idx.insert(f.m);

    if (!exhaustive) {
      emit("i", n, false, ObservationStatus::outside_policy, "heuristic policy scans even indices only");
      emit("ii", n, false, ObservationStatus::outside_policy, "heuristic policy scans n-smooth indices only");
    } else {
      bool even = std::all_of(fs.begin(), fs.end(), [](auto& f) { return f.m % 2 == 0; });
      emit("i", n, false, verdict(even), rep.factor_string());
      bool small = std::all_of(fs.begin(), fs.end(), [n](auto& f) { return prime_factors(f.m).back() <= n; });
      emit("ii", n, false, verdict(small), rep.factor_string());
    }
    // gcd closure
    std::string witness;
    for (auto a : idx)
      for (auto b : idx)
        if (a < b && !idx.count(std::gcd(a, b)) && witness.empty())
          witness = "gcd(" + std::to_string(a) + "," + std::to_string(b) + ") missing";
    emit("iii", n, false, verdict(witness.empty()), witness);
    // divisor convexity
    witness.clear();
    for (auto a : idx)
      for (auto c : idx)
        if (a < c && c % a == 0)
          for (auto b : divisors(c))
            if (b > a && b < c && b % a == 0 && !idx.count(b) && witness.empty())
              witness = std::to_string(a) + " | " + std::to_string(b) + " | " + std::to_string(c) +
                        " with Phi_" + std::to_string(b) + " absent";
    emit("iv", n, false, verdict(witness.empty()), witness);
    // multiplicity monotone along divisibility
    witness.clear();
    for (const auto& f : fs)
      for (const auto& g : fs)
        if (f.m < g.m && g.m % f.m == 0 && f.multiplicity < g.multiplicity && witness.empty())
          witness = "Phi_" + std::to_string(f.m) + " below Phi_" + std::to_string(g.m);
    emit("v", n, false, verdict(witness.empty()), witness);
    if (is_prime(n) && !std::has_single_bit(n + 1u)) {
      const bool ok = !fs.empty() && fs.back().m == 2u * n;
      emit("vi", n, false, verdict(ok), fs.empty() ? "no factors" : "largest Phi_" + std::to_string(fs.back().m));
    }
    const Rational r = rho(n);
    if (r != Rational(1, 2))
      emit("vii", n, false, verdict(fs.empty()), "rho = " + format_dyadic(r) + ", factors " + rep.factor_string());
    if (n % 2 == 0 && is_prime(n / 2)) {
      const auto mult = rep.multiplicity_of(n);
      emit("viii", n, false, verdict(mult && *mult >= 2),
           "Phi_" + std::to_string(n) + " multiplicity " + std::to_string(mult.value_or(0)));
    }
  }
  for (unsigned n = 3; n <= options.max_signed_n; ++n) {
    const auto table = load_or_build(n, true, options.cache_dir, {}, options.scan.workers);
    const std::uint64_t m9 = 4u * n;
    if (m9 > options.scan.bound)
      emit("ix", n, true, ObservationStatus::outside_policy, "index above scan bound");
    else
      emit("ix", n, true, verdict(divides_order(table, m9, 0)), "Phi_" + std::to_string(m9));
    if (n >= 5) {
      const std::uint64_t m10 = 4ull * n * (n - 1);
      if (m10 > options.scan.bound)
        emit("x", n, true, ObservationStatus::outside_policy, "index above scan bound");
      else
        emit("x", n, true, verdict(divides_order(table, m10, 0)), "Phi_" + std::to_string(m10));
    }
  }
  return out;
}

} // namespace descentlab
