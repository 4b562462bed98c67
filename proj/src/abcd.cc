#include <descentlab/abcd.hh>

#include <algorithm>
#include <bit>
#include <sstream>

namespace descentlab {

AbPoly::AbPoly(unsigned degree) : degree_(degree)
{
  if (degree_ > 30)
    throw ResourceLimitError("AbPoly: degree too large for dense storage");
  coeffs_.resize(std::size_t{1} << degree_);
}

bool AbPoly::is_zero() const
{
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ExactInt& c) { return c == 0; });
}

std::size_t AbPoly::odd_count() const
{
  return static_cast<std::size_t>(std::count_if(
    coeffs_.begin(), coeffs_.end(), [](const ExactInt& c) { return mpz_odd_p(c.get_mpz_t()); }));
}

std::string ab_word(std::uint64_t mask, unsigned degree)
{
  std::string w(degree, 'a');
  for (unsigned i = 0; i < degree; ++i)
    if ((mask >> i) & 1u)
      w[i] = 'b';
  return w;
}

std::uint64_t ab_mask(const std::string& word)
{
  if (word.size() > 63)
    throw ContractViolation("ab-word too long");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == 'b')
      m |= std::uint64_t{1} << i;
    else if (word[i] != 'a')
      throw ContractViolation("ab-word has a letter other than a, b: " + word);
  }
  return m;
}

// ---------------------------------------------------------------- CdPoly

unsigned cd_weight(const std::string& word)
{
  unsigned w = 0;
  for (char ch : word) {
    if (ch == 'c')
      w += 1;
    else if (ch == 'd')
      w += 2;
    else
      throw ContractViolation("cd-word has a letter other than c, d: " + word);
  }
  return w;
}

ExactInt CdPoly::coefficient(const std::string& word) const
{
  auto it = terms_.find(word);
  return it == terms_.end() ? ExactInt(0) : it->second;
}

void CdPoly::add(const std::string& word, const ExactInt& value)
{
  if (cd_weight(word) != degree_)
    throw ContractViolation("cd-word " + word + " has the wrong weight");
  if (value == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(word, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0)
      terms_.erase(it);
  }
}

void CdPoly::dump(std::ostream& os) const
{
  for (const auto& [w, c] : terms_)
    os << (w.empty() ? "1" : w) << " : " << c.get_str() << '\n';
}

std::string CdPoly::str() const
{
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << "-";
    first = false;
    ExactInt a = abs(c);
    if (a != 1 || w.empty())
      os << a.get_str();
    // run-length form: cc d -> c^2 d
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i])
        ++j;
      os << w[i];
      if (j - i > 1)
        os << '^' << (j - i);
      i = j;
    }
  }
  return os.str();
}

std::vector<std::string> cd_words(unsigned degree)
{
  std::vector<std::string> out;
  std::string w;
  auto rec = [&](auto&& self, unsigned left) -> void {
    if (left == 0) {
      out.push_back(w);
      return;
    }
    w.push_back('c');
    self(self, left - 1);
    w.pop_back();
    if (left >= 2) {
      w.push_back('d');
      self(self, left - 2);
      w.pop_back();
    }
  };
  rec(rec, degree);
  return out;
}

// ---------------------------------------------------------------- conversions

SignVector::SignVector(unsigned u, std::uint64_t mask) : universe(u), t(mask)
{
  if (u > 63 || (mask & ~full_mask(u)) != 0)
    throw ContractViolation("SignVector: T outside the universe");
}

AbPoly ab_index(std::span<const ExactInt> h, unsigned degree)
{
  AbPoly p(degree);
  if (h.size() != p.size())
    throw ContractViolation("ab_index: flag h array has the wrong size");
  for (std::size_t s = 0; s < h.size(); ++s)
    p[s] = h[s];
  return p;
}

AbPoly ab_index(const DescentTable& table)
{
  AbPoly p(table.universe());
  for (std::size_t s = 0; s < table.size(); ++s)
    p[s] = table.at(s);
  return p;
}

namespace {

// Every ab-word in the expansion of a cd-word, as masks.
std::vector<std::uint64_t> expand_cd_word(const std::string& w)
{
  std::vector<std::uint64_t> out{0};
  unsigned pos = 0;
  for (char ch : w) {
    const std::size_t k = out.size();
    if (ch == 'c') {
      for (std::size_t i = 0; i < k; ++i)
        out.push_back(out[i] | (std::uint64_t{1} << pos));
      pos += 1;
    } else {
      // ab at (pos, pos+1) or ba
      for (std::size_t i = 0; i < k; ++i) {
        out.push_back(out[i] | (std::uint64_t{1} << pos));
        out[i] |= std::uint64_t{1} << (pos + 1);
      }
      pos += 2;
    }
  }
  return out;
}

// Lexicographically smallest ab-word of a cd-word: c -> a, d -> ab.
std::uint64_t leading_word(const std::string& w)
{
  std::uint64_t m = 0;
  unsigned pos = 0;
  for (char ch : w) {
    if (ch == 'd') {
      m |= std::uint64_t{1} << (pos + 1);
      pos += 2;
    } else {
      pos += 1;
    }
  }
  return m;
}

// Position 1 is the most significant letter.
std::uint64_t lex_key(std::uint64_t mask, unsigned degree)
{
  std::uint64_t r = 0;
  for (unsigned i = 0; i < degree; ++i)
    if ((mask >> i) & 1u)
      r |= std::uint64_t{1} << (degree - 1 - i);
  return r;
}

} // namespace

CdPoly ab_to_cd(const AbPoly& p)
{
  const unsigned n = p.degree();
  std::vector<std::int64_t> owner(p.size(), -1);
  const auto words = cd_words(n);
  for (std::size_t i = 0; i < words.size(); ++i)
    owner[leading_word(words[i])] = static_cast<std::int64_t>(i);

  std::vector<std::uint64_t> order(p.size());
  for (std::uint64_t m = 0; m < order.size(); ++m)
    order[m] = m;
  std::sort(order.begin(), order.end(),
            [n](std::uint64_t x, std::uint64_t y) { return lex_key(x, n) < lex_key(y, n); });

  AbPoly residual = p;
  CdPoly out(n);
  for (std::uint64_t m : order) {
    if (residual[m] == 0)
      continue;
    if (owner[m] < 0)
      throw NotInSpanError("ab-polynomial is not in the span of c and d (stuck at " +
                             ab_word(m, n) + ")",
                           residual);
    const std::string& w = words[static_cast<std::size_t>(owner[m])];
    const ExactInt coeff = residual[m];
    out.add(w, coeff);
    for (std::uint64_t e : expand_cd_word(w))
      residual[e] -= coeff;
  }
  return out;
}

AbPoly cd_to_ab(const CdPoly& p)
{
  AbPoly out(p.degree());
  for (const auto& [w, c] : p.terms())
    for (std::uint64_t e : expand_cd_word(w))
      out[e] += c;
  return out;
}

CdPoly omega(const AbPoly& p)
{
  CdPoly out(p.degree());
  const unsigned n = p.degree();
  std::string w;
  for (std::uint64_t m = 0; m < p.size(); ++m) {
    if (p[m] == 0)
      continue;
    w.clear();
    unsigned ds = 0;
    for (unsigned i = 0; i < n;) {
      const bool is_b = (m >> i) & 1u;
      const bool next_b = i + 1 < n && ((m >> (i + 1)) & 1u);
      if (!is_b && next_b) {
        w.push_back('d');
        ++ds;
        i += 2;
      } else {
        w.push_back('c');
        i += 1;
      }
    }
    ExactInt c = p[m];
    c <<= ds;
    out.add(w, c);
  }
  return out;
}

AbPoly prepend_a(const AbPoly& p)
{
  AbPoly out(p.degree() + 1);
  for (std::uint64_t m = 0; m < p.size(); ++m)
    out[m << 1] = p[m];
  return out;
}

ExactInt signed_sum(const AbPoly& p, const SignVector& t)
{
  if (t.universe != p.degree())
    throw ContractViolation("signed_sum: sign vector universe does not match degree");
  ExactInt total = 0;
  for (std::uint64_t s = 0; s < p.size(); ++s) {
    if (std::popcount(s & t.t) & 1)
      total -= p[s];
    else
      total += p[s];
  }
  return total;
}

ExactInt signed_sum(const DescentTable& table, const SignVector& t)
{
  if (t.universe != table.universe())
    throw ContractViolation("signed_sum: sign vector universe does not match table");
  ExactInt plus = 0, minus = 0;
  Word128 acc_plus = 0, acc_minus = 0;
  // Entries sum to the group order, so neither accumulator overflows.
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    if (std::popcount(s & t.t) & 1)
      acc_minus += table.raw(s);
    else
      acc_plus += table.raw(s);
  }
  plus = to_exact(acc_plus);
  minus = to_exact(acc_minus);
  return plus - minus;
}

bool has_isolated_odd_interval(std::uint64_t t, unsigned universe)
{
  unsigned run = 0;
  for (unsigned i = 0; i <= universe; ++i) {
    if (i < universe && ((t >> i) & 1u)) {
      ++run;
    } else {
      if (run % 2 == 1)
        return true;
      run = 0;
    }
  }
  return false;
}

MacMahonCheck macmahon_multiplication_check(unsigned m, unsigned n, const std::string& u,
                                            const std::string& v)
{
  if (m == 0 || n == 0)
    throw ContractViolation("macmahon_multiplication_check: m and n must be positive");
  if (u.size() != m - 1 || v.size() != n - 1)
    throw ContractViolation("macmahon_multiplication_check: word lengths must be m-1 and n-1");
  const auto big = beta_table(m + n, false);
  const auto left = beta_table(m, false);
  const auto right = beta_table(n, false);
  MacMahonCheck r;
  r.lhs = big.at(ab_mask(u + "a" + v)) + big.at(ab_mask(u + "b" + v));
  const ExactInt bu = left.at(ab_mask(u));
  const ExactInt bv = right.at(ab_mask(v));
  const ExactInt c = binomial(m + n, m);
  r.product_rhs = c * bu * bv;
  r.sum_rhs = c * bu + bv;
  r.product_holds = r.lhs == r.product_rhs;
  r.sum_holds = r.lhs == r.sum_rhs;
  return r;
}

CdPoly single_d_sum(unsigned degree, const std::vector<ExactInt>& alpha)
{
  if (degree < 2 || alpha.size() != degree - 1)
    throw ContractViolation("single_d_sum: need degree >= 2 and degree-1 coefficients");
  CdPoly out(degree);
  for (unsigned i = 0; i + 2 <= degree; ++i)
    out.add(std::string(i, 'c') + "d" + std::string(degree - i - 2, 'c'), alpha[i]);
  return out;
}

} // namespace descentlab
