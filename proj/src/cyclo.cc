#include <descentlab/cyclo.hh>
#include <descentlab/numbers.hh>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace descentlab {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<ExactInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(std::size_t degree, const ExactInt& c)
{
  std::vector<ExactInt> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x_pow_minus_one(std::size_t k)
{
  if (k == 0)
    return IntPoly();
  std::vector<ExactInt> v(k + 1);
  v[0] = -1;
  v[k] = 1;
  return IntPoly(std::move(v));
}

void IntPoly::trim()
{
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

const ExactInt& IntPoly::leading() const
{
  if (coeffs_.empty())
    throw ContractViolation("IntPoly: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

ExactInt IntPoly::eval(const ExactInt& x) const
{
  ExactInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& o)
{
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o)
{
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const ExactInt& c)
{
  for (auto& x : coeffs_)
    x *= c;
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
  if (a.is_zero() || b.is_zero())
    return IntPoly();
  // Drive the outer loop by the sparser factor.
  const IntPoly& sparse =
    std::count(a.coeffs_.begin(), a.coeffs_.end(), 0) >= std::count(b.coeffs_.begin(), b.coeffs_.end(), 0)
      ? a : b;
  const IntPoly& dense = &sparse == &a ? b : a;
  std::vector<ExactInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < sparse.coeffs_.size(); ++i) {
    const ExactInt& s = sparse.coeffs_[i];
    if (s == 0)
      continue;
    for (std::size_t j = 0; j < dense.coeffs_.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), s.get_mpz_t(), dense.coeffs_[j].get_mpz_t());
  }
  return IntPoly(std::move(out));
}

std::pair<IntPoly, IntPoly> IntPoly::divmod(const IntPoly& monic) const
{
  if (monic.is_zero() || monic.leading() != 1)
    throw ContractViolation("IntPoly::divmod: divisor must be monic");
  const std::size_t dd = monic.coeffs_.size() - 1;
  if (coeffs_.size() <= dd)
    return {IntPoly(), *this};
  std::vector<ExactInt> r = coeffs_;
  std::vector<ExactInt> q(coeffs_.size() - dd);
  // Nonzero positions of the divisor below its leading term.
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < dd; ++k)
    if (monic.coeffs_[k] != 0)
      support.push_back(k);
  for (std::size_t i = r.size(); i-- > dd;) {
    if (r[i] == 0)
      continue;
    const ExactInt c = r[i];
    q[i - dd] = c;
    const std::size_t shift = i - dd;
    for (std::size_t k : support)
      mpz_submul(r[shift + k].get_mpz_t(), c.get_mpz_t(), monic.coeffs_[k].get_mpz_t());
    r[i] = 0;
  }
  r.resize(dd);
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly IntPoly::remainder(const IntPoly& monic) const { return divmod(monic).second; }

IntPoly IntPoly::times_binomial(std::size_t d) const
{
  if (is_zero())
    return {};
  std::vector<ExactInt> out(coeffs_.size() + d);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i + d] += coeffs_[i];
    out[i] -= coeffs_[i];
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::over_binomial(std::size_t d) const
{
  if (d == 0)
    throw ContractViolation("IntPoly::over_binomial: t^0 - 1 is zero");
  if (is_zero())
    return {};
  if (coeffs_.size() <= d)
    throw ContractViolation("IntPoly::over_binomial: not divisible");
  // p = q t^d - q, solved from the bottom: q_i = q_{i-d} - p_i.
  const std::size_t qn = coeffs_.size() - d;
  std::vector<ExactInt> q(qn);
  for (std::size_t i = 0; i < qn; ++i) {
    q[i] = -coeffs_[i];
    if (i >= d)
      q[i] += q[i - d];
  }
  IntPoly quotient(std::move(q));
  if (quotient.times_binomial(d) != *this)
    throw ContractViolation("IntPoly::over_binomial: not divisible");
  return quotient;
}

std::string IntPoly::str() const
{
  if (coeffs_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const ExactInt& c = coeffs_[i];
    if (c == 0)
      continue;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    ExactInt a = abs(c);
    if (a != 1 || i == 0)
      os << a.get_str();
    if (i > 0)
      os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

// ---------------------------------------------------------------- cyclotomic

const IntPoly& cyclotomic(std::uint64_t k)
{
  if (k == 0)
    throw ContractViolation("cyclotomic: k must be positive");
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<IntPoly>> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(k); it != memo.end())
      return *it->second;
  }
  // Phi_k = prod_{d | k} (t^d - 1)^{mu(k/d)}: multiply first, then divide.
  IntPoly p(std::vector<ExactInt>{1});
  std::vector<std::uint64_t> down;
  for (std::uint64_t d : divisors(k)) {
    const int mu = mobius(k / d);
    if (mu == 1)
      p = p.times_binomial(d);
    else if (mu == -1)
      down.push_back(d);
  }
  for (std::uint64_t d : down)
    p = p.over_binomial(d);
  std::lock_guard lock(mu);
  auto [it, inserted] = memo.try_emplace(k, std::make_unique<IntPoly>(std::move(p)));
  return *it->second;
}

// ---------------------------------------------------------------- divisibility

IntPoly weighted_residue_poly(const DescentTable& table, std::uint64_t m, unsigned order)
{
  auto h = residue_histogram(table, m, order);
  return IntPoly(std::move(h.counts));
}

bool phi_divides_cyclic(const std::vector<ExactInt>& counts, std::uint64_t m)
{
  if (m < 1 || counts.size() != m)
    throw ContractViolation("phi_divides_cyclic: need m counts");
  // (P * c_m)(j) = sum_{d | m} mu(m/d) d S_d(j mod d), with S_d the fold of P mod d.
  struct Term {
    std::uint64_t d;
    long weight;
    std::vector<ExactInt> fold;
  };
  std::vector<Term> terms;
  for (std::uint64_t d : divisors(m)) {
    const int mu = mobius(m / d);
    if (mu == 0)
      continue;
    Term t{d, mu * static_cast<long>(d), std::vector<ExactInt>(d)};
    for (std::uint64_t r = 0; r < m; ++r)
      t.fold[r % d] += counts[r];
    terms.push_back(std::move(t));
  }
  ExactInt acc;
  for (std::uint64_t j = 0; j < m; ++j) {
    acc = 0;
    for (const auto& t : terms)
      acc += t.weight * t.fold[j % t.d];
    if (acc != 0)
      return false;
  }
  return true;
}

bool divides_order(const DescentTable& table, std::uint64_t m, unsigned j,
                   DivisibilityMethod method)
{
  if (m < 2)
    throw ContractViolation("divides_order: m must be at least 2");
  if (method == DivisibilityMethod::remainder)
    return weighted_residue_poly(table, m, j).remainder(cyclotomic(m)).is_zero();
  auto h = residue_histogram(table, m, j);
  return phi_divides_cyclic(h.counts, m);
}

unsigned multiplicity(const DescentTable& table, std::uint64_t m, unsigned cap)
{
  unsigned k = 0;
  while (k < cap && divides_order(table, m, k))
    ++k;
  return k;
}

std::string GaussianInt::str() const
{
  if (im == 0)
    return re.get_str();
  std::string s = re == 0 ? "" : re.get_str() + (im < 0 ? " - " : " + ");
  if (re == 0 && im < 0)
    s += "-";
  ExactInt a = abs(im);
  return s + (a == 1 ? "" : a.get_str()) + "i";
}

GaussianInt eval_special(const DescentTable& table, SpecialPoint point)
{
  switch (point) {
  case SpecialPoint::one:
    return {residue_histogram(table, 1, 0).counts[0], 0};
  case SpecialPoint::minus_one: {
    auto c = residue_histogram(table, 2, 0).counts;
    return {c[0] - c[1], 0};
  }
  case SpecialPoint::i: {
    auto c = residue_histogram(table, 4, 0).counts;
    return {c[0] - c[2], c[1] - c[3]};
  }
  }
  throw ContractViolation("eval_special: unknown point");
}

IntPoly eval_at_primitive_root(const DescentTable& table, std::uint64_t m)
{
  if (m < 2)
    throw ContractViolation("eval_at_primitive_root: m must be at least 2");
  return weighted_residue_poly(table, m, 0).remainder(cyclotomic(m));
}

bool equals_real_part_multiple(const DescentTable& table, std::uint64_t m, const Rational& scale)
{
  if (m < 3)
    throw ContractViolation("equals_real_part_multiple: m must be at least 3");
  // 2 Q(zeta) * den = num * (t + t^{m-1})
  const ExactInt num = scale.get_num();
  const ExactInt den = scale.get_den();
  IntPoly lhs = weighted_residue_poly(table, m, 0) * ExactInt(2 * den);
  IntPoly rhs = (IntPoly::monomial(1) + IntPoly::monomial(m - 1)) * num;
  return (lhs - rhs).remainder(cyclotomic(m)).is_zero();
}

DerivativeCheck signed_derivative_check(std::uint64_t p)
{
  if (p < 3 || !is_prime(p))
    throw ContractViolation("signed_derivative_check: p must be an odd prime");
  if (p > 13)
    throw ResourceLimitError("signed_derivative_check: p above 13");
  DerivativeCheck r;
  r.p = p;
  const auto table = beta_table(static_cast<unsigned>(p), true);
  const std::uint64_t m = 4 * p;
  r.euler = euler_number(static_cast<unsigned>(p - 1));
  r.magnitude = pow2(static_cast<unsigned>(p)) * ExactInt(static_cast<unsigned long>(p)) * r.euler;
  r.stated = ((p - 1) / 2) % 2 == 0 ? r.magnitude : ExactInt(-r.magnitude);
  // zeta Q'(zeta) is R_1 at zeta.
  const IntPoly lhs = weighted_residue_poly(table, m, 1) * ExactInt(2);
  const IntPoly im_part = IntPoly::monomial(1) - IntPoly::monomial(m - 1);
  const IntPoly& phi = cyclotomic(m);
  r.stated_holds = (lhs - im_part * r.stated).remainder(phi).is_zero();
  r.negated_holds = (lhs + im_part * r.stated).remainder(phi).is_zero();
  r.phi_divides = divides_order(table, m, 0);
  r.phi_squared_divides = r.phi_divides && divides_order(table, m, 1);
  return r;
}

// ---------------------------------------------------------------- factor scan

std::string policy_name(CandidatePolicy p)
{
  return p == CandidatePolicy::heuristic ? "heuristic" : "exhaustive";
}

CandidatePolicy parse_policy(const std::string& s)
{
  if (s == "heuristic")
    return CandidatePolicy::heuristic;
  if (s == "exhaustive")
    return CandidatePolicy::exhaustive;
  throw ContractViolation("unknown candidate policy: " + s);
}

std::vector<std::uint64_t> scan_candidates(unsigned n, std::uint64_t bound, CandidatePolicy policy)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 2; m <= bound; ++m) {
    if (policy == CandidatePolicy::heuristic) {
      if (m % 2 != 0)
        continue;
      auto ps = prime_factors(m);
      if (ps.back() > n)
        continue;
    }
    out.push_back(m);
  }
  return out;
}

std::string FactorReport::factor_string() const
{
  if (factors.empty())
    return "-";
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty())
      s += ' ';
    s += "Phi_" + std::to_string(f.m);
    if (f.multiplicity != 1)
      s += "^" + std::to_string(f.multiplicity);
  }
  return s;
}

std::string FactorReport::to_text() const
{
  return "n=" + std::to_string(n) + " signed=" + (is_signed ? "1" : "0") +
         " policy=" + policy_name(policy) + " bound=" + std::to_string(bound) + ": " +
         factor_string();
}

std::string FactorReport::to_json() const
{
  nlohmann::ordered_json j;
  j["schema"] = "descentlab/1";
  j["n"] = n;
  j["signed"] = is_signed;
  j["policy"] = policy_name(policy);
  j["bound"] = bound;
  j["max_multiplicity"] = max_multiplicity;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : factors)
    arr.push_back({{"m", f.m}, {"multiplicity", f.multiplicity}});
  j["factors"] = arr;
  return j.dump();
}

std::optional<unsigned> FactorReport::multiplicity_of(std::uint64_t m) const
{
  for (const auto& f : factors)
    if (f.m == m)
      return f.multiplicity;
  return std::nullopt;
}

std::vector<CyclotomicFactor> parse_factor_string(const std::string& s)
{
  std::vector<CyclotomicFactor> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    if (tok == "-")
      continue;
    if (tok.rfind("Phi_", 0) != 0)
      throw ContractViolation("bad factor token: " + tok);
    CyclotomicFactor f;
    const auto caret = tok.find('^');
    try {
      std::size_t used = 0;
      const std::string idx = tok.substr(4, caret == std::string::npos ? std::string::npos : caret - 4);
      f.m = std::stoull(idx, &used);
      if (used != idx.size())
        throw ContractViolation("bad factor token: " + tok);
      f.multiplicity = 1;
      if (caret != std::string::npos) {
        const std::string mult = tok.substr(caret + 1);
        f.multiplicity = static_cast<unsigned>(std::stoul(mult, &used));
        if (used != mult.size())
          throw ContractViolation("bad factor token: " + tok);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ContractViolation*>(&e))
        throw;
      throw ContractViolation("bad factor token: " + tok);
    }
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.m < b.m; });
  return out;
}

FactorReport factor_scan(const DescentTable& table, const FactorScanOptions& options)
{
  if (options.bound < 2)
    throw ContractViolation("factor_scan: bound must be at least 2");
  if (options.max_multiplicity < 1)
    throw ContractViolation("factor_scan: max multiplicity must be at least 1");
  FactorReport report;
  report.n = table.n();
  report.is_signed = table.is_signed();
  report.policy = options.policy;
  report.bound = options.bound;
  report.max_multiplicity = options.max_multiplicity;

  const auto candidates = scan_candidates(table.n(), options.bound, options.policy);
  std::vector<unsigned> mult(candidates.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++)
      mult[i] = multiplicity(table, candidates[i], options.max_multiplicity);
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (mult[i] > 0)
      report.factors.push_back({candidates[i], mult[i]});
  return report;
}

} // namespace descentlab
