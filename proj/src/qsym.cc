#include <descentlab/qsym.hh>
#include <descentlab/subset_transform.hh>

#include <algorithm>
#include <sstream>

namespace descentlab {

namespace {

std::size_t dense_size(unsigned degree)
{
  return degree == 0 ? 1 : (std::size_t{1} << (degree - 1));
}

void reduce_into(ExactInt& v, std::optional<std::uint64_t> modulus)
{
  if (!modulus)
    return;
  mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), *modulus);
}

void check_same_modulus(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b)
{
  if (a != b)
    throw ContractViolation("quasisymmetric operands carry different moduli");
}

void dump_line(std::ostream& os, const std::vector<unsigned>& parts, const ExactInt& c)
{
  for (std::size_t i = 0; i < parts.size(); ++i)
    os << (i ? "," : "") << parts[i];
  os << " : " << c.get_str() << '\n';
}

} // namespace

// ---------------------------------------------------------------- QSymPoly

QSymPoly::QSymPoly(unsigned degree, QBasis basis, std::optional<std::uint64_t> modulus)
  : degree_(degree), basis_(basis), modulus_(modulus)
{
  if (modulus_ && *modulus_ < 2)
    throw ContractViolation("QSymPoly: modulus must be at least 2");
  if (degree_ > 31)
    throw ResourceLimitError("QSymPoly: degree too large for dense storage");
  coeffs_.resize(dense_size(degree_));
}

void QSymPoly::normalize(ExactInt& v) const { reduce_into(v, modulus_); }

const ExactInt& QSymPoly::coefficient(const Composition& gamma) const
{
  if (gamma.total() != degree_)
    throw ContractViolation("QSymPoly: composition has the wrong total");
  return coeffs_[parts_to_mask(gamma.parts())];
}

void QSymPoly::set(std::uint64_t mask, const ExactInt& value)
{
  ExactInt v = value;
  normalize(v);
  coeffs_.at(mask) = v;
}

void QSymPoly::add(std::uint64_t mask, const ExactInt& value)
{
  ExactInt& c = coeffs_.at(mask);
  c += value;
  normalize(c);
}

void QSymPoly::add(const Composition& gamma, const ExactInt& value)
{
  if (gamma.total() != degree_)
    throw ContractViolation("QSymPoly: composition has the wrong total");
  add(parts_to_mask(gamma.parts()), value);
}

QSymPoly QSymPoly::basis_element(const Composition& gamma, QBasis basis,
                                 std::optional<std::uint64_t> modulus)
{
  QSymPoly p(gamma.total(), basis, modulus);
  p.add(gamma, 1);
  return p;
}

QSymPoly QSymPoly::reduced(std::uint64_t m) const
{
  if (modulus_ && *modulus_ % m != 0)
    throw ContractViolation("QSymPoly::reduced: modulus does not divide the current one");
  QSymPoly out(degree_, basis_, m);
  for (std::size_t s = 0; s < coeffs_.size(); ++s)
    out.set(s, coeffs_[s]);
  return out;
}

std::size_t QSymPoly::nonzero_count() const
{
  return static_cast<std::size_t>(
    std::count_if(coeffs_.begin(), coeffs_.end(), [](const ExactInt& c) { return c != 0; }));
}

void QSymPoly::dump(std::ostream& os) const
{
  for (std::size_t s = 0; s < coeffs_.size(); ++s)
    if (coeffs_[s] != 0)
      dump_line(os, mask_to_parts(s, degree_), coeffs_[s]);
}

std::string QSymPoly::dump() const
{
  std::ostringstream os;
  dump(os);
  return os.str();
}

QSymPoly m_to_l(const QSymPoly& p)
{
  if (p.basis() != QBasis::M)
    throw ContractViolation("m_to_l: input must be in the M basis");
  // f_S = sum_{T subset S} h_T, so h is the Mobius transform of f.
  std::vector<ExactInt> h = p.coefficients();
  subset_mobius(std::span<ExactInt>(h));
  QSymPoly out(p.degree(), QBasis::L, p.modulus());
  for (std::size_t s = 0; s < h.size(); ++s)
    out.set(s, h[s]);
  return out;
}

QSymPoly l_to_m(const QSymPoly& p)
{
  if (p.basis() != QBasis::L)
    throw ContractViolation("l_to_m: input must be in the L basis");
  std::vector<ExactInt> f = p.coefficients();
  subset_zeta(std::span<ExactInt>(f));
  QSymPoly out(p.degree(), QBasis::M, p.modulus());
  for (std::size_t s = 0; s < f.size(); ++s)
    out.set(s, f[s]);
  return out;
}

std::vector<std::vector<unsigned>> quasi_shuffles(const std::vector<unsigned>& a,
                                                  const std::vector<unsigned>& b)
{
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> prefix;
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
    if (i == a.size() && j == b.size()) {
      out.push_back(prefix);
      return;
    }
    if (i < a.size()) {
      prefix.push_back(a[i]);
      self(self, i + 1, j);
      prefix.pop_back();
    }
    if (j < b.size()) {
      prefix.push_back(b[j]);
      self(self, i, j + 1);
      prefix.pop_back();
    }
    if (i < a.size() && j < b.size()) {
      prefix.push_back(a[i] + b[j]);
      self(self, i + 1, j + 1);
      prefix.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

QSymPoly operator*(const QSymPoly& a, const QSymPoly& b)
{
  if (a.basis() != QBasis::M || b.basis() != QBasis::M)
    throw ContractViolation("QSymPoly product is defined on the M basis");
  check_same_modulus(a.modulus(), b.modulus());
  QSymPoly out(a.degree() + b.degree(), QBasis::M, a.modulus());
  ExactInt term;
  for (std::size_t sa = 0; sa < a.size(); ++sa) {
    if (a[sa] == 0)
      continue;
    auto pa = mask_to_parts(sa, a.degree());
    for (std::size_t sb = 0; sb < b.size(); ++sb) {
      if (b[sb] == 0)
        continue;
      auto pb = mask_to_parts(sb, b.degree());
      term = a[sa] * b[sb];
      for (const auto& w : quasi_shuffles(pa, pb))
        out.add(parts_to_mask(w), term);
    }
  }
  return out;
}

std::vector<OrderedSetPartition> ordered_set_partitions(unsigned k)
{
  if (k > kMaxOrderedPartitionSize)
    throw ResourceLimitError("ordered_set_partitions: k=" + std::to_string(k) +
                             " above limit " + std::to_string(kMaxOrderedPartitionSize));
  std::vector<OrderedSetPartition> out;
  OrderedSetPartition current;
  const unsigned all = (1u << k) - 1;
  auto rec = [&](auto&& self, unsigned remaining) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (unsigned block = remaining; block != 0; block = (block - 1) & remaining) {
      std::vector<unsigned> elems;
      for (unsigned i = 0; i < k; ++i)
        if ((block >> i) & 1u)
          elems.push_back(i + 1);
      current.blocks.push_back(std::move(elems));
      self(self, remaining & ~block);
      current.blocks.pop_back();
    }
  };
  rec(rec, all);
  return out;
}

QSymPoly product_monomial_singletons(const std::vector<unsigned>& parts,
                                     std::optional<std::uint64_t> modulus)
{
  if (parts.empty())
    throw ContractViolation("product_monomial_singletons: empty list");
  unsigned degree = 0;
  for (unsigned m : parts) {
    if (m == 0)
      throw ContractViolation("product_monomial_singletons: parts must be positive");
    degree += m;
  }
  QSymPoly out(degree, QBasis::M, modulus);
  std::vector<unsigned> sums;
  for (const auto& pi : ordered_set_partitions(static_cast<unsigned>(parts.size()))) {
    sums.clear();
    for (const auto& block : pi.blocks) {
      unsigned s = 0;
      for (unsigned i : block)
        s += parts[i - 1];
      sums.push_back(s);
    }
    out.add(parts_to_mask(sums), 1);
  }
  return out;
}

namespace {

// M_(1) * sum c_gamma M_gamma: insert a new part 1 into any gap, or add 1 to any part.
QSymPoly times_m1(const QSymPoly& p)
{
  QSymPoly out(p.degree() + 1, QBasis::M, p.modulus());
  std::vector<unsigned> w;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (p[s] == 0)
      continue;
    auto parts = mask_to_parts(s, p.degree());
    for (std::size_t gap = 0; gap <= parts.size(); ++gap) {
      w = parts;
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(gap), 1u);
      out.add(parts_to_mask(w), p[s]);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      w = parts;
      ++w[i];
      out.add(parts_to_mask(w), p[s]);
    }
  }
  return out;
}

} // namespace

QSymPoly f_boolean(unsigned n, std::optional<std::uint64_t> modulus, const QSymLimits& limits)
{
  const unsigned direct_cap = modulus ? limits.max_reduced : limits.max_exact;
  if (n <= direct_cap) {
    QSymPoly p(0, QBasis::M, modulus);
    p.set(0, 1);
    for (unsigned i = 0; i < n; ++i)
      p = times_m1(p);
    return p;
  }
  if (!modulus || !is_prime(*modulus) || n > limits.max_frobenius)
    throw ResourceLimitError("f_boolean: n=" + std::to_string(n) +
                             " needs a prime modulus and n <= " +
                             std::to_string(limits.max_frobenius));
  // (a + b)^p = a^p + b^p mod p, so M_(1)^(p^i) = M_(p^i) and the power
  // splits along the base-p digits of n.
  const std::uint64_t p = *modulus;
  std::vector<unsigned> singletons;
  std::uint64_t power = 1;
  for (unsigned rest = n; rest != 0; rest /= static_cast<unsigned>(p), power *= p)
    for (unsigned d = 0; d < rest % p; ++d)
      singletons.push_back(static_cast<unsigned>(power));
  std::reverse(singletons.begin(), singletons.end());
  return product_monomial_singletons(singletons, modulus);
}

std::uint64_t odd_l_coefficient_count(unsigned degree,
                                      const std::vector<std::uint64_t>& odd_m_masks)
{
  if (degree == 0)
    throw ContractViolation("odd_l_coefficient_count: degree must be positive");
  ParityBits bits(degree - 1);
  for (auto m : odd_m_masks)
    bits.flip(m);
  bits.subset_transform();
  return bits.count();
}

// ---------------------------------------------------------------- BQSymPoly

BQSymPoly::BQSymPoly(unsigned n, QBasis basis, std::optional<std::uint64_t> modulus)
  : n_(n), basis_(basis), modulus_(modulus)
{
  if (modulus_ && *modulus_ < 2)
    throw ContractViolation("BQSymPoly: modulus must be at least 2");
  if (n_ > 30)
    throw ResourceLimitError("BQSymPoly: degree too large for dense storage");
  coeffs_.resize(std::size_t{1} << n_);
}

void BQSymPoly::normalize(ExactInt& v) const { reduce_into(v, modulus_); }

const ExactInt& BQSymPoly::coefficient(const Composition& gamma) const
{
  if (gamma.total() != n_ + 1 || gamma.size() == 0)
    throw ContractViolation("BQSymPoly: composition has the wrong total");
  return coeffs_[parts_to_mask(gamma.parts())];
}

void BQSymPoly::add(std::uint64_t mask, const ExactInt& value)
{
  ExactInt& c = coeffs_.at(mask);
  c += value;
  normalize(c);
}

BQSymPoly BQSymPoly::times_s_plus(const ExactInt& scale) const
{
  if (basis_ != QBasis::M)
    throw ContractViolation("BQSymPoly::times_s_plus needs the M^B basis");
  BQSymPoly out(n_ + 1, QBasis::M, modulus_);
  std::vector<unsigned> w;
  ExactInt scaled;
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    const ExactInt& c = coeffs_[s];
    if (c == 0)
      continue;
    auto parts = mask_to_parts(s, n_ + 1);
    // s * M^B_(g0, g) = M^B_(g0+1, g)
    w = parts;
    ++w[0];
    out.add(parts_to_mask(w), c);
    // M_(1) acts on the tail (g1, ..., gm) only.
    scaled = c * scale;
    for (std::size_t gap = 1; gap <= parts.size(); ++gap) {
      w = parts;
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(gap), 1u);
      out.add(parts_to_mask(w), scaled);
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
      w = parts;
      ++w[i];
      out.add(parts_to_mask(w), scaled);
    }
  }
  return out;
}

void BQSymPoly::dump(std::ostream& os) const
{
  for (std::size_t s = 0; s < coeffs_.size(); ++s)
    if (coeffs_[s] != 0)
      dump_line(os, mask_to_parts(s, n_ + 1), coeffs_[s]);
}

BQSymPoly mb_to_lb(const BQSymPoly& p)
{
  if (p.basis() != QBasis::M)
    throw ContractViolation("mb_to_lb: input must be in the M^B basis");
  BQSymPoly out(p.rank(), QBasis::L, p.modulus());
  out.coeffs_ = p.coeffs_;
  subset_mobius(std::span<ExactInt>(out.coeffs_));
  for (auto& c : out.coeffs_)
    out.normalize(c);
  return out;
}

BQSymPoly lb_to_mb(const BQSymPoly& p)
{
  if (p.basis() != QBasis::L)
    throw ContractViolation("lb_to_mb: input must be in the L^B basis");
  BQSymPoly out(p.rank(), QBasis::M, p.modulus());
  out.coeffs_ = p.coeffs_;
  subset_zeta(std::span<ExactInt>(out.coeffs_));
  for (auto& c : out.coeffs_)
    out.normalize(c);
  return out;
}

BQSymPoly f_cubical_B(unsigned n, std::optional<std::uint64_t> modulus, const QSymLimits& limits)
{
  const unsigned cap = modulus ? limits.max_reduced : limits.max_exact;
  if (n > cap)
    throw ResourceLimitError("f_cubical_B: n=" + std::to_string(n) + " above limit " +
                             std::to_string(cap));
  BQSymPoly p(0, QBasis::M, modulus);
  p.add(0, 1);
  for (unsigned i = 0; i < n; ++i)
    p = p.times_s_plus(2);
  return p;
}

} // namespace descentlab
