#include <doctest.h>

#include <descentlab/descent.hh>
#include <descentlab/qsym.hh>

#include <map>
#include <random>

using namespace descentlab;

namespace {

QSymPoly from_terms(unsigned degree, std::map<std::vector<unsigned>, long> terms,
                    std::optional<std::uint64_t> modulus = std::nullopt)
{
  QSymPoly p(degree, QBasis::M, modulus);
  for (auto& [parts, c] : terms)
    p.add(Composition(parts), c);
  return p;
}

void check_l_equals_table(const QSymPoly& m_poly, const DescentTable& t)
{
  auto l = m_to_l(m_poly);
  REQUIRE(l.size() == t.size());
  for (std::uint64_t s = 0; s < t.size(); ++s) {
    ExactInt expect = t.at(s);
    if (m_poly.modulus())
      mpz_fdiv_r_ui(expect.get_mpz_t(), expect.get_mpz_t(), *m_poly.modulus());
    REQUIRE(l[s] == expect);
  }
}

} // namespace

TEST_CASE("basis change")
{
  for (unsigned n = 1; n <= 6; ++n) {
    auto l = m_to_l(QSymPoly::basis_element(Composition{n}));
    for (std::uint64_t s = 0; s < l.size(); ++s)
      CHECK(l[s] == ((std::popcount(s) % 2) ? -1 : 1));
    auto m = l_to_m(QSymPoly::basis_element(Composition{n}, QBasis::L));
    for (std::uint64_t s = 0; s < m.size(); ++s)
      CHECK(m[s] == 1);
  }
  std::mt19937_64 rng(7);
  for (unsigned n = 1; n <= 8; ++n) {
    QSymPoly p(n);
    for (std::uint64_t s = 0; s < p.size(); ++s)
      p.set(s, static_cast<long>(rng() % 201) - 100);
    CHECK(l_to_m(m_to_l(p)) == p);
  }
  CHECK_THROWS_AS(m_to_l(QSymPoly(3, QBasis::L)), ContractViolation);
}

TEST_CASE("products of single-part monomials")
{
  CHECK(product_monomial_singletons({5}) == QSymPoly::basis_element(Composition{5}));
  CHECK(product_monomial_singletons({1, 1}) == from_terms(2, {{{2}, 1}, {{1, 1}, 2}}));
  CHECK(product_monomial_singletons({4, 2}) == from_terms(6, {{{6}, 1}, {{4, 2}, 1}, {{2, 4}, 1}}));
  CHECK(ordered_set_partitions(3).size() == 13);
  CHECK(ordered_set_partitions(5).size() == 541);
  CHECK_THROWS_AS(ordered_set_partitions(9), ResourceLimitError);
  // against the general quasi-shuffle product
  std::vector<std::vector<unsigned>> lists{{1, 2}, {3, 1, 2}, {2, 2, 2}, {1, 4, 1, 2}};
  for (const auto& list : lists) {
    QSymPoly prod = QSymPoly::basis_element(Composition{list[0]});
    for (std::size_t i = 1; i < list.size(); ++i)
      prod = prod * QSymPoly::basis_element(Composition{list[i]});
    CHECK(prod == product_monomial_singletons(list));
  }
}

TEST_CASE("quasi-shuffles")
{
  CHECK(quasi_shuffles({1}, {1}).size() == 3);
  CHECK(quasi_shuffles({1, 2}, {3}).size() == 5);
  CHECK(QSymPoly::basis_element(Composition{1}) * QSymPoly::basis_element(Composition{2}) ==
        from_terms(3, {{{1, 2}, 1}, {{2, 1}, 1}, {{3}, 1}}));
  CHECK_THROWS_AS(QSymPoly(2, QBasis::M, 3) * QSymPoly(2, QBasis::M, 5), ContractViolation);
}

TEST_CASE("boolean algebra generating function")
{
  for (unsigned n = 1; n <= 10; ++n)
    check_l_equals_table(f_boolean(n), beta_table(n, false));
  for (unsigned n = 1; n <= 8; ++n)
    CHECK(product_monomial_singletons(std::vector<unsigned>(n, 1)) == f_boolean(n));
  for (unsigned a = 1; a <= 7; ++a)
    for (unsigned b = 1; a + b <= 8; ++b)
      CHECK(f_boolean(a) * f_boolean(b) == f_boolean(a + b));
  CHECK_THROWS_AS(f_boolean(13), ResourceLimitError);
}

TEST_CASE("boolean generating function modulo small numbers")
{
  for (unsigned j = 0; j <= 4; ++j) {
    const unsigned n = 1u << j;
    auto p = f_boolean(n, 2);
    CHECK(p.nonzero_count() == 1);
    CHECK(p.coefficient(Composition{n}) == 1);
  }
  CHECK(f_boolean(6, 2) == from_terms(6, {{{6}, 1}, {{4, 2}, 1}, {{2, 4}, 1}}, 2));
  CHECK(f_boolean(4, 4) == from_terms(4, {{{4}, 1}, {{2, 2}, 2}}, 4));
  CHECK(f_boolean(8, 4) == from_terms(8, {{{8}, 1}, {{4, 4}, 2}}, 4));
}

TEST_CASE("digit route for prime moduli agrees with direct expansion")
{
  QSymLimits force{.max_exact = 12, .max_reduced = 0, .max_frobenius = 24};
  for (std::uint64_t p : {2u, 3u, 5u, 7u})
    for (unsigned n = 1; n <= 14; ++n)
      CHECK(f_boolean(n, p, force) == f_boolean(n, p));
  for (auto [n, p] : std::vector<std::pair<unsigned, std::uint64_t>>{{20, 3}, {21, 2}, {20, 5}})
    check_l_equals_table(f_boolean(n, p), beta_table(n, false));
  CHECK_THROWS_AS(f_boolean(20, 4), ResourceLimitError);
  CHECK_THROWS_AS(f_boolean(20), ResourceLimitError);
}

TEST_CASE("odd L-coefficient count depends only on the number of binary ones")
{
  std::map<unsigned, Rational> by_popcount;
  for (unsigned n = 1; n <= 24; ++n) {
    auto p = f_boolean(n, 2);
    std::vector<std::uint64_t> odd;
    for (std::uint64_t s = 0; s < p.size(); ++s)
      if (p[s] != 0)
        odd.push_back(s);
    const Rational share = Rational(static_cast<unsigned long>(odd_l_coefficient_count(n, odd))) /
                           Rational(pow2(n - 1));
    CHECK(share == rho(n));
    auto [it, fresh] = by_popcount.try_emplace(static_cast<unsigned>(std::popcount(n)), share);
    CHECK(it->second == share);
  }
}

TEST_CASE("cubical lattice generating function")
{
  for (unsigned n = 0; n <= 10; ++n) {
    auto l = mb_to_lb(f_cubical_B(n));
    auto t = n == 0 ? std::optional<DescentTable>() : std::optional(beta_table(n, true));
    if (!t) {
      CHECK(l[0] == 1);
      continue;
    }
    for (std::uint64_t s = 0; s < t->size(); ++s)
      REQUIRE(l[s] == t->at(s));
    CHECK(lb_to_mb(l) == f_cubical_B(n));
  }
  auto two = mb_to_lb(f_cubical_B(2));
  CHECK(two.coefficients() == std::vector<ExactInt>{1, 3, 3, 1});
  for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
    auto mod4 = f_cubical_B(p, 4);
    BQSymPoly expect4(p, QBasis::M, 4);
    expect4.add(0, 1);
    expect4.add(parts_to_mask({p, 1}), 2);
    CHECK(mod4 == expect4);
    auto modp = f_cubical_B(p, p);
    BQSymPoly expectp(p, QBasis::M, p);
    expectp.add(0, 1);
    expectp.add(parts_to_mask({1, p}), 2);
    CHECK(modp == expectp);
  }
  CHECK_THROWS_AS(f_cubical_B(13), ResourceLimitError);
}

TEST_CASE("text dump")
{
  CHECK(f_boolean(2).dump() == "2 : 1\n1,1 : 2\n");
  CHECK(m_to_l(f_boolean(3)).dump() == "3 : 1\n1,2 : 2\n2,1 : 2\n1,1,1 : 1\n");
}
