#include <doctest.h>

#include "oracles.hh"

#include <descentlab/abcd.hh>

#include <random>

using namespace descentlab;

namespace {

// Direct expansion of a cd-word into ab-words, by string substitution.
std::map<std::string, long> expand_by_strings(const std::string& w)
{
  std::map<std::string, long> acc{{"", 1}};
  for (char ch : w) {
    std::map<std::string, long> next;
    for (auto& [prefix, c] : acc) {
      if (ch == 'c') {
        next[prefix + "a"] += c;
        next[prefix + "b"] += c;
      } else {
        next[prefix + "ab"] += c;
        next[prefix + "ba"] += c;
      }
    }
    acc = std::move(next);
  }
  return acc;
}

AbPoly boolean_index(unsigned n)
{
  auto t = oracle::beta_by_permutations(n);
  AbPoly p(n - 1);
  for (std::size_t s = 0; s < t.size(); ++s)
    p[s] = static_cast<unsigned long>(t[s]);
  return p;
}

AbPoly cubical_index(unsigned n) { return ab_index(beta_table(n, true)); }

} // namespace

TEST_CASE("ab-index of small posets")
{
  auto b3 = ab_index(beta_table(3, false));
  CHECK(b3.degree() == 2);
  CHECK(b3[ab_mask("aa")] == 1);
  CHECK(b3[ab_mask("ba")] == 2);
  CHECK(b3[ab_mask("ab")] == 2);
  CHECK(b3[ab_mask("bb")] == 1);
  CHECK(cubical_index(2).coefficients() == std::vector<ExactInt>{1, 3, 3, 1});
  CHECK(ab_index(std::vector<ExactInt>(4), 2).is_zero());
  CHECK(ab_word(0b10, 3) == "aba");
  CHECK_THROWS_AS(ab_mask("abc"), ContractViolation);
}

TEST_CASE("cd expansion agrees with string substitution")
{
  for (unsigned deg = 1; deg <= 7; ++deg)
    for (const auto& w : cd_words(deg)) {
      CdPoly p(deg);
      p.add(w, 1);
      auto ab = cd_to_ab(p);
      AbPoly expect(deg);
      for (auto& [word, c] : expand_by_strings(w))
        expect[ab_mask(word)] += c;
      REQUIRE(ab == expect);
    }
  CHECK(cd_words(4).size() == 5);
  CHECK(cd_words(10).size() == 89);
}

TEST_CASE("cd-index of small Boolean algebras")
{
  CHECK(ab_to_cd(boolean_index(2)).str() == "c");
  CHECK(ab_to_cd(boolean_index(3)).str() == "c^2 + d");
  CdPoly expect(2);
  expect.add("cc", 1);
  expect.add("d", 1);
  CHECK(ab_to_cd(boolean_index(3)) == expect);
}

TEST_CASE("non-Eulerian input is rejected with a residual")
{
  AbPoly p(2);
  p[0] = 1;
  try {
    ab_to_cd(p);
    FAIL("expected NotInSpanError");
  } catch (const NotInSpanError& e) {
    CHECK_FALSE(e.residual().is_zero());
  }
}

TEST_CASE("cd round trips")
{
  for (unsigned n = 1; n <= 10; ++n) {
    auto psi = ab_index(beta_table(n, false));
    CHECK(cd_to_ab(ab_to_cd(psi)) == psi);
  }
  for (unsigned n = 1; n <= 9; ++n) {
    auto psi = cubical_index(n);
    CHECK(cd_to_ab(ab_to_cd(psi)) == psi);
  }
}

TEST_CASE("omega")
{
  AbPoly ab(2);
  ab[ab_mask("ab")] = 1;
  CHECK(omega(ab).str() == "2d");
  AbPoly ba(2);
  ba[ab_mask("ba")] = 1;
  CHECK(omega(ba).str() == "c^2");
  AbPoly mixed(4);
  mixed[ab_mask("abab")] = 1;
  CHECK(omega(mixed).str() == "4d^2");
  // a * Psi(B_2) = aa + ab -> c^2 + 2d, which expands to aa + 3ab + 3ba + bb
  CHECK(omega(prepend_a(boolean_index(2))).str() == "c^2 + 2d");
  CHECK(cd_to_ab(omega(prepend_a(boolean_index(2)))) == cubical_index(2));
}

TEST_CASE("cubical cd-index is omega of a times the Boolean ab-index")
{
  for (unsigned n = 1; n <= 9; ++n)
    CHECK(ab_to_cd(cubical_index(n)) == omega(prepend_a(ab_index(beta_table(n, false)))));
}

TEST_CASE("omega images are c^deg modulo 2")
{
  for (unsigned n = 1; n <= 9; ++n) {
    const auto image = omega(prepend_a(ab_index(beta_table(n, false))));
    for (const auto& [w, c] : image.terms())
      CHECK((w == std::string(n, 'c')) == (mpz_odd_p(c.get_mpz_t()) != 0));
  }
}

TEST_CASE("signed sums vanish on isolated odd intervals")
{
  auto b4 = beta_table(4, false);
  CHECK(signed_sum(b4, SignVector(3, 0b010)) == 0);
  CHECK(signed_sum(b4, SignVector(3, 0)) == 24);
  CHECK(signed_sum(ab_index(b4), SignVector(3, 0b010)) == 0);
  for (unsigned n = 2; n <= 10; ++n) {
    auto t = beta_table(n, false);
    for (std::uint64_t m = 0; m < t.size(); ++m)
      if (has_isolated_odd_interval(m, n - 1))
        REQUIRE(signed_sum(t, SignVector(n - 1, m)) == 0);
  }
  for (unsigned n = 1; n <= 8; ++n) {
    auto t = beta_table(n, true);
    for (std::uint64_t m = 0; m < t.size(); ++m)
      if (has_isolated_odd_interval(m, n))
        REQUIRE(signed_sum(t, SignVector(n, m)) == 0);
  }
  auto c3 = beta_table(3, true);
  CHECK(signed_sum(c3, SignVector(3, 0b101)) == 0);
  CHECK(has_isolated_odd_interval(0b010, 3));
  CHECK_FALSE(has_isolated_odd_interval(0b0110, 4));
  CHECK(has_isolated_odd_interval(0b1110, 4));
  CHECK_FALSE(has_isolated_odd_interval(0, 4));
  CHECK_THROWS_AS(SignVector(3, 0b1000), ContractViolation);
}

TEST_CASE("single-d sums have half their ab-coefficients odd")
{
  for (unsigned n = 2; n <= 12; ++n) {
    std::vector<ExactInt> ones(n - 1, 1);
    CHECK(cd_to_ab(single_d_sum(n, ones)).odd_count() == (std::size_t{1} << (n - 1)));
  }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 11);
    std::vector<ExactInt> alpha(n - 1);
    for (auto& a : alpha)
      a = static_cast<long>(rng() % 41) - 20;
    alpha[rng() % alpha.size()] = 2 * (static_cast<long>(rng() % 20) - 10) + 1;
    CHECK(cd_to_ab(single_d_sum(n, alpha)).odd_count() == (std::size_t{1} << (n - 1)));
  }
}

TEST_CASE("coefficient of d^k c in the cubical cd-index")
{
  for (unsigned p : {3u, 5u, 7u}) {
    const unsigned k = (p - 1) / 2;
    auto cd = ab_to_cd(cubical_index(p));
    CHECK(cd.coefficient(std::string(k, 'd') + "c") ==
          pow2(k) * ExactInt(p) * euler_number(p - 1));
  }
}

TEST_CASE("multiplication rule readings")
{
  auto r11 = macmahon_multiplication_check(1, 1, "", "");
  CHECK(r11.lhs == 2);
  CHECK(r11.product_holds);
  CHECK_FALSE(r11.sum_holds);
  auto r21 = macmahon_multiplication_check(2, 1, "a", "");
  CHECK(r21.lhs == 3);
  CHECK(r21.product_holds);
  auto r22 = macmahon_multiplication_check(2, 2, "a", "b");
  CHECK(r22.lhs == 6);
  CHECK(r22.product_holds);
  // product form for every word pair with m + n <= 9
  for (unsigned m = 1; m <= 5; ++m)
    for (unsigned n = 1; m + n <= 9; ++n)
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << (m - 1)); ++u)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << (n - 1)); ++v)
          REQUIRE(macmahon_multiplication_check(m, n, ab_word(u, m - 1), ab_word(v, n - 1))
                    .product_holds);
  CHECK_THROWS_AS(macmahon_multiplication_check(2, 2, "", "b"), ContractViolation);
}
