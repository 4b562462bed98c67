#include <doctest.h>

#include "oracles.hh"

#include <descentlab/numbers.hh>

using namespace descentlab;

TEST_CASE("compositions and subsets correspond through partial sums")
{
  CHECK(subset_to_composition(SubsetMask::of(4, {1, 3})) == Composition{1, 2, 2});
  CHECK(subset_to_composition(SubsetMask(3, 0)) == Composition{4});
  CHECK(composition_to_subset(Composition{2, 1, 2}) == SubsetMask::of(4, {2, 3}));
  for (unsigned u = 0; u <= 8; ++u)
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << u); ++b) {
      SubsetMask s(u, b);
      auto g = subset_to_composition(s);
      CHECK(g.total() == u + 1);
      CHECK(composition_to_subset(g) == s);
      CHECK(parts_to_mask(mask_to_parts(b, u + 1)) == b);
    }
  CHECK_THROWS_AS(SubsetMask(3, 0b1000), ContractViolation);
  CHECK_THROWS_AS(Composition({2, 0, 1}), ContractViolation);
}

TEST_CASE("multinomials agree with Pascal's rule")
{
  CHECK(multinomial(23, Composition{11, 12}) == 1352078);
  CHECK(oracle::multinomial_pascal({11, 12}) == 1352078u);
  for (unsigned a = 1; a <= 5; ++a)
    for (unsigned b = 1; b <= 5; ++b)
      for (unsigned c = 1; c <= 4; ++c)
        CHECK(multinomial(a + b + c, Composition{a, b, c}) ==
              ExactInt(static_cast<unsigned long>(oracle::multinomial_pascal({a, b, c}))));
  CHECK_THROWS_AS(multinomial(5, Composition{2, 2}), ContractViolation);
}

TEST_CASE("carries count the p-adic valuation of multinomials")
{
  CHECK(carries_base_p(Composition{2, 2}, 2) == 1);
  CHECK(carries_base_p(Composition{1, 2}, 2) == 0);
  CHECK(carries_base_p(Composition{11, 12}, 2) == 1);
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned a = 1; a <= 12; ++a)
      for (unsigned b = 1; b <= 12; ++b)
        for (unsigned c : {1u, 3u, 6u}) {
          Composition g{a, b, c};
          CHECK(carries_base_p(g, p) == valuation(multinomial(g.total(), g), p));
        }
  CHECK_THROWS_AS(carries_base_p(Composition{1}, 1), ContractViolation);
}

TEST_CASE("odd multinomials are exactly the bitwise-disjoint ones")
{
  for (unsigned a = 1; a <= 16; ++a)
    for (unsigned b = 1; b <= 16; ++b) {
      Composition g{a, b};
      CHECK(is_multinomial_odd(g) == mpz_odd_p(multinomial(a + b, g).get_mpz_t()));
    }
}

TEST_CASE("binary expansions and essential elements")
{
  auto e = binary_expansion(13);
  CHECK(e.exponents == std::vector<unsigned>{3, 2, 0});
  CHECK(e.popcount() == 3);
  CHECK(e.value() == 13);
  CHECK(essential_elements(7) == std::vector<unsigned>{1, 2, 3, 4, 5, 6});
  CHECK(essential_elements(6) == std::vector<unsigned>{2, 4});
  CHECK(essential_elements(8).empty());
}

TEST_CASE("Euler numbers match alternating permutation counts")
{
  CHECK(euler_number(5) == 16);
  CHECK(euler_number(7) == 272);
  CHECK(euler_number(10) == 50521);
  for (unsigned n = 1; n <= 9; ++n)
    CHECK(euler_number(n) == ExactInt(static_cast<unsigned long>(oracle::alternating_count(n))));
}

TEST_CASE("Springer numbers match the largest signed descent class")
{
  CHECK(signed_euler_number(2) == 3);
  CHECK(signed_euler_number(5) == 361);
  CHECK(signed_euler_number(7) == 24611);
  for (unsigned n = 1; n <= 6; ++n) {
    auto t = oracle::signed_beta_by_permutations(n);
    CHECK(signed_euler_number(n) ==
          ExactInt(static_cast<unsigned long>(*std::max_element(t.begin(), t.end()))));
  }
}

TEST_CASE("small number theory")
{
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(1) == 1);
  CHECK(totient(36) == 12);
  CHECK(radical(72) == 6);
  CHECK(as_prime_power(81).prime == 3);
  CHECK(as_prime_power(81).exponent == 4);
  CHECK(as_prime_power(12).prime == 0);
  CHECK(is_prime(9973));
  CHECK_FALSE(is_prime(9971));
}

TEST_CASE("dyadic formatting")
{
  CHECK(format_dyadic(Rational(3991, 8192)) == "3991/2^13");
  CHECK(format_dyadic(Rational(1, 2)) == "1/2");
  CHECK(format_dyadic(Rational(1)) == "1");
  CHECK(format_dyadic(Rational(-1, 2)) == "-1/2");
}
