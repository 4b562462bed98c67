#include <doctest.h>

#include <descentlab/cyclo.hh>

#include <random>

using namespace descentlab;

namespace {

IntPoly poly(std::vector<long> c)
{
  std::vector<ExactInt> v(c.begin(), c.end());
  return IntPoly(std::move(v));
}

// Phi_k by repeated exact division of t^k - 1 by Phi_d for proper divisors d,
// each Phi_d itself obtained the same way.
IntPoly cyclotomic_by_division(std::uint64_t k)
{
  IntPoly p = IntPoly::x_pow_minus_one(k);
  for (std::uint64_t d = 1; d < k; ++d)
    if (k % d == 0) {
      auto [q, r] = p.divmod(cyclotomic_by_division(d));
      REQUIRE(r.is_zero());
      p = q;
    }
  return p;
}

} // namespace

TEST_CASE("integer polynomial arithmetic")
{
  auto a = poly({1, 1});
  auto b = poly({-1, 1});
  CHECK(a * b == poly({-1, 0, 1}));
  CHECK((a + b) == poly({0, 2}));
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  auto [q, r] = poly({5, 0, 0, 1}).divmod(poly({1, 1}));
  CHECK(q == poly({1, -1, 1}));
  CHECK(r == poly({4}));
  CHECK(poly({3, 0, 2}).eval(2) == 11);
  CHECK(IntPoly::x_pow_minus_one(6).over_binomial(2) == poly({1, 0, 1, 0, 1}));
  CHECK_THROWS_AS(poly({1, 1}).over_binomial(2), ContractViolation);
  CHECK_THROWS_AS(poly({1, 1}).divmod(poly({1, 2})), ContractViolation);
  CHECK(poly({-1, 0, 2}).str() == "2*t^2 - 1");
}

TEST_CASE("cyclotomic polynomials")
{
  CHECK(cyclotomic(1) == poly({-1, 1}));
  CHECK(cyclotomic(2) == poly({1, 1}));
  CHECK(cyclotomic(4) == poly({1, 0, 1}));
  CHECK(cyclotomic(6) == poly({1, -1, 1}));
  CHECK(cyclotomic(9).eval(1) == 3);
  CHECK(cyclotomic(105)[7] == -2);
  for (std::uint64_t k = 1; k <= 60; ++k) {
    CHECK(cyclotomic(k) == cyclotomic_by_division(k));
    CHECK(cyclotomic(k).degree() == static_cast<long>(totient(k)));
  }
}

TEST_CASE("product of cyclotomic polynomials over divisors")
{
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const std::uint64_t k = 1 + rng() % 2000;
    IntPoly prod(std::vector<ExactInt>{1});
    for (auto d : divisors(k))
      prod = prod * cyclotomic(d);
    CHECK(prod == IntPoly::x_pow_minus_one(k));
  }
}

TEST_CASE("divisibility by cyclotomic factors")
{
  auto b3 = beta_table(3, false);
  auto b4 = beta_table(4, false);
  auto b5 = beta_table(5, false);
  CHECK(divides_order(b4, 4, 0));
  CHECK(divides_order(b4, 4, 1));
  CHECK(divides_order(b3, 2, 0));
  CHECK(divides_order(b5, 10, 0));
  CHECK_FALSE(divides_order(b5, 10, 1));
  CHECK(multiplicity(b5, 2, 3) == 2);
  CHECK_THROWS_AS(divides_order(b4, 1, 0), ContractViolation);
}

TEST_CASE("projection test agrees with long division")
{
  for (unsigned n = 3; n <= 9; ++n)
    for (bool s : {false, true}) {
      if (s && n > 7)
        continue;
      auto t = beta_table(n, s);
      for (std::uint64_t m = 2; m <= 120; ++m)
        for (unsigned j = 0; j <= 1; ++j) {
          const bool proj = divides_order(t, m, j, DivisibilityMethod::projection);
          REQUIRE(proj == divides_order(t, m, j, DivisibilityMethod::remainder));
          if (j == 0)
            REQUIRE(proj == eval_at_primitive_root(t, m).is_zero());
        }
    }
}

TEST_CASE("special values")
{
  for (unsigned n = 1; n <= 14; ++n)
    CHECK(eval_special(beta_table(n, false), SpecialPoint::one).re == pow2(n - 1));
  CHECK(eval_special(beta_table(15, false), SpecialPoint::minus_one).re == 1536);
  CHECK(eval_special(beta_table(8, false), SpecialPoint::i) == GaussianInt{0, 0});
  for (unsigned n = 1; n <= 16; ++n) {
    Rational expect = Rational(pow2(n)) * (Rational(1, 2) - rho(n));
    CHECK(Rational(eval_special(beta_table(n, false), SpecialPoint::minus_one).re) == expect);
  }
  CHECK(GaussianInt{3, -2}.str() == "3 - 2i");
}

TEST_CASE("evaluation at primitive roots")
{
  CHECK(eval_at_primitive_root(beta_table(5, false), 10).is_zero());
  CHECK(eval_at_primitive_root(beta_table(10, false), 10).is_zero());
  CHECK_FALSE(eval_at_primitive_root(beta_table(4, false), 8).is_zero());
  // Q_q(zeta) = 2^q Re(zeta) (rho(q) - 1/2) at primitive 2p-th roots
  for (unsigned q : {5u, 9u, 11u, 13u, 17u})
    for (auto p : prime_factors(q)) {
      REQUIRE(q > (1u << std::popcount(q)) - 1);
      Rational scale = Rational(pow2(q)) * (rho(q) - Rational(1, 2));
      CHECK(equals_real_part_multiple(beta_table(q, false), 2 * p, scale));
    }
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    const auto p = prime_factors(q)[0];
    Rational scale = Rational(pow2(2 * q)) * (rho(q) - Rational(1, 2));
    CHECK(equals_real_part_multiple(beta_table(2 * q, false), 2 * p, scale));
  }
}

TEST_CASE("derivative of the signed polynomial at primitive 4p-th roots")
{
  const std::vector<long> magnitudes{24, 800, 54656};
  const std::vector<std::uint64_t> primes{3, 5, 7};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    auto r = signed_derivative_check(primes[i]);
    CHECK(r.magnitude == magnitudes[i]);
    CHECK(r.phi_divides);
    CHECK_FALSE(r.phi_squared_divides);
    CHECK(r.stated_holds);
    CHECK_FALSE(r.negated_holds);
  }
  CHECK_THROWS_AS(signed_derivative_check(9), ContractViolation);
}

TEST_CASE("candidate policies")
{
  auto h = scan_candidates(5, 30, CandidatePolicy::heuristic);
  CHECK(h == std::vector<std::uint64_t>{2, 4, 6, 8, 10, 12, 16, 18, 20, 24, 30});
  CHECK(scan_candidates(5, 30, CandidatePolicy::exhaustive).size() == 29);
  CHECK(parse_policy("exhaustive") == CandidatePolicy::exhaustive);
  CHECK_THROWS_AS(parse_policy("fast"), ContractViolation);
}

TEST_CASE("factor scans")
{
  auto r6 = factor_scan(beta_table(6, false), {.bound = 64});
  CHECK(r6.factor_string() == "Phi_2^2 Phi_6^2 Phi_10");
  CHECK(r6.to_text() == "n=6 signed=0 policy=heuristic bound=64: Phi_2^2 Phi_6^2 Phi_10");
  auto r12 = factor_scan(beta_table(12, false), {.bound = 256});
  CHECK(r12.multiplicity_of(22) == 2u);
  CHECK(r12.multiplicity_of(66) == 1u);
  CHECK(r12.multiplicity_of(110) == 1u);
  CHECK(r12.multiplicity_of(198) == 1u);
  auto s3 = factor_scan(beta_table(3, true), {.bound = 16});
  CHECK(s3.factor_string() == "Phi_4 Phi_8 Phi_12");
  auto s3x = factor_scan(beta_table(3, true), {.bound = 16, .policy = CandidatePolicy::exhaustive});
  CHECK(s3x.factors == s3.factors);
  auto w = factor_scan(beta_table(9, false), {.bound = 500, .workers = 4});
  CHECK(w.factors == factor_scan(beta_table(9, false), {.bound = 500}).factors);
  CHECK(factor_scan(beta_table(15, false), {.bound = 200}).factor_string() == "-");
}

TEST_CASE("factor strings and JSON")
{
  auto f = parse_factor_string("Phi_2^2 Phi_10 Phi_6^1");
  REQUIRE(f.size() == 3);
  CHECK(f[0] == CyclotomicFactor{2, 2});
  CHECK(f[1] == CyclotomicFactor{6, 1});
  CHECK(f[2] == CyclotomicFactor{10, 1});
  CHECK(parse_factor_string("-").empty());
  CHECK_THROWS_AS(parse_factor_string("Phi_x"), ContractViolation);
  CHECK_THROWS_AS(parse_factor_string("Psi_2"), ContractViolation);
  FactorReport r;
  r.n = 4;
  r.is_signed = true;
  r.bound = 100;
  r.max_multiplicity = 3;
  r.factors = {{4, 1}, {16, 1}};
  CHECK(r.to_json() ==
        R"({"schema":"descentlab/1","n":4,"signed":true,"policy":"heuristic","bound":100,)"
        R"("max_multiplicity":3,"factors":[{"m":4,"multiplicity":1},{"m":16,"multiplicity":1}]})");
}
