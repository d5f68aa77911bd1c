#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "galois/arith.hpp"

using namespace galois;

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length(255) == 8);
    CHECK(bit_length(256) == 9);
    CHECK(bit_length(Natural(1) << 100) == 101);
}

TEST_CASE("mod_norm handles negatives") {
    CHECK(mod_norm(15, 7) == 1);
    CHECK(mod_norm(Integer(-1), 7) == 6);
    CHECK(mod_norm(Integer(-15), 7) == 6);
    CHECK(mod_norm(0, 5) == 0);
}

TEST_CASE("mod_pow") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(5, 0, 7) == 1);
    CHECK(mod_pow(2, 560, 561) == 1);  // Fermat liar base for 561
    CHECK(mod_pow(7, 13, 13) == 7);    // little Fermat
}

TEST_CASE("ext_gcd identity") {
    ExtGcd e = ext_gcd(240, 46);
    CHECK(e.g == 2);
    CHECK(e.u * 240 + e.v * 46 == 2);
    for (unsigned a = 1; a < 40; ++a)
        for (unsigned b = 1; b < 40; ++b) {
            ExtGcd r = ext_gcd(a, b);
            CHECK(r.u * a + r.v * b == r.g);
            CHECK(a % r.g == 0);
            CHECK(b % r.g == 0);
        }
}

TEST_CASE("invert_mod") {
    ScalarInvert ok = invert_mod(3, 10);
    REQUIRE(ok.inverse.has_value());
    CHECK(*ok.inverse == 7);
    ScalarInvert bad = invert_mod(4, 10);
    CHECK(!bad.inverse.has_value());
    REQUIRE(bad.factor.has_value());
    CHECK(*bad.factor == 2);
}

TEST_CASE("jacobi matches Euler criterion on a prime") {
    const Natural p = 101;
    for (Natural a = 1; a < p; ++a) {
        Natural e = mod_pow(a, (p - 1) / 2, p);
        int expected = e == 1 ? 1 : -1;
        CHECK(jacobi(a, p) == expected);
    }
    CHECK(jacobi(3, 7) == -1);
    CHECK(jacobi(2, 7) == 1);
    CHECK(jacobi(0, 9) == 0);
    CHECK(jacobi(6, 9) == 0);  // shared factor
}

TEST_CASE("jacobi is multiplicative in the top argument") {
    const Natural n = 135;  // odd, composite
    for (Natural a = 1; a < 30; ++a)
        for (Natural b = 1; b < 30; ++b)
            CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
}

TEST_CASE("integer_kth_root") {
    Natural big = 1;
    for (int i = 0; i < 30; ++i) big *= 10;
    CHECK(integer_kth_root(big, 3) == Natural("10000000000"));
    CHECK(integer_kth_root((Natural(1) << 64) - 1, 2) == 4294967295u);
    CHECK(integer_kth_root(1, 5) == 1);
    for (Natural n = 1; n < 200; ++n)
        for (unsigned k = 1; k <= 5; ++k) {
            Natural r = integer_kth_root(n, k);
            Natural rk = 1, rk1 = 1;
            for (unsigned i = 0; i < k; ++i) rk *= r, rk1 *= r + 1;
            CHECK(rk <= n);
            CHECK(rk1 > n);
        }
}

TEST_CASE("perfect_power_decompose") {
    auto p8 = perfect_power_decompose(8);
    REQUIRE(p8.has_value());
    CHECK(p8->base == 2);
    CHECK(p8->exponent == 3);

    auto p64 = perfect_power_decompose(64);
    REQUIRE(p64.has_value());
    CHECK(p64->base == 2);
    CHECK(p64->exponent == 6);  // exponent maximal, base not a power

    auto p36 = perfect_power_decompose(36);
    REQUIRE(p36.has_value());
    CHECK(p36->base == 6);
    CHECK(p36->exponent == 2);

    Natural t40 = 1;
    for (int i = 0; i < 40; ++i) t40 *= 3;
    auto p340 = perfect_power_decompose(t40);
    REQUIRE(p340.has_value());
    CHECK(p340->base == 3);
    CHECK(p340->exponent == 40);

    CHECK(!perfect_power_decompose(35).has_value());
    CHECK(!perfect_power_decompose(2).has_value());
    CHECK(!perfect_power_decompose(97).has_value());
}

TEST_CASE("trial_division") {
    TrialDivision d561 = trial_division(561);
    REQUIRE(d561.factor.has_value());
    CHECK(*d561.factor == 3);
    CHECK(*d561.factor * *d561.cofactor == 561);

    TrialDivision d35 = trial_division(35);
    REQUIRE(d35.factor.has_value());
    CHECK(*d35.factor * *d35.cofactor == 35);

    TrialDivision prime = trial_division(10007);
    CHECK(!prime.factor.has_value());
    CHECK(prime.certain_prime);  // 10007 < 8000^2

    TrialDivision tiny = trial_division(3);
    CHECK(!tiny.factor.has_value());
    CHECK(tiny.certain_prime);

    // 8009 * 8011: both factors above the bound, product above bound^2.
    TrialDivision blind = trial_division(Natural(8009) * 8011);
    CHECK(!blind.factor.has_value());
    CHECK(!blind.certain_prime);

    // A 70-bit prime: nothing below the bound, no certainty.
    TrialDivision big = trial_division((Natural(1) << 61) - 1);
    CHECK(!big.factor.has_value());
    CHECK(!big.certain_prime);

    TrialDivision low = trial_division(1000003, 1000);
    CHECK(!low.factor.has_value());
    CHECK(!low.certain_prime);  // 1000003 > 1000^2
}

TEST_CASE("two_adic_decompose") {
    TwoAdic a = two_adic_decompose(48);
    CHECK(a.m == 3);
    CHECK(a.k == 4);
    TwoAdic b = two_adic_decompose(1);
    CHECK(b.m == 1);
    CHECK(b.k == 0);
    TwoAdic c = two_adic_decompose(560);
    CHECK(c.m == 35);
    CHECK(c.k == 4);
}

TEST_CASE("small primes table") {
    const auto& ps = small_primes();
    CHECK(ps.size() == 1007);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 7993);
    CHECK(is_small_prime(2));
    CHECK(is_small_prime(7993));
    CHECK(!is_small_prime(7991));  // 61 * 131
    CHECK(!is_small_prime(1));
    CHECK(is_small_prime(10007));          // via trial division, still < 8000^2
    CHECK(!is_small_prime(8009 * 2));      // even
    CHECK(primorial8000() % 7993 == 0);
    CHECK(primorial8000() % 2 == 0);
    CHECK(primorial8000() % 25 != 0);  // squarefree
}

TEST_CASE("prime_factors_u32") {
    CHECK(prime_factors_u32(12) == std::vector<uint32_t>{2, 3});
    CHECK(prime_factors_u32(97) == std::vector<uint32_t>{97});
    CHECK(prime_factors_u32(1).empty());
    CHECK(prime_factors_u32(561) == std::vector<uint32_t>{3, 11, 17});
}
