#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace galois {

using Natural = boost::multiprecision::cpp_int;
using Integer = boost::multiprecision::cpp_int;

// Number of bits in n (0 for n == 0).
unsigned bit_length(const Natural& n);

// Canonical representative of x modulo n, in [0, n). Handles negative x.
Natural mod_norm(const Integer& x, const Natural& n);

// base^exp mod n by square-and-multiply. Requires n >= 2.
Natural mod_pow(const Natural& base, const Natural& exp, const Natural& n);

struct ExtGcd {
    Natural g;  // gcd(a, b)
    Integer u;  // u*a + v*b = g
    Integer v;
};
ExtGcd ext_gcd(const Natural& a, const Natural& b);

// Inverse of a mod n if gcd(a, n) = 1, otherwise the nontrivial gcd.
struct ScalarInvert {
    std::optional<Natural> inverse;
    std::optional<Natural> factor;  // gcd in (1, n) when not invertible
};
ScalarInvert invert_mod(const Natural& a, const Natural& n);

// Jacobi symbol (a / n). Requires n odd >= 3. Returns -1, 0, or +1.
int jacobi(const Natural& a, const Natural& n);

// Floor of the k-th root of n. Requires n >= 1, k >= 1.
Natural integer_kth_root(const Natural& n, unsigned k);

// Perfect-power decomposition: n = base^exponent with exponent maximal
// (base itself not a perfect power). Returns nullopt when n is not a
// perfect power p^v with v >= 2. Base primality is not certified here.
struct PerfectPower {
    Natural base;
    unsigned exponent;
};
std::optional<PerfectPower> perfect_power_decompose(const Natural& n);

// Trial division against the primorial of `bound`.
//   factor/cofactor set  -> a prime factor < bound was found (factor * cofactor = n)
//   certain_prime        -> n < bound^2 and no factor exists, so n is provably prime
//   neither              -> no prime factor below bound; nothing else is known
struct TrialDivision {
    std::optional<Natural> factor;
    std::optional<Natural> cofactor;
    bool certain_prime = false;
};
TrialDivision trial_division(const Natural& n, uint32_t bound = 8000);

// u = m * 2^k with m odd. Requires u >= 1.
struct TwoAdic {
    Natural m;
    unsigned k;
};
TwoAdic two_adic_decompose(const Natural& u);

// Primes below 8000 (there are 1007), their product, and a membership test.
const std::vector<uint32_t>& small_primes();
const Natural& primorial8000();
bool is_small_prime(uint32_t v);  // valid for v < 8000*8000 via trial division

// Prime factorization of a word-size integer by trial division.
std::vector<uint32_t> prime_factors_u32(uint32_t v);

}  // namespace galois
