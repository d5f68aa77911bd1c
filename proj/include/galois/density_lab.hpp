#pragma once

#include "galois/arith.hpp"

#include <cstdint>
#include <vector>

namespace galois {

using Rational = boost::multiprecision::cpp_rational;

// How one prime of n splits in the abstract product algebra: valuation
// v, residue degree f, number m of primes above p, and the twist
// exponent t of the cycle-closing action
//   sigma.(x_0, ..., x_{m-1}) = (x_1, ..., x_{m-1}, x_0^(p^t)).
// t is the inverse of a unit mod f, and 0 exactly when f = 1.
struct SplittingDatum {
    uint32_t p = 3;
    unsigned v = 1;
    unsigned f = 1;
    unsigned m = 1;
    unsigned t = 0;
};

// Product-of-local-algebras model: one datum per prime of n, all with
// the same total degree d = f*m, and n = prod p^v.
struct AbstractAlgebraModel {
    Natural n = 0;
    unsigned d = 1;
    std::vector<SplittingDatum> data;
};

// Throws invalid_argument when a datum or the model breaks an
// invariant: p not prime, duplicate primes, f*m != d, v < 1, or t
// outside the unit-inverse normalization.
void validate_model(const AbstractAlgebraModel& model);

// Builds the model with n = prod p^v and validates it.
AbstractAlgebraModel make_model(unsigned d, std::vector<SplittingDatum> data);

// Every prime inert: one datum (f = d, m = 1, t = 1) per prime.
AbstractAlgebraModel inert_model(const std::vector<uint32_t>& primes, unsigned d);

// The per-prime factor gcd(n^m - p^t, p^f - 1) / ((p^f-1)^m * p^((v-1)d)).
Rational splitting_factor(const Natural& n, unsigned d, const SplittingDatum& s);

// Exact density of bad witnesses: the product of the splitting factors.
Rational density_formula(const AbstractAlgebraModel& model);

// A finite field of order p^f, elements encoded as radix-p digit
// strings of their coordinates in [0, q). The modulus is the first
// monic polynomial with no monic divisor of degree in [1, f/2], found
// by exhaustive search.
struct SmallField {
    uint32_t p = 2;
    unsigned f = 1;
    uint32_t q = 2;                 // p^f
    std::vector<uint32_t> modulus;  // monic, coefficients low to high, size f+1

    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;
};

// Requires p prime and p^f <= 2^16.
SmallField make_small_field(uint32_t p, unsigned f);

// Exhaustively counts tuples x in (field*)^m with x^n = sigma(x) for
// each prime, one prime at a time (the condition is componentwise), and
// multiplies the per-prime densities. Requires every v = 1, every
// p^f <= 2^16, and total tuple count prod (p^f-1)^m <= 10^8; violations
// throw invalid_argument naming the offending quantity. The parallel
// variant splits each enumeration over threads; same exact result.
Rational brute_force_density(const AbstractAlgebraModel& model);
Rational brute_force_density_serial(const AbstractAlgebraModel& model);

// Exhaustive fraction of Miller-Rabin-passing witnesses among the
// units mod n. Requires n odd, composite and <= 10^5.
Rational mr_density_oracle(const Natural& n);

struct MrDensityStats {
    uint32_t n = 0;
    uint64_t liars = 0;     // units passing Miller-Rabin
    uint64_t units = 0;     // phi(n)
    unsigned omega = 0;     // distinct prime factors
    bool within_bound = false;  // liars/units <= min(1/4, 2^(1-omega))
};

// Stats for every odd composite in [lo, hi], in increasing order.
// The parallel variant distributes the moduli; identical output.
std::vector<MrDensityStats> mr_density_range(uint32_t lo, uint32_t hi);
std::vector<MrDensityStats> mr_density_range_serial(uint32_t lo, uint32_t hi);

// True when every witness in [1, p-1] passes for every prime p in
// [lo, hi] (Miller-Rabin never rejects a prime).
bool mr_prime_completeness(uint32_t lo, uint32_t hi);
bool mr_prime_completeness_serial(uint32_t lo, uint32_t hi);

// Exhaustive bad-pair fraction of the two-test composition (both
// verdicts combined with vee) over unit pairs (x, y) mod n. Equals the
// square of mr_density_oracle(n); the double loop verifies the product
// rule rather than assuming it. Requires n odd composite <= 2000.
Rational product_rule_pair_fraction(const Natural& n);

struct BoundCheck {
    bool hypotheses_hold = false;     // A > 2, all p >= B, >= 2 primes,
                                      // and some p has v*log p >= A*log(n)/d
    std::vector<uint32_t> witnesses;  // primes realizing the last hypothesis
    bool bound_holds = false;   // density <= p^(-(v*d/2)(1 - 2/A - 4/B)) each witness
    bool chain_holds = false;   // density <= p-factor <= same bound, each witness
    Rational mu;
};

// Exact-rational check of the density bound and of the per-prime
// inequality chain behind it. All comparisons are performed on integer
// powers (no floating point).
BoundCheck bound_check(const AbstractAlgebraModel& model, const Rational& A,
                       const Rational& B);

// Deterministic model family over primes {3,5,7,11,13}, degrees
// d in {1,2,3,4,6,9}, all (f, m) splittings with f, m <= 3 and all
// normalized t, subsets of up to three primes. Combinations beyond the
// brute-force tuple guard are skipped, so every emitted model can be
// enumerated exhaustively.
std::vector<AbstractAlgebraModel> generate_models();

}  // namespace galois
