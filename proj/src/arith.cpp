#include "galois/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace galois {

unsigned bit_length(const Natural& n) {
    if (n == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
}

Natural mod_norm(const Integer& x, const Natural& n) {
    Natural r = x % n;
    if (r < 0) r += n;
    return r;
}

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& n) {
    if (n < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    Natural b = mod_norm(base, n);
    if (exp == 0) return Natural(1) % n;
    Natural acc = 1;
    unsigned bits = bit_length(exp);
    for (unsigned i = bits; i-- > 0;) {
        acc = (acc * acc) % n;
        if (boost::multiprecision::bit_test(exp, i)) acc = (acc * b) % n;
    }
    return acc;
}

ExtGcd ext_gcd(const Natural& a, const Natural& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("ext_gcd: both arguments zero");
    Integer r0 = a, r1 = b;
    Integer u0 = 1, u1 = 0;
    Integer v0 = 0, v1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        Integer u2 = u0 - q * u1;
        u0 = u1; u1 = u2;
        Integer v2 = v0 - q * v1;
        v0 = v1; v1 = v2;
    }
    return ExtGcd{Natural(r0), u0, v0};
}

ScalarInvert invert_mod(const Natural& a, const Natural& n) {
    ExtGcd e = ext_gcd(mod_norm(a, n), n);
    if (e.g == 1) return ScalarInvert{mod_norm(e.u, n), std::nullopt};
    return ScalarInvert{std::nullopt, e.g};
}

int jacobi(const Natural& a, const Natural& n) {
    if (n < 3 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd >= 3");
    Natural x = mod_norm(a, n);
    Natural y = n;
    int sign = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            unsigned r = static_cast<unsigned>(y & 7);
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(x, y);
        if ((x & 3) == 3 && (y & 3) == 3) sign = -sign;
        x %= y;
    }
    return (y == 1) ? sign : 0;
}

Natural integer_kth_root(const Natural& n, unsigned k) {
    if (n < 1 || k < 1) throw std::invalid_argument("integer_kth_root: need n >= 1, k >= 1");
    if (k == 1 || n == 1) return k == 1 ? n : Natural(1);
    unsigned bits = bit_length(n);
    if (k >= bits) return 1;  // 2^k > n when k >= bits, so the floor root is 1
    // Newton iteration x <- ((k-1)x + n / x^(k-1)) / k from an overestimate.
    Natural x = Natural(1) << ((bits + k - 1) / k);
    for (;;) {
        Natural xk1 = 1;
        for (unsigned i = 0; i + 1 < k; ++i) xk1 *= x;
        Natural next = ((k - 1) * x + n / xk1) / k;
        if (next >= x) break;
        x = next;
    }
    // Correct any off-by-one from integer truncation.
    auto pow_k = [&](const Natural& v) {
        Natural p = 1;
        for (unsigned i = 0; i < k; ++i) p *= v;
        return p;
    };
    while (pow_k(x) > n) --x;
    while (pow_k(x + 1) <= n) ++x;
    return x;
}

std::optional<PerfectPower> perfect_power_decompose(const Natural& n) {
    if (n < 2) throw std::invalid_argument("perfect_power_decompose: need n >= 2");
    unsigned bits = bit_length(n);
    for (unsigned d = 2; d <= bits; ++d) {
        Natural eta = integer_kth_root(n, d);
        if (eta < 2) break;
        Natural p = 1;
        for (unsigned i = 0; i < d; ++i) p *= eta;
        if (p == n) {
            // Reduce the base until it is itself not a perfect power.
            auto inner = perfect_power_decompose(eta);
            if (inner) return PerfectPower{inner->base, inner->exponent * d};
            return PerfectPower{eta, d};
        }
    }
    return std::nullopt;
}

namespace {

struct SmallPrimeTables {
    std::vector<uint32_t> primes;
    std::vector<uint8_t> sieve;  // sieve[v] = 1 iff v prime, v < 8000
    Natural primorial;
    SmallPrimeTables() {
        const uint32_t B = 8000;
        sieve.assign(B, 1);
        sieve[0] = sieve[1] = 0;
        for (uint32_t i = 2; i * i < B; ++i)
            if (sieve[i])
                for (uint32_t j = i * i; j < B; j += i) sieve[j] = 0;
        for (uint32_t v = 2; v < B; ++v)
            if (sieve[v]) primes.push_back(v);
        primorial = 1;
        for (uint32_t p : primes) primorial *= p;
    }
};

const SmallPrimeTables& tables() {
    static const SmallPrimeTables t;
    return t;
}

}  // namespace

const std::vector<uint32_t>& small_primes() { return tables().primes; }
const Natural& primorial8000() { return tables().primorial; }

bool is_small_prime(uint32_t v) {
    if (v < 8000) return tables().sieve[v] != 0;
    if (v < 8000u * 8000u) {
        for (uint32_t p : tables().primes) {
            if (static_cast<uint64_t>(p) * p > v) break;
            if (v % p == 0) return false;
        }
        return true;
    }
    throw std::invalid_argument("is_small_prime: value out of range");
}

TrialDivision trial_division(const Natural& n, uint32_t bound) {
    if (n < 2) throw std::invalid_argument("trial_division: need n >= 2");
    TrialDivision out;
    if (bound == 8000) {
        // Fast path through the cached primorial: one big gcd decides
        // whether any scan is needed at all.
        Natural g = boost::multiprecision::gcd(n, primorial8000());
        if (g == 1) {
            if (n < Natural(bound) * bound) out.certain_prime = true;
            return out;
        }
        if (g == n && n < bound) {
            // n itself divides the primorial: n is a product of distinct
            // primes below the bound; the scan below resolves it.
            if (tables().sieve[static_cast<uint32_t>(n)]) {
                out.certain_prime = true;
                return out;
            }
        }
        for (uint32_t p : small_primes()) {
            if (n % p == 0) {
                if (n == p) {
                    out.certain_prime = true;
                    return out;
                }
                out.factor = p;
                out.cofactor = n / p;
                return out;
            }
        }
        throw std::logic_error("trial_division: gcd nontrivial but no prime divides");
    }
    // Generic bound: plain scan over primes below the bound.
    for (uint32_t p = 2; p < bound; ++p) {
        if (!is_small_prime(p)) continue;
        if (n % p == 0) {
            if (n == p) {
                out.certain_prime = true;
                return out;
            }
            out.factor = p;
            out.cofactor = n / p;
            return out;
        }
    }
    if (n < Natural(bound) * bound) out.certain_prime = true;
    return out;
}

TwoAdic two_adic_decompose(const Natural& u) {
    if (u < 1) throw std::invalid_argument("two_adic_decompose: need u >= 1");
    unsigned k = static_cast<unsigned>(boost::multiprecision::lsb(u));
    return TwoAdic{u >> k, k};
}

std::vector<uint32_t> prime_factors_u32(uint32_t v) {
    std::vector<uint32_t> out;
    for (uint32_t p = 2; static_cast<uint64_t>(p) * p <= v; p += (p == 2 ? 1 : 2)) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace galois
