#pragma once

#include <optional>
#include <utility>

#include "galois/cyclotomic.hpp"
#include "galois/evidence.hpp"
#include "galois/polyring.hpp"
#include "galois/rng.hpp"

namespace galois {

// The outer extension S = R[Y]/(Y^d_kum - a) over a verified base
// algebra R, together with everything apply_sigma needs: the root of
// unity zeta = a^{(n^d_cyc - 1)/d_kum} and the cached powers a^{alpha_i}
// where i*n = alpha_i*d_kum + beta_i. Immutable after construction.
struct KummerAlgebra {
    CycAlgebra base;
    unsigned d_kum = 1;
    CycElement a;
    CycElement zeta;
    std::vector<CycElement> a_alpha;
    std::vector<unsigned> beta;
};

// Elements of S as d_kum coefficients in the base algebra
// (coefficients of y^0 .. y^{d_kum-1}).
using SElement = std::vector<CycElement>;

// Builds the algebra and its sigma caches. Requires d_kum >= 1 and
// d_kum | n^{d_cyc} - 1 (checked; violations throw invalid_argument).
KummerAlgebra make_kummer(const CycAlgebra& R, unsigned d_kum, CycElement a,
                          CycElement zeta);

AlgebraSpec kummer_spec_of(const KummerAlgebra& K);

SElement s_zero(const KummerAlgebra& K);
SElement s_one(const KummerAlgebra& K);
SElement s_y(const KummerAlgebra& K);
bool s_is_zero(const SElement& z);

SElement s_add(const KummerAlgebra& K, const SElement& u, const SElement& v);
SElement s_sub(const KummerAlgebra& K, const SElement& u, const SElement& v);

// Schoolbook product with the wraparound rule y^d_kum = a.
SElement s_mul(const KummerAlgebra& K, const SElement& u, const SElement& v);

// Square-and-multiply over s_mul.
SElement s_pow(const KummerAlgebra& K, const SElement& u, const Natural& e);

// sigma(sum z_i y^i) = sum sigma_cyc(z_i) a^{alpha_i} y^{beta_i},
// using the precomputed caches. One base multiplication per coordinate.
SElement apply_sigma(const KummerAlgebra& K, const SElement& z);

// tau = sigma^{d_cyc}; satisfies tau(y) = zeta * y.
SElement apply_tau(const KummerAlgebra& K, const SElement& z);

struct SInvert {
    std::optional<SElement> inverse;
    std::optional<CompositeEvidence> evidence;
};

// Extended Euclid of the y-polynomial of z against Y^d_kum - a, with
// every base-algebra inversion routed through try_invert. Any failure
// is proof of compositeness: when n is prime the certificates make S a
// field, so every nonzero element inverts and the verifying product
// equals 1.
SInvert try_invert_s(const KummerAlgebra& K, const SElement& z);

struct KummerGeneratorOutcome {
    std::optional<CycElement> a;
    std::optional<CycElement> zeta;
    std::optional<CompositeEvidence> evidence;
};

// Picks random a until zeta = a^{(n^d_cyc - 1)/d_kum} has exact order
// d_kum (each zeta^{d_kum/q} - 1 must be a unit) and sigma_cyc(a) = a^n.
// Order-check failures that cannot happen over a certified field are
// returned as evidence; soft failures retry with an interleaved
// Miller-Rabin test.
KummerGeneratorOutcome find_kummer_generator(const CycAlgebra& R, unsigned d_kum,
                                             Rng& rng, ConstructionLog& log);

}  // namespace galois
