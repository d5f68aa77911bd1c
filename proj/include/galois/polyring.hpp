#pragma once

#include "galois/arith.hpp"
#include "galois/evidence.hpp"

#include <optional>
#include <vector>

namespace galois {

// Power-basis coordinates of an element of R_cyc = (Z/nZ)[X]/F(X):
// exactly d_cyc entries, each canonical in [0, n).
using CycElement = std::vector<Natural>;

// The cyclotomic algebra. f_low holds the lower coefficients of the
// monic F = X^d + sum f_low[i] X^i. m_sigma (filled by the cyclotomic
// module) has column j = coordinates of x^(j n), so applying sigma_cyc
// is one matrix-vector product. certificate/cert_o record how F was
// certified; evidence construction and replay carry them along.
struct CycAlgebra {
    Natural n;
    unsigned d = 1;
    std::vector<Natural> f_low;
    std::vector<std::vector<Natural>> m_sigma;  // d columns of d coords
    FCertificate certificate = FCertificate::None;
    Natural cert_o = 0;
};

CycAlgebra make_trivial_algebra(const Natural& n);  // d = 1, R_cyc = Z/nZ

CycElement cyc_zero(const CycAlgebra& A);
CycElement cyc_one(const CycAlgebra& A);
CycElement cyc_x(const CycAlgebra& A);  // x = X mod F (requires d >= 2)
bool cyc_is_zero(const CycElement& a);

CycElement cyc_add(const CycAlgebra& A, const CycElement& a, const CycElement& b);
CycElement cyc_sub(const CycAlgebra& A, const CycElement& a, const CycElement& b);
CycElement cyc_scalar_mul(const CycAlgebra& A, const Natural& c, const CycElement& a);

// Schoolbook product reduced by the monic F (exact remaindering).
CycElement poly_mul_mod(const CycAlgebra& A, const CycElement& a, const CycElement& b);

// Square-and-multiply over poly_mul_mod.
CycElement cyc_pow(const CycAlgebra& A, const CycElement& a, const Natural& e);

// sigma_cyc via the stored matrix: column-combination of m_sigma.
CycElement apply_sigma_cyc(const CycAlgebra& A, const CycElement& a);

// Extended Euclid of `a` against F over Z/nZ. On failure the outcome
// distinguishes a scalar zero divisor (a factor of n) from a nontrivial
// polynomial gcd with F; when F carries a certificate, either one proves
// n composite (callers attach the algebra context). check_failed marks
// the defensive a * inverse == 1 verification failing.
struct CycInvert {
    std::optional<CycElement> inverse;
    std::optional<Natural> factor;
    std::optional<std::vector<Natural>> gcd_with_f;  // monic, degree in [1, d)
    bool check_failed = false;
    bool ok() const { return inverse.has_value(); }
};
CycInvert try_invert(const CycAlgebra& A, const CycElement& a);

// Polynomial gcd of two coefficient vectors over Z/nZ (used by the
// generic irreducibility route). A scalar inversion failure during the
// loop surfaces the factor instead.
struct PolyGcd {
    std::optional<std::vector<Natural>> gcd;  // monic, possibly constant 1
    std::optional<Natural> factor;
};
PolyGcd poly_gcd(const Natural& n, std::vector<Natural> a, std::vector<Natural> b);

// Kernel basis of a square matrix over Z/nZ by Gaussian elimination.
// A nonzero entry that is not invertible is a zero divisor: elimination
// stops and reports the factor.
struct KernelOutcome {
    std::optional<std::vector<std::vector<Natural>>> basis;
    std::optional<Natural> factor;
};
KernelOutcome gauss_kernel(const Natural& n, std::vector<std::vector<Natural>> rows);

}  // namespace galois
