#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galois/evidence.hpp"
#include "galois/miller_rabin.hpp"
#include "galois/polyring.hpp"
#include "galois/rng.hpp"

namespace galois {

// Degrees for the theoretical parameter route: d_cyc is the smallest
// positive integer whose associated product Q (over primes q with
// q-1 | d_cyc) exceeds k, and d_kum is the smallest divisor of Q
// exceeding k.
struct DegreePair {
    Natural d_cyc;
    Natural d_kum;
    Natural Q;
};

DegreePair choose_degrees_theoretical(const Natural& k);

// Diagnostic counters accumulated while constructing the extension
// tower. Purely informational; never affects verdicts.
struct ConstructionLog {
    std::string f_strategy;        // "jacobi", "order", "generic" or "trivial"
    unsigned f_candidates = 0;     // polynomials/elements tried in the F search
    unsigned regular_candidates = 0;
    unsigned kummer_candidates = 0;
    unsigned unit_candidates = 0;
    unsigned mr_tests = 0;         // interleaved Miller-Rabin tests consumed
    // Wall-clock milliseconds per pipeline step, in execution order.
    std::vector<std::pair<std::string, double>> step_millis;
};

// Runs one interleaved Miller-Rabin test with a fresh witness from rng.
// Returns evidence when the witness proves n composite, nullopt when n
// survives. Retry loops call this so they terminate for composite n.
std::optional<CompositeEvidence> mr_interleave(const Natural& n, Rng& rng,
                                               ConstructionLog& log);

// Fills the algebra-description part of a piece of evidence so the
// failed identity can be replayed from scratch.
AlgebraSpec algebra_spec_of(const CycAlgebra& R);

struct IrreducibleOutcome {
    // Algebra with modulus polynomial and certificate installed; the
    // Frobenius matrix is not built yet.
    std::optional<CycAlgebra> algebra;
    std::optional<CompositeEvidence> evidence;
};

// Finds a monic degree-d_cyc polynomial F that is irreducible whenever
// n is prime, together with a certificate of how it was found.
// Strategies: d_cyc = 2 uses a Jacobi nonresidue (F = X^2 - o);
// d_cyc | n-1 uses an element whose power map has exact order d_cyc
// (F = X^d_cyc - o); otherwise random monic polynomials are tested by
// checking the ideal (X^{n^i} - X, F) is trivial for i up to d_cyc/2.
// Every retry loop interleaves Miller-Rabin tests.
IrreducibleOutcome find_irreducible(const Natural& n, unsigned d_cyc, Rng& rng,
                                    ConstructionLog& log);

// Builds the matrix of the power-map automorphism on the basis
// 1, x, ..., x^{d-1} (column j holds the coordinates of x^{jn}) and
// verifies it: sigma(x^i) = x^{ni} for i in [d, 2d-2] and
// sigma^d(x) = x. Installs the matrix into R on success.
std::optional<CompositeEvidence> build_frobenius_matrix(CycAlgebra& R);

// Checks that the fixed submodule of sigma, i.e. the kernel of
// (M_sigma - Id), is exactly the span of 1.
std::optional<CompositeEvidence> fixed_submodule_check(const CycAlgebra& R);

struct CertificateCheck {
    // True when the stored certificate really pins F irreducible for
    // prime n. Evidence is set when the recheck itself surfaced a
    // factor of n, which settles compositeness outright.
    bool valid = false;
    std::optional<CompositeEvidence> evidence;
};

// Re-verifies the certificate recorded in R: Jacobi nonresidue, exact
// power-map order, or the generic gcd-based irreducibility test.
CertificateCheck verify_f_certificate(const CycAlgebra& R);

struct RegularElementOutcome {
    std::optional<CycElement> u;
    std::optional<CompositeEvidence> evidence;
};

// Finds u such that sigma^i(u) - u is a unit for every i in [1, d-1].
// A zero difference just retries (it happens for primes too); a nonzero
// non-invertible difference is proof of compositeness because the
// certified modulus polynomial would make R a field if n were prime.
RegularElementOutcome find_regular_element(const CycAlgebra& R, Rng& rng,
                                           ConstructionLog& log);

}  // namespace galois
