#pragma once

#include "galois/arith.hpp"
#include "galois/evidence.hpp"
#include "galois/rng.hpp"

#include <optional>

namespace galois {

enum class Verdict { Composite, Prime };

// Composition law of verdicts: Composite absorbs, Prime is the identity.
constexpr Verdict vee(Verdict a, Verdict b) {
    return (a == Verdict::Composite || b == Verdict::Composite) ? Verdict::Composite
                                                                : Verdict::Prime;
}

struct MrOutcome {
    Verdict verdict;
    std::optional<CompositeEvidence> evidence;  // set iff verdict == Composite
};

// The Miller-Rabin map on one witness. Requires n odd >= 3 and
// 1 <= x < n. A witness sharing a factor with n is promoted to
// Composite with that factor as evidence.
MrOutcome mr_map(const Natural& n, const Natural& x);

// r-fold product of independent Miller-Rabin tests with witnesses drawn
// uniformly from [1, n-1] on per-index streams split from `rng`. The
// parallel variant evaluates rounds concurrently but returns the same
// outcome (lowest failing index) as the serial reference.
MrOutcome mr_test(const Natural& n, unsigned r, const Rng& rng);
MrOutcome mr_test_serial(const Natural& n, unsigned r, const Rng& rng);

}  // namespace galois
