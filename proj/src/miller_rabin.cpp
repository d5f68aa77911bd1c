#include "galois/miller_rabin.hpp"

#include <atomic>
#include <stdexcept>

namespace galois {

namespace {

CompositeEvidence witness_evidence(const Natural& x, std::vector<Natural> chain) {
    CompositeEvidence e;
    e.kind = EvidenceKind::MrWitness;
    e.mr_witness = x;
    e.mr_chain = std::move(chain);
    return e;
}

Natural draw_witness(const Rng& base, unsigned index, const Natural& n) {
    Rng stream = base.split(index);
    return 1 + stream.below(n - 1);  // uniform in [1, n-1]
}

}  // namespace

MrOutcome mr_map(const Natural& n, const Natural& x) {
    if (n < 3 || (n & 1) == 0) throw std::invalid_argument("mr_map: n must be odd >= 3");
    if (x < 1 || x >= n) throw std::invalid_argument("mr_map: witness out of range");
    Natural g = boost::multiprecision::gcd(x, n);
    if (g != 1)
        return MrOutcome{Verdict::Composite,
                         small_factor_evidence(g, "witness shares a factor with n")};
    TwoAdic mk = two_adic_decompose(n - 1);
    Natural minus_one = n - 1;
    Natural c = mod_pow(x, mk.m, n);
    std::vector<Natural> chain{c};
    if (c == 1 || c == minus_one) return MrOutcome{Verdict::Prime, std::nullopt};
    for (unsigned i = 1; i < mk.k; ++i) {
        c = (c * c) % n;
        chain.push_back(c);
        if (c == minus_one) return MrOutcome{Verdict::Prime, std::nullopt};
    }
    return MrOutcome{Verdict::Composite, witness_evidence(x, std::move(chain))};
}

MrOutcome mr_test_serial(const Natural& n, unsigned r, const Rng& rng) {
    if (r < 1) throw std::invalid_argument("mr_test: need r >= 1");
    for (unsigned i = 0; i < r; ++i) {
        MrOutcome out = mr_map(n, draw_witness(rng, i, n));
        if (out.verdict == Verdict::Composite) return out;
    }
    return MrOutcome{Verdict::Prime, std::nullopt};
}

MrOutcome mr_test(const Natural& n, unsigned r, const Rng& rng) {
    if (r < 1) throw std::invalid_argument("mr_test: need r >= 1");
    // Deterministic parallel evaluation: each round has its own witness
    // stream, and the reported outcome is the lowest failing index, so
    // the result is identical to mr_test_serial regardless of schedule.
    std::atomic<unsigned> first_bad{r};
    std::vector<std::optional<CompositeEvidence>> found(r);
#pragma omp parallel for schedule(dynamic)
    for (unsigned i = 0; i < r; ++i) {
        if (i > first_bad.load(std::memory_order_relaxed)) continue;
        MrOutcome out = mr_map(n, draw_witness(rng, i, n));
        if (out.verdict == Verdict::Composite) {
            found[i] = std::move(out.evidence);
            unsigned cur = first_bad.load(std::memory_order_relaxed);
            while (i < cur &&
                   !first_bad.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
            }
        }
    }
    unsigned bad = first_bad.load();
    if (bad < r) return MrOutcome{Verdict::Composite, std::move(found[bad])};
    return MrOutcome{Verdict::Prime, std::nullopt};
}

}  // namespace galois
