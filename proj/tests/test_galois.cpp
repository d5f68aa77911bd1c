#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "galois/galois_test.hpp"

using namespace galois;

namespace {

GaloisConfig forced(unsigned d_cyc, unsigned d_kum, bool full = true) {
    GaloisConfig cfg;
    cfg.force_d_cyc = d_cyc;
    cfg.force_d_kum = d_kum;
    cfg.run_full_pipeline = full;
    return cfg;
}

}  // namespace

TEST_CASE("input validation") {
    GaloisConfig cfg;
    CHECK_THROWS_AS(galois_test(4, 64, cfg, Rng(1)), std::invalid_argument);   // even
    CHECK_THROWS_AS(galois_test(1, 64, cfg, Rng(1)), std::invalid_argument);   // tiny
    CHECK_THROWS_AS(galois_test(9, 0, cfg, Rng(1)), std::invalid_argument);    // lambda
}

TEST_CASE("a large Mersenne prime passes through the fallback") {
    GaloisConfig cfg;
    TestResult res = galois_test((Natural(1) << 521) - 1, 64, cfg, Rng(2));
    CHECK(res.verdict == Verdict::Prime);
    CHECK(res.decided_by == "probable_prime");
    CHECK(res.params.fallback);
    CHECK(res.params.r == 32);
    CHECK(!res.evidence.has_value());
}

TEST_CASE("trial division settles small-factor composites") {
    GaloisConfig cfg;
    // 2^32 + 1 = 641 * 6700417.
    TestResult res = galois_test(4294967297, 64, cfg, Rng(2));
    CHECK(res.verdict == Verdict::Composite);
    CHECK(res.decided_by == "trial_division");
    REQUIRE(res.evidence.has_value());
    CHECK(res.evidence->kind == EvidenceKind::SmallFactor);
    CHECK(res.evidence->factor == 641);
    CHECK(replay_evidence(4294967297, *res.evidence));

    // Carmichael numbers all have small factors.
    for (unsigned n : {561u, 1105u, 1729u}) {
        TestResult r = galois_test(n, 64, cfg, Rng(3));
        CHECK(r.verdict == Verdict::Composite);
        CHECK(r.decided_by == "trial_division");
        REQUIRE(r.evidence.has_value());
        CHECK(replay_evidence(n, *r.evidence));
    }

    // run_full_pipeline never skips the factor path.
    TestResult f = galois_test(35, 64, forced(2, 3), Rng(4));
    CHECK(f.verdict == Verdict::Composite);
    CHECK(f.decided_by == "trial_division");
}

TEST_CASE("perfect powers are recognized") {
    GaloisConfig cfg;

    // 3^40 never reaches the power check: trial division sees the 3.
    Natural n3 = 1;
    for (int i = 0; i < 40; ++i) n3 *= 3;
    TestResult t3 = galois_test(n3, 64, cfg, Rng(2));
    CHECK(t3.verdict == Verdict::Composite);
    CHECK(t3.decided_by == "trial_division");

    // 10007^2 is blind to trial division, so the power check decides.
    Natural n = Natural(10007) * 10007;
    TestResult res = galois_test(n, 64, cfg, Rng(2));
    CHECK(res.verdict == Verdict::Composite);
    CHECK(res.decided_by == "perfect_power");
    REQUIRE(res.evidence.has_value());
    CHECK(res.evidence->kind == EvidenceKind::PerfectPower);
    CHECK(res.evidence->power_base == 10007);
    CHECK(res.evidence->power_exponent == 2);
    CHECK(replay_evidence(n, *res.evidence));
}

TEST_CASE("blind semiprimes fall to the Miller-Rabin rounds") {
    GaloisConfig cfg;
    for (auto [p, q] : {std::pair<unsigned, unsigned>{8009, 8011},
                        {100003, 100019}}) {
        Natural n = Natural(p) * q;
        TestResult res = galois_test(n, 64, cfg, Rng(5));
        CHECK(res.verdict == Verdict::Composite);
        CHECK(res.decided_by == "mr");
        REQUIRE(res.evidence.has_value());
        CHECK(replay_evidence(n, *res.evidence));
    }
}

TEST_CASE("transcripts are reproducible") {
    GaloisConfig cfg;
    Natural n = Natural(100003) * 100019;
    TestResult a = galois_test(n, 64, cfg, Rng(9));
    TestResult b = galois_test(n, 64, cfg, Rng(9));
    CHECK(a.verdict == b.verdict);
    CHECK(a.decided_by == b.decided_by);
    REQUIRE(a.evidence.has_value());
    REQUIRE(b.evidence.has_value());
    CHECK(a.evidence->kind == b.evidence->kind);
    CHECK(a.evidence->mr_witness == b.evidence->mr_witness);
    CHECK(a.evidence->factor == b.evidence->factor);
    CHECK(a.evidence->mr_chain == b.evidence->mr_chain);

    TestResult c = galois_test(n, 64, cfg, Rng(10));
    CHECK(c.verdict == Verdict::Composite);  // verdicts agree across seeds
}

TEST_CASE("a 30-bit prime runs the real tower when forced") {
    GaloisConfig cfg;
    cfg.force_galois = true;
    TestResult res = galois_test(1000000007, 64, cfg, Rng(6));
    CHECK(res.verdict == Verdict::Prime);
    CHECK(res.decided_by == "probable_prime");
    CHECK(!res.params.fallback);
    CHECK(res.params.d >= 2);
    // The construction steps appear in the timing log.
    bool saw_kummer = false;
    for (const auto& [step, ms] : res.log.step_millis)
        if (step == "kummer_generator") saw_kummer = true;
    CHECK(saw_kummer);
}

TEST_CASE("a 256-bit prime under forced extension parameters") {
    const Natural p256(
        "0x911e9270bb4b2368808943d57bed4ef233746083277ff1b91a866ae17d296143");
    GaloisConfig cfg;
    cfg.force_galois = true;
    TestResult res = galois_test(p256, 64, cfg, Rng(7));
    CHECK(res.verdict == Verdict::Prime);
    CHECK(res.decided_by == "probable_prime");
    CHECK(res.params.d_cyc == 1);
    CHECK(res.params.d_kum == 5);
    CHECK(res.params.r == 65);
}

TEST_CASE("security targets above the cap split into repetitions") {
    GaloisConfig cfg;
    TestResult res = galois_test(1000000007, 2000, cfg, Rng(8));
    CHECK(res.verdict == Verdict::Prime);
    CHECK(res.repetitions == 3);  // ceil(2000 / (23 * log2 n))
    TestResult small = galois_test(10007, 3000, cfg, Rng(8));
    CHECK(small.repetitions == 10);
    CHECK(small.verdict == Verdict::Prime);
}

TEST_CASE("forced degenerate towers on a full pipeline run") {
    // 65537 is small enough for certainty, so run_full_pipeline forces
    // the construction to actually happen.
    for (auto [dc, dk] : {std::pair<unsigned, unsigned>{1, 1}, {2, 1}, {1, 8}, {4, 8}}) {
        TestResult res = galois_test(65537, 32, forced(dc, dk), Rng(11));
        CHECK(res.verdict == Verdict::Prime);
        CHECK(res.decided_by == "probable_prime");
        CHECK(res.params.d_cyc == dc);
        CHECK(res.params.d_kum == dk);
    }
    // 5 does not divide 65536: the pinned pair is rejected.
    CHECK_THROWS_AS(galois_test(65537, 32, forced(1, 5), Rng(11)),
                    std::invalid_argument);
    // Forced degrees on a blind composite still end Composite.
    Natural n = Natural(10007) * 10009;
    TestResult res = galois_test(n, 64, forced(2, 3, false), Rng(12));
    CHECK(res.verdict == Verdict::Composite);
    REQUIRE(res.evidence.has_value());
    CHECK(replay_evidence(n, *res.evidence));
}

TEST_CASE("theoretical variant") {
    Rng rng(13);
    TestResult res = theoretical_test(1000003, 13, rng);
    CHECK(res.verdict == Verdict::Prime);
    CHECK(res.params.d_cyc == 4);
    CHECK(res.params.d_kum == 30);
    CHECK(res.params.r == 1);
    CHECK(res.params.B == 1000);

    // Below the trial bound squared nothing else runs.
    TestResult small = theoretical_test(65537, 10, Rng(13));
    CHECK(small.verdict == Verdict::Prime);
    CHECK(small.decided_by == "certainly_prime");

    // A blind composite above 1000^2.
    Natural n = Natural(1009) * 1013;
    TestResult comp = theoretical_test(n, 13, Rng(13));
    CHECK(comp.verdict == Verdict::Composite);
    REQUIRE(comp.evidence.has_value());
    CHECK(replay_evidence(n, *comp.evidence));

    // lambda must stay below ln n.
    CHECK_THROWS_AS(theoretical_test(n, 20, Rng(13)), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_test(n, 0, Rng(13)), std::invalid_argument);
}

TEST_CASE("replay: divisor and power evidence") {
    CHECK(replay_evidence(561, small_factor_evidence(3)));
    CHECK(!replay_evidence(13, small_factor_evidence(7)));
    CHECK(!replay_evidence(561, small_factor_evidence(561)));  // not proper
    CHECK(!replay_evidence(561, small_factor_evidence(0)));
    CHECK(!replay_evidence(561, small_factor_evidence(1)));
    CHECK(replay_evidence(35, zero_divisor_evidence(5)));

    CHECK(replay_evidence(32, perfect_power_evidence(2, 5)));
    CHECK(!replay_evidence(33, perfect_power_evidence(2, 5)));
    CHECK(!replay_evidence(32, perfect_power_evidence(1, 5)));
    CHECK(!replay_evidence(32, perfect_power_evidence(32, 1)));
}

TEST_CASE("replay: miller-rabin witnesses") {
    MrOutcome out = mr_map(561, 2);
    REQUIRE(out.evidence.has_value());
    CHECK(replay_evidence(561, *out.evidence));

    CompositeEvidence fake = *out.evidence;
    fake.mr_witness = 560;  // n - 1 never witnesses
    CHECK(!replay_evidence(561, fake));
    fake.mr_witness = 0;
    CHECK(!replay_evidence(561, fake));
}

TEST_CASE("replay: failed basis identity from the n = 35 algebra") {
    CycAlgebra R;
    R.n = 35;
    R.d = 2;
    R.f_low = {33, 0};
    R.certificate = FCertificate::Jacobi;
    R.cert_o = 2;
    auto ev = build_frobenius_matrix(R);
    REQUIRE(ev.has_value());
    CHECK(replay_evidence(35, *ev));

    // The same claim against a prime modulus does not reproduce:
    // jacobi(2, 37) = -1 too, but the basis identities hold.
    CHECK(!replay_evidence(37, *ev));
}

TEST_CASE("replay: unit failure in the certified quadratic ring") {
    CompositeEvidence e;
    e.kind = EvidenceKind::FailedIdentity;
    e.identity = IdentityTag::CycUnit;
    e.algebra.d_cyc = 2;
    e.algebra.f_low = {33, 0};  // X^2 - 2, jacobi-certified for n = 35
    e.algebra.certificate = FCertificate::Jacobi;
    e.algebra.cert_o = 2;
    e.operand = {{0, 0}, {32, 1}};
    // The frobenius rebuild already fails for this algebra at n = 35,
    // which settles compositeness before the operand is even read.
    CHECK(replay_evidence(35, e));
}

TEST_CASE("replay: unit failure over the trivial ring walks the gcd") {
    // d_cyc = 1 keeps the frobenius rebuild vacuous, so the replay
    // really exercises the recorded non-invertible element.
    CompositeEvidence e;
    e.kind = EvidenceKind::FailedIdentity;
    e.identity = IdentityTag::CycUnit;
    e.algebra.d_cyc = 1;
    e.algebra.f_low = {34};  // X - 1 over Z/35Z
    e.algebra.certificate = FCertificate::None;
    e.algebra.cert_o = 0;
    e.operand = {{0}, {7}};  // gcd(7, 35) = 7
    CHECK(replay_evidence(35, e));

    CompositeEvidence unit = e;
    unit.operand = {{0}, {2}};  // invertible: non-probative
    CHECK(!replay_evidence(35, unit));

    CompositeEvidence bad = e;
    bad.operand = {{0}, {35}};  // coordinate out of range
    CHECK(!replay_evidence(35, bad));

    CompositeEvidence zero = e;
    zero.operand = {{0}, {0}};  // zero element: non-probative
    CHECK(!replay_evidence(35, zero));
}

TEST_CASE("replay: zeta order evidence over a trivial base") {
    CompositeEvidence e;
    e.kind = EvidenceKind::FailedIdentity;
    e.identity = IdentityTag::ZetaOrder;
    e.algebra.d_cyc = 1;
    e.algebra.f_low = {34};
    e.algebra.certificate = FCertificate::None;
    e.algebra.d_kum = 17;
    e.algebra.a = {2};
    // zeta = 2^2 = 4 and 4^17 = 2^34 = 9 != 1 (mod 35).
    CHECK(replay_evidence(35, e));

    // For a prime the same shape cannot reproduce: 13 with d_kum = 4,
    // a = 2 gives zeta = 8 of exact order 4.
    CompositeEvidence p = e;
    p.algebra.f_low = {12};
    p.algebra.d_kum = 4;
    CHECK(!replay_evidence(13, p));

    // d_kum not dividing the group order is malformed.
    CompositeEvidence m = e;
    m.algebra.d_kum = 16;
    CHECK(!replay_evidence(35, m));
}

TEST_CASE("replay: galois equation evidence") {
    CompositeEvidence e;
    e.kind = EvidenceKind::GaloisWitness;
    e.identity = IdentityTag::GaloisEquation;
    e.algebra.d_cyc = 1;
    e.algebra.f_low = {64};
    e.algebra.certificate = FCertificate::None;
    e.algebra.d_kum = 1;
    e.algebra.a = {1};
    e.operand = {{2}};
    // sigma(2) = 2 but 2^65 = 32 (mod 65).
    CHECK(replay_evidence(65, e));

    // Fermat holds for a prime: not probative.
    CompositeEvidence p = e;
    p.algebra.f_low = {12};
    p.operand = {{2}};
    CHECK(!replay_evidence(13, p));
}

TEST_CASE("replay: s-unit evidence needs the order checks to pass") {
    // For prime 13 the crafted claim that y failed to invert is false.
    CompositeEvidence e;
    e.kind = EvidenceKind::FailedIdentity;
    e.identity = IdentityTag::SUnit;
    e.algebra.d_cyc = 1;
    e.algebra.f_low = {12};
    e.algebra.certificate = FCertificate::None;
    e.algebra.d_kum = 4;
    e.algebra.a = {2};
    e.operand = {{0}, {1}, {0}, {0}};
    CHECK(!replay_evidence(13, e));
}

TEST_CASE("replay never throws on malformed evidence") {
    CompositeEvidence e;
    e.kind = EvidenceKind::FailedIdentity;
    e.identity = IdentityTag::FrobeniusBasis;
    e.algebra.d_cyc = 3;
    e.algebra.f_low = {1};  // wrong arity
    CHECK(!replay_evidence(35, e));

    e.algebra.f_low = {99, 0, 0};  // coordinate >= n
    CHECK(!replay_evidence(35, e));

    e.algebra.f_low = {1, 0, 0};
    e.algebra.certificate = FCertificate::Jacobi;  // wrong degree for jacobi
    CHECK(!replay_evidence(35, e));

    CompositeEvidence none;
    none.kind = EvidenceKind::FailedIdentity;
    none.identity = IdentityTag::None;
    none.algebra.d_cyc = 1;
    none.algebra.f_low = {34};
    CHECK(!replay_evidence(35, none));

    CHECK(!replay_evidence(2, small_factor_evidence(2)));
}

TEST_CASE("honest kummer failure on a composite replays") {
    // The unit group mod 35 has exponent 12, so no element has order
    // 17 and the generator search must surface evidence.
    CycAlgebra R = make_trivial_algebra(35);
    ConstructionLog log;
    Rng rng(21);
    KummerGeneratorOutcome out = find_kummer_generator(R, 17, rng, log);
    REQUIRE(out.evidence.has_value());
    CHECK(replay_evidence(35, *out.evidence));
}
