#pragma once

#include "galois/arith.hpp"

#include <string>
#include <vector>

namespace galois {

enum class EvidenceKind {
    SmallFactor,    // a divisor g of n with 1 < g < n
    PerfectPower,   // n = base^exponent, exponent >= 2
    MrWitness,      // a Miller-Rabin witness with its power chain
    ZeroDivisor,    // a factor of n surfaced by algebra arithmetic
    FailedIdentity, // an identity that must hold for prime n failed
    GaloisWitness,  // sigma(z) != z^n for an invertible z
};

// How the defining polynomial F of R_cyc was certified at construction
// time. Replay re-verifies the certificate before trusting any identity
// that assumes "F irreducible whenever n is prime".
enum class FCertificate {
    None,     // d_cyc = 1 (no polynomial involved)
    Jacobi,   // F = X^d - o with jacobi(o, n) = -1 (d = 2)
    Order,    // F = X^d - o with o^((n-1)/d) of exact order d (d | n-1)
    Generic,  // random monic F with gcd(X^(n^i) - X, F) = 1, i = 1..d/2
};

// Which primality-implied identity failed (FailedIdentity / GaloisWitness).
enum class IdentityTag {
    None,
    FrobeniusBasis,  // sigma_cyc(x^i) != x^(i n) at basis index i
    SigmaOrder,      // sigma_cyc^d_cyc(x) != x
    FixedSubmodule,  // kernel of (M - I) is not exactly the constants
    CycUnit,         // a nonzero element of certified R_cyc failed to invert
    SigmaA,          // sigma_cyc(a) != a^n
    ZetaOrder,       // zeta^d_kum != 1 for a nonzero a
    SUnit,           // a nonzero element of certified S failed to invert
    GaloisEquation,  // sigma(z) != z^n
};

// Everything needed to rebuild the algebras deterministically during
// replay: the cyclotomic layer (degree, polynomial, certificate) and,
// once constructed, the Kummer layer (degree, constant a).
struct AlgebraSpec {
    unsigned d_cyc = 1;
    std::vector<Natural> f_low;  // F = X^d_cyc + sum f_low[i] X^i
    FCertificate certificate = FCertificate::None;
    Natural cert_o = 0;          // the o of the Jacobi/Order certificates
    unsigned d_kum = 1;
    std::vector<Natural> a;      // Kummer constant (coords in R_cyc); empty if unused
};

struct CompositeEvidence {
    EvidenceKind kind;

    // SmallFactor / ZeroDivisor
    Natural factor = 0;

    // PerfectPower
    Natural power_base = 0;
    unsigned power_exponent = 0;

    // MrWitness
    Natural mr_witness = 0;
    std::vector<Natural> mr_chain;  // x^m, x^(2m), ... as computed

    // FailedIdentity / GaloisWitness
    AlgebraSpec algebra;
    IdentityTag identity = IdentityTag::None;
    unsigned index = 0;                         // basis index for FrobeniusBasis
    std::vector<std::vector<Natural>> operand;  // element coords (S: d_kum rows of d_cyc)

    std::string note;  // human-readable provenance, not used by replay
};

inline CompositeEvidence small_factor_evidence(const Natural& g, std::string note = {}) {
    CompositeEvidence e;
    e.kind = EvidenceKind::SmallFactor;
    e.factor = g;
    e.note = std::move(note);
    return e;
}

inline CompositeEvidence perfect_power_evidence(const Natural& base, unsigned exponent) {
    CompositeEvidence e;
    e.kind = EvidenceKind::PerfectPower;
    e.power_base = base;
    e.power_exponent = exponent;
    return e;
}

inline CompositeEvidence zero_divisor_evidence(const Natural& g, std::string note = {}) {
    CompositeEvidence e;
    e.kind = EvidenceKind::ZeroDivisor;
    e.factor = g;
    e.note = std::move(note);
    return e;
}

inline const char* to_string(EvidenceKind k) {
    switch (k) {
        case EvidenceKind::SmallFactor: return "small_factor";
        case EvidenceKind::PerfectPower: return "perfect_power";
        case EvidenceKind::MrWitness: return "mr_witness";
        case EvidenceKind::ZeroDivisor: return "zero_divisor";
        case EvidenceKind::FailedIdentity: return "failed_identity";
        case EvidenceKind::GaloisWitness: return "galois_witness";
    }
    return "unknown";
}

inline const char* to_string(IdentityTag t) {
    switch (t) {
        case IdentityTag::None: return "none";
        case IdentityTag::FrobeniusBasis: return "frobenius_basis";
        case IdentityTag::SigmaOrder: return "sigma_order";
        case IdentityTag::FixedSubmodule: return "fixed_submodule";
        case IdentityTag::CycUnit: return "cyc_unit";
        case IdentityTag::SigmaA: return "sigma_a";
        case IdentityTag::ZetaOrder: return "zeta_order";
        case IdentityTag::SUnit: return "s_unit";
        case IdentityTag::GaloisEquation: return "galois_equation";
    }
    return "unknown";
}

inline const char* to_string(FCertificate c) {
    switch (c) {
        case FCertificate::None: return "none";
        case FCertificate::Jacobi: return "jacobi";
        case FCertificate::Order: return "order";
        case FCertificate::Generic: return "generic";
    }
    return "unknown";
}

}  // namespace galois
