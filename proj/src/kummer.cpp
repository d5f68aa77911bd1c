#include "galois/kummer.hpp"

#include <stdexcept>

namespace galois {

namespace {

constexpr unsigned kRetryCap = 100000;

int s_degree(const SElement& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (!cyc_is_zero(p[i])) return static_cast<int>(i);
    return -1;
}

void s_trim(SElement& p) {
    while (!p.empty() && cyc_is_zero(p.back())) p.pop_back();
}

SElement s_pad(const KummerAlgebra& K, SElement p) {
    p.resize(K.d_kum, cyc_zero(K.base));
    return p;
}

CompositeEvidence s_unit_evidence(const KummerAlgebra& K, const SElement& z,
                                  const char* note) {
    CompositeEvidence ev;
    ev.kind = EvidenceKind::FailedIdentity;
    ev.identity = IdentityTag::SUnit;
    ev.algebra = kummer_spec_of(K);
    ev.operand = z;
    ev.note = note;
    return ev;
}

}  // namespace

KummerAlgebra make_kummer(const CycAlgebra& R, unsigned d_kum, CycElement a,
                          CycElement zeta) {
    if (d_kum < 1) throw std::invalid_argument("make_kummer: d_kum must be >= 1");
    if (d_kum > 1 && mod_pow(R.n % d_kum, Natural(R.d), Natural(d_kum)) != 1)
        throw std::invalid_argument("make_kummer: d_kum does not divide n^d_cyc - 1");
    KummerAlgebra K;
    K.base = R;
    K.d_kum = d_kum;
    K.a = std::move(a);
    K.zeta = std::move(zeta);

    // i*n = alpha_i * d_kum + beta_i; successive alphas differ by
    // floor(n/d_kum) plus a carry, so one big exponentiation seeds the
    // whole a^{alpha_i} table.
    K.a_alpha.resize(d_kum);
    K.beta.resize(d_kum);
    K.a_alpha[0] = cyc_one(R);
    K.beta[0] = 0;
    if (d_kum > 1) {
        CycElement step = cyc_pow(R, K.a, R.n / d_kum);
        unsigned rho = static_cast<unsigned>(R.n % d_kum);
        for (unsigned i = 1; i < d_kum; ++i) {
            K.a_alpha[i] = poly_mul_mod(R, K.a_alpha[i - 1], step);
            unsigned b = K.beta[i - 1] + rho;
            if (b >= d_kum) {
                b -= d_kum;
                K.a_alpha[i] = poly_mul_mod(R, K.a_alpha[i], K.a);
            }
            K.beta[i] = b;
        }
    }
    return K;
}

AlgebraSpec kummer_spec_of(const KummerAlgebra& K) {
    AlgebraSpec spec = algebra_spec_of(K.base);
    spec.d_kum = K.d_kum;
    spec.a = K.a;
    return spec;
}

SElement s_zero(const KummerAlgebra& K) {
    return SElement(K.d_kum, cyc_zero(K.base));
}

SElement s_one(const KummerAlgebra& K) {
    SElement z = s_zero(K);
    z[0] = cyc_one(K.base);
    return z;
}

SElement s_y(const KummerAlgebra& K) {
    if (K.d_kum < 2) throw std::invalid_argument("s_y: algebra has y-dimension 1");
    SElement z = s_zero(K);
    z[1] = cyc_one(K.base);
    return z;
}

bool s_is_zero(const SElement& z) {
    for (const CycElement& c : z)
        if (!cyc_is_zero(c)) return false;
    return true;
}

SElement s_add(const KummerAlgebra& K, const SElement& u, const SElement& v) {
    SElement out(K.d_kum);
    for (unsigned i = 0; i < K.d_kum; ++i) out[i] = cyc_add(K.base, u[i], v[i]);
    return out;
}

SElement s_sub(const KummerAlgebra& K, const SElement& u, const SElement& v) {
    SElement out(K.d_kum);
    for (unsigned i = 0; i < K.d_kum; ++i) out[i] = cyc_sub(K.base, u[i], v[i]);
    return out;
}

SElement s_mul(const KummerAlgebra& K, const SElement& u, const SElement& v) {
    const unsigned d = K.d_kum;
    std::vector<CycElement> conv(2 * d - 1, cyc_zero(K.base));
    for (unsigned i = 0; i < d; ++i) {
        if (cyc_is_zero(u[i])) continue;
        for (unsigned j = 0; j < d; ++j) {
            if (cyc_is_zero(v[j])) continue;
            conv[i + j] = cyc_add(K.base, conv[i + j], poly_mul_mod(K.base, u[i], v[j]));
        }
    }
    SElement out(conv.begin(), conv.begin() + d);
    for (unsigned k = d; k < 2 * d - 1; ++k) {
        if (cyc_is_zero(conv[k])) continue;
        out[k - d] = cyc_add(K.base, out[k - d], poly_mul_mod(K.base, conv[k], K.a));
    }
    return out;
}

SElement s_pow(const KummerAlgebra& K, const SElement& u, const Natural& e) {
    if (e == 0) return s_one(K);
    SElement acc = s_one(K);
    unsigned bits = bit_length(e);
    for (unsigned i = bits; i-- > 0;) {
        acc = s_mul(K, acc, acc);
        if (boost::multiprecision::bit_test(e, i)) acc = s_mul(K, acc, u);
    }
    return acc;
}

SElement apply_sigma(const KummerAlgebra& K, const SElement& z) {
    SElement out = s_zero(K);
    for (unsigned i = 0; i < K.d_kum; ++i) {
        if (cyc_is_zero(z[i])) continue;
        CycElement term = apply_sigma_cyc(K.base, z[i]);
        term = poly_mul_mod(K.base, term, K.a_alpha[i]);
        out[K.beta[i]] = cyc_add(K.base, out[K.beta[i]], term);
    }
    return out;
}

SElement apply_tau(const KummerAlgebra& K, const SElement& z) {
    SElement out = z;
    for (unsigned i = 0; i < K.base.d; ++i) out = apply_sigma(K, out);
    return out;
}

SInvert try_invert_s(const KummerAlgebra& K, const SElement& z) {
    if (s_is_zero(z)) throw std::invalid_argument("try_invert_s: zero element");
    SInvert out;
    const CycAlgebra& R = K.base;
    const unsigned d = K.d_kum;

    SElement r0(d + 1, cyc_zero(R));
    r0[0] = cyc_sub(R, cyc_zero(R), K.a);
    r0[d] = cyc_one(R);
    SElement r1 = z;
    s_trim(r1);
    SElement t0, t1{cyc_one(R)};

    while (s_degree(r1) >= 1) {
        CycInvert lc = try_invert(R, r1.back());
        if (lc.factor) {
            CompositeEvidence ev = zero_divisor_evidence(
                *lc.factor, "leading coefficient in the inversion is a zero divisor");
            ev.algebra = kummer_spec_of(K);
            out.evidence = std::move(ev);
            return out;
        }
        if (!lc.inverse) {
            out.evidence = s_unit_evidence(
                K, z, "leading coefficient in the inversion is not a unit");
            return out;
        }
        for (CycElement& c : r1) c = poly_mul_mod(R, c, *lc.inverse);
        for (CycElement& c : t1) c = poly_mul_mod(R, c, *lc.inverse);

        int db = s_degree(r1);
        SElement r2 = r0;
        SElement t2 = t0;
        while (s_degree(r2) >= db) {
            int da = s_degree(r2);
            CycElement c = r2.back();
            r2.pop_back();
            if (!cyc_is_zero(c)) {
                for (int j = 0; j < db; ++j) {
                    int idx = da - db + j;
                    r2[idx] = cyc_sub(R, r2[idx], poly_mul_mod(R, c, r1[j]));
                }
                int shift = da - db;
                if (static_cast<int>(t2.size()) < static_cast<int>(t1.size()) + shift)
                    t2.resize(t1.size() + shift, cyc_zero(R));
                for (unsigned j = 0; j < t1.size(); ++j)
                    t2[j + shift] = cyc_sub(R, t2[j + shift], poly_mul_mod(R, c, t1[j]));
            }
            s_trim(r2);
        }
        s_trim(t2);
        r0 = std::move(r1);
        t0 = std::move(t1);
        r1 = std::move(r2);
        t1 = std::move(t2);
    }

    if (r1.empty()) {
        out.evidence = s_unit_evidence(
            K, z, "element has a nontrivial common divisor with the defining polynomial");
        return out;
    }

    CycInvert ci = try_invert(R, r1[0]);
    if (ci.factor) {
        CompositeEvidence ev = zero_divisor_evidence(
            *ci.factor, "terminal constant in the inversion is a zero divisor");
        ev.algebra = kummer_spec_of(K);
        out.evidence = std::move(ev);
        return out;
    }
    if (!ci.inverse) {
        out.evidence = s_unit_evidence(K, z, "terminal constant in the inversion is not a unit");
        return out;
    }
    for (CycElement& c : t1) c = poly_mul_mod(R, c, *ci.inverse);
    SElement inv = s_pad(K, std::move(t1));
    if (s_mul(K, z, inv) != s_one(K)) {
        out.evidence = s_unit_evidence(K, z, "inverse candidate fails verification");
        return out;
    }
    out.inverse = std::move(inv);
    return out;
}

KummerGeneratorOutcome find_kummer_generator(const CycAlgebra& R, unsigned d_kum,
                                             Rng& rng, ConstructionLog& log) {
    KummerGeneratorOutcome out;
    if (d_kum == 1) {
        out.a = cyc_one(R);
        out.zeta = cyc_one(R);
        return out;
    }
    const Natural& n = R.n;
    Natural group_order = boost::multiprecision::pow(n, R.d) - 1;
    if (group_order % d_kum != 0)
        throw std::invalid_argument("find_kummer_generator: d_kum does not divide n^d_cyc - 1");
    Natural e = group_order / d_kum;
    std::vector<uint32_t> qs = prime_factors_u32(d_kum);

    auto spec_with = [&](const CycElement& a) {
        AlgebraSpec spec = algebra_spec_of(R);
        spec.d_kum = d_kum;
        spec.a = a;
        return spec;
    };

    for (unsigned tries = 0; tries < kRetryCap; ++tries) {
        ++log.kummer_candidates;
        CycElement a(R.d);
        for (unsigned i = 0; i < R.d; ++i) a[i] = rng.below(n);
        bool soft_fail = false;
        if (cyc_is_zero(a)) soft_fail = true;

        if (!soft_fail) {
            CycElement zeta = cyc_pow(R, a, e);
            CycElement full = cyc_pow(R, zeta, d_kum);
            if (full != cyc_one(R)) {
                // a != 0 raised to the full group order must give 1
                // over a field; the certificates pin that down.
                CompositeEvidence ev;
                ev.kind = EvidenceKind::FailedIdentity;
                ev.identity = IdentityTag::ZetaOrder;
                ev.index = d_kum;
                ev.algebra = spec_with(a);
                ev.operand = {a, zeta, full};
                ev.note = "root-of-unity candidate does not have order dividing d_kum";
                out.evidence = std::move(ev);
                return out;
            }
            bool exact = true;
            for (uint32_t q : qs) {
                CycElement part = cyc_pow(R, zeta, d_kum / q);
                CycElement w = cyc_sub(R, part, cyc_one(R));
                if (cyc_is_zero(w)) {
                    exact = false;
                    break;
                }
                CycInvert inv = try_invert(R, w);
                if (inv.factor) {
                    CompositeEvidence ev = zero_divisor_evidence(
                        *inv.factor, "partial root-of-unity power minus 1 is a zero divisor");
                    ev.algebra = spec_with(a);
                    out.evidence = std::move(ev);
                    return out;
                }
                if (!inv.inverse) {
                    CompositeEvidence ev;
                    ev.kind = EvidenceKind::FailedIdentity;
                    ev.identity = IdentityTag::ZetaOrder;
                    ev.index = q;
                    ev.algebra = spec_with(a);
                    ev.operand = {a, zeta, w};
                    ev.note = "partial root-of-unity power minus 1 is nonzero and not a unit";
                    out.evidence = std::move(ev);
                    return out;
                }
            }
            if (exact) {
                CycElement lhs = apply_sigma_cyc(R, a);
                CycElement rhs = cyc_pow(R, a, n);
                if (lhs != rhs) {
                    CompositeEvidence ev;
                    ev.kind = EvidenceKind::FailedIdentity;
                    ev.identity = IdentityTag::SigmaA;
                    ev.algebra = spec_with(a);
                    ev.operand = {a, lhs, rhs};
                    ev.note = "power map disagrees with the n-th power on the generator";
                    out.evidence = std::move(ev);
                    return out;
                }
                out.a = std::move(a);
                out.zeta = cyc_pow(R, *out.a, e);
                return out;
            }
        }
        if (auto ev = mr_interleave(n, rng, log)) {
            out.evidence = std::move(ev);
            return out;
        }
    }
    throw std::runtime_error("generator search exhausted its retry budget");
}

}  // namespace galois
