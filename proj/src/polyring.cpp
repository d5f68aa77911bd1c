#include "galois/polyring.hpp"

#include <stdexcept>

namespace galois {

namespace {

// Dense coefficient vectors, index = degree. Zero polynomial = empty
// after trimming.
void trim(std::vector<Natural>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const std::vector<Natural>& p) { return static_cast<int>(p.size()) - 1; }

// Remainder of a by monic b (deg b >= 1), in place on a copy.
std::vector<Natural> rem_by_monic(const Natural& n, std::vector<Natural> a,
                                  const std::vector<Natural>& b) {
    int db = degree(b);
    while (degree(a) >= db) {
        int da = degree(a);
        Natural c = a.back();
        a.pop_back();
        if (c == 0) continue;
        for (int j = 0; j < db; ++j) {
            int idx = da - db + j;
            a[idx] = mod_norm(a[idx] - c * b[j], n);
        }
        trim(a);
    }
    return a;
}

std::vector<Natural> full_f(const CycAlgebra& A) {
    std::vector<Natural> f = A.f_low;
    f.resize(A.d);
    f.push_back(1);
    return f;
}

CycElement pad(std::vector<Natural> p, unsigned d) {
    p.resize(d);
    return p;
}

}  // namespace

CycAlgebra make_trivial_algebra(const Natural& n) {
    CycAlgebra A;
    A.n = n;
    A.d = 1;
    A.f_low = {mod_norm(Integer(-1), n)};  // F = X - 1; x = 1
    A.m_sigma = {{Natural(1)}};
    A.certificate = FCertificate::None;
    return A;
}

CycElement cyc_zero(const CycAlgebra& A) { return CycElement(A.d, Natural(0)); }

CycElement cyc_one(const CycAlgebra& A) {
    CycElement e(A.d, Natural(0));
    e[0] = 1;
    return e;
}

CycElement cyc_x(const CycAlgebra& A) {
    if (A.d < 2) throw std::invalid_argument("cyc_x: algebra has dimension 1");
    CycElement e(A.d, Natural(0));
    e[1] = 1;
    return e;
}

bool cyc_is_zero(const CycElement& a) {
    for (const Natural& c : a)
        if (c != 0) return false;
    return true;
}

CycElement cyc_add(const CycAlgebra& A, const CycElement& a, const CycElement& b) {
    CycElement out(A.d);
    for (unsigned i = 0; i < A.d; ++i) out[i] = mod_norm(a[i] + b[i], A.n);
    return out;
}

CycElement cyc_sub(const CycAlgebra& A, const CycElement& a, const CycElement& b) {
    CycElement out(A.d);
    for (unsigned i = 0; i < A.d; ++i) out[i] = mod_norm(Integer(a[i]) - b[i], A.n);
    return out;
}

CycElement cyc_scalar_mul(const CycAlgebra& A, const Natural& c, const CycElement& a) {
    CycElement out(A.d);
    for (unsigned i = 0; i < A.d; ++i) out[i] = (c * a[i]) % A.n;
    return out;
}

CycElement poly_mul_mod(const CycAlgebra& A, const CycElement& a, const CycElement& b) {
    unsigned d = A.d;
    if (d == 1) return {(a[0] * b[0]) % A.n};
    std::vector<Natural> conv(2 * d - 1, Natural(0));
    for (unsigned i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            conv[i + j] += a[i] * b[j];
        }
    }
    // Fold degrees >= d down using X^d = -f_low (F monic).
    for (unsigned k = 2 * d - 2; k >= d; --k) {
        Natural c = conv[k] % A.n;
        if (c == 0) continue;
        for (unsigned j = 0; j < d; ++j)
            conv[k - d + j] = mod_norm(conv[k - d + j] - c * A.f_low[j], A.n);
    }
    conv.resize(d);
    for (Natural& c : conv) c %= A.n;
    return conv;
}

CycElement cyc_pow(const CycAlgebra& A, const CycElement& a, const Natural& e) {
    if (e == 0) return cyc_one(A);
    CycElement acc = cyc_one(A);
    unsigned bits = bit_length(e);
    for (unsigned i = bits; i-- > 0;) {
        acc = poly_mul_mod(A, acc, acc);
        if (boost::multiprecision::bit_test(e, i)) acc = poly_mul_mod(A, acc, a);
    }
    return acc;
}

CycElement apply_sigma_cyc(const CycAlgebra& A, const CycElement& a) {
    CycElement out(A.d, Natural(0));
    for (unsigned j = 0; j < A.d; ++j) {
        if (a[j] == 0) continue;
        const std::vector<Natural>& col = A.m_sigma[j];
        for (unsigned i = 0; i < A.d; ++i) out[i] = (out[i] + a[j] * col[i]) % A.n;
    }
    return out;
}

CycInvert try_invert(const CycAlgebra& A, const CycElement& a) {
    if (cyc_is_zero(a)) throw std::invalid_argument("try_invert: zero element");
    CycInvert out;
    const Natural& n = A.n;

    std::vector<Natural> r0 = full_f(A);
    std::vector<Natural> r1 = a;
    trim(r1);
    std::vector<Natural> t0, t1{Natural(1)};

    // Invariant: t_i * a == r_i (mod F, mod n).
    while (degree(r1) >= 1) {
        ScalarInvert lc = invert_mod(r1.back(), n);
        if (!lc.inverse) {
            out.factor = lc.factor;
            return out;
        }
        for (Natural& c : r1) c = (c * *lc.inverse) % n;
        for (Natural& c : t1) c = (c * *lc.inverse) % n;

        // Divide r0 by the now-monic r1; accumulate the quotient into t.
        int db = degree(r1);
        std::vector<Natural> r2 = r0;
        std::vector<Natural> t2 = t0;
        while (degree(r2) >= db) {
            int da = degree(r2);
            Natural c = r2.back();
            r2.pop_back();
            if (c != 0) {
                for (int j = 0; j < db; ++j) {
                    int idx = da - db + j;
                    r2[idx] = mod_norm(r2[idx] - c * r1[j], n);
                }
                int shift = da - db;
                if (static_cast<int>(t2.size()) < static_cast<int>(t1.size()) + shift)
                    t2.resize(t1.size() + shift);
                for (unsigned j = 0; j < t1.size(); ++j)
                    t2[j + shift] = mod_norm(t2[j + shift] - c * t1[j], n);
            }
            trim(r2);
        }
        trim(t2);
        r0 = std::move(r1);
        t0 = std::move(t1);
        r1 = std::move(r2);
        t1 = std::move(t2);
    }

    if (r1.empty()) {
        // gcd(a, F) = r0, a nontrivial divisor of F. Normalize it so the
        // evidence is canonical; a non-invertible leading coefficient is
        // itself a factor of n.
        ScalarInvert lc = invert_mod(r0.back(), n);
        if (!lc.inverse) {
            out.factor = lc.factor;
            return out;
        }
        for (Natural& c : r0) c = (c * *lc.inverse) % n;
        out.gcd_with_f = std::move(r0);
        return out;
    }

    ScalarInvert ci = invert_mod(r1[0], n);
    if (!ci.inverse) {
        out.factor = ci.factor;
        return out;
    }
    for (Natural& c : t1) c = (c * *ci.inverse) % n;
    CycElement inv = pad(std::move(t1), A.d);
    CycElement check = poly_mul_mod(A, a, inv);
    if (check != cyc_one(A)) {
        out.check_failed = true;
        return out;
    }
    out.inverse = std::move(inv);
    return out;
}

PolyGcd poly_gcd(const Natural& n, std::vector<Natural> a, std::vector<Natural> b) {
    trim(a);
    trim(b);
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        ScalarInvert lc = invert_mod(b.back(), n);
        if (!lc.inverse) return PolyGcd{std::nullopt, lc.factor};
        for (Natural& c : b) c = (c * *lc.inverse) % n;
        std::vector<Natural> r = rem_by_monic(n, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return PolyGcd{std::vector<Natural>{}, std::nullopt};
    ScalarInvert lc = invert_mod(a.back(), n);
    if (!lc.inverse) return PolyGcd{std::nullopt, lc.factor};
    for (Natural& c : a) c = (c * *lc.inverse) % n;
    return PolyGcd{std::move(a), std::nullopt};
}

KernelOutcome gauss_kernel(const Natural& n, std::vector<std::vector<Natural>> rows) {
    const unsigned dim = rows.size();
    for (const auto& row : rows)
        if (row.size() != dim) throw std::invalid_argument("gauss_kernel: matrix not square");

    std::vector<unsigned> pivot_col;
    unsigned rank = 0;
    for (unsigned col = 0; col < dim && rank < dim; ++col) {
        unsigned sel = dim;
        for (unsigned r = rank; r < dim; ++r) {
            if (rows[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel == dim) continue;
        ScalarInvert pi = invert_mod(rows[sel][col], n);
        if (!pi.inverse) return KernelOutcome{std::nullopt, pi.factor};
        std::swap(rows[sel], rows[rank]);
        for (unsigned j = 0; j < dim; ++j) rows[rank][j] = (rows[rank][j] * *pi.inverse) % n;
        for (unsigned r = 0; r < dim; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Natural c = rows[r][col];
            for (unsigned j = 0; j < dim; ++j)
                rows[r][j] = mod_norm(rows[r][j] - c * rows[rank][j], n);
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<uint8_t> is_pivot(dim, 0);
    for (unsigned c : pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<Natural>> basis;
    for (unsigned fc = 0; fc < dim; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Natural> v(dim, Natural(0));
        v[fc] = 1;
        for (unsigned r = 0; r < rank; ++r)
            v[pivot_col[r]] = mod_norm(Integer(0) - rows[r][fc], n);
        basis.push_back(std::move(v));
    }
    return KernelOutcome{std::move(basis), std::nullopt};
}

}  // namespace galois
