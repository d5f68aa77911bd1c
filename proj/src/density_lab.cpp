#include "galois/density_lab.hpp"

#include "galois/miller_rabin.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace galois {

namespace {

constexpr uint64_t kTotalWorkCap = 100000000;  // brute force refusal threshold

uint64_t pow_u64(uint64_t base, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

uint64_t block_tuples(const SplittingDatum& s) {
    return pow_u64(pow_u64(s.p, s.f) - 1, s.m);
}

// x^e for rational x > 0 and integer e of either sign.
Rational rational_pow(const Rational& x, const Integer& e) {
    using boost::multiprecision::pow;
    unsigned a = e < 0 ? (-e).convert_to<unsigned>() : e.convert_to<unsigned>();
    Natural num = pow(boost::multiprecision::numerator(x), a);
    Natural den = pow(boost::multiprecision::denominator(x), a);
    if (e < 0) std::swap(num, den);
    return Rational(num, den);
}

}  // namespace

void validate_model(const AbstractAlgebraModel& model) {
    if (model.data.empty())
        throw std::invalid_argument("model: needs at least one prime");
    if (model.d < 1) throw std::invalid_argument("model: d must be >= 1");
    Natural prod = 1;
    for (const SplittingDatum& s : model.data) {
        if (s.p < 2 || !is_small_prime(s.p))
            throw std::invalid_argument("model: p = " + std::to_string(s.p) +
                                        " is not a small prime");
        if (s.v < 1) throw std::invalid_argument("model: v must be >= 1");
        if (s.f < 1 || s.m < 1)
            throw std::invalid_argument("model: f and m must be >= 1");
        if (s.f * s.m != model.d)
            throw std::invalid_argument("model: f*m differs from d");
        bool t_ok = (s.f == 1) ? (s.t == 0)
                               : (s.t < s.f && std::gcd(s.t, s.f) == 1);
        if (!t_ok)
            throw std::invalid_argument(
                "model: t must be the inverse of a unit mod f (0 iff f = 1)");
        for (unsigned i = 0; i < s.v; ++i) prod *= s.p;
    }
    for (size_t i = 0; i < model.data.size(); ++i)
        for (size_t j = i + 1; j < model.data.size(); ++j)
            if (model.data[i].p == model.data[j].p)
                throw std::invalid_argument("model: duplicate prime");
    if (prod != model.n)
        throw std::invalid_argument("model: n differs from prod p^v");
}

AbstractAlgebraModel make_model(unsigned d, std::vector<SplittingDatum> data) {
    AbstractAlgebraModel model;
    model.d = d;
    model.data = std::move(data);
    model.n = 1;
    for (const SplittingDatum& s : model.data)
        for (unsigned i = 0; i < s.v; ++i) model.n *= s.p;
    validate_model(model);
    return model;
}

AbstractAlgebraModel inert_model(const std::vector<uint32_t>& primes, unsigned d) {
    std::vector<SplittingDatum> data;
    for (uint32_t p : primes) {
        SplittingDatum s;
        s.p = p;
        s.v = 1;
        s.f = d;
        s.m = 1;
        s.t = d >= 2 ? 1 : 0;
        data.push_back(s);
    }
    return make_model(d, std::move(data));
}

Rational splitting_factor(const Natural& n, unsigned d, const SplittingDatum& s) {
    using boost::multiprecision::pow;
    Natural q1 = pow(Natural(s.p), s.f) - 1;
    Integer diff = pow(Integer(n), s.m) - pow(Integer(s.p), s.t);
    Natural g = diff == 0 ? q1 : boost::multiprecision::gcd(Natural(abs(diff)), q1);
    Natural den = pow(q1, s.m) * pow(Natural(s.p), (s.v - 1) * d);
    return Rational(g, den);
}

Rational density_formula(const AbstractAlgebraModel& model) {
    validate_model(model);
    Rational mu = 1;
    for (const SplittingDatum& s : model.data)
        mu *= splitting_factor(model.n, model.d, s);
    return mu;
}

namespace {

// Coefficient vectors over F_p, low to high, for the modulus search.
bool poly_divides_mod_p(uint32_t p, const std::vector<uint32_t>& divisor,
                        std::vector<uint32_t> rem) {
    size_t dd = divisor.size() - 1;  // divisor is monic
    while (rem.size() > dd) {
        uint32_t lead = rem.back();
        if (lead != 0) {
            size_t shift = rem.size() - 1 - dd;
            for (size_t j = 0; j <= dd; ++j)
                rem[shift + j] = (rem[shift + j] + (p - divisor[j] % p) * lead) % p;
        }
        rem.pop_back();
    }
    for (uint32_t c : rem)
        if (c != 0) return false;
    return true;
}

std::vector<uint32_t> decode_poly(uint32_t p, unsigned len, uint32_t code) {
    std::vector<uint32_t> c(len);
    for (unsigned i = 0; i < len; ++i) {
        c[i] = code % p;
        code /= p;
    }
    return c;
}

bool irreducible_mod_p(uint32_t p, const std::vector<uint32_t>& poly) {
    unsigned deg = static_cast<unsigned>(poly.size()) - 1;
    for (unsigned dd = 1; 2 * dd <= deg; ++dd) {
        for (uint32_t code = 0; code < pow_u64(p, dd); ++code) {
            std::vector<uint32_t> divisor = decode_poly(p, dd, code);
            divisor.push_back(1);  // monic
            if (poly_divides_mod_p(p, divisor, poly)) return false;
        }
    }
    return true;
}

}  // namespace

SmallField make_small_field(uint32_t p, unsigned f) {
    if (!is_small_prime(p)) throw std::invalid_argument("small field: p must be prime");
    if (f < 1) throw std::invalid_argument("small field: f must be >= 1");
    uint64_t q = pow_u64(p, f);
    if (q > 65536) throw std::invalid_argument("small field: p^f exceeds 2^16");
    SmallField F;
    F.p = p;
    F.f = f;
    F.q = static_cast<uint32_t>(q);
    if (f == 1) {
        F.modulus = {0, 1};  // X; unused by mul
        return F;
    }
    for (uint32_t code = 0;; ++code) {
        if (code >= q) throw std::logic_error("small field: no irreducible polynomial");
        std::vector<uint32_t> cand = decode_poly(p, f, code);
        cand.push_back(1);
        if (irreducible_mod_p(p, cand)) {
            F.modulus = std::move(cand);
            return F;
        }
    }
}

uint32_t SmallField::mul(uint32_t a, uint32_t b) const {
    if (f == 1) return static_cast<uint32_t>((uint64_t(a) * b) % p);
    uint32_t ca[16], cb[16];
    uint64_t acc[31] = {0};
    for (unsigned i = 0; i < f; ++i) {
        ca[i] = a % p;
        a /= p;
        cb[i] = b % p;
        b /= p;
    }
    for (unsigned i = 0; i < f; ++i)
        for (unsigned j = 0; j < f; ++j) acc[i + j] += uint64_t(ca[i]) * cb[j];
    for (unsigned i = 2 * f - 2; i >= f; --i) {
        uint64_t lead = acc[i] % p;
        if (lead)
            for (unsigned j = 0; j < f; ++j)
                acc[i - f + j] += lead * (p - modulus[j] % p);
        if (i == f) break;
    }
    uint32_t out = 0;
    for (unsigned i = f; i-- > 0;) out = out * p + static_cast<uint32_t>(acc[i] % p);
    return out;
}

uint32_t SmallField::pow(uint32_t a, uint64_t e) const {
    uint32_t r = f == 1 ? 1 % p : 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

namespace {

// Solutions of x^n = sigma(x) in (field*)^m for one prime block:
// x_i^n = x_{i+1} for i < m-1 and x_{m-1}^n = x_0^(p^t), checked
// exhaustively over all tuples via memoized power tables.
uint64_t count_block(const SmallField& F, uint64_t n_exp, const SplittingDatum& s,
                     bool parallel) {
    uint32_t q = F.q;
    std::vector<uint32_t> tn(q), tpt(q);
    uint64_t pt = pow_u64(s.p, s.t);
    for (uint32_t e = 1; e < q; ++e) {
        tn[e] = F.pow(e, n_exp);
        tpt[e] = F.pow(e, pt);
    }
    unsigned m = s.m;
    uint64_t count = 0;
    int64_t top = q;
#pragma omp parallel for schedule(static) reduction(+ : count) if (parallel)
    for (int64_t x0 = 1; x0 < top; ++x0) {
        if (m == 1) {
            if (tn[x0] == tpt[x0]) ++count;
            continue;
        }
        std::vector<uint32_t> x(m, 1);
        x[0] = static_cast<uint32_t>(x0);
        // Odometer over the remaining coordinates.
        for (;;) {
            bool ok = tn[x[m - 1]] == tpt[x[0]];
            for (unsigned i = 0; ok && i + 1 < m; ++i) ok = tn[x[i]] == x[i + 1];
            if (ok) ++count;
            unsigned pos = 1;
            while (pos < m && ++x[pos] == q) {
                x[pos] = 1;
                ++pos;
            }
            if (pos == m) break;
        }
    }
    return count;
}

Rational brute_force_impl(const AbstractAlgebraModel& model, bool parallel) {
    validate_model(model);
    using boost::multiprecision::pow;
    Natural total = 1;
    for (const SplittingDatum& s : model.data) {
        if (s.v != 1)
            throw std::invalid_argument(
                "brute force: only v = 1 models are enumerated (the p-adic part "
                "contributes exactly one solution)");
        Natural qf = pow(Natural(s.p), s.f);
        if (qf > 65536)
            throw std::invalid_argument("brute force: p^f = " + qf.str() +
                                        " exceeds 2^16");
        total *= pow(qf - 1, s.m);
    }
    if (total > Natural(kTotalWorkCap))
        throw std::invalid_argument("brute force: tuple count " + total.str() +
                                    " exceeds 10^8");
    uint64_t n_exp = model.n.convert_to<uint64_t>();
    Rational mu = 1;
    for (const SplittingDatum& s : model.data) {
        SmallField F = make_small_field(s.p, s.f);
        uint64_t count = count_block(F, n_exp, s, parallel);
        mu *= Rational(Natural(count), Natural(block_tuples(s)));
    }
    return mu;
}

}  // namespace

Rational brute_force_density(const AbstractAlgebraModel& model) {
    return brute_force_impl(model, true);
}

Rational brute_force_density_serial(const AbstractAlgebraModel& model) {
    return brute_force_impl(model, false);
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t n) {
    uint64_t r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, n);
        a = mulmod_u64(a, a, n);
        e >>= 1;
    }
    return r;
}

// Word-size mirror of mr_map's verdict: shared factors reject, then the
// usual square chain. Requires n odd >= 3, 1 <= x < n.
bool mr_pass_u64(uint64_t n, uint64_t x) {
    if (std::gcd(n, x) != 1) return false;
    uint64_t m = n - 1;
    unsigned k = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++k;
    }
    uint64_t c = powmod_u64(x, m, n);
    if (c == 1 || c == n - 1) return true;
    for (unsigned i = 1; i < k; ++i) {
        c = mulmod_u64(c, c, n);
        if (c == n - 1) return true;
    }
    return false;
}

MrDensityStats stats_for(uint32_t n) {
    MrDensityStats st;
    st.n = n;
    for (uint64_t x = 1; x < n; ++x) {
        if (std::gcd<uint64_t>(x, n) != 1) continue;
        ++st.units;
        if (mr_pass_u64(n, x)) ++st.liars;
    }
    st.omega = static_cast<unsigned>(prime_factors_u32(n).size());
    Rational bound(1, 4);
    Rational alt(Natural(1), Natural(pow_u64(2, st.omega - 1)));
    if (alt < bound) bound = alt;
    st.within_bound = Rational(Natural(st.liars), Natural(st.units)) <= bound;
    return st;
}

std::vector<uint32_t> odd_composites(uint32_t lo, uint32_t hi) {
    std::vector<uint32_t> ns;
    for (uint32_t n = lo | 1; n <= hi; n += 2)
        if (n >= 9 && !is_small_prime(n)) ns.push_back(n);
    return ns;
}

std::vector<MrDensityStats> density_range_impl(uint32_t lo, uint32_t hi, bool parallel) {
    std::vector<uint32_t> ns = odd_composites(lo, hi);
    std::vector<MrDensityStats> out(ns.size());
    int64_t count = static_cast<int64_t>(ns.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int64_t i = 0; i < count; ++i) out[i] = stats_for(ns[i]);
    return out;
}

bool completeness_impl(uint32_t lo, uint32_t hi, bool parallel) {
    std::vector<uint32_t> ps;
    for (uint32_t n = lo; n <= hi; ++n)
        if (n >= 2 && is_small_prime(n)) ps.push_back(n);
    bool all_ok = true;
    int64_t count = static_cast<int64_t>(ps.size());
#pragma omp parallel for schedule(dynamic) reduction(&& : all_ok) if (parallel)
    for (int64_t i = 0; i < count; ++i) {
        uint32_t p = ps[i];
        bool ok = true;
        for (uint64_t x = 1; x < p && ok; ++x) ok = mr_pass_u64(p, x);
        all_ok = all_ok && ok;
    }
    return all_ok;
}

}  // namespace

Rational mr_density_oracle(const Natural& n) {
    if (n < 9 || (n & 1) == 0 || n > 100000)
        throw std::invalid_argument("mr_density_oracle: need odd composite n <= 10^5");
    uint32_t v = n.convert_to<uint32_t>();
    if (is_small_prime(v))
        throw std::invalid_argument("mr_density_oracle: n must be composite");
    MrDensityStats st = stats_for(v);
    return Rational(Natural(st.liars), Natural(st.units));
}

std::vector<MrDensityStats> mr_density_range(uint32_t lo, uint32_t hi) {
    return density_range_impl(lo, hi, true);
}

std::vector<MrDensityStats> mr_density_range_serial(uint32_t lo, uint32_t hi) {
    return density_range_impl(lo, hi, false);
}

bool mr_prime_completeness(uint32_t lo, uint32_t hi) {
    return completeness_impl(lo, hi, true);
}

bool mr_prime_completeness_serial(uint32_t lo, uint32_t hi) {
    return completeness_impl(lo, hi, false);
}

Rational product_rule_pair_fraction(const Natural& n) {
    if (n < 9 || (n & 1) == 0 || n > 2000)
        throw std::invalid_argument("product rule: need odd composite n <= 2000");
    if (is_small_prime(n.convert_to<uint32_t>()))
        throw std::invalid_argument("product rule: n must be composite");
    std::vector<Verdict> verdicts;
    for (Natural x = 1; x < n; ++x) {
        if (boost::multiprecision::gcd(x, n) != 1) continue;
        verdicts.push_back(mr_map(n, x).verdict);
    }
    uint64_t bad_pairs = 0;
    for (Verdict a : verdicts)
        for (Verdict b : verdicts)
            if (vee(a, b) == Verdict::Prime) ++bad_pairs;
    Natural u(verdicts.size());
    return Rational(Natural(bad_pairs), u * u);
}

BoundCheck bound_check(const AbstractAlgebraModel& model, const Rational& A,
                       const Rational& B) {
    validate_model(model);
    BoundCheck out;
    out.mu = density_formula(model);
    if (A <= 2) return out;
    for (const SplittingDatum& s : model.data)
        if (Rational(s.p) < B) return out;
    if (model.data.size() < 2) return out;  // prime powers are excluded

    // v*log p >= A*log(n)/d, compared exactly as p^(d*v*A_den) >= n^(A_num).
    using boost::multiprecision::pow;
    Natural an = boost::multiprecision::numerator(A).convert_to<Natural>();
    Natural ad = boost::multiprecision::denominator(A).convert_to<Natural>();
    for (const SplittingDatum& s : model.data) {
        Natural lhs = pow(Natural(s.p),
                          (model.d * s.v * ad).convert_to<unsigned>());
        Natural rhs = pow(model.n, an.convert_to<unsigned>());
        if (lhs >= rhs) out.witnesses.push_back(s.p);
    }
    if (out.witnesses.empty()) return out;
    out.hypotheses_hold = true;

    Rational C = 1 - 2 / A - 4 / B;
    out.bound_holds = true;
    out.chain_holds = true;
    for (uint32_t p : out.witnesses) {
        const SplittingDatum* s = nullptr;
        for (const SplittingDatum& d : model.data)
            if (d.p == p) s = &d;
        // Exponent of the bound p^(-(v*d/2) * C) as an exact rational.
        Rational expo = Rational(-Integer(s->v) * model.d, 2) * C;
        Integer en = boost::multiprecision::numerator(expo);
        Natural ed = boost::multiprecision::denominator(expo).convert_to<Natural>();
        unsigned ed_u = ed.convert_to<unsigned>();
        // mu <= p^(en/ed)  <=>  mu^ed <= p^en.
        Rational bound_rhs = rational_pow(Rational(p), en);
        if (rational_pow(out.mu, Integer(ed_u)) > bound_rhs) out.bound_holds = false;
        Rational factor = splitting_factor(model.n, model.d, *s);
        if (out.mu > factor || rational_pow(factor, Integer(ed_u)) > bound_rhs)
            out.chain_holds = false;
    }
    return out;
}

std::vector<AbstractAlgebraModel> generate_models() {
    const uint32_t primes[] = {3, 5, 7, 11, 13};
    struct Shape {
        unsigned f, m, t;
    };
    const std::pair<unsigned, std::vector<Shape>> per_degree[] = {
        {1, {{1, 1, 0}}},
        {2, {{1, 2, 0}, {2, 1, 1}}},
        {3, {{1, 3, 0}, {3, 1, 1}, {3, 1, 2}}},
        {4, {{2, 2, 1}}},
        {6, {{2, 3, 1}, {3, 2, 1}, {3, 2, 2}}},
        {9, {{3, 3, 1}, {3, 3, 2}}},
    };

    std::vector<AbstractAlgebraModel> family;
    for (const auto& [d, shapes] : per_degree) {
        for (unsigned mask = 1; mask < 32; ++mask) {
            if (__builtin_popcount(mask) > 3) continue;
            std::vector<uint32_t> subset;
            for (unsigned i = 0; i < 5; ++i)
                if (mask & (1u << i)) subset.push_back(primes[i]);

            std::vector<size_t> idx(subset.size(), 0);
            for (;;) {
                std::vector<SplittingDatum> data;
                Natural tuples = 1;
                for (size_t i = 0; i < subset.size(); ++i) {
                    const Shape& sh = shapes[idx[i]];
                    data.push_back(SplittingDatum{subset[i], 1, sh.f, sh.m, sh.t});
                    tuples *= Natural(block_tuples(data.back()));
                }
                if (tuples <= Natural(kTotalWorkCap))
                    family.push_back(make_model(d, std::move(data)));
                size_t pos = 0;
                while (pos < idx.size() && ++idx[pos] == shapes.size()) {
                    idx[pos] = 0;
                    ++pos;
                }
                if (pos == idx.size()) break;
            }
        }
    }
    return family;
}

}  // namespace galois
