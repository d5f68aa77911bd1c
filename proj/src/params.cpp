#include "galois/params.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace galois {

CostModel load_cost_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cost model file not readable: " + path);
    CostModel m;
    std::map<std::string, double*> keys{
        {"F", &m.F},
        {"mr_coeff", &m.mr_coeff},
        {"mr_exp", &m.mr_exp},
        {"f_coeff_2", &m.f_coeff_2},
        {"f_coeff_big", &m.f_coeff_big},
        {"f_exp_big", &m.f_exp_big},
        {"zeta_coeff_1", &m.zeta_coeff_1},
        {"zeta_coeff_big", &m.zeta_coeff_big},
        {"zeta_exp_big", &m.zeta_exp_big},
        {"sigma_coeff_1", &m.sigma_coeff_1},
        {"sigma_coeff_big", &m.sigma_coeff_big},
        {"power_coeff_1", &m.power_coeff_1},
        {"power_coeff_big", &m.power_coeff_big},
        {"power_exp", &m.power_exp},
        {"aux_bexp", &m.aux_bexp},
    };
    std::string line;
    size_t lineno = 0;
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("cost model line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        auto it = keys.find(key);
        if (it == keys.end())
            throw std::invalid_argument("cost model line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        try {
            *it->second = std::stod(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("cost model line " + std::to_string(lineno) +
                                        ": bad value for '" + key + "'");
        }
    }
    return m;
}

double compute_A(const Natural& lambda, unsigned b) {
    if (b < 2) throw std::invalid_argument("compute_A: need b >= 2");
    double l = lambda.convert_to<double>();
    return (2.0 + 2.0 * l / (b - 1)) / 0.9995;
}

double log2_natural(const Natural& n) {
    if (n < 1) throw std::invalid_argument("log2_natural: need n >= 1");
    unsigned m = static_cast<unsigned>(boost::multiprecision::msb(n));
    if (m <= 52) return std::log2(n.convert_to<double>());
    Natural top = n >> (m - 52);
    return std::log2(top.convert_to<double>()) + (m - 52);
}

unsigned d_cyc_bound(unsigned b, double log2n) {
    double inner = std::log(std::log(std::log(68.0 * std::sqrt(log2n))));
    double expo = 1.5 * std::max(1.0, inner);
    double v = std::pow(9.0 + std::log(static_cast<double>(b)), expo);
    if (v < 1.0) return 1;
    return static_cast<unsigned>(std::floor(v));
}

bool candidate_filter_holds(unsigned b, double log2n) {
    return log2n >= static_cast<double>(b - 1) - 1e-9;
}

double t_mr(unsigned b, const Natural& r, const CostModel& model) {
    return model.F * model.mr_coeff * r.convert_to<double>() *
           std::pow(static_cast<double>(b), model.mr_exp);
}

double estimate_cost(unsigned b, const ParamChoice& choice, const CostModel& model) {
    double bb = static_cast<double>(b);
    double dc = choice.d_cyc.convert_to<double>();
    double dk = choice.d_kum.convert_to<double>();
    double lead = std::pow(bb, model.mr_exp);
    double aux = std::pow(bb, model.aux_bexp);

    double t = t_mr(b, choice.r, model);
    if (choice.d_cyc == 2) {
        t += model.f_coeff_2 * model.F * std::log2(bb) * lead;
    } else if (choice.d_cyc > 2) {
        t += model.f_coeff_big * model.F * std::log2(dc) * std::pow(dc, model.f_exp_big) * aux;
    }
    if (choice.d_cyc == 1) {
        t += model.zeta_coeff_1 * model.F * aux;
        t += model.sigma_coeff_1 * model.F * dk * lead;
        t += model.power_coeff_1 * model.F * std::pow(dk, model.power_exp) * aux;
    } else {
        t += model.zeta_coeff_big * model.F * std::pow(dc, model.zeta_exp_big) * aux;
        t += model.sigma_coeff_big * model.F * dc * dk * aux;
        t += model.power_coeff_big * model.F * std::pow(dc * dk, model.power_exp) * aux;
    }
    return t;
}

namespace {

std::vector<ParamChoice> enumerate_core(
    unsigned b, double log2n, const Natural& lambda, const CostModel& model,
    const std::function<bool(unsigned, unsigned)>& divides) {
    std::vector<ParamChoice> out;
    if (lambda < 1) return out;
    if (!candidate_filter_holds(b, log2n)) return out;

    // Exact rational A = num/den = (2 + 2*lambda/(b-1)) / 0.9995.
    Natural num = 4000 * (Natural(b) - 1 + lambda);
    Natural den = Natural(1999) * (b - 1);
    double A = compute_A(lambda, b);
    Natural lim = 4 * lambda * num;  // d <= 2*sqrt(A*lambda), squared and scaled by den
    Natural baseline_r = (lambda + 1) / 2;
    double mr_baseline = t_mr(b, baseline_r, model);

    unsigned dc_max = d_cyc_bound(b, log2n);
    for (unsigned dc = 1; dc <= dc_max; ++dc) {
        for (unsigned dk = 1;; ++dk) {
            Natural d = Natural(dc) * dk;
            if (d * d * den > lim) break;
            if (d * den <= num) continue;  // require d > A
            if (dk > 1 && !divides(dc, dk)) continue;
            Natural rden = d * den - num;
            Natural r = (lambda * num + rden - 1) / rden;
            if (r * rden < lambda * num)
                throw std::logic_error("security inequality violated by rounding");
            ParamChoice c;
            c.A = A;
            c.B = 8000;
            c.d_cyc = dc;
            c.d_kum = dk;
            c.d = d;
            c.r = r;
            c.est_mr_cost = mr_baseline;
            c.est_galois_cost = estimate_cost(b, c, model);
            out.push_back(std::move(c));
        }
    }
    return out;
}

ParamChoice pick(unsigned b, const Natural& lambda, const CostModel& model,
                 std::vector<ParamChoice> cands) {
    Natural baseline_r = (lambda + 1) / 2;
    double baseline = t_mr(b, baseline_r, model);
    const ParamChoice* best = nullptr;
    for (const ParamChoice& c : cands)
        if (!best || c.est_galois_cost < best->est_galois_cost) best = &c;
    if (best && best->est_galois_cost <= baseline) return *best;
    ParamChoice fb;
    fb.A = compute_A(lambda, b);
    fb.B = 8000;
    fb.d_cyc = 1;
    fb.d_kum = 1;
    fb.d = 1;
    fb.r = baseline_r;
    fb.est_galois_cost = best ? best->est_galois_cost : 0.0;
    fb.est_mr_cost = baseline;
    fb.fallback = true;
    return fb;
}

}  // namespace

std::vector<ParamChoice> enumerate_candidates(const Natural& n, const Natural& lambda,
                                              const CostModel& model) {
    if (n < Natural(8000) * 8000)
        throw std::invalid_argument("enumerate_candidates: n below B^2");
    unsigned b = bit_length(n);
    double log2n = log2_natural(n);
    auto divides = [&](unsigned dc, unsigned dk) {
        return mod_pow(n % Natural(dk), Natural(dc), Natural(dk)) == 1;
    };
    return enumerate_core(b, log2n, lambda, model, divides);
}

std::vector<ParamChoice> enumerate_candidates_ideal(unsigned b, const Natural& lambda,
                                                    const CostModel& model) {
    if (b < 2) throw std::invalid_argument("enumerate_candidates_ideal: need b >= 2");
    auto divides = [](unsigned, unsigned) { return true; };
    return enumerate_core(b, static_cast<double>(b), lambda, model, divides);
}

ParamChoice select(const Natural& n, const Natural& lambda, const CostModel& model) {
    return pick(bit_length(n), lambda, model, enumerate_candidates(n, lambda, model));
}

ParamChoice select_ideal(unsigned b, const Natural& lambda, const CostModel& model) {
    return pick(b, lambda, model, enumerate_candidates_ideal(b, lambda, model));
}

std::optional<Natural> crossover(unsigned b, const CostModel& model) {
    if (b < 512) throw std::invalid_argument("crossover: need b >= 512");
    Natural den = Natural(1999) * (b - 1);
    for (unsigned lambda = 1; lambda <= 23u * b; ++lambda) {
        Natural num = 4000 * (Natural(b) - 1 + lambda);
        Natural lim = 4 * Natural(lambda) * num;
        double best = std::numeric_limits<double>::infinity();
        for (unsigned d = 1;; ++d) {
            Natural dd = Natural(d);
            if (dd * dd * den > lim) break;
            if (dd * den <= num) continue;
            Natural rden = dd * den - num;
            Natural r = (lambda * num + rden - 1) / rden;
            double units = model.mr_coeff * r.convert_to<double>() + model.sigma_coeff_1 * d;
            if (units < best) best = units;
        }
        double baseline = model.mr_coeff * ((lambda + 1) / 2);
        if (best < baseline) return Natural(lambda);
    }
    return std::nullopt;
}

}  // namespace galois
