#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galois/arith.hpp"

namespace galois {

// Cost model for one b-bit modular operation budget, following the
// shape T(b, r, d_cyc, d_kum) = T_MR + T_F + T_zeta + T_sigma + T_power
// with per-term coefficients and exponents. Defaults are the published
// constants; a config file can override any of them.
struct CostModel {
    double F = 30e-9;  // seconds per cost unit; cancels in comparisons
    double mr_coeff = 1.0;
    double mr_exp = 2.6;
    double f_coeff_2 = 1.0;
    double f_coeff_big = 18.0;
    double f_exp_big = 2.2;
    double zeta_coeff_1 = 19.0;
    double zeta_coeff_big = 36.0;
    double zeta_exp_big = 2.2;
    double sigma_coeff_1 = 1.0;
    double sigma_coeff_big = 10.0;
    double power_coeff_1 = 19.0;
    double power_coeff_big = 36.0;
    double power_exp = 1.2;
    double aux_bexp = 2.4;
};

// Parses a flat key=value file ('#' starts a comment). Missing keys
// keep their defaults; an unknown key throws invalid_argument.
CostModel load_cost_model(const std::string& path);

struct ParamChoice {
    double A = 0.0;
    Natural B = 8000;
    Natural d_cyc = 1;
    Natural d_kum = 1;
    Natural d = 1;  // d_cyc * d_kum
    Natural r = 0;
    double est_galois_cost = 0.0;
    double est_mr_cost = 0.0;
    bool fallback = false;
};

// Recommended accuracy parameter A = (2 + 2*lambda/(b-1)) / 0.9995.
double compute_A(const Natural& lambda, unsigned b);

// Base-2 logarithm of n to double precision (53-bit mantissa).
double log2_natural(const Natural& n);

// Upper end of the d_cyc enumeration:
// floor((9 + ln b)^(1.5 * max(1, lnlnln(68 * sqrt(log2 n))))).
unsigned d_cyc_bound(unsigned b, double log2n);

// Reduced exact form of the per-candidate security-budget filter:
// with the recommended A and B = 8000 the pre-rounding requirement
// d*r*(1 - A/d) <= A^2*C*ln(n)/(2 ln 2) simplifies to log2(n) >= b-1,
// which holds for every b-bit n.
bool candidate_filter_holds(unsigned b, double log2n);

double t_mr(unsigned b, const Natural& r, const CostModel& model);
double estimate_cost(unsigned b, const ParamChoice& choice, const CostModel& model);

// All (d_cyc, d_kum, r) tuples with d = d_cyc*d_kum > A,
// d_kum | n^{d_cyc}-1 (tested by one modular reduction per divisor
// candidate), d <= 2*sqrt(A*lambda), and r = ceil(lambda*A/(d-A)),
// each priced by estimate_cost. Requires n >= B^2.
std::vector<ParamChoice> enumerate_candidates(const Natural& n, const Natural& lambda,
                                              const CostModel& model);

// Same enumeration with the idealized divisor assumption (every
// integer d_kum allowed), keyed by bit count alone.
std::vector<ParamChoice> enumerate_candidates_ideal(unsigned b, const Natural& lambda,
                                                    const CostModel& model);

// Cheapest candidate, ties broken by smaller d_cyc then smaller d_kum;
// falls back to ceil(lambda/2) plain Miller-Rabin rounds when the list
// is empty or the minimum exceeds that baseline.
ParamChoice select(const Natural& n, const Natural& lambda, const CostModel& model);
ParamChoice select_ideal(unsigned b, const Natural& lambda, const CostModel& model);

// Smallest lambda at which the extension test is model-cheaper
// (strictly) than ceil(lambda/2) Miller-Rabin rounds, scanning lambda
// upward under the idealized divisor assumption and comparing the
// leading-order b^mr_exp terms. Requires b >= 512; nullopt when no
// lambda up to 23*b qualifies.
std::optional<Natural> crossover(unsigned b, const CostModel& model);

}  // namespace galois
