#include "CLI11.hpp"
#include "json.hpp"

#include "galois/density_lab.hpp"
#include "galois/galois_test.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace galois;

namespace {

bool parse_natural(const std::string& raw, Natural& out) {
    std::string s = raw;
    if (!s.empty() && s == "-") {
        if (!(std::cin >> s)) return false;
    }
    if (s.empty()) return false;
    bool hex = s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
    for (size_t i = hex ? 2 : 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') ||
                  (hex && ((c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')));
        if (!ok) return false;
    }
    if (hex && s.size() == 2) return false;
    try {
        out = Natural(s);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

uint64_t resolve_seed(const std::optional<uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GALOIS_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("GALOIS_SEED is not a 64-bit integer");
        }
    }
    std::random_device rd;
    return (uint64_t(rd()) << 32) ^ rd();
}

std::vector<std::string> naturals_to_strings(const std::vector<Natural>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Natural& x : v) out.push_back(x.str());
    return out;
}

json algebra_json(const AlgebraSpec& a) {
    json j;
    j["d_cyc"] = a.d_cyc;
    j["f_low"] = naturals_to_strings(a.f_low);
    j["certificate"] = to_string(a.certificate);
    j["cert_o"] = a.cert_o.str();
    j["d_kum"] = a.d_kum;
    j["a"] = naturals_to_strings(a.a);
    return j;
}

json evidence_json(const CompositeEvidence& e) {
    json j;
    j["kind"] = to_string(e.kind);
    switch (e.kind) {
        case EvidenceKind::SmallFactor:
        case EvidenceKind::ZeroDivisor:
            j["factor"] = e.factor.str();
            break;
        case EvidenceKind::PerfectPower:
            j["power_base"] = e.power_base.str();
            j["power_exponent"] = e.power_exponent;
            break;
        case EvidenceKind::MrWitness:
            j["mr_witness"] = e.mr_witness.str();
            j["mr_chain"] = naturals_to_strings(e.mr_chain);
            break;
        case EvidenceKind::FailedIdentity:
        case EvidenceKind::GaloisWitness:
            break;
    }
    if (e.kind == EvidenceKind::FailedIdentity || e.kind == EvidenceKind::GaloisWitness ||
        e.kind == EvidenceKind::ZeroDivisor) {
        j["algebra"] = algebra_json(e.algebra);
        j["identity"] = to_string(e.identity);
        j["index"] = e.index;
        json ops = json::array();
        for (const auto& row : e.operand) ops.push_back(naturals_to_strings(row));
        j["operand"] = ops;
    }
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

json params_json(const ParamChoice& p) {
    json j;
    j["A"] = p.A;
    j["B"] = p.B.str();
    j["d_cyc"] = p.d_cyc.str();
    j["d_kum"] = p.d_kum.str();
    j["d"] = p.d.str();
    j["r"] = p.r.str();
    j["est_galois_cost"] = p.est_galois_cost;
    j["est_mr_cost"] = p.est_mr_cost;
    j["fallback"] = p.fallback;
    return j;
}

void print_evidence_human(const CompositeEvidence& e) {
    std::cout << "evidence: " << to_string(e.kind);
    switch (e.kind) {
        case EvidenceKind::SmallFactor:
        case EvidenceKind::ZeroDivisor:
            std::cout << " factor=" << e.factor;
            break;
        case EvidenceKind::PerfectPower:
            std::cout << " base=" << e.power_base << " exponent=" << e.power_exponent;
            break;
        case EvidenceKind::MrWitness:
            std::cout << " witness=" << e.mr_witness;
            break;
        case EvidenceKind::FailedIdentity:
        case EvidenceKind::GaloisWitness:
            std::cout << " identity=" << to_string(e.identity) << " d_cyc=" << e.algebra.d_cyc
                      << " d_kum=" << e.algebra.d_kum;
            break;
    }
    if (!e.note.empty()) std::cout << " (" << e.note << ")";
    std::cout << "\n";
}

struct TestOptions {
    std::string n_arg;
    uint64_t lambda = 64;
    std::optional<uint64_t> seed;
    bool as_json = false;
    bool timings = false;
    bool theoretical = false;
    bool ideal = false;
    bool force_galois = false;
    bool full_pipeline = false;
    std::optional<unsigned> force_dcyc;
    std::optional<unsigned> force_dkum;
    std::string model_path;
};

int cmd_test(const TestOptions& opt) {
    Natural n;
    if (!parse_natural(opt.n_arg, n)) {
        std::cerr << "error: n must be a decimal or 0x-prefixed hex integer\n";
        return 2;
    }
    if (opt.lambda < 1) {
        std::cerr << "error: lambda must be >= 1\n";
        return 2;
    }
    uint64_t seed = resolve_seed(opt.seed);

    TestResult res;
    if (n < 2) {
        std::cerr << "error: n must be >= 2\n";
        return 2;
    }
    try {
        if (n == 2) {
            res.verdict = Verdict::Prime;
            res.decided_by = "certainly_prime";
            res.lambda_target = opt.lambda;
        } else if ((n & 1) == 0) {
            res.verdict = Verdict::Composite;
            res.evidence = small_factor_evidence(2, "n is even");
            res.decided_by = "trial_division";
            res.lambda_target = opt.lambda;
        } else if (opt.theoretical) {
            res = theoretical_test(n, opt.lambda, Rng(seed));
        } else {
            GaloisConfig cfg;
            if (!opt.model_path.empty()) cfg.model = load_cost_model(opt.model_path);
            cfg.ideal_divisors = opt.ideal;
            cfg.force_galois = opt.force_galois;
            cfg.run_full_pipeline = opt.full_pipeline;
            cfg.force_d_cyc = opt.force_dcyc;
            cfg.force_d_kum = opt.force_dkum;
            res = galois_test(n, opt.lambda, cfg, Rng(seed));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bool composite = res.verdict == Verdict::Composite;
    if (opt.as_json) {
        json j;
        j["n"] = n.str();
        j["lambda"] = opt.lambda;
        j["verdict"] = composite ? "composite" : "probable_prime";
        j["decided_by"] = res.decided_by;
        j["repetitions"] = res.repetitions;
        j["params"] = params_json(res.params);
        if (res.evidence) j["evidence"] = evidence_json(*res.evidence);
        j["seed"] = seed;
        if (opt.timings) {
            json t;
            for (const auto& [step, ms] : res.log.step_millis) t[step] = ms;
            j["timings"] = t;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "n: " << n << "\n";
        std::cout << "verdict: " << (composite ? "composite" : "probable prime") << " (by "
                  << res.decided_by << ")\n";
        std::cout << "lambda: " << opt.lambda << ", repetitions: " << res.repetitions
                  << ", seed: " << seed << "\n";
        const ParamChoice& p = res.params;
        std::cout << "params: A=" << p.A << " B=" << p.B << " d_cyc=" << p.d_cyc
                  << " d_kum=" << p.d_kum << " r=" << p.r
                  << (p.fallback ? " (fallback to plain Miller-Rabin)" : "") << "\n";
        if (res.evidence) {
            print_evidence_human(*res.evidence);
            std::cout << "replay: "
                      << (replay_evidence(n, *res.evidence) ? "confirmed" : "NOT CONFIRMED")
                      << "\n";
        }
        if (opt.timings)
            for (const auto& [step, ms] : res.log.step_millis)
                std::cout << "  " << step << ": " << ms << " ms\n";
    }
    return composite ? 1 : 0;
}

struct ParamsOptions {
    std::string n_arg;
    unsigned bits = 0;
    uint64_t lambda = 64;
    bool as_json = false;
    std::string model_path;
};

int cmd_params(const ParamsOptions& opt) {
    CostModel model;
    try {
        if (!opt.model_path.empty()) model = load_cost_model(opt.model_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<ParamChoice> cands;
    ParamChoice chosen;
    unsigned b = opt.bits;
    try {
        if (!opt.n_arg.empty()) {
            Natural n;
            if (!parse_natural(opt.n_arg, n)) {
                std::cerr << "error: n must be a decimal or 0x-prefixed hex integer\n";
                return 2;
            }
            b = bit_length(n);
            cands = enumerate_candidates(n, opt.lambda, model);
            chosen = select(n, opt.lambda, model);
        } else if (opt.bits >= 2) {
            cands = enumerate_candidates_ideal(opt.bits, opt.lambda, model);
            chosen = select_ideal(opt.bits, opt.lambda, model);
        } else {
            std::cerr << "error: pass n or --bits\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (opt.as_json) {
        json j;
        j["b"] = b;
        j["lambda"] = opt.lambda;
        json arr = json::array();
        for (const ParamChoice& c : cands) arr.push_back(params_json(c));
        j["candidates"] = arr;
        j["selected"] = params_json(chosen);
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "b=" << b << " lambda=" << opt.lambda << " A=" << compute_A(opt.lambda, b)
              << "\n";
    std::cout << "d_cyc  d_kum      d      r      est_cost\n";
    for (const ParamChoice& c : cands) {
        std::ostringstream row;
        row.width(5);
        row << c.d_cyc;
        row.width(7);
        row << c.d_kum;
        row.width(7);
        row << c.d;
        row.width(7);
        row << c.r;
        std::cout << row.str() << "      " << c.est_galois_cost << "\n";
    }
    if (chosen.fallback) {
        std::cout << "fallback: " << chosen.r << " Miller-Rabin tests (baseline cost "
                  << chosen.est_mr_cost << " beats every candidate)\n";
    } else {
        std::cout << "selected: d_cyc=" << chosen.d_cyc << " d_kum=" << chosen.d_kum
                  << " r=" << chosen.r << " (cost " << chosen.est_galois_cost << " vs MR "
                  << chosen.est_mr_cost << ")\n";
    }
    return 0;
}

struct CrossoverOptions {
    std::string bits_list = "512,1024,2048,4096,8192";
    std::string model_path;
};

int cmd_crossover(const CrossoverOptions& opt) {
    CostModel model;
    try {
        if (!opt.model_path.empty()) model = load_cost_model(opt.model_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<unsigned> bits;
    std::stringstream ss(opt.bits_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            bits.push_back(static_cast<unsigned>(std::stoul(tok)));
        } catch (const std::exception&) {
            std::cerr << "error: bad bits value '" << tok << "'\n";
            return 2;
        }
    }
    std::cout << "bits,lambda_star\n";
    for (unsigned b : bits) {
        try {
            std::optional<Natural> l = crossover(b, model);
            std::cout << b << "," << (l ? l->str() : "none") << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 0;
}

struct DensityOptions {
    // mr mode
    std::string n_arg;
    // model mode
    std::string model_n;
    bool inert = false;
    unsigned d = 2;
    std::string spec;
    bool as_json = false;
};

AbstractAlgebraModel model_from_options(const DensityOptions& opt) {
    if (!opt.spec.empty()) {
        std::vector<SplittingDatum> data;
        std::stringstream ss(opt.spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::stringstream fields(tok);
            std::string part;
            std::vector<unsigned> v;
            while (std::getline(fields, part, ':')) v.push_back(std::stoul(part));
            if (v.size() < 4 || v.size() > 5)
                throw std::invalid_argument("spec entries are p:f:m:t or p:f:m:t:v");
            SplittingDatum s;
            s.p = v[0];
            s.f = v[1];
            s.m = v[2];
            s.t = v[3];
            s.v = v.size() == 5 ? v[4] : 1;
            data.push_back(s);
        }
        return make_model(opt.d, std::move(data));
    }
    if (opt.model_n.empty()) throw std::invalid_argument("pass --spec or --n with --inert");
    Natural n;
    if (!parse_natural(opt.model_n, n)) throw std::invalid_argument("bad --n value");
    if (!opt.inert) throw std::invalid_argument("without --spec, only --inert is supported");
    if (n < 2 || n > 1000000) throw std::invalid_argument("--n must be in [2, 10^6]");
    uint32_t small = n.convert_to<uint32_t>();
    std::vector<uint32_t> ps = prime_factors_u32(small);
    Natural check = 1;
    for (uint32_t p : ps) check *= p;
    if (check != n) throw std::invalid_argument("--inert needs squarefree n");
    return inert_model(ps, opt.d);
}

int cmd_density_mr(const DensityOptions& opt) {
    Natural n;
    if (!parse_natural(opt.n_arg, n)) {
        std::cerr << "error: n must be a decimal or 0x-prefixed hex integer\n";
        return 2;
    }
    try {
        Rational mu = mr_density_oracle(n);
        if (opt.as_json) {
            json j;
            j["mode"] = "mr";
            j["n"] = n.str();
            j["density"] = mu.str();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << mu << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_density_model(const DensityOptions& opt) {
    try {
        AbstractAlgebraModel model = model_from_options(opt);
        Rational formula = density_formula(model);
        Rational brute = brute_force_density(model);
        BoundCheck bc = bound_check(model, Rational(5, 2), Rational(3));
        if (opt.as_json) {
            json j;
            j["mode"] = "model";
            j["n"] = model.n.str();
            j["d"] = model.d;
            json data = json::array();
            for (const SplittingDatum& s : model.data)
                data.push_back({{"p", s.p}, {"v", s.v}, {"f", s.f}, {"m", s.m}, {"t", s.t}});
            j["data"] = data;
            j["formula"] = formula.str();
            j["brute_force"] = brute.str();
            j["equal"] = formula == brute;
            j["bound_hypotheses"] = bc.hypotheses_hold;
            j["bound_holds"] = bc.bound_holds;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "model: n=" << model.n << " d=" << model.d;
            for (const SplittingDatum& s : model.data)
                std::cout << "  (p=" << s.p << " v=" << s.v << " f=" << s.f << " m=" << s.m
                          << " t=" << s.t << ")";
            std::cout << "\n";
            std::cout << "formula = " << formula << "\n";
            std::cout << "brute force = " << brute << "\n";
            std::cout << (formula == brute ? "EQUAL" : "DIFFER") << "\n";
            if (bc.hypotheses_hold)
                std::cout << "bound check (A=5/2, B=3): "
                          << (bc.bound_holds && bc.chain_holds ? "holds" : "VIOLATED") << "\n";
            else
                std::cout << "bound check (A=5/2, B=3): hypotheses not met\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

struct BenchOptions {
    unsigned bits = 512;
    uint64_t lambda = 64;
    unsigned repeat = 3;
    std::optional<uint64_t> seed;
    std::string model_path;
};

Natural random_probable_prime(unsigned bits, Rng& rng) {
    for (;;) {
        Natural n = (Natural(1) << (bits - 1)) | rng.below(Natural(1) << (bits - 1)) | 1;
        if (trial_division(n).factor) continue;
        Rng screen = rng.split(0x5c7ee5);
        if (mr_test(n, 16, screen).verdict == Verdict::Composite) continue;
        return n;
    }
}

int cmd_bench(const BenchOptions& opt) {
    if (opt.bits < 32) {
        std::cerr << "error: --bits must be >= 32\n";
        return 2;
    }
    if (opt.repeat < 1) {
        std::cerr << "error: --repeat must be >= 1\n";
        return 2;
    }
    GaloisConfig cfg;
    try {
        if (!opt.model_path.empty()) cfg.model = load_cost_model(opt.model_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    cfg.force_galois = true;
    uint64_t seed = resolve_seed(opt.seed);

    const char* steps[] = {"perfect_power", "mr_rounds", "find_f",
                           "kummer_generator", "sigma_z", "power_z"};
    std::map<std::string, std::vector<double>> columns;
    std::vector<double> totals, mr_totals;
    ParamChoice used;

    for (unsigned rep = 0; rep < opt.repeat; ++rep) {
        Rng rng = Rng(seed).split(rep);
        Natural n = random_probable_prime(opt.bits, rng);
        TestResult res;
        try {
            res = galois_test(n, opt.lambda, cfg, rng.split(1));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        used = res.params;
        double total = 0;
        std::map<std::string, double> got;
        for (const auto& [step, ms] : res.log.step_millis) {
            got[step] += ms;
            total += ms;
        }
        for (const char* s : steps) columns[s].push_back(got.count(s) ? got[s] : 0.0);
        totals.push_back(total);

        auto t0 = std::chrono::steady_clock::now();
        mr_test(n, static_cast<unsigned>((opt.lambda + 1) / 2), rng.split(2));
        auto t1 = std::chrono::steady_clock::now();
        mr_totals.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        size_t k = v.size() / 2;
        return v.size() % 2 ? v[k] : (v[k - 1] + v[k]) / 2;
    };

    std::cout << "b=" << opt.bits << " lambda=" << opt.lambda << " repeats=" << opt.repeat
              << " d_cyc=" << used.d_cyc << " d_kum=" << used.d_kum << " r=" << used.r
              << "\n";
    std::cout << "perfect_power  mr_rounds  find_f  kummer_generator  sigma_z  power_z  "
                 "total  mr_equivalent  ratio\n";
    std::ostringstream row;
    for (const char* s : steps) row << median(columns[s]) << "  ";
    double tot = median(totals);
    double mr = median(mr_totals);
    row << tot << "  " << mr << "  " << (mr > 0 ? tot / mr : 0.0);
    std::cout << row.str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Galois pseudo-primality tester and density laboratory"};
    app.require_subcommand(1);

    TestOptions topt;
    CLI::App* test = app.add_subcommand("test", "test one integer for primality");
    test->add_option("n", topt.n_arg, "decimal or 0x-hex integer, or - for stdin")
        ->required();
    test->add_option("--lambda", topt.lambda, "security parameter (default 64)");
    test->add_option("--seed", topt.seed, "64-bit seed (default GALOIS_SEED or entropy)");
    test->add_flag("--json", topt.as_json, "machine-readable transcript");
    test->add_flag("--timings", topt.timings, "include per-step wall clock");
    test->add_flag("--theoretical", topt.theoretical,
                   "simpler parameter route (needs lambda <= ln n)");
    test->add_flag("--ideal", topt.ideal, "pick parameters with ideal divisors");
    test->add_flag("--force-galois", topt.force_galois, "never fall back to plain MR");
    test->add_flag("--full-pipeline", topt.full_pipeline,
                   "run the tower even when trial division is conclusive");
    test->add_option("--force-dcyc", topt.force_dcyc, "pin the inner extension degree");
    test->add_option("--force-dkum", topt.force_dkum, "pin the outer extension degree");
    test->add_option("--model", topt.model_path, "cost model key=value file");

    ParamsOptions popt;
    CLI::App* params = app.add_subcommand("params", "show the candidate table");
    params->add_option("n", popt.n_arg, "integer to size the table for");
    params->add_option("--bits", popt.bits, "ideal-divisor mode for this bit length");
    params->add_option("--lambda", popt.lambda, "security parameter (default 64)");
    params->add_flag("--json", popt.as_json, "machine-readable candidate array");
    params->add_option("--model", popt.model_path, "cost model key=value file");

    CrossoverOptions xopt;
    CLI::App* cross = app.add_subcommand("crossover", "lambda* curve as CSV");
    cross->add_option("--bits", xopt.bits_list, "comma-separated bit lengths");
    cross->add_option("--model", xopt.model_path, "cost model key=value file");

    DensityOptions dopt;
    CLI::App* density = app.add_subcommand("density", "bad-witness density laboratory");
    density->require_subcommand(1);
    CLI::App* dmr = density->add_subcommand("mr", "exhaustive Miller-Rabin liar fraction");
    dmr->add_option("n", dopt.n_arg, "odd composite <= 10^5")->required();
    dmr->add_flag("--json", dopt.as_json, "machine-readable output");
    CLI::App* dmodel = density->add_subcommand("model", "formula vs exhaustive count");
    dmodel->add_option("--n", dopt.model_n, "squarefree integer for --inert");
    dmodel->add_flag("--inert", dopt.inert, "every prime inert");
    dmodel->add_option("--d", dopt.d, "total degree (default 2)");
    dmodel->add_option("--spec", dopt.spec, "explicit data p:f:m:t[,p:f:m:t...]");
    dmodel->add_flag("--json", dopt.as_json, "machine-readable output");

    BenchOptions bopt;
    CLI::App* bench = app.add_subcommand("bench", "time pipeline steps on random primes");
    bench->add_option("--bits", bopt.bits, "prime size (default 512)");
    bench->add_option("--lambda", bopt.lambda, "security parameter (default 64)");
    bench->add_option("--repeat", bopt.repeat, "runs to take the median of (default 3)");
    bench->add_option("--seed", bopt.seed, "64-bit seed");
    bench->add_option("--model", bopt.model_path, "cost model key=value file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*test) return cmd_test(topt);
    if (*params) return cmd_params(popt);
    if (*cross) return cmd_crossover(xopt);
    if (*density) {
        if (*dmr) return cmd_density_mr(dopt);
        if (*dmodel) return cmd_density_model(dopt);
    }
    if (*bench) return cmd_bench(bopt);
    return 2;
}
