#include "sgm/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "sgm/oracle.hpp"
#include "sgm/seedless.hpp"

namespace sgm {

namespace {

// Separates the matcher's random stream from the sampler's.
constexpr std::uint64_t kMatchStream = 0x6d61746368ULL;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) throw InputError("config: bad value '" + text + "' for " + key);
    return value;
}

double parse_real(const std::string& key, const std::string& text) {
    const double v = parse_number<double>(key, text);
    if (!std::isfinite(v)) throw InputError("config: non-finite value for " + key);
    return v;
}

const std::string& single(const std::string& key, const std::vector<std::string>& values) {
    if (values.size() != 1) throw InputError("config: key '" + key + "' takes a single value");
    return values.front();
}

std::string clean_error(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
    }
    return text;
}

std::string format_optional_real(double x) { return std::isnan(x) ? std::string() : format_double(x); }
std::string format_optional_count(std::uint32_t x) { return x == 0 ? std::string() : std::to_string(x); }

std::string format_ms(double ms) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, ms, std::chars_format::fixed, 3);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

}  // namespace

RawConfig parse_config_text(std::istream& in) {
    RawConfig raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw InputError("config line " + std::to_string(line_no) + ": empty key");
        if (value.empty()) throw InputError("config line " + std::to_string(line_no) + ": empty value for " + key);
        raw[key].push_back(value);
    }
    return raw;
}

RawConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    return parse_config_text(in);
}

bool ParamOverrides::set(const std::string& key, const std::string& value) {
    if (key == "ell") {
        ell = parse_number<std::uint32_t>(key, value);
    } else if (key == "m") {
        m = parse_number<std::uint32_t>(key, value);
    } else if (key == "tau") {
        tau = parse_real(key, value);
    } else if (key == "d") {
        d = parse_number<std::uint32_t>(key, value);
    } else if (key == "eta") {
        eta = parse_real(key, value);
    } else {
        return false;
    }
    return true;
}

ExperimentConfig make_config(const RawConfig& raw) {
    ExperimentConfig cfg;
    auto reals = [](const std::string& key, const std::vector<std::string>& values) {
        std::vector<double> out;
        for (const auto& v : values) out.push_back(parse_real(key, v));
        return out;
    };
    bool have_p = false;
    bool have_np = false;
    std::string mode;
    for (const auto& [key, values] : raw) {
        if (values.empty()) throw InputError("config: empty axis '" + key + "'");
        if (key == "seed") {
            cfg.master_seed = parse_number<std::uint64_t>(key, single(key, values));
        } else if (key == "trials") {
            cfg.trials = parse_number<std::size_t>(key, single(key, values));
        } else if (key == "n") {
            for (const auto& v : values) cfg.n.push_back(parse_number<std::size_t>(key, v));
        } else if (key == "p") {
            cfg.p = reals(key, values);
            have_p = true;
        } else if (key == "np") {
            cfg.p = reals(key, values);
            have_np = true;
        } else if (key == "a") {
            cfg.a = reals(key, values);
        } else if (key == "b") {
            cfg.b = reals(key, values);
        } else if (key == "s") {
            cfg.s = reals(key, values);
        } else if (key == "alpha") {
            cfg.alpha = reals(key, values);
        } else if (key == "epsilon") {
            cfg.epsilon = reals(key, values);
        } else if (key == "algorithm") {
            cfg.algorithm = parse_algorithm(single(key, values));
        } else if (key == "inner") {
            cfg.inner = parse_algorithm(single(key, values));
        } else if (key == "mode") {
            mode = single(key, values);
            if (mode != "exact" && mode != "fast") throw InputError("config: mode must be exact or fast");
        } else if (key == "budget") {
            cfg.budget = parse_number<std::uint64_t>(key, single(key, values));
        } else if (key == "out") {
            cfg.out = single(key, values);
        } else if (key == "jobs") {
            cfg.jobs = parse_number<std::size_t>(key, single(key, values));
        } else if (!cfg.overrides.set(key, single(key, values))) {
            throw InputError("config: unknown key '" + key + "'");
        }
    }
    if (mode == "exact" && cfg.algorithm == Algorithm::kAlg3Fast) cfg.algorithm = Algorithm::kAlg3Exact;
    if (mode == "fast" && cfg.algorithm == Algorithm::kAlg3Exact) cfg.algorithm = Algorithm::kAlg3Fast;

    const bool have_power = !cfg.a.empty() || !cfg.b.empty();
    if (static_cast<int>(have_p) + static_cast<int>(have_np) + static_cast<int>(have_power) != 1)
        throw InputError("config: give exactly one of p, np, or a and b");
    if (have_power && (cfg.a.empty() || cfg.b.empty())) throw InputError("config: a and b must be given together");
    cfg.density = have_p ? DensityKind::kP : (have_np ? DensityKind::kNp : DensityKind::kPower);
    if (cfg.n.empty()) throw InputError("config: missing n");
    if (cfg.s.empty()) throw InputError("config: missing s");
    if (cfg.alpha.empty()) throw InputError("config: missing alpha");
    if (cfg.trials < 1) throw InputError("config: trials must be at least 1");
    if (cfg.budget < 1) throw InputError("config: budget must be at least 1");
    if (cfg.jobs < 1) throw InputError("config: jobs must be at least 1");
    if (cfg.inner == Algorithm::kSeedless) throw InputError("config: inner must be a seeded algorithm");
    return cfg;
}

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
    std::vector<GridPoint> points;
    auto emit = [&](std::size_t n, double p) {
        for (double s : cfg.s) {
            for (double alpha : cfg.alpha) {
                for (double eps : cfg.epsilon) {
                    points.push_back({points.size(), n, p, s, alpha, eps});
                }
            }
        }
    };
    for (std::size_t n : cfg.n) {
        const double dn = static_cast<double>(n);
        switch (cfg.density) {
            case DensityKind::kP:
                for (double p : cfg.p) emit(n, p);
                break;
            case DensityKind::kNp:
                for (double np : cfg.p) emit(n, np / dn);
                break;
            case DensityKind::kPower:
                for (double a : cfg.a) {
                    for (double b : cfg.b) emit(n, b * std::pow(dn, a) / dn);
                }
                break;
        }
    }
    return points;
}

ParamSet params_for(Algorithm algo, std::size_t n, double p, double s, double alpha, double epsilon,
                    const ParamOverrides& overrides) {
    ParamSet params;
    switch (algo) {
        case Algorithm::kAlg1: params = derive_params_alg1(n, p, s, epsilon); break;
        case Algorithm::kAlg2:
        case Algorithm::kSeedless: params = derive_params_alg2(n, p); break;
        case Algorithm::kAlg3Fast:
        case Algorithm::kAlg3Exact: params = derive_params_alg3(n, p, alpha, epsilon); break;
    }
    if (algo == Algorithm::kAlg2 || algo == Algorithm::kSeedless) params.epsilon = epsilon;
    if (overrides.ell) params.ell = *overrides.ell;
    if (overrides.m) params.m = *overrides.m;
    if (overrides.tau) params.tau = *overrides.tau;
    if (overrides.d) params.d = *overrides.d;
    if (overrides.eta) params.eta = *overrides.eta;
    return params;
}

SampledTrial sample_trial(std::size_t n, double p, double s, double alpha, std::uint64_t seed) {
    Rng rng(seed);
    SampledTrial t{sample_instance(n, p, s, rng), {}};
    t.seeds = sample_seeds(t.instance, alpha, rng);
    return t;
}

const std::string& csv_header() {
    static const std::string header =
        "n,p,s,alpha,epsilon,algorithm,trial,seed,ell,m,tau,d,eta,exact,fraction_correct,qap,certificate,failed,error,"
        "runtime_ms";
    return header;
}

std::string format_csv_row(const CsvRow& row) {
    std::ostringstream out;
    out << row.n << ',' << format_double(row.p) << ',' << format_double(row.s) << ',' << format_double(row.alpha)
        << ',' << format_optional_real(row.epsilon) << ',' << row.algorithm << ',' << row.trial << ',' << row.seed
        << ',' << format_optional_count(row.params.ell) << ',' << format_optional_count(row.params.m) << ','
        << format_optional_real(row.params.tau) << ',' << format_optional_count(row.params.d) << ','
        << format_optional_real(row.params.eta) << ',';
    if (row.report) {
        const TrialReport& r = *row.report;
        out << (r.exact ? 1 : 0) << ',' << format_double(r.fraction_correct) << ',' << r.qap << ',' << r.certificate
            << ',' << (r.failed ? 1 : 0);
    } else {
        out << ",,,,";
    }
    out << ',' << clean_error(row.error) << ',' << format_ms(row.runtime_ms);
    return out.str();
}

CsvRow run_trial(Algorithm algo, const CorrelatedInstance& inst, const SeedMap& seeds, double epsilon,
                 const ParamOverrides& overrides, std::uint64_t budget, Algorithm inner, std::size_t trial) {
    CsvRow row;
    row.n = inst.params.n;
    row.p = inst.params.p;
    row.s = inst.params.s;
    row.alpha = seeds.alpha();
    row.epsilon = epsilon;
    row.algorithm = std::string(algorithm_name(algo));
    row.trial = trial;
    row.seed = inst.rng_seed;

    const ParamSet params = params_for(algo == Algorithm::kSeedless ? inner : algo, row.n, row.p, row.s, row.alpha,
                                       epsilon, overrides);
    row.params = params;
    Rng rng(mix64(inst.rng_seed ^ kMatchStream));
    const auto start = std::chrono::steady_clock::now();
    MatchResult result;
    SeedMap scored_seeds = seeds;
    if (algo == Algorithm::kSeedless) {
        SeedlessOptions options;
        options.inner = inner;
        options.params = params;
        options.budget = budget;
        result = match_seedless(inst.g1, inst.g2, row.alpha, options, rng);
        scored_seeds = SeedMap::empty(row.n);
    } else {
        result = run_seeded(algo, inst.g1, inst.g2, seeds, params, rng);
    }
    const auto stop = std::chrono::steady_clock::now();
    row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    row.report = make_report(inst, scored_seeds, result, params, row.runtime_ms);
    if (algo == Algorithm::kAlg2) {
        for (auto& w : dense_regime_warnings(row.n, row.p, row.s, row.alpha, params)) row.report->warnings.push_back(w);
    }
    return row;
}

std::size_t cmd_generate(const ExperimentConfig& cfg) {
    if (cfg.out.empty()) throw InputError("generate: no output directory");
    const auto points = expand_grid(cfg);
    std::size_t written = 0;
    for (const GridPoint& pt : points) {
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const std::uint64_t seed = derive_seed(cfg.master_seed, pt.index, t);
            const SampledTrial trial = sample_trial(pt.n, pt.p, pt.s, pt.alpha, seed);
            Metadata extra;
            extra["point"] = std::to_string(pt.index);
            extra["trial"] = std::to_string(t);
            extra["epsilon"] = format_double(pt.epsilon);
            const auto dir = std::filesystem::path(cfg.out) /
                             ("point" + std::to_string(pt.index) + "_trial" + std::to_string(t));
            save_instance(dir.string(), trial.instance, trial.seeds, extra);
            ++written;
        }
    }
    return written;
}

CsvRow cmd_match(const std::string& instance_dir, Algorithm algo, double epsilon, const ParamOverrides& overrides,
                 std::uint64_t budget, Algorithm inner, const std::string& out_csv, std::ostream& echo) {
    const LoadedInstance loaded = load_instance(instance_dir);
    std::size_t trial = 0;
    if (const auto it = loaded.meta.find("trial"); it != loaded.meta.end())
        trial = parse_number<std::size_t>("trial", it->second);
    if (std::isnan(epsilon)) {
        epsilon = 0.1;
        if (const auto it = loaded.meta.find("epsilon"); it != loaded.meta.end())
            epsilon = parse_real("epsilon", it->second);
    }
    const CsvRow row = run_trial(algo, loaded.instance, loaded.seeds, epsilon, overrides, budget, inner, trial);
    const std::string line = format_csv_row(row);
    if (out_csv.empty()) {
        echo << csv_header() << '\n' << line << '\n';
    } else {
        std::error_code ec;
        const bool fresh = !std::filesystem::exists(out_csv, ec) || std::filesystem::file_size(out_csv, ec) == 0;
        std::ofstream out(out_csv, std::ios::app);
        if (!out) throw IoError("cannot open " + out_csv + " for appending");
        if (fresh) out << csv_header() << '\n';
        out << line << '\n';
        if (!out) throw IoError("write failed: " + out_csv);
    }
    return row;
}

std::string cmd_sweep(const ExperimentConfig& cfg) {
    const auto points = expand_grid(cfg);
    const std::size_t total = points.size() * cfg.trials;
    std::vector<std::string> lines(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const GridPoint& pt = points[task / cfg.trials];
            const std::size_t t = task % cfg.trials;
            const std::uint64_t seed = derive_seed(cfg.master_seed, pt.index, t);
            CsvRow row;
            try {
                const SampledTrial trial = sample_trial(pt.n, pt.p, pt.s, pt.alpha, seed);
                row = run_trial(cfg.algorithm, trial.instance, trial.seeds, pt.epsilon, cfg.overrides, cfg.budget,
                                cfg.inner, t);
            } catch (const std::exception& e) {
                row = CsvRow{};
                row.n = pt.n;
                row.p = pt.p;
                row.s = pt.s;
                row.alpha = pt.alpha;
                row.epsilon = pt.epsilon;
                row.algorithm = std::string(algorithm_name(cfg.algorithm));
                row.trial = t;
                row.seed = seed;
                const char* kind = dynamic_cast<const ResourceError*>(&e)      ? "resource: "
                                   : dynamic_cast<const DerivationError*>(&e) ? "derivation: "
                                   : dynamic_cast<const InputError*>(&e)      ? "input: "
                                                                               : "error: ";
                row.error = kind + std::string(e.what());
            }
            lines[task] = format_csv_row(row);
        }
    };

    const std::size_t threads = std::min(cfg.jobs, std::max<std::size_t>(total, 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::string csv = csv_header() + '\n';
    for (const auto& line : lines) csv += line + '\n';
    return csv;
}

// -- verify ------------------------------------------------------------------

namespace {

CheckResult check_flow_oracle(const VerifyOptions& options, Rng& rng) {
    const std::size_t cases = options.smoke ? 400 : 3000;
    std::size_t mismatches = 0;
    std::string first;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 2 + rng.below(7);
        const double p = 0.2 + 0.6 * rng.uniform();
        const double s = 0.5 + 0.5 * rng.uniform();
        const double alpha = 0.2 + 0.8 * rng.uniform();
        const SampledTrial t = sample_trial(n, p, s, alpha, rng.next());
        const auto i1 = static_cast<Vertex>(rng.below(n));
        const auto i2 = static_cast<Vertex>(rng.below(n));
        const auto ell = static_cast<std::uint32_t>(1 + rng.below(3));
        const auto& g1 = t.instance.g1;
        const auto& g2 = t.instance.g2;
        const std::size_t got = options.flow(build_joint_network(g1, i1, g2, i2, ell, t.seeds)).value;
        const std::size_t want = oracle::joint_paths(g1, i1, g2, i2, ell, t.seeds);
        if (got != want) {
            if (mismatches++ == 0)
                first = "case " + std::to_string(c) + ": flow " + std::to_string(got) + " vs brute force " +
                        std::to_string(want);
        }
    }
    CheckResult r{"flow-oracle", mismatches == 0, std::to_string(cases) + " joint networks"};
    if (mismatches) r.detail += ", " + std::to_string(mismatches) + " mismatches, first " + first;
    return r;
}

CheckResult check_edge_distribution(const VerifyOptions& options, Rng& rng) {
    const std::size_t n = options.smoke ? 50 : 2000;
    const double p = options.smoke ? 0.2 : 0.01;
    const double s = 0.5;
    const std::size_t samples = options.smoke ? 200 : 60;
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    double sum_and = 0.0;
    double sum_or = 0.0;
    double kept = 0.0;
    double parent = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        Rng local(rng.next());
        const CorrelatedInstance inst = sample_instance(n, p, s, local);
        sum_and += static_cast<double>(graph_and(inst.g1_star, inst.g2).edge_count());
        sum_or += static_cast<double>(graph_or(inst.g1_star, inst.g2).edge_count());
        kept += static_cast<double>(inst.g1_star.edge_count() + inst.g2.edge_count());
        parent += 2.0 * static_cast<double>(inst.g0.edge_count());
    }
    const double k = static_cast<double>(samples);
    const double q_and = p * s * s;
    const double q_or = p * s * (2.0 - s);
    const double z_and = (sum_and / k - pairs * q_and) / std::sqrt(pairs * q_and * (1 - q_and) / k);
    const double z_or = (sum_or / k - pairs * q_or) / std::sqrt(pairs * q_or * (1 - q_or) / k);
    const double s_hat = kept / parent;
    const bool ok = std::abs(z_and) <= 5.0 && std::abs(z_or) <= 5.0 && std::abs(s_hat - s) <= 0.02;
    std::ostringstream detail;
    detail << "z(and)=" << z_and << " z(or)=" << z_or << " s_hat=" << s_hat;
    return {"edge-distribution", ok, detail.str()};
}

CheckResult check_expansion(Rng& rng) {
    const std::size_t n = 2000;
    const double np = 10.0;
    Rng local(rng.next());
    const Graph g = sample_gnp(n, np / static_cast<double>(n - 1), local);
    ExpansionOptions opt;
    opt.np = np;
    opt.vertex_samples = 400;
    opt.pair_samples = 200;
    const ExpansionStats st = expansion_stats(g, 2, local, opt);
    const double r1 = st.layers[0].mean_ratio;
    const double r2 = st.layers[1].mean_ratio;
    const bool ok = r1 > 0.9 && r1 < 1.1 && r2 > 0.85 && r2 < 1.1;
    std::ostringstream detail;
    detail << "mean |Gamma_k|/(np)^k: k=1 " << r1 << ", k=2 " << r2 << "; mean overlap " << st.mean_overlap;
    return {"expansion", ok, detail.str()};
}

CheckResult check_matcher_invariants(const VerifyOptions& options, Rng& rng) {
    const std::size_t cases = options.smoke ? 20 : 100;
    std::size_t bad = 0;
    std::string first;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 10 + rng.below(31);
        const double p = 0.1 + 0.3 * rng.uniform();
        const SampledTrial t = sample_trial(n, p, 0.8, 0.3, rng.next());
        ParamSet params;
        params.ell = 1 + static_cast<std::uint32_t>(rng.below(2));
        params.m = 1 + static_cast<std::uint32_t>(rng.below(3));
        params.d = 2;
        params.eta = 1.0;
        for (Algorithm algo : {Algorithm::kAlg1, Algorithm::kAlg2, Algorithm::kAlg3Fast}) {
            Rng mr(rng.next());
            const MatchResult r = run_seeded(algo, t.instance.g1, t.instance.g2, t.seeds, params, mr);
            std::vector<std::uint8_t> hit(n, 0);
            bool ok = r.output.has_value();
            for (Vertex v = 0; v < n && ok; ++v) {
                const Vertex w = r.pi_hat[v];
                if (w == kNoVertex) continue;
                if (hit[w]) ok = false;
                hit[w] = 1;
            }
            for (Vertex j : t.seeds.seeded()) {
                if (r.pi_hat[j] != t.seeds[j] || (ok && (*r.output)(j) != t.seeds[j])) ok = false;
            }
            if (!ok && bad++ == 0)
                first = std::string(algorithm_name(algo)) + " on case " + std::to_string(c);
        }
    }
    CheckResult r{"matcher-invariants", bad == 0, std::to_string(3 * cases) + " runs"};
    if (bad) r.detail += ", " + std::to_string(bad) + " violations, first " + first;
    return r;
}

CheckResult check_witness_domination(const VerifyOptions& options, Rng& rng) {
    const std::size_t cases = options.smoke ? 200 : 1000;
    std::size_t bad = 0;
    std::size_t tried = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 4 + rng.below(9);
        const SampledTrial t = sample_trial(n, 0.35, 0.8, 0.5, rng.next());
        const auto& g1 = t.instance.g1;
        const auto& g2 = t.instance.g2;
        const auto u = static_cast<Vertex>(rng.below(n));
        const auto v = static_cast<Vertex>(rng.below(n));
        if (g1.degree(u) == 0 || g2.degree(v) == 0) continue;
        const Vertex i = g1.neighbors(u)[rng.below(g1.degree(u))];
        const Vertex j = g2.neighbors(v)[rng.below(g2.degree(v))];
        const auto ell = static_cast<std::uint32_t>(1 + rng.below(2));
        const auto exact = compute_pair_witness(g1, g2, t.seeds, u, v, i, j, ell, WitnessMode::kExact);
        const auto fast = compute_pair_witness(g1, g2, t.seeds, u, v, i, j, ell, WitnessMode::kFast);
        ++tried;
        if (exact > fast) ++bad;
    }
    return {"witness-domination", bad == 0,
            std::to_string(tried) + " pairs" + (bad ? ", " + std::to_string(bad) + " with exact > fast" : "")};
}

}  // namespace

std::vector<CheckResult> cmd_verify(const VerifyOptions& options) {
    Rng rng(options.seed);
    std::vector<CheckResult> out;
    out.push_back(check_flow_oracle(options, rng));
    out.push_back(check_edge_distribution(options, rng));
    out.push_back(check_expansion(rng));
    out.push_back(check_matcher_invariants(options, rng));
    out.push_back(check_witness_domination(options, rng));
    return out;
}

}  // namespace sgm
