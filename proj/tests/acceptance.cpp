// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sgm/flow.hpp"
#include "sgm/harness.hpp"
#include "sgm/metrics.hpp"
#include "sgm/oracle.hpp"
#include "sgm/seedless.hpp"
#include "support.hpp"

using namespace sgm;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(double x, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

bool connected(const Graph& g) { return g.n() == 0 || n_k(g, 0, static_cast<std::uint32_t>(g.n())).size() == g.n(); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::string f;
    std::istringstream in(line);
    while (std::getline(in, f, ',')) out.push_back(f);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

RawConfig config(const std::string& text) {
    std::istringstream in(text);
    return parse_config_text(in);
}

// 1. Max flow on joint networks equals brute-force path-family search.
Outcome flow_oracle() {
    Rng rng(101);
    std::size_t mismatches = 0;
    std::size_t nonzero = 0;
    const std::size_t cases = 10000;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 2 + rng.below(7);
        const SampledTrial t =
            sample_trial(n, 0.2 + 0.6 * rng.uniform(), 0.5 + 0.5 * rng.uniform(), 0.2 + 0.8 * rng.uniform(), rng.next());
        const auto i1 = static_cast<Vertex>(rng.below(n));
        const auto i2 = static_cast<Vertex>(rng.below(n));
        const auto ell = static_cast<std::uint32_t>(1 + rng.below(3));
        const std::size_t flow =
            max_flow(build_joint_network(t.instance.g1, i1, t.instance.g2, i2, ell, t.seeds)).value;
        const std::size_t brute = oracle::joint_paths(t.instance.g1, i1, t.instance.g2, i2, ell, t.seeds);
        mismatches += flow != brute;
        nonzero += brute > 0;
    }
    return {mismatches == 0, std::to_string(cases) + " instances, " + std::to_string(nonzero) + " with paths, " +
                                 std::to_string(mismatches) + " mismatches"};
}

// 2. Intersection and union edge counts; conditional keep rate.
Outcome model_distributions() {
    const std::size_t n = 10000;
    const double p = 0.01;
    const double s = 0.5;
    const std::size_t samples = 200;
    Rng master(202);
    std::vector<double> and_counts;
    std::vector<double> or_counts;
    double kept = 0.0;
    double parent = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        Rng rng(master.next());
        const CorrelatedInstance inst = sample_instance(n, p, s, rng);
        and_counts.push_back(static_cast<double>(graph_and(inst.g1_star, inst.g2).edge_count()));
        or_counts.push_back(static_cast<double>(graph_or(inst.g1_star, inst.g2).edge_count()));
        kept += static_cast<double>(inst.g1_star.edge_count() + inst.g2.edge_count());
        parent += 2.0 * static_cast<double>(inst.g0.edge_count());
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    auto z = [&](const std::vector<double>& xs, double q) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        const double sigma = std::sqrt(pairs * q * (1.0 - q) / static_cast<double>(xs.size()));
        return (mean - pairs * q) / sigma;
    };
    const double z_and = z(and_counts, p * s * s);
    const double z_or = z(or_counts, p * s * (2.0 - s));
    const double s_hat = kept / parent;
    const bool ok = std::abs(z_and) <= 5.0 && std::abs(z_or) <= 5.0 && std::abs(s_hat - s) <= 0.02;
    return {ok, "z(and)=" + fmt(z_and) + " z(or)=" + fmt(z_or) + " s_hat=" + fmt(s_hat, 6)};
}

// 3. Every vertex seeded: each seeded algorithm returns pi*.
Outcome perfect_information() {
    const std::size_t n = 120;
    const double p = 0.06;
    const double s = 0.9;
    const Algorithm algos[] = {Algorithm::kAlg1, Algorithm::kAlg2, Algorithm::kAlg3Fast, Algorithm::kAlg3Exact};
    std::size_t instances = 0;
    std::size_t wrong = 0;
    for (std::uint64_t t = 0; instances < 50; ++t) {
        const SampledTrial trial = sample_trial(n, p, s, 1.0, derive_seed(303, 0, t));
        if (!connected(trial.instance.g1) || !connected(trial.instance.g2)) continue;
        ++instances;
        for (Algorithm algo : algos) {
            const CsvRow row = run_trial(algo, trial.instance, trial.seeds, 0.1, {}, 1, Algorithm::kAlg2, t);
            wrong += !row.report->exact;
        }
    }
    return {wrong == 0, std::to_string(instances) + " connected instances x 4 matchers, " + std::to_string(wrong) +
                            " inexact"};
}

// 4. Certificate rate below and above the connectivity threshold.
Outcome converse_certificate_rate() {
    const std::size_t n = 2000;
    const double s = 0.8;
    const double dn = static_cast<double>(n);
    auto rate = [&](double c, std::uint64_t point) {
        const double p = (std::log(dn) + c) / (dn * s * s);
        std::size_t hits = 0;
        for (std::size_t t = 0; t < 200; ++t) {
            const SampledTrial trial = sample_trial(n, p, s, 0.0, derive_seed(404, point, t));
            hits += converse_certificate(trial.instance, trial.seeds) >= 1;
        }
        const double q = p * s * s;
        const double lambda = dn * std::pow(1.0 - q, dn - 1.0);
        return std::pair{static_cast<double>(hits) / 200.0, 1.0 - std::exp(-lambda)};
    };
    const auto [below, predicted] = rate(-2.0, 0);
    const auto [above, predicted_above] = rate(6.0, 1);
    const bool ok = std::abs(below - predicted) <= 0.05 && above <= 0.05;
    return {ok, "nps^2=ln n-2: " + fmt(below) + " vs Poisson " + fmt(predicted) + "; nps^2=ln n+6: " + fmt(above) +
                    " (Poisson " + fmt(predicted_above, 3) + ")"};
}

// 5. alg2 accuracy against alpha in the dense regime.
Outcome threshold_phenomenology() {
    // Calibrated: np = n^0.55, so d = 2; a pilot sweep under another master
    // seed reached 0.9999 mean accuracy at alpha = 0.25.
    const std::vector<double> alphas = {0.025, 0.04, 0.063, 0.1, 0.16, 0.25};
    std::string text = "seed=505\ntrials=20\nn=2000\na=0.55\nb=1\ns=0.9\nalgorithm=alg2\njobs=4\n";
    for (double a : alphas) text += "alpha=" + format_double(a) + "\n";
    const auto rows = lines_of(cmd_sweep(make_config(config(text))));
    std::map<double, std::pair<double, int>> acc;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = fields_of(rows[i]);
        auto& slot = acc[std::stod(f[3])];
        slot.first += f[14].empty() ? 0.0 : std::stod(f[14]);
        ++slot.second;
    }
    std::vector<double> means;
    std::string detail;
    for (double a : alphas) {
        const auto& [sum, count] = acc[a];
        means.push_back(count ? sum / count : 0.0);
        detail += (detail.empty() ? "" : " ") + fmt(a, 3) + ":" + fmt(means.back());
    }
    int inversions = 0;
    bool small = true;
    for (std::size_t k = 1; k < means.size(); ++k) {
        if (means[k] < means[k - 1]) {
            ++inversions;
            small = small && means[k - 1] - means[k] <= 0.02;
        }
    }
    const bool ok = inversions <= 1 && small && means.back() >= 0.99;
    return {ok, "alpha:accuracy " + detail};
}

// 6. Seedless matching attains the exhaustive QAP optimum.
Outcome seedless_tiny() {
    // Calibrated: alpha = 0.95 hit the optimum on 499 of 500 pilot instances
    // drawn under another master seed.
    const double alpha = 0.95;
    std::size_t hits = 0;
    for (std::size_t t = 0; t < 20; ++t) {
        const SampledTrial trial = sample_trial(7, 0.5, 1.0, alpha, derive_seed(606, 0, t));
        const auto best = oracle::brute_force_qap(trial.instance.g1, trial.instance.g2);
        const CsvRow row =
            run_trial(Algorithm::kSeedless, trial.instance, trial.seeds, 0.1, {}, 1'000'000, Algorithm::kAlg2, t);
        hits += row.report->qap == best.value;
    }
    return {hits == 20, std::to_string(hits) + "/20 instances at the 5040-permutation optimum"};
}

// 7. Sweep output does not depend on the worker count.
Outcome determinism() {
    const std::vector<std::string> grids = {
        "seed=707\ntrials=4\nn=300\nnp=8\nnp=20\ns=0.8\ns=0.95\nalpha=0.05\nalpha=0.3\nalgorithm=alg2\n",
        "seed=708\ntrials=4\nn=300\nnp=12\ns=0.9\nalpha=0.1\nalpha=0.4\nalgorithm=alg1\nepsilon=0.2\nepsilon=0.4\n",
        "seed=709\ntrials=3\nn=150\nnp=10\ns=0.9\nalpha=0.2\nalgorithm=alg3-fast\neta=2\n",
        "seed=710\ntrials=3\nn=7\np=0.5\ns=1\nalpha=0.4\nalpha=0.9\nalgorithm=seedless\nbudget=300\n",
    };
    std::size_t rows = 0;
    std::size_t differing = 0;
    for (const auto& text : grids) {
        ExperimentConfig cfg = make_config(config(text));
        cfg.jobs = 1;
        const auto serial = lines_of(cmd_sweep(cfg));
        cfg.jobs = 8;
        const auto parallel = lines_of(cmd_sweep(cfg));
        if (serial.size() != parallel.size()) return {false, "row counts differ"};
        for (std::size_t i = 0; i < serial.size(); ++i) {
            const std::string a = serial[i].substr(0, serial[i].rfind(','));
            const std::string b = parallel[i].substr(0, parallel[i].rfind(','));
            differing += a != b;
        }
        rows += serial.size() - 1;
    }
    return {differing == 0, std::to_string(rows) + " rows over 4 grids, " + std::to_string(differing) + " differ"};
}

// 8. Property suite, 1000 randomized cases per property.
Outcome invariants() {
    const std::size_t cases = 1000;
    Rng rng(808);
    std::map<std::string, std::size_t> bad;

    // Injectivity and seed fidelity of every seeded matcher.
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 8 + rng.below(33);
        const SampledTrial t = sample_trial(n, 0.08 + 0.3 * rng.uniform(), 0.6 + 0.4 * rng.uniform(), rng.uniform(),
                                            rng.next());
        ParamSet ps;
        ps.ell = 1 + static_cast<std::uint32_t>(rng.below(2));
        ps.m = 1 + static_cast<std::uint32_t>(rng.below(3));
        ps.d = 2 + static_cast<std::uint32_t>(rng.below(2));
        ps.eta = 1.0 + static_cast<double>(rng.below(3));
        const Algorithm algos[] = {Algorithm::kAlg1, Algorithm::kAlg2, Algorithm::kAlg3Fast, Algorithm::kAlg3Exact};
        const Algorithm algo = algos[c % 4];
        Rng mr(rng.next());
        const MatchResult r = run_seeded(algo, t.instance.g1, t.instance.g2, t.seeds, ps, mr);
        std::vector<int> hits(n, 0);
        bool injective = r.output.has_value();
        for (Vertex v = 0; v < n; ++v) {
            if (r.pi_hat[v] != kNoVertex && hits[r.pi_hat[v]]++) injective = false;
        }
        if (r.output) {
            std::vector<int> image(n, 0);
            for (Vertex v = 0; v < n; ++v) {
                if (image[(*r.output)(v)]++) injective = false;
                if (r.pi_hat[v] != kNoVertex && (*r.output)(v) != r.pi_hat[v]) injective = false;
            }
        }
        bad["injectivity"] += !injective;
        bool faithful = true;
        for (Vertex j : t.seeds.seeded()) {
            faithful = faithful && r.pi_hat[j] == t.seeds[j] && r.output && (*r.output)(j) == t.seeds[j];
        }
        bad["seed fidelity"] += !faithful;
    }

    // Fast pair witness bounds the exact one from above.
    for (std::size_t c = 0; c < cases;) {
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
        bad["fast >= exact"] += compute_pair_witness(g1, g2, t.seeds, u, v, i, j, ell, WitnessMode::kExact) >
                                compute_pair_witness(g1, g2, t.seeds, u, v, i, j, ell, WitnessMode::kFast);
        ++c;
    }

    // Layers against Floyd-Warshall distances.
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 1 + rng.below(30);
        const Graph g = test::coin_graph(n, rng.uniform() * 0.3, rng);
        const auto dist = test::distances(g);
        const auto u = static_cast<Vertex>(rng.below(n));
        const auto k = static_cast<std::uint32_t>(rng.below(6));
        bool ok = true;
        VertexSet acc{u};
        for (std::uint32_t t = 0; t <= k; ++t) {
            const VertexSet layer = gamma_k(g, u, t);
            for (Vertex w = 0; w < n; ++w) ok = ok && layer.contains(w) == (dist[u][w] == t);
            if (t > 0) {
                ok = ok && set_intersection(acc, layer).empty();
                acc = set_union(acc, layer);
            }
            ok = ok && acc == n_k(g, u, t);
        }
        bad["gamma/N layers"] += !ok;
    }

    // Intersection inside both graphs, both inside the union.
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 1 + rng.below(30);
        const Graph a = test::coin_graph(n, rng.uniform(), rng);
        const Graph b = test::coin_graph(n, rng.uniform(), rng);
        const Graph both = graph_and(a, b);
        const Graph either = graph_or(a, b);
        bool ok = both.edge_count() + either.edge_count() == a.edge_count() + b.edge_count();
        for (const auto& [x, y] : both.edges()) ok = ok && a.has_edge(x, y) && b.has_edge(x, y);
        for (const auto& [x, y] : a.edges()) ok = ok && either.has_edge(x, y);
        for (const auto& [x, y] : b.edges()) ok = ok && either.has_edge(x, y);
        for (const auto& [x, y] : either.edges()) ok = ok && (a.has_edge(x, y) || b.has_edge(x, y));
        bad["and/or containment"] += !ok;
    }

    std::size_t total = 0;
    std::string detail;
    for (const auto& [name, count] : bad) {
        total += count;
        detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(count);
    }
    return {total == 0, std::to_string(cases) + " cases per property; violations: " + detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"flow oracle", flow_oracle},
        {"model distributions", model_distributions},
        {"perfect-information recovery", perfect_information},
        {"converse certificate", converse_certificate_rate},
        {"threshold phenomenology", threshold_phenomenology},
        {"seedless tiny-scale", seedless_tiny},
        {"determinism", determinism},
        {"invariant suite", invariants},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.passed;
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", k + 1,
                    criteria[k].first.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
