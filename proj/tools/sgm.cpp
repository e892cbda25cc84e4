#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgm/harness.hpp"

namespace {

enum Exit { kOk = 0, kInput = 1, kCheck = 2, kResource = 3 };

struct Common {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    std::string algo;
    std::size_t jobs = 0;
    std::string mode;
    std::uint64_t budget = 0;
};

sgm::ExperimentConfig load(const Common& c, CLI::App& sub) {
    if (c.config.empty()) throw sgm::InputError("--config is required");
    sgm::RawConfig raw = sgm::load_config(c.config);
    auto put = [&](const char* key, const std::string& value) { raw[key] = {value}; };
    if (sub.count("--seed")) put("seed", std::to_string(c.seed));
    if (sub.count("--algo")) put("algorithm", c.algo);
    if (sub.count("--jobs")) put("jobs", std::to_string(c.jobs));
    if (sub.count("--mode")) put("mode", c.mode);
    if (sub.count("--budget")) put("budget", std::to_string(c.budget));
    if (sub.count("--out")) put("out", c.out);
    return sgm::make_config(raw);
}

sgm::Algorithm with_mode(sgm::Algorithm algo, const std::string& mode) {
    if (mode == "exact" && algo == sgm::Algorithm::kAlg3Fast) return sgm::Algorithm::kAlg3Exact;
    if (mode == "fast" && algo == sgm::Algorithm::kAlg3Exact) return sgm::Algorithm::kAlg3Fast;
    return algo;
}

/// Rows whose error column records a resource failure.
std::size_t budget_errors(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::size_t count = 0;
    while (std::getline(in, line)) {
        std::size_t field = 0;
        std::size_t pos = 0;
        while (field < 18 && pos != std::string::npos) {
            pos = line.find(',', pos);
            if (pos != std::string::npos) ++pos;
            ++field;
        }
        if (pos != std::string::npos && line.compare(pos, 9, "resource:") == 0) ++count;
    }
    return count;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded graph matching on correlated Erdos-Renyi graphs"};
    app.require_subcommand(1);
    Common c;
    std::string instance;
    std::vector<std::string> sets;
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    std::string inner = "alg2";
    std::string profile = "full";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", c.config, "Config file (key=value)");
        sub->add_option("--out", c.out, "Output path");
        sub->add_option("--seed", c.seed, "Master seed");
        sub->add_option("--algo", c.algo, "alg1, alg2, alg3-fast, alg3-exact or seedless");
        sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--mode", c.mode, "alg3 pair witness")->check(CLI::IsMember({"exact", "fast"}));
        sub->add_option("--budget", c.budget, "Seedless enumeration budget")->check(CLI::PositiveNumber);
    };

    auto* gen = app.add_subcommand("generate", "Write sampled instances");
    add_common(gen);
    auto* match = app.add_subcommand("match", "Run a matcher on one instance and append a CSV row");
    add_common(match);
    match->add_option("instance", instance, "Instance directory")->required();
    match->add_option("--epsilon", epsilon, "Exponent for parameter derivation");
    match->add_option("--set", sets, "Parameter override key=value (ell, m, tau, d, eta)");
    match->add_option("--inner", inner, "Inner matcher for seedless");
    auto* sweep = app.add_subcommand("sweep", "Run the full grid and write CSV");
    add_common(sweep);
    auto* verify = app.add_subcommand("verify", "Oracle, distribution and invariant checks");
    add_common(verify);
    verify->add_option("--profile", profile, "full or smoke")->check(CLI::IsMember({"full", "smoke"}));
    auto* seedless = app.add_subcommand("seedless", "Seedless matching on one instance");
    add_common(seedless);
    seedless->add_option("instance", instance, "Instance directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*gen) {
            const auto cfg = load(c, *gen);
            const std::size_t written = sgm::cmd_generate(cfg);
            std::cout << written << " instances written to " << cfg.out << '\n';
        } else if (*match || *seedless) {
            sgm::ParamOverrides overrides;
            for (const auto& kv : sets) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos || !overrides.set(kv.substr(0, eq), kv.substr(eq + 1)))
                    throw sgm::InputError("bad override '" + kv + "'");
            }
            sgm::Algorithm algo;
            sgm::Algorithm inner_algo;
            if (*seedless) {
                algo = sgm::Algorithm::kSeedless;
                inner_algo = sgm::parse_algorithm(c.algo.empty() ? "alg2" : c.algo);
            } else {
                if (c.algo.empty()) throw sgm::InputError("--algo is required");
                algo = with_mode(sgm::parse_algorithm(c.algo), c.mode);
                inner_algo = sgm::parse_algorithm(inner);
            }
            if (inner_algo == sgm::Algorithm::kSeedless) throw sgm::InputError("inner matcher must be seeded");
            const std::uint64_t budget = c.budget ? c.budget : 1'000'000;
            const auto row = sgm::cmd_match(instance, algo, epsilon, overrides, budget, inner_algo, c.out, std::cout);
            for (const auto& w : row.report->warnings) std::cerr << "warning: " << w << '\n';
        } else if (*sweep) {
            const auto cfg = load(c, *sweep);
            const std::string csv = sgm::cmd_sweep(cfg);
            if (cfg.out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(cfg.out);
                out << csv;
                if (!out) throw sgm::IoError("cannot write " + cfg.out);
            }
            const std::size_t over = budget_errors(csv);
            if (over > 0) {
                std::cerr << "resource: " << over << " trials exceeded the enumeration budget\n";
                return kResource;
            }
        } else if (*verify) {
            sgm::VerifyOptions opt;
            if (verify->count("--seed")) opt.seed = c.seed;
            opt.smoke = profile == "smoke";
            const auto checks = sgm::cmd_verify(opt);
            bool all = true;
            for (const auto& r : checks) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                all = all && r.passed;
            }
            return all ? kOk : kCheck;
        }
    } catch (const sgm::ResourceError& e) {
        std::cerr << "resource: " << e.what() << '\n';
        return kResource;
    } catch (const sgm::DerivationError& e) {
        std::cerr << "derivation: " << e.what() << '\n';
        return kInput;
    } catch (const sgm::InputError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kInput;
    } catch (const sgm::IoError& e) {
        std::cerr << "io: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
    return kOk;
}
