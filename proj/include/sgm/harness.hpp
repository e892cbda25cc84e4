#ifndef SGM_HARNESS_HPP
#define SGM_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgm/flow.hpp"
#include "sgm/matchers.hpp"
#include "sgm/metrics.hpp"

namespace sgm {

/// Flat key=value text; a repeated key collects every value in file order.
/// '#' starts a comment, blank lines are skipped.
using RawConfig = std::map<std::string, std::vector<std::string>>;

RawConfig parse_config_text(std::istream& in);
RawConfig load_config(const std::string& path);

/// Explicit values that replace derived parameters.
struct ParamOverrides {
    std::optional<std::uint32_t> ell;
    std::optional<std::uint32_t> m;
    std::optional<double> tau;
    std::optional<std::uint32_t> d;
    std::optional<double> eta;

    bool empty() const { return !ell && !m && !tau && !d && !eta; }
    /// Accepts "ell", "m", "tau", "d", "eta"; returns false for other keys.
    bool set(const std::string& key, const std::string& value);
};

/// How the edge probability of a grid point is given.
enum class DensityKind : std::uint8_t { kP, kNp, kPower };

struct ExperimentConfig {
    std::uint64_t master_seed = 1;
    std::size_t trials = 1;
    std::vector<std::size_t> n;
    DensityKind density = DensityKind::kP;
    std::vector<double> p;   // kP: p, kNp: np values
    std::vector<double> a;   // kPower: np = b n^a
    std::vector<double> b;
    std::vector<double> s;
    std::vector<double> alpha;
    std::vector<double> epsilon = {0.1};
    Algorithm algorithm = Algorithm::kAlg2;
    Algorithm inner = Algorithm::kAlg2;  // seedless only
    std::uint64_t budget = 1'000'000;
    std::string out;
    std::size_t jobs = 1;
    ParamOverrides overrides;
};

/// Validates every key and value. Throws InputError on unknown keys, empty
/// axes, malformed numbers or conflicting density keys.
ExperimentConfig make_config(const RawConfig& raw);

struct GridPoint {
    std::size_t index = 0;
    std::size_t n = 0;
    double p = 0.0;
    double s = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
};

/// Cartesian product in the order n, density, s, alpha, epsilon (last varies
/// fastest).
std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg);

/// Parameters the matcher would use at this point, overrides applied.
/// DerivationError and InputError propagate.
ParamSet params_for(Algorithm algo, std::size_t n, double p, double s, double alpha, double epsilon,
                    const ParamOverrides& overrides);

/// The instance with seed `seed`: sample_instance, then sample_seeds, on one stream.
struct SampledTrial {
    CorrelatedInstance instance;
    SeedMap seeds;
};
SampledTrial sample_trial(std::size_t n, double p, double s, double alpha, std::uint64_t seed);

struct CsvRow {
    std::size_t n = 0;
    double p = 0.0;
    double s = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    std::string algorithm;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    ParamSet params;
    std::optional<TrialReport> report;  // absent when the trial errored
    std::string error;
    double runtime_ms = 0.0;
};

const std::string& csv_header();
std::string format_csv_row(const CsvRow& row);

/// Runs the matcher on a sampled or loaded trial and fills a row. Errors from
/// derivation or the matcher propagate.
CsvRow run_trial(Algorithm algo, const CorrelatedInstance& inst, const SeedMap& seeds, double epsilon,
                 const ParamOverrides& overrides, std::uint64_t budget, Algorithm inner, std::size_t trial);

/// Writes point{P}_trial{T} instance directories under cfg.out. Returns the
/// number written.
std::size_t cmd_generate(const ExperimentConfig& cfg);

/// Runs one matcher on an instance directory and appends a row to `out_csv`
/// (header first if the file is new or empty); empty path writes to `echo`.
CsvRow cmd_match(const std::string& instance_dir, Algorithm algo, double epsilon, const ParamOverrides& overrides,
                 std::uint64_t budget, Algorithm inner, const std::string& out_csv, std::ostream& echo);

/// Every grid point and trial, `jobs` worker threads, rows in (point, trial)
/// order. Returns the CSV text (header included).
std::string cmd_sweep(const ExperimentConfig& cfg);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool smoke = false;
    std::function<PathCount(const FlowNetwork&)> flow = max_flow;
};

std::vector<CheckResult> cmd_verify(const VerifyOptions& options);

}  // namespace sgm

#endif  // SGM_HARNESS_HPP
