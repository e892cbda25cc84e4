#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sgm/harness.hpp"
#include "support.hpp"

using namespace sgm;
namespace fs = std::filesystem;

namespace {

RawConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config_text(in);
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sgm_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

/// Drops the trailing runtime column.
std::string without_runtime(const std::string& line) { return line.substr(0, line.rfind(',')); }

}  // namespace

TEST_CASE("config text") {
    const RawConfig raw = parse("# grid\nn = 100\n\nalpha=0.1\nalpha = 0.2 # inline\ns=0.9\n");
    CHECK(raw.at("n") == std::vector<std::string>{"100"});
    CHECK(raw.at("alpha") == std::vector<std::string>{"0.1", "0.2"});
    CHECK_THROWS_AS(parse("no equals sign\n"), InputError);
    CHECK_THROWS_AS(load_config("/nonexistent/sgm.cfg"), InputError);
}

TEST_CASE("config validation") {
    const ExperimentConfig cfg = make_config(parse("n=50\np=0.1\ns=0.9\nalpha=0.2\nalgorithm=alg3-fast\nmode=exact\n"
                                                   "trials=3\nell=2\n"));
    CHECK(cfg.algorithm == Algorithm::kAlg3Exact);
    CHECK(cfg.trials == 3);
    CHECK(cfg.overrides.ell == 2u);
    CHECK(cfg.epsilon == std::vector<double>{0.1});

    CHECK_THROWS_AS(make_config(parse("n=50\np=0.1\ns=0.9\nalpha=0.2\ncolour=red\n")), InputError);
    CHECK_THROWS_AS(make_config(parse("n=50\np=0.1\nnp=3\ns=0.9\nalpha=0.2\n")), InputError);
    CHECK_THROWS_AS(make_config(parse("n=50\na=0.5\ns=0.9\nalpha=0.2\n")), InputError);
    CHECK_THROWS_AS(make_config(parse("n=fifty\np=0.1\ns=0.9\nalpha=0.2\n")), InputError);
    CHECK_THROWS_AS(make_config(parse("n=50\np=0.1\ns=0.9\n")), InputError);
    CHECK_THROWS_AS(make_config(parse("n=50\np=0.1\ns=0.9\nalpha=0.2\nmode=slow\n")), InputError);
    CHECK_THROWS_AS(make_config(parse("n=50\np=0.1\ns=0.9\nalpha=0.2\nseed=1\nseed=2\n")), InputError);
}

TEST_CASE("grid expansion") {
    const ExperimentConfig cfg = make_config(parse("n=100\nn=200\nnp=5\ns=0.5\ns=0.9\nalpha=0\nalpha=0.1\nalpha=0.2\n"));
    const auto grid = expand_grid(cfg);
    REQUIRE(grid.size() == 12);
    CHECK(grid[0].p == doctest::Approx(0.05));
    CHECK(grid[0].alpha == 0.0);
    CHECK(grid[2].alpha == 0.2);
    CHECK(grid[3].s == 0.9);
    CHECK(grid[6].n == 200);
    CHECK(grid[6].p == doctest::Approx(0.025));
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(grid[i].index == i);

    const ExperimentConfig power = make_config(parse("n=1000\na=0.5\nb=2\ns=1\nalpha=0\n"));
    CHECK(expand_grid(power)[0].p == doctest::Approx(2.0 * std::sqrt(1000.0) / 1000.0));
}

TEST_CASE("csv rows") {
    CsvRow row;
    row.n = 10;
    row.p = 0.5;
    row.s = 1.0;
    row.alpha = 0.25;
    row.epsilon = 0.1;
    row.algorithm = "alg2";
    row.trial = 3;
    row.seed = 99;
    row.params.d = 2;
    row.error = "bad, \"thing\"";
    row.runtime_ms = 1.23456;
    const auto fields = split(format_csv_row(row));
    const auto header = split(csv_header());
    REQUIRE(fields.size() == header.size());
    CHECK(header.front() == "n");
    CHECK(header.back() == "runtime_ms");
    CHECK(fields[0] == "10");
    CHECK(fields[8].empty());
    CHECK(fields[11] == "2");
    CHECK(fields[13].empty());
    CHECK(fields[18].find(',') == std::string::npos);
    CHECK(fields[18].find('"') == std::string::npos);
    CHECK(fields[19] == "1.235");
}

TEST_CASE("generate writes one deterministic directory per trial") {
    const fs::path a = scratch("gen_a");
    const fs::path b = scratch("gen_b");
    ExperimentConfig cfg = make_config(parse("n=40\np=0.2\ns=0.8\nalpha=0.1\nalpha=0.2\nalpha=0.3\nseed=5\n"));
    cfg.out = a.string();
    CHECK(cmd_generate(cfg) == 3);
    cfg.out = b.string();
    CHECK(cmd_generate(cfg) == 3);
    for (const char* file : {"g0.edges", "g1.edges", "g2.edges", "pi_star.map", "seeds.map", "meta.txt"}) {
        const auto rel = fs::path("point1_trial0") / file;
        REQUIRE(fs::exists(a / rel));
        CHECK(slurp(a / rel) == slurp(b / rel));
    }

    ExperimentConfig big = make_config(parse("n=20\nn=30\np=0.2\ns=0.8\ns=0.9\nalpha=0.1\ntrials=5\n"));
    big.out = scratch("gen_big").string();
    CHECK(cmd_generate(big) == 20);
    CHECK(std::distance(fs::directory_iterator(big.out), fs::directory_iterator{}) == 20);
    big.out.clear();
    CHECK_THROWS_AS(cmd_generate(big), InputError);
}

TEST_CASE("match appends rows and reproduces the sweep") {
    const fs::path dir = scratch("match");
    ExperimentConfig cfg = make_config(parse("n=60\np=0.3\ns=0.9\nalpha=1\nseed=11\nalgorithm=alg2\n"));
    cfg.out = (dir / "inst").string();
    cmd_generate(cfg);
    const std::string inst = (dir / "inst" / "point0_trial0").string();
    const std::string csv = (dir / "rows.csv").string();
    std::ostringstream echo;

    const CsvRow row = cmd_match(inst, Algorithm::kAlg2, 0.1, {}, 1000, Algorithm::kAlg2, csv, echo);
    REQUIRE(row.report.has_value());
    CHECK(row.report->exact);
    CHECK(row.report->fraction_correct == 1.0);
    CHECK_FALSE(row.report->failed);

    cmd_match(inst, Algorithm::kAlg2, 0.1, {}, 1000, Algorithm::kAlg2, csv, echo);
    const auto rows = lines_of(slurp(csv));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == csv_header());
    CHECK(without_runtime(rows[1]) == without_runtime(rows[2]));

    const auto swept = lines_of(cmd_sweep(cfg));
    REQUIRE(swept.size() == 2);
    CHECK(without_runtime(swept[1]) == without_runtime(rows[1]));

    ParamOverrides huge;
    huge.m = 1000000;
    const CsvRow capped = cmd_match(inst, Algorithm::kAlg1, 0.3, huge, 1000, Algorithm::kAlg2, "", echo);
    CHECK(capped.params.m == 1000000);
    REQUIRE(capped.report.has_value());
    CHECK_FALSE(capped.report->failed);

    CHECK_THROWS_AS(cmd_match((dir / "missing").string(), Algorithm::kAlg2, 0.1, {}, 1000, Algorithm::kAlg2, "", echo),
                    IoError);
}

TEST_CASE("sweep rows, error rows and worker determinism") {
    ExperimentConfig cfg = make_config(parse("n=80\np=0.15\ns=0.9\nalpha=0.05\nalpha=0.3\ntrials=4\nseed=3\n"
                                             "algorithm=alg2\n"));
    const auto one = lines_of(cmd_sweep(cfg));
    CHECK(one.size() == 1 + 8);
    cfg.jobs = 4;
    const auto four = lines_of(cmd_sweep(cfg));
    REQUIRE(four.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(without_runtime(one[i]) == without_runtime(four[i]));

    ExperimentConfig bad = make_config(parse("n=50\np=0.01\ns=0.5\nalpha=0.1\nalgorithm=alg1\n"));
    const auto rows = lines_of(cmd_sweep(bad));
    REQUIRE(rows.size() == 2);
    const auto fields = split(rows[1]);
    CHECK(fields[18].rfind("derivation:", 0) == 0);
    CHECK(fields[13].empty());

    ExperimentConfig tight = make_config(parse("n=12\np=0.5\ns=1\nalpha=0.9\nalgorithm=seedless\nbudget=5\n"));
    CHECK(split(lines_of(cmd_sweep(tight))[1])[18].rfind("resource:", 0) == 0);
}

TEST_CASE("more seeds help on average") {
    ExperimentConfig cfg = make_config(parse("n=300\np=0.05\ns=0.8\nalpha=0.02\nalpha=0.5\ntrials=6\nseed=4\n"
                                             "algorithm=alg2\njobs=2\n"));
    const auto rows = lines_of(cmd_sweep(cfg));
    double low = 0.0;
    double high = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        (i <= 6 ? low : high) += std::stod(f[14]);
    }
    CHECK(high > low);
}

TEST_CASE("verify smoke profile passes and catches a broken flow") {
    VerifyOptions options;
    options.smoke = true;
    const auto results = cmd_verify(options);
    CHECK(results.size() == 5);
    for (const auto& r : results) CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);

    options.flow = [](const FlowNetwork& net) {
        PathCount c = max_flow(net);
        c.value += 1;
        return c;
    };
    const auto broken = cmd_verify(options);
    CHECK_FALSE(broken.front().passed);
    CHECK(broken.front().name == "flow-oracle");
}
