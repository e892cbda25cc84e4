#include "sgm/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sgm {

Permutation::Permutation(std::vector<Vertex> forward) : forward_(std::move(forward)) {
    std::vector<std::uint8_t> seen(forward_.size(), 0);
    for (Vertex v : forward_) {
        if (v >= forward_.size() || seen[v]) throw InputError("not a permutation of 0..n-1");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<Vertex> f(n);
    std::iota(f.begin(), f.end(), Vertex{0});
    return Permutation(std::move(f));
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
    std::vector<Vertex> f(n);
    std::iota(f.begin(), f.end(), Vertex{0});
    rng.shuffle(f.begin(), f.end());
    return Permutation(std::move(f));
}

Permutation Permutation::inverse() const {
    std::vector<Vertex> inv(forward_.size());
    for (std::size_t i = 0; i < forward_.size(); ++i) inv[forward_[i]] = static_cast<Vertex>(i);
    Permutation out;
    out.forward_ = std::move(inv);
    return out;
}

SeedMap::SeedMap(std::vector<Vertex> assignment, double alpha)
    : assignment_(std::move(assignment)), image_mask_(assignment_.size(), 0), alpha_(alpha) {
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        const Vertex v = assignment_[i];
        if (v == kNoVertex) continue;
        if (v >= assignment_.size()) throw InputError("seed image " + std::to_string(v) + " out of range");
        if (image_mask_[v]) throw InputError("seed map is not injective at image " + std::to_string(v));
        image_mask_[v] = 1;
        seeded_.push_back(static_cast<Vertex>(i));
    }
}

Graph sample_gnp(std::size_t n, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0,1]");
    std::vector<Edge> edges;
    if (n < 2 || p == 0.0) return build_graph(n, edges);

    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    edges.reserve(static_cast<std::size_t>(std::min<double>(static_cast<double>(total) * p * 1.1 + 16, 1e9)));
    if (p == 1.0) {
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        return build_graph(n, edges);
    }

    const double log_q = std::log1p(-p);
    // Row i holds pairs (i, i+1..n-1); row_first is the pair index of (i, i+1).
    Vertex row = 0;
    std::uint64_t row_first = 0;
    std::uint64_t pos = 0;
    bool first = true;
    for (;;) {
        const double skip = std::floor(std::log(rng.uniform_open_zero()) / log_q);
        if (skip >= static_cast<double>(total)) break;
        const auto step = static_cast<std::uint64_t>(skip);
        pos = first ? step : pos + step + 1;
        first = false;
        if (pos >= total) break;
        while (pos >= row_first + (n - 1 - row)) {
            row_first += n - 1 - row;
            ++row;
        }
        edges.emplace_back(row, static_cast<Vertex>(row + 1 + (pos - row_first)));
    }
    return build_graph(n, edges);
}

Graph subsample(const Graph& g, double s, Rng& rng) {
    if (!(s >= 0.0 && s <= 1.0)) throw InputError("subsampling probability must lie in [0,1]");
    std::vector<Edge> kept;
    for (const auto& e : g.edges()) {
        if (rng.bernoulli(s)) kept.push_back(e);
    }
    return build_graph(g.n(), kept);
}

Graph relabel(const Graph& g, const Permutation& pi) {
    if (pi.size() != g.n()) throw InputError("permutation size does not match graph");
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& [u, v] : g.edges()) edges.emplace_back(pi(u), pi(v));
    return build_graph(g.n(), edges);
}

CorrelatedInstance sample_instance(std::size_t n, double p, double s, Rng& rng) {
    if (n < 1) throw InputError("n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0,1]");
    if (!(s >= 0.0 && s <= 1.0)) throw InputError("s must lie in [0,1]");

    CorrelatedInstance inst;
    inst.params = {n, p, s};
    inst.rng_seed = rng.seed();
    inst.g0 = sample_gnp(n, p, rng);
    inst.g1_star = subsample(inst.g0, s, rng);
    inst.g2 = subsample(inst.g0, s, rng);
    inst.pi_star = Permutation::random(n, rng);
    inst.g1 = relabel(inst.g1_star, inst.pi_star);
    return inst;
}

SeedMap sample_seeds(const CorrelatedInstance& inst, double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0,1]");
    const std::size_t n = inst.pi_star.size();
    std::vector<Vertex> a(n, kNoVertex);
    for (Vertex i = 0; i < n; ++i) {
        if (rng.bernoulli(alpha)) a[i] = inst.pi_star(i);
    }
    return SeedMap(std::move(a), alpha);
}

SeedMap sample_seeds_fixed(const CorrelatedInstance& inst, std::size_t k, Rng& rng) {
    const std::size_t n = inst.pi_star.size();
    if (k > n) throw InputError("seed count " + std::to_string(k) + " exceeds n=" + std::to_string(n));
    // Partial Fisher-Yates: the first k slots are a uniform k-subset.
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
    }
    std::vector<Vertex> a(n, kNoVertex);
    for (std::size_t i = 0; i < k; ++i) a[order[i]] = inst.pi_star(order[i]);
    return SeedMap(std::move(a), n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n));
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_map(std::ostream& out, std::span<const Vertex> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << i << ' ';
        if (values[i] == kNoVertex)
            out << '?';
        else
            out << values[i];
        out << '\n';
    }
}

std::vector<Vertex> read_map(std::istream& in, std::size_t n) {
    std::vector<Vertex> values(n, kNoVertex);
    std::vector<std::uint8_t> seen(n, 0);
    std::string key;
    std::string value;
    std::size_t rows = 0;
    while (in >> key >> value) {
        std::size_t i = 0;
        try {
            i = std::stoul(key);
        } catch (const std::exception&) {
            throw InputError("map: bad key '" + key + "'");
        }
        if (i >= n || seen[i]) throw InputError("map: key " + key + " out of range or repeated");
        seen[i] = 1;
        ++rows;
        if (value == "?") continue;
        try {
            values[i] = static_cast<Vertex>(std::stoul(value));
        } catch (const std::exception&) {
            throw InputError("map: bad value '" + value + "'");
        }
    }
    if (rows != n) throw InputError("map: expected " + std::to_string(n) + " rows, got " + std::to_string(rows));
    return values;
}

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot open " + p.string() + " for writing");
    return out;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot open " + p.string());
    return in;
}

const std::string& require(const Metadata& meta, const std::string& key) {
    const auto it = meta.find(key);
    if (it == meta.end()) throw InputError("meta.txt: missing key '" + key + "'");
    return it->second;
}

}  // namespace

void save_instance(const std::string& dir, const CorrelatedInstance& inst, const SeedMap& seeds,
                   const Metadata& extra) {
    const fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());

    save_edge_list((root / "g0.edges").string(), inst.g0);
    save_edge_list((root / "g1.edges").string(), inst.g1);
    save_edge_list((root / "g2.edges").string(), inst.g2);
    {
        auto out = open_out(root / "pi_star.map");
        write_map(out, inst.pi_star.forward());
    }
    {
        auto out = open_out(root / "seeds.map");
        write_map(out, seeds.assignment());
    }

    Metadata meta = extra;
    meta["n"] = std::to_string(inst.params.n);
    meta["p"] = format_double(inst.params.p);
    meta["s"] = format_double(inst.params.s);
    meta["alpha"] = format_double(seeds.alpha());
    meta["seed"] = std::to_string(inst.rng_seed);
    auto out = open_out(root / "meta.txt");
    for (const auto& [k, v] : meta) out << k << '=' << v << '\n';
    if (!out) throw IoError("write failed: " + (root / "meta.txt").string());
}

LoadedInstance load_instance(const std::string& dir) {
    const fs::path root(dir);
    LoadedInstance li;
    {
        auto in = open_in(root / "meta.txt");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw InputError("meta.txt: malformed line '" + line + "'");
            li.meta[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }

    auto& inst = li.instance;
    double alpha = 0.0;
    try {
        inst.params.n = std::stoul(require(li.meta, "n"));
        inst.params.p = std::stod(require(li.meta, "p"));
        inst.params.s = std::stod(require(li.meta, "s"));
        inst.rng_seed = std::stoull(require(li.meta, "seed"));
        alpha = std::stod(require(li.meta, "alpha"));
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const InputError*>(&e)) throw;
        throw InputError(std::string("meta.txt: bad numeric value: ") + e.what());
    }
    const std::size_t n = inst.params.n;

    inst.g0 = load_edge_list((root / "g0.edges").string());
    inst.g1 = load_edge_list((root / "g1.edges").string());
    inst.g2 = load_edge_list((root / "g2.edges").string());
    if (inst.g0.n() != n || inst.g1.n() != n || inst.g2.n() != n) {
        throw InputError("instance graphs disagree with meta.txt on n");
    }
    {
        auto in = open_in(root / "pi_star.map");
        auto f = read_map(in, n);
        if (std::find(f.begin(), f.end(), kNoVertex) != f.end()) throw InputError("pi_star.map has unknown entries");
        inst.pi_star = Permutation(std::move(f));
    }
    inst.g1_star = relabel(inst.g1, inst.pi_star.inverse());
    {
        auto in = open_in(root / "seeds.map");
        li.seeds = SeedMap(read_map(in, n), alpha);
    }
    return li;
}

}  // namespace sgm
