#include "bplab/experiments.hpp"

#include "bplab/csv.hpp"
#include "bplab/errors.hpp"
#include "bplab/ga.hpp"
#include "bplab/gaussian.hpp"
#include "bplab/rng.hpp"
#include "bplab/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>

namespace bplab {

using nlohmann::json;

std::vector<std::string> stats_csv_columns() {
    return {"config_label", "N_or_sigma",      "mean",    "variance",   "threshold_prob",
            "chebyshev_bound", "max_abs", "median_abs", "n_samples", "seed"};
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"gaussian-scan", "vqe-landscape", "gradient-stats", "direction-scan",
                                                   "depth-scan",    "ga-optimize",   "classify"};
    return names;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) throw std::invalid_argument("log grid needs 0 < lo <= hi");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::uint64_t vqe_point_seed(std::uint64_t master, std::size_t n_qubits, std::size_t layers, std::size_t slot) {
    return derive_seed(derive_seed(derive_seed(master, "vqe-point", n_qubits), layers), slot);
}

namespace {

// ---- parameter tables ----------------------------------------------------

json sigma_defaults() {
    return {{"sigma_grid", nullptr}, {"sigma_min", 0.01}, {"sigma_max", 100.0}, {"sigma_points", 41u},
            {"sigma_y", nullptr},    {"halfwidth", 20.0}};
}

json vqe_defaults() {
    return {{"family", "HEA"}, {"layers", 20u}, {"slot", 0u}, {"samples", 100u}, {"delta", 0.1},
            {"observable", "zz_far"}, {"persist_samples", true}};
}

[[noreturn]] void config_error(const std::string& msg) { throw ConfigError(msg); }

json coerce(const std::string& key, const json& def, const json& v) {
    switch (def.type()) {
    case json::value_t::null: return v;
    case json::value_t::number_unsigned:
        if (v.is_number_unsigned()) return v;
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
        }
        config_error("parameter '" + key + "' must be a nonnegative integer");
    case json::value_t::number_float:
        if (v.is_number()) return v.get<double>();
        config_error("parameter '" + key + "' must be a number");
    case json::value_t::boolean:
        if (v.is_boolean()) return v;
        config_error("parameter '" + key + "' must be true or false");
    case json::value_t::string:
        if (v.is_string()) return v;
        config_error("parameter '" + key + "' must be a string");
    case json::value_t::array:
        if (v.is_array()) return v;
        if (v.is_number() || v.is_string()) return json::array({v});
        config_error("parameter '" + key + "' must be a list");
    default: config_error("parameter '" + key + "' has an unsupported default");
    }
}

std::uint64_t get_u64(const json& p, const char* key) { return p.at(key).get<std::uint64_t>(); }
std::size_t get_size(const json& p, const char* key) { return static_cast<std::size_t>(get_u64(p, key)); }
double get_real(const json& p, const char* key) { return p.at(key).get<double>(); }
std::string get_str(const json& p, const char* key) { return p.at(key).get<std::string>(); }

void require(bool ok, const std::string& msg) {
    if (!ok) config_error(msg);
}

std::vector<std::size_t> size_list(const json& p, const char* key) {
    std::vector<std::size_t> out;
    for (const auto& v : p.at(key)) {
        const json c = coerce(key, json(0u), v);
        out.push_back(static_cast<std::size_t>(c.get<std::uint64_t>()));
    }
    return out;
}

AnsatzFamily vqe_family(json& p) {
    std::string name = get_str(p, "family");
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
    require(name == "HEA" || name == "RPA", "family must be HEA or RPA, got '" + get_str(p, "family") + "'");
    p["family"] = name;
    return ansatz_family_from_string(name);
}

std::size_t params_per_layer(AnsatzFamily f, std::size_t n) { return f == AnsatzFamily::HEA ? 3 * n : n; }

void check_vqe_point(AnsatzFamily f, std::size_t n, std::size_t layers, std::size_t slot, const std::string& obs) {
    require(n >= 1 && n <= kMaxQubits, "n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    require(layers >= 1, "layers must be >= 1");
    require(slot < params_per_layer(f, n) * layers,
            "slot " + std::to_string(slot) + " is out of range for N=" + std::to_string(n));
    try {
        (void)resolve_observable(obs, n);
    } catch (const std::invalid_argument& e) {
        config_error(std::string("observable: ") + e.what());
    }
}

std::vector<std::size_t> n_range(const json& p) {
    const std::size_t lo = get_size(p, "n_min");
    const std::size_t hi = get_size(p, "n_max");
    require(lo <= hi, "n_min must not exceed n_max");
    std::vector<std::size_t> out(hi - lo + 1);
    std::iota(out.begin(), out.end(), lo);
    return out;
}

void validate_vqe_common(json& p, const std::vector<std::size_t>& ns, const std::vector<std::size_t>& slots,
                         const std::vector<std::size_t>& layer_grid) {
    const AnsatzFamily f = vqe_family(p);
    if (p.contains("samples")) require(get_size(p, "samples") >= 1, "samples must be >= 1");
    if (p.contains("delta")) require(get_real(p, "delta") > 0.0, "delta must be > 0");
    require(!ns.empty(), "no qubit counts given");
    require(!slots.empty(), "no parameter slots given");
    require(!layer_grid.empty(), "no layer counts given");
    for (std::size_t n : ns)
        for (std::size_t l : layer_grid)
            for (std::size_t s : slots) check_vqe_point(f, n, l, s, get_str(p, "observable"));
}

void resolve_sigma(json& p) {
    if (p["sigma_grid"].is_null()) {
        const std::size_t n = get_size(p, "sigma_points");
        require(n >= 1, "sigma grid is empty (sigma_points = 0)");
        const double lo = get_real(p, "sigma_min");
        const double hi = get_real(p, "sigma_max");
        require(lo > 0.0 && hi >= lo && std::isfinite(hi), "sigma bounds must satisfy 0 < sigma_min <= sigma_max");
        p["sigma_grid"] = log_grid(lo, hi, n);
    } else {
        require(p["sigma_grid"].is_array(), "sigma_grid must be a list of widths");
        require(!p["sigma_grid"].empty(), "sigma grid is empty");
        for (auto& v : p["sigma_grid"]) {
            require(v.is_number() && v.get<double>() > 0.0 && std::isfinite(v.get<double>()),
                    "sigma_grid entries must be finite and > 0");
            v = v.get<double>();
        }
    }
    if (!p["sigma_y"].is_null()) {
        require(p["sigma_y"].is_number() && p["sigma_y"].get<double>() > 0.0 && std::isfinite(p["sigma_y"].get<double>()),
                "sigma_y must be null or a finite width > 0");
        p["sigma_y"] = p["sigma_y"].get<double>();
    }
    require(get_real(p, "halfwidth") > 0.0, "halfwidth must be > 0");
}

void validate(const std::string& exp, json& p) {
    if (exp == "gaussian-scan") {
        resolve_sigma(p);
        const std::string dir = get_str(p, "direction");
        require(dir == "x" || dir == "y", "direction must be x or y");
        require(get_real(p, "delta") > 0.0, "delta must be > 0");
        require(get_size(p, "samples") >= 1, "samples must be >= 1");
    } else if (exp == "vqe-landscape") {
        validate_vqe_common(p, size_list(p, "n_qubits"), {get_size(p, "slot")}, {get_size(p, "layers")});
        require(get_size(p, "points") >= 2, "points must be >= 2");
    } else if (exp == "gradient-stats") {
        validate_vqe_common(p, n_range(p), {get_size(p, "slot")}, {get_size(p, "layers")});
    } else if (exp == "direction-scan") {
        validate_vqe_common(p, n_range(p), size_list(p, "slots"), {get_size(p, "layers")});
    } else if (exp == "depth-scan") {
        validate_vqe_common(p, size_list(p, "n_qubits"), {get_size(p, "slot")}, size_list(p, "layers_grid"));
    } else if (exp == "ga-optimize") {
        const auto ns = size_list(p, "n_qubits");
        require(!ns.empty(), "no qubit counts given");
        require(get_size(p, "comparison_samples") >= 1, "comparison_samples must be >= 1");
        for (std::size_t n : ns) {
            GaConfig c;
            c.n_qubits = n;
            c.layers = get_size(p, "layers");
            c.population_size = get_size(p, "population_size");
            c.generations = get_size(p, "generations");
            c.mutation_rate = get_real(p, "mutation_rate");
            c.p = get_real(p, "p");
            c.epsilon = get_real(p, "epsilon");
            c.theta_samples_per_eval = get_size(p, "theta_samples_per_eval");
            c.plateau_window = get_size(p, "plateau_window");
            c.plateau_tolerance = get_real(p, "plateau_tolerance");
            try {
                validate(c);
                (void)resolve_observable(get_str(p, "observable"), n);
            } catch (const std::invalid_argument& e) {
                config_error(e.what());
            }
        }
    } else if (exp == "classify") {
        const std::string source = get_str(p, "source");
        if (source == "gaussian") {
            resolve_sigma(p);
            if (p["delta"].is_null()) p["delta"] = 0.01;
            if (p["samples"].is_null()) p["samples"] = 100000u;
        } else if (source == "vqe") {
            if (p["delta"].is_null()) p["delta"] = 0.1;
            if (p["samples"].is_null()) p["samples"] = 100u;
        } else {
            config_error("source must be gaussian or vqe");
        }
        p["delta"] = coerce("delta", json(0.0), p["delta"]);
        p["samples"] = coerce("samples", json(0u), p["samples"]);
        require(get_real(p, "delta") > 0.0, "delta must be > 0");
        require(get_size(p, "samples") >= 1, "samples must be >= 1");
        require(get_real(p, "no_plateau_prob") >= 0.0, "no_plateau_prob must be >= 0");
        require(get_real(p, "tail_ratio") > 0.0, "tail_ratio must be > 0");
        if (source == "vqe") {
            validate_vqe_common(p, n_range(p), {get_size(p, "slot"), get_size(p, "second_slot")},
                                {get_size(p, "layers")});
        }
    }
}

// ---- output helpers ------------------------------------------------------

std::string csv_schema(const std::string& exp) {
    if (exp == "vqe-landscape") return "landscape-v1";
    if (exp == "ga-optimize") return "ga-history-v1";
    if (exp == "classify") return "classify-v1";
    return std::string(kStatsCsvSchema);
}

std::string stem(std::string_view exp, const std::string& hash) { return std::string(exp) + "-" + hash; }

std::filesystem::path open_out(const RunOptions& o, const std::string& name, std::ofstream& f) {
    const auto path = o.output_dir / name;
    f.open(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return path;
}

void write_json(const RunOptions& o, const std::string& name, const json& j, RunResult& r) {
    std::ofstream f;
    r.files.push_back(open_out(o, name, f));
    f << j.dump(2) << '\n';
}

void stats_row(CsvWriter& w, const std::string& label, double x, const StatsSummary& s, std::uint64_t seed) {
    w.row({label, x, s.mean, s.variance, s.threshold_prob, s.chebyshev_bound, s.max_abs, s.median_abs,
           static_cast<std::uint64_t>(s.n_samples), seed});
}

json stats_json(const StatsSummary& s) {
    return {{"mean", s.mean},
            {"variance", s.variance},
            {"threshold_prob", s.threshold_prob},
            {"chebyshev_bound", s.chebyshev_bound},
            {"delta", s.delta},
            {"n_samples", s.n_samples},
            {"max_abs", s.max_abs},
            {"median_abs", s.median_abs}};
}

json fit_json(const SlopeFit& f) {
    json pts = json::array();
    for (auto [n, v] : f.points) pts.push_back({{"N", n}, {"variance", v}});
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"points", pts}};
}

class SamplesCsv {
  public:
    SamplesCsv(bool enabled, const RunOptions& o, const std::string& name, RunResult& r) : enabled_(enabled) {
        if (!enabled_) return;
        r.files.push_back(open_out(o, name, file_));
        writer_.emplace(file_);
        writer_->header({"config_label", "sample_index", "value"});
    }
    void add(const DerivativeSampleSet& set) {
        if (!enabled_) return;
        for (std::size_t k = 0; k < set.samples.size(); ++k) {
            writer_->row({set.config_label, static_cast<std::uint64_t>(k), set.samples[k]});
        }
    }

  private:
    bool enabled_;
    std::ofstream file_;
    std::optional<CsvWriter> writer_;
};

std::uint64_t toy_seed(std::uint64_t master, double sx, double sy) {
    return derive_seed(derive_seed(master, "toy-sigma", std::bit_cast<std::uint64_t>(sx)),
                       std::bit_cast<std::uint64_t>(sy));
}

GaussianModel toy_model(const json& p, double sigma) {
    return p["sigma_y"].is_null() ? GaussianModel::isotropic(sigma) : GaussianModel(sigma, get_real(p, "sigma_y"));
}

// ---- experiments ---------------------------------------------------------

json run_gaussian_scan(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    const std::uint64_t seed = get_u64(p, "seed");
    const double delta = get_real(p, "delta");
    const std::size_t n = get_size(p, "samples");
    const double h = get_real(p, "halfwidth");
    const Axis axis = get_str(p, "direction") == "x" ? Axis::X : Axis::Y;

    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header(stats_csv_columns());
    SamplesCsv raw(p["persist_samples"].get<bool>(), o, base + ".samples.csv", r);

    json rows = json::array();
    for (const auto& sv : p["sigma_grid"]) {
        const double sigma = sv.get<double>();
        const GaussianModel m = toy_model(p, sigma);
        const std::uint64_t s = toy_seed(seed, m.sigma_x(), m.sigma_y());
        const auto set = sample_toy_derivatives(m, axis, n, h, s);
        const StatsSummary st = summarize(set, delta);
        stats_row(w, set.config_label, sigma, st, s);
        raw.add(set);
        json row = stats_json(st);
        row["sigma"] = sigma;
        row["seed"] = s;
        row["chebyshev_holds"] = st.threshold_prob <= st.chebyshev_bound;
        rows.push_back(row);
    }
    return {{"rows", rows}};
}

json run_vqe_landscape(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    const std::uint64_t seed = get_u64(p, "seed");
    const AnsatzFamily family = ansatz_family_from_string(get_str(p, "family"));
    const std::size_t layers = get_size(p, "layers");
    const std::size_t slot = get_size(p, "slot");
    const std::size_t points = get_size(p, "points");

    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header({"config_label", "n_qubits", "theta", "cost"});

    json out = json::array();
    for (std::size_t n : size_list(p, "n_qubits")) {
        const std::uint64_t s = vqe_point_seed(seed, n, layers, slot);
        Rng rng = make_stream(s, 0);
        const Circuit c = circuit_for_sample(family, n, layers, rng);
        std::vector<double> theta(c.param_count);
        draw_angles(rng, theta);
        const PauliObservable obs = resolve_observable(get_str(p, "observable"), n);
        CostEvaluator cost(c, obs);
        const std::string label =
            std::string(to_string(family)) + ":N=" + std::to_string(n) + ":L=" + std::to_string(layers) +
            ":slot=" + std::to_string(slot);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t k = 0; k < points; ++k) {
            theta[slot] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points - 1);
            const double v = cost(theta);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            w.row({label, static_cast<std::uint64_t>(n), theta[slot], v});
        }
        json entry = {{"config_label", label}, {"n_qubits", n}, {"seed", s}, {"cost_min", lo}, {"cost_max", hi},
                      {"circuit", circuit_to_json(c)}};
        out.push_back(entry);
    }
    return {{"landscapes", out}};
}

std::vector<VqePoint> vqe_points(const json& p, const std::vector<std::size_t>& ns, std::size_t layers,
                                 std::size_t slot, std::size_t workers) {
    std::vector<VqePoint> pts;
    for (std::size_t n : ns) {
        pts.push_back(sample_vqe_point(ansatz_family_from_string(get_str(p, "family")), n, layers, slot,
                                       get_size(p, "samples"), get_real(p, "delta"), get_u64(p, "seed"),
                                       get_str(p, "observable"), workers));
    }
    return pts;
}

SlopeFit fit_points(const std::vector<VqePoint>& pts) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& pt : pts) xy.emplace_back(static_cast<double>(pt.n_qubits), pt.stats.variance);
    return fit_log_slope(xy);
}

json point_rows(const std::vector<VqePoint>& pts, CsvWriter& w, SamplesCsv& raw, double x_of(const VqePoint&)) {
    json rows = json::array();
    for (const auto& pt : pts) {
        stats_row(w, pt.set.config_label, x_of(pt), pt.stats, pt.set.master_seed);
        raw.add(pt.set);
        json row = stats_json(pt.stats);
        row["config_label"] = pt.set.config_label;
        row["n_qubits"] = pt.n_qubits;
        row["layers"] = pt.layers;
        row["slot"] = pt.slot;
        row["seed"] = pt.set.master_seed;
        rows.push_back(row);
    }
    return rows;
}

double x_is_n(const VqePoint& pt) { return static_cast<double>(pt.n_qubits); }
double x_is_layers(const VqePoint& pt) { return static_cast<double>(pt.layers); }

json opt_size(std::optional<std::size_t> v) { return v ? json(*v) : json(nullptr); }

json run_gradient_stats(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header(stats_csv_columns());
    SamplesCsv raw(p["persist_samples"].get<bool>(), o, base + ".samples.csv", r);

    const auto pts = vqe_points(p, n_range(p), get_size(p, "layers"), get_size(p, "slot"), o.workers);
    json rows = point_rows(pts, w, raw, x_is_n);
    f.flush();
    json out = {{"rows", rows}, {"first_zero_prob_n", opt_size(first_zero_prob(pts))}};
    out["slope_fit"] = pts.size() >= 2 ? fit_json(fit_points(pts)) : json(nullptr);
    return out;
}

json run_direction_scan(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header(stats_csv_columns());
    SamplesCsv raw(p["persist_samples"].get<bool>(), o, base + ".samples.csv", r);

    json per_slot = json::array();
    for (std::size_t slot : size_list(p, "slots")) {
        const auto pts = vqe_points(p, n_range(p), get_size(p, "layers"), slot, o.workers);
        json entry = {{"slot", slot}, {"rows", point_rows(pts, w, raw, x_is_n)}};
        entry["slope_fit"] = pts.size() >= 2 ? fit_json(fit_points(pts)) : json(nullptr);
        per_slot.push_back(entry);
    }
    return {{"slots", per_slot}};
}

json run_depth_scan(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header(stats_csv_columns());
    SamplesCsv raw(p["persist_samples"].get<bool>(), o, base + ".samples.csv", r);

    const auto grid = size_list(p, "layers_grid");
    json per_n = json::array();
    for (std::size_t n : size_list(p, "n_qubits")) {
        std::vector<VqePoint> pts;
        for (std::size_t l : grid) {
            auto one = vqe_points(p, {n}, l, get_size(p, "slot"), o.workers);
            pts.push_back(std::move(one.front()));
        }
        json entry = {{"n_qubits", n}, {"rows", point_rows(pts, w, raw, x_is_layers)}};
        if (grid.size() >= 4) {
            std::vector<double> xs, vs;
            for (const auto& pt : pts) {
                xs.push_back(static_cast<double>(pt.layers));
                vs.push_back(pt.stats.variance);
            }
            const TrendSummary t = summarize_trend(xs, vs);
            entry["trend"] = {{"block_means", t.block_means},
                              {"last_quarter_change", t.last_quarter_change},
                              {"saturation", t.saturation}};
        } else {
            entry["trend"] = nullptr;
        }
        per_n.push_back(entry);
    }
    return {{"per_n", per_n}};
}

json run_ga(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    const std::uint64_t seed = get_u64(p, "seed");
    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header({"config_label", "n_qubits", "generation", "best_fitness", "constraint_ok", "min_abs_gradient"});

    json per_n = json::array();
    for (std::size_t n : size_list(p, "n_qubits")) {
        GaConfig c;
        c.n_qubits = n;
        c.layers = get_size(p, "layers");
        c.population_size = get_size(p, "population_size");
        c.generations = get_size(p, "generations");
        c.mutation_rate = get_real(p, "mutation_rate");
        c.p = get_real(p, "p");
        c.epsilon = get_real(p, "epsilon");
        c.theta_samples_per_eval = get_size(p, "theta_samples_per_eval");
        c.plateau_window = get_size(p, "plateau_window");
        c.plateau_tolerance = get_real(p, "plateau_tolerance");
        c.master_seed = derive_seed(seed, "ga", n);
        c.workers = o.workers;
        const PauliObservable obs = resolve_observable(get_str(p, "observable"), n);
        const GaResult res = evolve(c, obs);

        const std::string label = "GA:N=" + std::to_string(n) + ":L=" + std::to_string(c.layers);
        for (std::size_t g = 0; g < res.best_per_generation.size(); ++g) {
            const auto& b = res.best_per_generation[g];
            w.row({label, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(g), b.fitness,
                   static_cast<std::int64_t>(b.constraint_ok), b.min_abs_gradient});
        }
        const std::size_t m = get_size(p, "comparison_samples");
        const std::uint64_t cmp_seed = derive_seed(seed, "ga-compare", n);
        const double evolved = average_abs_gradient(res.best.structure, obs, m, cmp_seed);
        const double random = average_abs_gradient_random_rpa(n, c.layers, obs, m, cmp_seed);
        json entry = ga_result_to_json(c, res);
        entry["comparison"] = {{"samples", m},
                               {"seed", cmp_seed},
                               {"evolved_mean_abs_gradient", evolved},
                               {"random_mean_abs_gradient", random},
                               {"ratio", random > 0.0 ? json(evolved / random) : json(nullptr)}};
        per_n.push_back(entry);
    }
    return {{"per_n", per_n}};
}

json evidence_json(const BpClassification& c) {
    json j = {{"verdict", std::string(to_string(c.verdict))},
              {"primary", stats_json(c.evidence.primary)},
              {"primary_tail_ratio", c.evidence.primary_tail_ratio}};
    if (c.evidence.second) {
        j["second"] = stats_json(*c.evidence.second);
        j["second_tail_ratio"] = *c.evidence.second_tail_ratio;
    }
    return j;
}

json run_classify(const json& p, const RunOptions& o, const std::string& base, RunResult& r) {
    const std::uint64_t seed = get_u64(p, "seed");
    ClassifierThresholds th;
    th.no_plateau_prob = get_real(p, "no_plateau_prob");
    th.tail_ratio = get_real(p, "tail_ratio");

    std::ofstream f;
    r.files.push_back(open_out(o, base + ".csv", f));
    CsvWriter w(f);
    w.header({"config_label", "N_or_sigma", "verdict", "threshold_prob", "tail_ratio", "second_threshold_prob",
              "second_tail_ratio", "n_samples", "seed"});

    json rows = json::array();
    auto emit = [&](const std::string& label, double x, const BpClassification& c, std::uint64_t s) {
        w.row({label, x, std::string(to_string(c.verdict)), c.evidence.primary.threshold_prob,
               c.evidence.primary_tail_ratio, c.evidence.second->threshold_prob, *c.evidence.second_tail_ratio,
               static_cast<std::uint64_t>(c.evidence.primary.n_samples), s});
        json j = evidence_json(c);
        j["config_label"] = label;
        j["x"] = x;
        j["seed"] = s;
        rows.push_back(j);
    };

    if (get_str(p, "source") == "gaussian") {
        ToyClassifyOptions opt;
        opt.delta = get_real(p, "delta");
        opt.n_samples = get_size(p, "samples");
        opt.halfwidth = get_real(p, "halfwidth");
        opt.thresholds = th;
        for (const auto& sv : p["sigma_grid"]) {
            const double sigma = sv.get<double>();
            const GaussianModel m = toy_model(p, sigma);
            opt.master_seed = toy_seed(seed, m.sigma_x(), m.sigma_y());
            char label[96];
            std::snprintf(label, sizeof label, "gaussian:sx=%.17g:sy=%.17g", m.sigma_x(), m.sigma_y());
            emit(label, sigma, classify_toy(m, opt), opt.master_seed);
        }
    } else {
        const std::size_t layers = get_size(p, "layers");
        for (std::size_t n : n_range(p)) {
            const auto a = vqe_points(p, {n}, layers, get_size(p, "slot"), o.workers).front();
            const auto b = vqe_points(p, {n}, layers, get_size(p, "second_slot"), o.workers).front();
            emit(a.set.config_label, static_cast<double>(n), classify_landscape(a.stats, b.stats, th),
                 a.set.master_seed);
        }
    }
    return {{"rows", rows}};
}

} // namespace

nlohmann::json default_parameters(std::string_view experiment) {
    json p = {{"seed", 1u}};
    auto merge = [&p](const json& extra) {
        for (const auto& [k, v] : extra.items()) p[k] = v;
    };
    if (experiment == "gaussian-scan") {
        merge(sigma_defaults());
        merge({{"direction", "x"}, {"delta", 0.01}, {"samples", 100000u}, {"persist_samples", false}});
    } else if (experiment == "vqe-landscape") {
        merge({{"family", "HEA"}, {"n_qubits", {4u}}, {"layers", 20u}, {"slot", 0u}, {"points", 256u},
               {"observable", "zz_far"}});
    } else if (experiment == "gradient-stats") {
        merge(vqe_defaults());
        merge({{"n_min", 2u}, {"n_max", 10u}});
    } else if (experiment == "direction-scan") {
        merge(vqe_defaults());
        merge({{"n_min", 2u}, {"n_max", 10u}, {"slots", {0u, 1u, 2u, 3u, 4u, 5u}}});
        p.erase("slot");
    } else if (experiment == "depth-scan") {
        merge(vqe_defaults());
        std::vector<std::size_t> grid;
        for (std::size_t l = 2; l <= 50; l += 2) grid.push_back(l);
        merge({{"n_qubits", {2u, 10u}}, {"layers_grid", grid}});
        p.erase("layers");
    } else if (experiment == "ga-optimize") {
        const GaConfig c;
        merge({{"n_qubits", {2u, 3u, 4u, 5u, 6u}},
               {"layers", c.layers},
               {"population_size", c.population_size},
               {"generations", c.generations},
               {"mutation_rate", c.mutation_rate},
               {"p", c.p},
               {"epsilon", c.epsilon},
               {"theta_samples_per_eval", c.theta_samples_per_eval},
               {"plateau_window", c.plateau_window},
               {"plateau_tolerance", c.plateau_tolerance},
               {"comparison_samples", 100u},
               {"observable", "zz_far"}});
    } else if (experiment == "classify") {
        const ClassifierThresholds th;
        merge(sigma_defaults());
        merge(vqe_defaults());
        merge({{"source", "gaussian"},
               {"delta", nullptr},
               {"samples", nullptr},
               {"n_min", 2u},
               {"n_max", 10u},
               {"second_slot", 1u},
               {"no_plateau_prob", th.no_plateau_prob},
               {"tail_ratio", th.tail_ratio}});
        p.erase("persist_samples");
    } else {
        throw ConfigError("unknown experiment '" + std::string(experiment) + "'");
    }
    return p;
}

nlohmann::json resolve_parameters(std::string_view experiment, const nlohmann::json& file,
                                  const nlohmann::json& overrides) {
    const json defaults = default_parameters(experiment);
    json p = defaults;
    for (const json* src : {&file, &overrides}) {
        if (src->is_null()) continue;
        if (!src->is_object()) throw ConfigError("configuration must be a JSON object");
        for (const auto& [k, v] : src->items()) {
            if (!defaults.contains(k)) throw ConfigError("unknown parameter '" + k + "' for " + std::string(experiment));
            p[k] = coerce(k, defaults[k], v);
        }
    }
    try {
        validate(std::string(experiment), p);
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed parameter: ") + e.what());
    }
    return p;
}

std::string config_hash(std::string_view experiment, const nlohmann::json& resolved) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    feed(experiment);
    feed("\n");
    feed(resolved.dump());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

VqePoint sample_vqe_point(AnsatzFamily family, std::size_t n_qubits, std::size_t layers, std::size_t slot,
                          std::size_t n_samples, double delta, std::uint64_t master, std::string_view observable,
                          std::size_t workers) {
    VqeSamplingSpec spec;
    spec.family = family;
    spec.n_qubits = n_qubits;
    spec.layers = layers;
    spec.slot = slot;
    spec.n_samples = n_samples;
    spec.master_seed = vqe_point_seed(master, n_qubits, layers, slot);
    spec.workers = workers;
    VqePoint pt{n_qubits, layers, slot, sample_vqe_derivatives(spec, resolve_observable(observable, n_qubits)), {}};
    pt.stats = summarize(pt.set, delta);
    return pt;
}

std::optional<std::size_t> first_zero_prob(const std::vector<VqePoint>& points) {
    for (const auto& pt : points) {
        if (pt.stats.threshold_prob == 0.0) return pt.n_qubits;
    }
    return std::nullopt;
}

TrendSummary summarize_trend(std::span<const double> grid, std::span<const double> values) {
    if (grid.size() != values.size()) throw std::invalid_argument("trend grid and values differ in length");
    const std::size_t n = values.size();
    if (n < 4) throw std::invalid_argument("trend summary needs at least 4 points");
    TrendSummary t;
    std::vector<std::size_t> edges(5);
    for (std::size_t b = 0; b <= 4; ++b) edges[b] = b * n / 4;
    for (std::size_t b = 0; b < 4; ++b) {
        double s = 0.0;
        for (std::size_t i = edges[b]; i < edges[b + 1]; ++i) s += values[i];
        t.block_means.push_back(s / static_cast<double>(edges[b + 1] - edges[b]));
    }
    // Least-squares line through the last block; its rise across the block's span.
    const std::size_t a = edges[3];
    const std::size_t m = n - a;
    t.saturation = t.block_means[3];
    if (m < 2) return t;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = a; i < n; ++i) {
        mx += grid[i];
        my += values[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = a; i < n; ++i) {
        sxy += (grid[i] - mx) * (values[i] - my);
        sxx += (grid[i] - mx) * (grid[i] - mx);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    t.last_quarter_change = std::abs(slope * (grid[n - 1] - grid[a])) / std::abs(my);
    return t;
}

RunResult run_experiment(std::string_view experiment, const nlohmann::json& resolved, const RunOptions& options) {
    const std::string exp(experiment);
    if (std::find(experiment_names().begin(), experiment_names().end(), exp) == experiment_names().end()) {
        throw ConfigError("unknown experiment '" + exp + "'");
    }
    std::error_code ec;
    std::filesystem::create_directories(options.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + options.output_dir.string());

    RunResult r;
    r.hash = config_hash(experiment, resolved);
    const std::string base = stem(experiment, r.hash);

    json body;
    if (exp == "gaussian-scan") body = run_gaussian_scan(resolved, options, base, r);
    else if (exp == "vqe-landscape") body = run_vqe_landscape(resolved, options, base, r);
    else if (exp == "gradient-stats") body = run_gradient_stats(resolved, options, base, r);
    else if (exp == "direction-scan") body = run_direction_scan(resolved, options, base, r);
    else if (exp == "depth-scan") body = run_depth_scan(resolved, options, base, r);
    else if (exp == "ga-optimize") body = run_ga(resolved, options, base, r);
    else body = run_classify(resolved, options, base, r);

    r.results = {{"schema_version", kResultSchemaVersion}, {"experiment", exp}, {"config_hash", r.hash}};
    for (const auto& [k, v] : body.items()) r.results[k] = v;
    write_json(options, base + ".json", r.results, r);

    json outputs = json::array();
    for (const auto& f : r.files) outputs.push_back(f.filename().string());
    outputs.push_back(base + ".manifest.json");
    const json manifest = {{"schema_version", kManifestSchemaVersion},
                           {"experiment", exp},
                           {"config_hash", r.hash},
                           {"parameters", resolved},
                           {"workers", options.workers},
                           {"csv_schema", csv_schema(exp)},
                           {"outputs", outputs}};
    write_json(options, base + ".manifest.json", manifest, r);
    return r;
}

} // namespace bplab
