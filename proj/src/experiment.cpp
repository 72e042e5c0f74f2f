#include "pulsekit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "pulsekit/bounds.hpp"
#include "pulsekit/wssus.hpp"

namespace pulsekit {

double ExperimentConfig::noise_var() const { return from_db(noise_db); }

std::vector<BrickRow> default_rows(int cells)
{
    if (cells == 150)
        return {{0, 74}, {1, 37}, {5, 12}, {9, 7}, {29, 2}, {49, 1}, {149, 0}};
    std::vector<BrickRow> rows;
    for (int width = cells - (cells % 2 == 0); width >= 1; width -= 2)
        if (cells % width == 0)
            rows.push_back({cells / width - 1, (width - 1) / 2});
    return rows;
}

std::vector<BrickRow> ExperimentConfig::effective_rows() const { return rows.empty() ? default_rows(cells) : rows; }

void ExperimentConfig::validate() const
{
    if (L < 2)
        throw ConfigError("length must be at least 2");
    if (cells < 1 || cells > L)
        throw ConfigError("cells must lie in [1, length]");
    if (!(density > 0))
        throw ConfigError("density must be positive");
    if (!std::isfinite(noise_db))
        throw ConfigError("noise-db must be finite");
    if (trials < 1)
        throw ConfigError("trials must be positive");
    std::set<std::string> seen;
    for (const auto& m : methods) {
        if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
            throw ConfigError("unknown method '" + m + "'");
        if (!seen.insert(m).second)
            throw ConfigError("method '" + m + "' listed twice");
    }
    const auto all_rows = effective_rows();
    if (all_rows.empty())
        throw ConfigError("no brick rows");
    for (const auto& r : all_rows) {
        const std::string tag = "row (" + std::to_string(r.tau_d) + ", " + std::to_string(r.doppler) + ")";
        if (r.tau_d < 0 || r.doppler < 0)
            throw ConfigError(tag + ": negative extent");
        if (r.tau_d + 1 > L || 2 * r.doppler + 1 > L)
            throw ConfigError(tag + ": brick exceeds the grid");
        const BrickSupport brick{r.tau_d, r.doppler};
        // A single delay column has an odd cell count, so an even target is met to within one cell.
        if (std::abs(brick.cell_count() - cells) > (cells % 2 == 0 && r.tau_d == 0 ? 1 : 0))
            throw ConfigError(tag + ": has " + std::to_string(brick.cell_count()) + " cells, expected " +
                              std::to_string(cells));
        try {
            const Lattice lat = make_lattice(L, density, brick.ratio());
            if (lat.density() < 1 && (std::find(methods.begin(), methods.end(), "sinralg") != methods.end()))
                throw ConfigError("sinralg needs density >= 1");
        } catch (const std::invalid_argument& e) {
            throw ConfigError(tag + ": " + e.what());
        }
    }
}

nlohmann::json ExperimentConfig::to_json() const
{
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : effective_rows())
        rows_json.push_back({r.tau_d, r.doppler});
    return {{"length", L},   {"cells", cells},   {"density", density}, {"noise_db", noise_db}, {"methods", methods},
            {"trials", trials}, {"seed", seed}, {"out", out},          {"rows", rows_json}};
}

void ExperimentConfig::merge_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    static const std::set<std::string> keys{"length", "cells", "density", "noise_db", "methods",
                                            "trials", "seed",  "out",     "rows"};
    for (const auto& [k, v] : j.items())
        if (!keys.contains(k))
            throw ConfigError("unknown config key '" + k + "'");
    try {
        L = j.value("length", L);
        cells = j.value("cells", cells);
        density = j.value("density", density);
        noise_db = j.value("noise_db", noise_db);
        trials = j.value("trials", trials);
        seed = j.value("seed", seed);
        out = j.value("out", out);
        if (j.contains("methods")) {
            const auto& m = j.at("methods");
            methods = m.is_string() ? std::vector<std::string>{} : m.get<std::vector<std::string>>();
            if (m.is_string()) {
                std::string s = m.get<std::string>();
                for (std::size_t pos = 0; !s.empty() && pos != std::string::npos;) {
                    const auto next = s.find(',', pos);
                    const auto item = s.substr(pos, next == std::string::npos ? next : next - pos);
                    if (!item.empty())
                        methods.push_back(item);
                    pos = next == std::string::npos ? next : next + 1;
                }
            }
        }
        if (j.contains("rows")) {
            rows.clear();
            for (const auto& r : j.at("rows"))
                rows.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

namespace {

struct RowContext {
    BrickRow row;
    ScatteringMass C;
    Lattice lattice;
    Signal gaussian;
    double noise_var;
    int trials;
    std::uint64_t seed;
};

void evaluate(CellResult& r, const RowContext& ctx, const PulsePair& pair)
{
    r.gain = localization_gain(pair.g, pair.gamma, ctx.C);
    r.b_gamma = frame_quality(pair.gamma, ctx.lattice).upper;
    r.sinr_analytic = analytic_sinr(pair, ctx.lattice, ctx.C, ctx.noise_var).sinr;
    r.sinr_bound = sinr_lower_bound(r.gain, r.b_gamma, ctx.noise_var);
    r.sinr_mc = monte_carlo_sinr(pair, ctx.lattice, ctx.C, ctx.noise_var, ctx.trials, ctx.seed).sinr;
    r.pair = pair;
}

// Methods run in order; later ones reuse the climb of "localg" when it is available.
std::vector<CellResult> run_row(const ExperimentConfig& cfg, std::size_t row_index)
{
    const BrickRow row = cfg.effective_rows()[row_index];
    const BrickSupport brick{row.tau_d, row.doppler};
    RowContext ctx{row,
                   make_brick_scattering(row.tau_d, row.doppler, cfg.L),
                   make_lattice(cfg.L, cfg.density, brick.ratio()),
                   {},
                   cfg.noise_var(),
                   cfg.trials,
                   derive_seed(cfg.seed, row_index)};
    ctx.gaussian = make_gaussian(cfg.L, static_cast<double>(ctx.lattice.a) / ctx.lattice.b);

    const auto star = sinr_star_bounds(ctx.noise_var, cfg.density, ctx.C.area());
    std::optional<ClimbResult> climb;
    auto ensure_climb = [&]() -> const ClimbResult& {
        if (!climb)
            climb = mountain_climb(ctx.C, ctx.gaussian);
        return *climb;
    };

    std::vector<CellResult> out;
    for (const auto& method : cfg.methods) {
        CellResult r;
        r.method = method;
        r.row = row;
        r.ratio = brick.ratio();
        r.lattice = ctx.lattice;
        r.area = ctx.C.area();
        r.upper = star.upper.value_or(NAN);
        r.lower_noblt = star.lower_noblt;
        const auto start = std::chrono::steady_clock::now();
        try {
            if (method == "gauss") {
                evaluate(r, ctx, {ctx.gaussian, ctx.gaussian});
            } else if (method == "iota") {
                const Signal iota = tighten(ctx.gaussian, ctx.lattice);
                evaluate(r, ctx, {iota, iota});
            } else if (method == "svd") {
                const auto svd = svd_pulses(ctx.C);
                r.svd_bound = svd.lower_bound;
                r.iterations = 1;
                evaluate(r, ctx, svd.pair);
            } else if (method == "localg") {
                const auto& c = ensure_climb();
                r.trace = c.trace;
                r.iterations = c.trace.iterations;
                evaluate(r, ctx, c.pair);
            } else if (method == "localg-tight") {
                const auto& c = ensure_climb();
                r.trace = c.trace;
                r.iterations = c.trace.iterations;
                evaluate(r, ctx, tighten_and_match(ctx.C, ctx.lattice, c.pair.gamma));
            } else if (method == "sinralg") {
                const auto s = sinr_iteration(ctx.C, ctx.lattice, ctx.noise_var, ensure_climb().pair.g);
                r.trace = s.trace;
                r.iterations = s.trace.iterations;
                evaluate(r, ctx, s.pair);
            }
            if (r.trace && r.trace->near_degenerate())
                r.errors = "near-degenerate eigenvalue";
        } catch (const std::exception& e) {
            r.errors = e.what();
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

std::string fmt(double v, const char* spec = "%.9g")
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_db(double linear) { return linear > 0 ? fmt(to_db(linear), "%.6f") : "nan"; }

std::string csv_field(std::string s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
    return q + "\"";
}

} // namespace

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    const auto rows = cfg.effective_rows();
    std::vector<std::vector<CellResult>> per_row(rows.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < rows.size(); ++i)
        per_row[i] = run_row(cfg, i);
    std::vector<CellResult> all;
    for (auto& r : per_row)
        std::move(r.begin(), r.end(), std::back_inserter(all));
    if (cfg.methods.empty()) {
        // Bound-only rows keep the reference curves available to the plotter.
        for (const auto& row : rows) {
            const BrickSupport brick{row.tau_d, row.doppler};
            const double area = static_cast<double>(brick.cell_count()) / cfg.L;
            const auto star = sinr_star_bounds(cfg.noise_var(), cfg.density, area);
            CellResult r;
            r.method = "bounds";
            r.row = row;
            r.ratio = brick.ratio();
            r.lattice = make_lattice(cfg.L, cfg.density, brick.ratio());
            r.area = area;
            r.upper = star.upper.value_or(NAN);
            r.lower_noblt = star.lower_noblt;
            all.push_back(std::move(r));
        }
    }
    return all;
}

void write_csv(std::ostream& out, const std::vector<CellResult>& results)
{
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : results) {
        out << r.method << ',' << r.row.tau_d << ',' << r.row.doppler << ',' << fmt(r.ratio) << ',' << r.lattice.a
            << ',' << r.lattice.b << ',' << fmt(r.gain, "%.12g") << ',' << fmt(r.b_gamma, "%.12g") << ','
            << fmt_db(r.sinr_bound) << ',' << fmt_db(r.sinr_analytic) << ',' << fmt_db(r.sinr_mc) << ','
            << fmt_db(r.upper) << ',' << fmt_db(r.lower_noblt) << ',' << r.iterations << ','
            << fmt(r.runtime_ms, "%.1f") << ',' << csv_field(r.errors) << '\n';
    }
}

} // namespace pulsekit
