#pragma once

// The delay/Doppler ratio sweep: for every brick row and pulse construction,
// optimize, evaluate gain and SINR, and tabulate against the closed-form bounds.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pulsekit/gabor.hpp"
#include "pulsekit/optim.hpp"

namespace pulsekit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BrickRow {
    int tau_d = 0;
    int doppler = 0;
    friend bool operator==(const BrickRow&, const BrickRow&) = default;
};

inline const std::vector<std::string>& known_methods()
{
    static const std::vector<std::string> m{"gauss", "iota", "svd", "localg", "localg-tight", "sinralg"};
    return m;
}

struct ExperimentConfig {
    int L = 512;
    int cells = 150;
    double density = 2;
    double noise_db = -20;
    std::vector<std::string> methods = known_methods();
    std::vector<BrickRow> rows;  ///< empty: default_rows(cells)
    int trials = 2000;
    std::uint64_t seed = 20240601;
    std::string out = "results";

    double noise_var() const;
    std::vector<BrickRow> effective_rows() const;

    /// Throws ConfigError on an unusable configuration.
    void validate() const;

    nlohmann::json to_json() const;
    /// Keys mirror the CLI flags; absent keys keep the current values.
    void merge_json(const nlohmann::json& j);
};

/// The reference sweep for 150 cells; otherwise every brick (tau_d + 1)(2 B_D + 1) = cells,
/// ordered by increasing delay extent.
std::vector<BrickRow> default_rows(int cells);

/// SINR fields and bounds are linear; write_csv converts them to dB.
struct CellResult {
    std::string method;
    BrickRow row;
    double ratio = 0;
    Lattice lattice;
    double area = 0;
    double gain = NAN;
    double b_gamma = NAN;
    double sinr_bound = NAN;
    double sinr_analytic = NAN;
    double sinr_mc = NAN;
    double upper = NAN;        ///< SINR upper bound, NaN when not applicable
    double lower_noblt = NAN;
    int iterations = 0;
    double runtime_ms = 0;
    std::string errors;

    std::optional<PulsePair> pair;
    std::optional<ClimbTrace> trace;
    std::optional<double> svd_bound;
};

/// Rows in config order, methods in config order within a row. Deterministic given the seed.
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

/// Column header and one line per result; runtime_ms is the only nondeterministic column.
void write_csv(std::ostream& out, const std::vector<CellResult>& results);

inline const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> c{
        "method", "tau_d", "b_d", "ratio", "a", "b", "gain", "b_gamma", "sinr_bound_db", "sinr_analytic_db",
        "sinr_mc_db", "upper_db", "lower_noblt_db", "iterations", "runtime_ms", "errors"};
    return c;
}

} // namespace pulsekit
