#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pulsekit {

struct PlotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Header-indexed CSV table; values kept as text.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read(const std::filesystem::path& path);
    std::size_t column(const std::string& name) const;  ///< throws PlotError if absent
};

struct PlotFiles {
    std::filesystem::path gain;
    std::filesystem::path sinr;
};

/// Renders gain-vs-R and SINR-vs-R charts (SVG, log R axis) from an experiment CSV.
/// Every marker carries data-series, data-x (R) and data-y (CSV value) attributes.
PlotFiles plot_results(const std::filesystem::path& csv, const std::filesystem::path& out_dir);

} // namespace pulsekit
