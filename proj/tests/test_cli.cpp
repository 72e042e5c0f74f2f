#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "pulsekit/experiment.hpp"
#include "pulsekit/plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome cli(const std::string& args)
{
    const std::string cmd = std::string(PULSEKIT_CLI) + " " + args + " 2>/dev/null";
    Outcome r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe))
        r.out += buf.data();
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("pulsekit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// results.csv with the runtime_ms column blanked
std::string without_runtime(const fs::path& csv)
{
    auto table = pulsekit::CsvTable::read(csv);
    const auto col = table.column("runtime_ms");
    std::string text;
    for (auto& row : table.rows) {
        row[col].clear();
        for (const auto& v : row)
            text += v + ',';
        text += '\n';
    }
    return text;
}

const std::string kSmall = "--length 64 --cells 15 --trials 200 ";

} // namespace

TEST_CASE("exit codes")
{
    TempDir dir;
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("run --length notanumber").code == 2);
    CHECK(cli("run " + kSmall + "--methods gauss,wavelet --out " + dir.str()).code == 2);
    CHECK(cli("run --length 64 --cells 65 --methods gauss --out " + dir.str()).code == 2);
    CHECK(cli("run --config " + (dir.path / "missing.json").string()).code == 2);

    std::ofstream(dir.path / "bad.json") << R"({"length": 64, "colour": "blue"})";
    CHECK(cli("run --config " + (dir.path / "bad.json").string()).code == 2);
    std::ofstream(dir.path / "broken.json") << "{";
    CHECK(cli("run --config " + (dir.path / "broken.json").string()).code == 2);

    std::ofstream(dir.path / "rows.json") << R"({"length": 64, "cells": 15, "rows": [[2, 3]]})";
    CHECK(cli("run --config " + (dir.path / "rows.json").string() + " --out " + dir.str()).code == 2);

    CHECK(cli("verify").code == 0);
    CHECK(cli("verify --inject-fault tighten-no-sqrt").code == 1);
    CHECK(cli("verify --inject-fault unknown").code == 2);
    CHECK(cli("plot " + (dir.path / "nothing.csv").string()).code == 2);
}

TEST_CASE("verify passes for several seeds")
{
    for (const int seed : {1, 2, 3, 4, 5}) {
        const auto r = cli("verify --seed " + std::to_string(seed));
        CHECK_MESSAGE(r.code == 0, r.out);
    }
}

TEST_CASE("verify report under the injected fault names the tightness checks")
{
    const auto r = cli("verify --inject-fault tighten-no-sqrt");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(r.out.find("tight") != std::string::npos);
}

TEST_CASE("bounds subcommand prints the closed-form record")
{
    const auto r = cli("bounds --length 512 --cells 150 --density 2 --noise-db -20");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("area").get<double>() == doctest::Approx(150.0 / 512));
    CHECK(j.at("sigma2").get<double>() == doctest::Approx(0.01));
    CHECK(j.at("upper_db").get<double>() == doctest::Approx(-0.929791368958));
    CHECK(j.at("lower_noBLT_db").get<double>() == doctest::Approx(-9.158329434454));
    CHECK(cli("bounds --length 0").code == 2);
}

TEST_CASE("run is deterministic and writes the documented artifacts")
{
    TempDir a, b, c;
    REQUIRE(cli("run " + kSmall + "--seed 11 --out " + a.str()).code == 0);
    REQUIRE(cli("run " + kSmall + "--seed 11 --out " + b.str()).code == 0);
    REQUIRE(cli("run " + kSmall + "--seed 12 --out " + c.str()).code == 0);

    CHECK(without_runtime(a.path / "results.csv") == without_runtime(b.path / "results.csv"));
    CHECK(without_runtime(a.path / "results.csv") != without_runtime(c.path / "results.csv"));
    CHECK(slurp(a.path / "pulses" / "localg_tau2_b2.g.bin") == slurp(b.path / "pulses" / "localg_tau2_b2.g.bin"));

    const auto table = pulsekit::CsvTable::read(a.path / "results.csv");
    CHECK(table.header == pulsekit::csv_columns());
    CHECK(table.rows.size() == 4 * pulsekit::known_methods().size());

    const auto bound = table.column("sinr_bound_db");
    const auto analytic = table.column("sinr_analytic_db");
    const auto method = table.column("method");
    const auto gain = table.column("gain");
    std::map<std::string, double> gauss_gain;
    for (const auto& row : table.rows) {
        CHECK(std::stod(row[bound]) <= std::stod(row[analytic]) + 1e-6);
        if (row[method] == "gauss")
            gauss_gain[row[table.column("tau_d")]] = std::stod(row[gain]);
        if (row[method] == "localg")
            CHECK(std::stod(row[gain]) >= gauss_gain.at(row[table.column("tau_d")]));
    }

    const auto cfg = json::parse(slurp(a.path / "config.json"));
    CHECK(cfg.at("length") == 64);
    CHECK(cfg.at("seed") == 11);

    const auto trace = json::parse(slurp(a.path / "traces" / "localg_tau2_b2.json"));
    const auto objective = trace.at("objective").get<std::vector<double>>();
    REQUIRE(objective.size() >= 2);
    for (std::size_t i = 1; i < objective.size(); ++i)
        CHECK(objective[i] >= objective[i - 1] - 1e-12);
    CHECK(trace.at("seed") == 11);

    const auto sidecar = json::parse(slurp(a.path / "pulses" / "gauss_tau2_b2.json"));
    CHECK(sidecar.at("constructor") == "gauss");
    CHECK(sidecar.at("density").get<double>() == doctest::Approx(2));
}

TEST_CASE("even cell counts sweep the odd Doppler widths")
{
    TempDir dir;
    REQUIRE(cli("run --length 64 --cells 14 --methods gauss --trials 20 --out " + dir.str()).code == 0);
    const auto table = pulsekit::CsvTable::read(dir.path / "results.csv");
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& row : table.rows)
        rows.emplace_back(row[table.column("tau_d")], row[table.column("b_d")]);
    CHECK(rows == std::vector<std::pair<std::string, std::string>>{{"1", "3"}, {"13", "0"}});
}

TEST_CASE("config file and flags combine, flags win")
{
    TempDir dir;
    std::ofstream(dir.path / "cfg.json") << R"({"length": 64, "cells": 15, "methods": ["gauss"], "trials": 50, "seed": 3})";
    REQUIRE(cli("run --config " + (dir.path / "cfg.json").string() + " --methods iota --out " + dir.str()).code == 0);
    const auto table = pulsekit::CsvTable::read(dir.path / "results.csv");
    REQUIRE(table.rows.size() == 4);
    for (const auto& row : table.rows)
        CHECK(row[table.column("method")] == "iota");
    CHECK(json::parse(slurp(dir.path / "config.json")).at("trials") == 50);
}

TEST_CASE("plot renders both charts with CSV values on the markers")
{
    TempDir dir;
    REQUIRE(cli("run " + kSmall + "--methods gauss,localg-tight --out " + dir.str()).code == 0);
    REQUIRE(cli("plot --out " + dir.str()).code == 0);
    const auto gain_svg = slurp(dir.path / "gain_vs_R.svg");
    const auto sinr_svg = slurp(dir.path / "sinr_vs_R.svg");
    CHECK(gain_svg.rfind("<svg", 0) == 0);
    CHECK(sinr_svg.find("</svg>") != std::string::npos);

    const auto table = pulsekit::CsvTable::read(dir.path / "results.csv");
    for (const auto& row : table.rows) {
        const std::string m = row[table.column("method")];
        CHECK(gain_svg.find("data-series=\"" + m + "\"") != std::string::npos);
        CHECK(gain_svg.find("data-y=\"" + row[table.column("gain")] + "\"") != std::string::npos);
        CHECK(sinr_svg.find("data-y=\"" + row[table.column("sinr_analytic_db")] + "\"") != std::string::npos);
    }
    CHECK(sinr_svg.find("data-series=\"upper bound\"") != std::string::npos);
    CHECK(sinr_svg.find("data-series=\"lower (no BLT)\"") != std::string::npos);
    CHECK(sinr_svg.find(table.rows[0][table.column("upper_db")]) != std::string::npos);
}

TEST_CASE("an empty method list yields bound curves only")
{
    TempDir dir;
    std::ofstream(dir.path / "cfg.json") << R"({"length": 64, "cells": 15, "methods": []})";
    REQUIRE(cli("run --config " + (dir.path / "cfg.json").string() + " --out " + dir.str()).code == 0);
    REQUIRE(cli("plot " + (dir.path / "results.csv").string()).code == 0);
    const auto svg = slurp(dir.path / "sinr_vs_R.svg");
    const std::regex series("data-series=\"([^\"]+)\"");
    std::set<std::string> names;
    for (std::sregex_iterator it(svg.begin(), svg.end(), series), end; it != end; ++it)
        names.insert((*it)[1]);
    CHECK(names == std::set<std::string>{"upper bound", "lower (no BLT)"});
}

TEST_CASE("plot rejects a CSV without the required columns")
{
    TempDir dir;
    std::ofstream(dir.path / "r.csv") << "method,tau_d\ngauss,0\n";
    CHECK(cli("plot " + (dir.path / "r.csv").string()).code == 2);
    CHECK_THROWS_AS(pulsekit::plot_results(dir.path / "r.csv", dir.path), pulsekit::PlotError);
}
