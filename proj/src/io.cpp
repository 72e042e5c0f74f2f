#include "pulsekit/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace pulsekit::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary signal format assumes a little-endian host");

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix)
{
    return std::filesystem::path(stem.string() + suffix);
}

json number_or_null(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

void write_signal(const std::filesystem::path& path, const Signal& x)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot open " + path.string() + " for writing");
    const auto n = static_cast<std::uint64_t>(x.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(x.data()), static_cast<std::streamsize>(n * sizeof(cplx)));
    if (!out)
        throw FormatError("short write to " + path.string());
}

Signal read_signal(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || n == 0 || n > (1u << 26))
        throw FormatError(path.string() + ": bad length header");
    Signal x(static_cast<Eigen::Index>(n));
    in.read(reinterpret_cast<char*>(x.data()), static_cast<std::streamsize>(n * sizeof(cplx)));
    if (!in)
        throw FormatError(path.string() + ": truncated samples");
    return x;
}

void write_pulses(const std::filesystem::path& stem, const PulseFile& file)
{
    write_signal(with_suffix(stem, ".g.bin"), file.pair.g);
    write_signal(with_suffix(stem, ".gamma.bin"), file.pair.gamma);
    write_json(with_suffix(stem, ".json"), {
        {"L", file.lattice.L},
        {"lattice", {{"a", file.lattice.a}, {"b", file.lattice.b}}},
        {"density", file.lattice.density()},
        {"constructor", file.constructor},
        {"params", file.params},
    });
}

PulseFile read_pulses(const std::filesystem::path& stem)
{
    const json meta = read_json(with_suffix(stem, ".json"));
    PulseFile file;
    try {
        file.lattice = Lattice::make(meta.at("lattice").at("a"), meta.at("lattice").at("b"), meta.at("L"));
        file.constructor = meta.at("constructor");
        file.params = meta.value("params", json::object());
    } catch (const json::exception& e) {
        throw FormatError(stem.string() + ".json: " + e.what());
    }
    file.pair.g = read_signal(with_suffix(stem, ".g.bin"));
    file.pair.gamma = read_signal(with_suffix(stem, ".gamma.bin"));
    if (file.pair.g.size() != file.lattice.L || file.pair.gamma.size() != file.lattice.L)
        throw FormatError(stem.string() + ": pulse length does not match sidecar");
    return file;
}

json to_json(const ScatteringMass& C)
{
    json cells = json::array();
    for (std::size_t j = 0; j < C.size(); ++j)
        cells.push_back({C.support[j].k, C.support[j].l, C.mass[j]});
    return {{"L", C.L}, {"cells", cells}};
}

ScatteringMass mass_from_json(const json& j)
{
    try {
        std::vector<TFCell> cells;
        std::vector<double> masses;
        for (const auto& c : j.at("cells")) {
            cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
            masses.push_back(c.at(2).get<double>());
        }
        return ScatteringMass::make(j.at("L"), std::move(cells), std::move(masses));
    } catch (const json::exception& e) {
        throw FormatError(std::string("scattering mass: ") + e.what());
    }
}

json to_json(const ChannelRealization& h)
{
    json cells = json::array();
    for (std::size_t j = 0; j < h.support.size(); ++j)
        cells.push_back({h.support[j].k, h.support[j].l, {h.coeffs[j].real(), h.coeffs[j].imag()}});
    return {{"L", h.L}, {"cells", cells}};
}

ChannelRealization channel_from_json(const json& j)
{
    try {
        ChannelRealization h;
        h.L = j.at("L");
        for (const auto& c : j.at("cells")) {
            h.support.push_back(TFCell::reduced(c.at(0).get<int>(), c.at(1).get<int>(), h.L));
            h.coeffs.emplace_back(c.at(2).at(0).get<double>(), c.at(2).at(1).get<double>());
        }
        return h;
    } catch (const json::exception& e) {
        throw FormatError(std::string("channel: ") + e.what());
    }
}

json trace_json(const std::string& method, const ClimbTrace& trace, std::uint64_t seed, const json& params)
{
    return {
        {"method", method},
        {"iterations", trace.iterations},
        {"objective", trace.objective},
        {"converged", trace.converged},
        {"near_degenerate", trace.near_degenerate()},
        {"seed", seed},
        {"params", params},
    };
}

json bounds_json(double area, double density, double noise_var)
{
    const auto lam = lambda_max_bounds(area);
    const auto star = sinr_star_bounds(noise_var, density, area);
    return {
        {"area", area},
        {"density", density},
        {"sigma2", noise_var},
        {"lower", star.lower_noblt},
        {"upper", number_or_null(star.upper)},
        {"lower_noBLT_db", to_db(star.lower_noblt)},
        {"upper_db", star.upper ? json(to_db(*star.upper)) : json(nullptr)},
        {"lambda_max", {{"lower", lam.lower}, {"upper", lam.upper}}},
    };
}

void write_json(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace pulsekit::io
