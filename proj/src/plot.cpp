#include "pulsekit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace pulsekit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

struct Point {
    double x;
    double y;
    std::string label;  // y exactly as written in the CSV
};

struct Series {
    std::string name;
    std::vector<Point> points;
    bool reference = false;
};

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

void render(const std::filesystem::path& path, const std::string& title, const std::string& y_label,
            const std::vector<Series>& series)
{
    constexpr double W = 720, H = 460, left = 70, right = 170, top = 40, bottom = 60;
    constexpr double inf = std::numeric_limits<double>::infinity();
    double xmin = inf, xmax = -inf, ymin = inf, ymax = -inf;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            xmin = std::min(xmin, std::log10(p.x));
            xmax = std::max(xmax, std::log10(p.x));
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    if (!std::isfinite(xmin)) {
        xmin = -1;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-9) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    const double pad = std::max(ymax - ymin, 1e-6) * 0.08;
    ymin -= pad;
    ymax += pad;
    const auto sx = [&](double x) { return left + (std::log10(x) - xmin) / (xmax - xmin) * (W - left - right); };
    const auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * (H - top - bottom); };

    std::ofstream out(path);
    if (!out)
        throw PlotError("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
    out << "<g class=\"axes\" stroke=\"black\">\n";
    out << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
        << "\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom << "\"/>\n";
    out << "</g>\n";
    for (int e = static_cast<int>(std::floor(xmin)); e <= static_cast<int>(std::ceil(xmax)); ++e) {
        const double x = std::pow(10.0, e);
        if (std::log10(x) < xmin - 1e-9 || std::log10(x) > xmax + 1e-9)
            continue;
        out << "<text x=\"" << sx(x) << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">" << num(x)
            << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double y = ymin + (ymax - ymin) * i / 5;
        out << "<text x=\"" << left - 6 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">" << num(y)
            << "</text>\n";
    }
    out << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 18
        << "\" text-anchor=\"middle\">R = (tau_d + 1) / (2 B_D + 1)</text>\n";
    out << "<text transform=\"translate(18," << (top + H - bottom) / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

    std::size_t colour = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const std::string stroke = s.reference ? "#555555" : kPalette[colour++ % std::size(kPalette)];
        out << "<g class=\"series\" data-series=\"" << escape(s.name) << "\">\n<polyline fill=\"none\" stroke=\""
            << stroke << "\" stroke-width=\"1.6\"" << (s.reference ? " stroke-dasharray=\"6 4\"" : "")
            << " points=\"";
        for (const auto& p : s.points)
            out << sx(p.x) << ',' << sy(p.y) << ' ';
        out << "\"/>\n";
        for (const auto& p : s.points)
            out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << stroke
                << "\" data-series=\"" << escape(s.name) << "\" data-x=\"" << num(p.x) << "\" data-y=\"" << p.label
                << "\"/>\n";
        const double ly = top + 16.0 * static_cast<double>(i);
        out << "<line x1=\"" << W - right + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - right + 36 << "\" y2=\"" << ly
            << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"" << (s.reference ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n<text x=\"" << W - right + 42 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
}

bool parse(const std::string& text, double& v)
{
    try {
        std::size_t used = 0;
        v = std::stod(text, &used);
        return used == text.size() && std::isfinite(v);
    } catch (const std::exception&) {
        return false;
    }
}

void add_point(std::vector<Series>& series, const std::string& name, bool reference, double x,
               const std::string& y_text)
{
    double y = 0;
    if (!parse(y_text, y))
        return;
    auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
    if (it == series.end()) {
        series.push_back({name, {}, reference});
        it = series.end() - 1;
    }
    if (std::none_of(it->points.begin(), it->points.end(), [&](const Point& p) { return p.x == x; }))
        it->points.push_back({x, y, y_text});
}

} // namespace

CsvTable CsvTable::read(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw PlotError("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line))
        throw PlotError(path.string() + ": empty file");
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto row = split_csv_line(line);
        if (row.size() != t.header.size())
            throw PlotError(path.string() + ": ragged row");
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::size_t CsvTable::column(const std::string& name) const
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw PlotError("missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

PlotFiles plot_results(const std::filesystem::path& csv, const std::filesystem::path& out_dir)
{
    const auto t = CsvTable::read(csv);
    const auto c_method = t.column("method"), c_ratio = t.column("ratio"), c_gain = t.column("gain"),
               c_sinr = t.column("sinr_analytic_db"), c_upper = t.column("upper_db"),
               c_lower = t.column("lower_noblt_db");

    std::vector<Series> gain, sinr, bounds;
    for (const auto& row : t.rows) {
        double r = 0;
        if (!parse(row[c_ratio], r) || r <= 0)
            throw PlotError("bad ratio value '" + row[c_ratio] + "'");
        const std::string& m = row[c_method];
        if (m != "bounds") {
            add_point(gain, m, false, r, row[c_gain]);
            add_point(sinr, m, false, r, row[c_sinr]);
        }
        add_point(bounds, "upper bound", true, r, row[c_upper]);
        add_point(bounds, "lower (no BLT)", true, r, row[c_lower]);
    }
    for (auto* group : {&gain, &sinr, &bounds})
        for (auto& s : *group)
            std::sort(s.points.begin(), s.points.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    sinr.insert(sinr.end(), bounds.begin(), bounds.end());

    std::filesystem::create_directories(out_dir);
    PlotFiles files{out_dir / "gain_vs_R.svg", out_dir / "sinr_vs_R.svg"};
    render(files.gain, "Localization gain versus R", "gain", gain);
    render(files.sinr, "SINR versus R", "SINR [dB]", sinr);
    return files;
}

} // namespace pulsekit
