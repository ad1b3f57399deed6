#include "pbif/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pbif {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("malformed number: '" + std::string(text) + "'");
    return v;
}

void write_grid_csv(const std::filesystem::path& path, const ScalarField2D& field) {
    auto out = open_out(path);
    out << "# " << format_double(field.x_min) << ' ' << format_double(field.y_min) << ' '
        << format_double(field.dx) << ' ' << format_double(field.dy) << ' ' << field.nx << ' '
        << field.ny << '\n';
    for (int j = 0; j < field.ny; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            if (i) out << ',';
            out << format_double(field.at(i, j));
        }
        out << '\n';
    }
}

ScalarField2D read_grid_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("grid csv: missing '# x_min y_min dx dy nx ny' header");
    std::istringstream header(line.substr(2));
    ScalarField2D field;
    if (!(header >> field.x_min >> field.y_min >> field.dx >> field.dy >> field.nx >> field.ny))
        throw std::runtime_error("grid csv: malformed header");
    if (field.nx < 1 || field.ny < 1) throw std::runtime_error("grid csv: bad dimensions");
    field.values.reserve(static_cast<std::size_t>(field.nx) * field.ny);
    for (int j = 0; j < field.ny; ++j) {
        if (!std::getline(in, line)) throw std::runtime_error("grid csv: truncated data");
        auto cells = split(line, ',');
        if (cells.size() != static_cast<std::size_t>(field.nx))
            throw std::runtime_error("grid csv: row " + std::to_string(j) + " has " +
                                     std::to_string(cells.size()) + " values, expected " +
                                     std::to_string(field.nx));
        for (auto c : cells) field.values.push_back(parse_double(c));
    }
    return field;
}

void write_points_csv(const std::filesystem::path& path, const PointCloud& cloud) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (int k = 0; k < cloud.dim; ++k) {
            if (k) out << ',';
            out << format_double(cloud.coords[i * cloud.dim + k]);
        }
        out << '\n';
    }
}

PointCloud read_points_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    PointCloud cloud;
    cloud.dim = 0;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cloud.dim == 0) cloud.dim = static_cast<int>(cells.size());
        if (cells.size() != static_cast<std::size_t>(cloud.dim))
            throw std::runtime_error("points csv: row " + std::to_string(row) +
                                     " has inconsistent arity");
        for (auto c : cells) cloud.coords.push_back(parse_double(c));
    }
    if (cloud.dim == 0) throw std::runtime_error("points csv: no data in " + path.string());
    return cloud;
}

void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram) {
    auto out = open_out(path);
    out << "dim,birth,death\n";
    for (const auto& p : diagram.pairs)
        out << p.dim << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
}

PersistenceDiagram read_diagram_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "dim,birth,death")
        throw std::runtime_error("diagram csv: missing 'dim,birth,death' header");
    PersistenceDiagram diagram;
    bool any_minus_inf = false, any_plus_inf = false;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 3) throw std::runtime_error("diagram csv: expected 3 columns");
        PersistencePair p;
        p.dim = static_cast<int>(parse_double(cells[0]));
        p.birth = parse_double(cells[1]);
        p.death = parse_double(cells[2]);
        if (std::isinf(p.death)) (p.death < 0 ? any_minus_inf : any_plus_inf) = true;
        diagram.pairs.push_back(p);
    }
    diagram.direction = any_plus_inf && !any_minus_inf ? Direction::sublevel
                                                       : Direction::superlevel;
    if (!diagram.pairs.empty() && !any_plus_inf && !any_minus_inf)
        diagram.direction = diagram.pairs.front().birth > diagram.pairs.front().death
                                ? Direction::superlevel
                                : Direction::sublevel;
    return diagram;
}

void write_betti_csv(const std::filesystem::path& path, const BettiVector& vec) {
    auto out = open_out(path);
    out << "L,beta\n";
    for (std::size_t k = 0; k < vec.levels.size(); ++k)
        out << format_double(vec.levels[k]) << ',' << vec.counts[k] << '\n';
}

void write_plot_csv(const std::filesystem::path& path, const BifurcationPlot& plot) {
    auto out = open_out(path);
    out << (plot.provenance == "error" ? "h,L,dim,err\n" : "h,L,dim,beta\n");
    for (std::size_t d = 0; d < plot.dims.size(); ++d)
        for (std::size_t j = 0; j < plot.parameters.size(); ++j)
            for (std::size_t k = 0; k < plot.levels.size(); ++k)
                out << format_double(plot.parameters[j]) << ',' << format_double(plot.levels[k])
                    << ',' << plot.dims[d] << ',' << plot.beta[d][j][k] << '\n';
}

BifurcationPlot read_plot_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("plot csv: empty file " + path.string());
    const auto header = trim(line);
    BifurcationPlot plot;
    if (header == "h,L,dim,beta")
        plot.provenance = "loaded";
    else if (header == "h,L,dim,err")
        plot.provenance = "error";
    else
        throw std::runtime_error("plot csv: unexpected header '" + std::string(header) + "'");

    struct Row {
        double h, level;
        int dim, beta;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 4) throw std::runtime_error("plot csv: expected 4 columns");
        rows.push_back({parse_double(cells[0]), parse_double(cells[1]),
                        static_cast<int>(parse_double(cells[2])),
                        static_cast<int>(parse_double(cells[3]))});
    }
    if (rows.empty()) throw std::runtime_error("plot csv: no data rows in " + path.string());

    for (const auto& r : rows) {
        if (std::find(plot.dims.begin(), plot.dims.end(), r.dim) == plot.dims.end())
            plot.dims.push_back(r.dim);
        if (std::find(plot.parameters.begin(), plot.parameters.end(), r.h) ==
            plot.parameters.end())
            plot.parameters.push_back(r.h);
        if (std::find(plot.levels.begin(), plot.levels.end(), r.level) == plot.levels.end())
            plot.levels.push_back(r.level);
    }
    plot.beta.assign(plot.dims.size(),
                     std::vector<std::vector<int>>(
                         plot.parameters.size(), std::vector<int>(plot.levels.size(), 0)));
    auto index_of = [](const auto& xs, auto x) {
        return static_cast<std::size_t>(std::find(xs.begin(), xs.end(), x) - xs.begin());
    };
    for (const auto& r : rows)
        plot.beta[index_of(plot.dims, r.dim)][index_of(plot.parameters, r.h)]
                 [index_of(plot.levels, r.level)] = r.beta;
    return plot;
}

}  // namespace pbif
