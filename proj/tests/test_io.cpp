#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "pbif/io.hpp"

using namespace pbif;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static std::mt19937_64 rng(std::random_device{}());
    auto dir = fs::temp_directory_path() / ("pbif-io-" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("format/parse doubles round-trip, including infinities") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> uni(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double v = uni(rng);
        CHECK(parse_double(format_double(v)) == v);
    }
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(format_double(-inf) == "-inf");
    CHECK(parse_double("inf") == inf);
    CHECK(parse_double(" -inf ") == -inf);
    CHECK(format_double(0.1) == "0.1");
    CHECK_THROWS(parse_double("1.2.3"));
    CHECK_THROWS(parse_double(""));
}

TEST_CASE("grid CSV round-trip") {
    auto dir = temp_dir();
    ScalarField2D f;
    f.x_min = -3;
    f.y_min = -2;
    f.dx = 0.5;
    f.dy = 0.25;
    f.nx = 3;
    f.ny = 2;
    f.values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    write_grid_csv(dir / "g.csv", f);

    auto g = read_grid_csv(dir / "g.csv");
    CHECK(g.nx == 3);
    CHECK(g.ny == 2);
    CHECK(g.dx == 0.5);
    CHECK(g.values == f.values);

    auto text = slurp(dir / "g.csv");
    CHECK(text.rfind("# -3 -2 0.5 0.25 3 2\n", 0) == 0);

    std::ofstream(dir / "bad.csv") << "no header\n1,2\n";
    CHECK_THROWS(read_grid_csv(dir / "bad.csv"));
    fs::remove_all(dir);
}

TEST_CASE("points CSV round-trip") {
    auto dir = temp_dir();
    PointCloud c;
    c.dim = 2;
    c.coords = {0.5, -1.25, 3.0, 4.0};
    write_points_csv(dir / "p.csv", c);
    auto d = read_points_csv(dir / "p.csv");
    CHECK(d.dim == 2);
    CHECK(d.coords == c.coords);
    CHECK_THROWS(read_points_csv(dir / "missing.csv"));
    fs::remove_all(dir);
}

TEST_CASE("diagram CSV round-trip keeps essential classes") {
    auto dir = temp_dir();
    const double inf = std::numeric_limits<double>::infinity();
    PersistenceDiagram diagram;
    diagram.direction = Direction::superlevel;
    diagram.pairs = {{0, 1.0, -inf}, {0, 1.0, 0.7788}, {1, 0.9, 0.4}};
    write_diagram_csv(dir / "d.csv", diagram);

    auto text = slurp(dir / "d.csv");
    CHECK(text.find("-inf") != std::string::npos);
    CHECK(text.rfind("dim,birth,death\n", 0) == 0);

    auto back = read_diagram_csv(dir / "d.csv");
    REQUIRE(back.pairs.size() == 3);
    CHECK(back.direction == Direction::superlevel);
    CHECK(back.pairs[0].death == -inf);
    CHECK(back.pairs[1].death == 0.7788);
    fs::remove_all(dir);
}

TEST_CASE("plot CSV round-trip in both header flavors") {
    auto dir = temp_dir();
    BifurcationPlot plot;
    plot.provenance = "analytical";
    plot.parameters = {-1.0, 0.0, 1.0};
    plot.levels = {0.5, 1.0};
    plot.dims = {0, 1};
    plot.beta = {{{1, 2}, {1, 1}, {1, 1}}, {{0, 0}, {0, 0}, {0, 0}}};
    write_plot_csv(dir / "plot.csv", plot);

    auto text = slurp(dir / "plot.csv");
    CHECK(text.rfind("h,L,dim,beta\n", 0) == 0);
    // 3 params x 2 levels x 2 dims rows + header.
    CHECK(std::count(text.begin(), text.end(), '\n') == 13);

    auto back = read_plot_csv(dir / "plot.csv");
    CHECK(back.parameters == plot.parameters);
    CHECK(back.levels == plot.levels);
    CHECK(back.beta == plot.beta);

    BifurcationPlot err = plot;
    err.provenance = "error";
    write_plot_csv(dir / "err.csv", err);
    CHECK(slurp(dir / "err.csv").rfind("h,L,dim,err\n", 0) == 0);
    auto eback = read_plot_csv(dir / "err.csv");
    CHECK(eback.provenance == "error");

    std::ofstream(dir / "empty.csv") << "";
    CHECK_THROWS(read_plot_csv(dir / "empty.csv"));
    fs::remove_all(dir);
}
