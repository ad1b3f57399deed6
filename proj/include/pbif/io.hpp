#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pbif/bifurcation.hpp"
#include "pbif/diagram.hpp"
#include "pbif/field.hpp"
#include "pbif/simplicial.hpp"

namespace pbif {

/// Shortest round-trip decimal form; infinities print as "inf"/"-inf".
std::string format_double(double v);
double parse_double(std::string_view text);

// Grid CSV: "# x_min y_min dx dy nx ny" header, then ny rows of nx values.
void write_grid_csv(const std::filesystem::path& path, const ScalarField2D& field);
ScalarField2D read_grid_csv(const std::filesystem::path& path);

// Point CSV: one point per row, d columns, no header.
void write_points_csv(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_points_csv(const std::filesystem::path& path);

// Diagram CSV: "dim,birth,death"; essential deaths use the inf literals.
void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram);
PersistenceDiagram read_diagram_csv(const std::filesystem::path& path);

// Betti vector CSV: "L,beta".
void write_betti_csv(const std::filesystem::path& path, const BettiVector& vec);

// Long-format plot CSV: "h,L,dim,beta" (error plots use "err" as the last
// column), rows ordered by (dim, parameter, level).
void write_plot_csv(const std::filesystem::path& path, const BifurcationPlot& plot);
BifurcationPlot read_plot_csv(const std::filesystem::path& path);

}  // namespace pbif
