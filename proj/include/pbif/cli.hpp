#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pbif {

/// Run one CLI invocation. Returns the process exit code: 0 on success,
/// 2 on argument errors, 1 on computation errors. Never calls exit(), so
/// tests can drive it in-process.
int dispatch(const std::vector<std::string>& args);
int dispatch(int argc, const char* const* argv);

/// Render one dimension of a plot CSV as a discrete-color SVG heatmap.
void render_svg(const std::filesystem::path& plot_csv, int dim, const std::filesystem::path& out);

}  // namespace pbif
