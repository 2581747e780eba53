#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "geokernels/space.hpp"
#include "geokernels/spaces.hpp"

namespace geokernels::io {

/// First nonempty line "N", then "i j [w]" per edge; '#' starts a comment.
GraphData parse_graph_edgelist(std::string_view text);

/// Plain OFF with triangular faces only.
MeshData parse_off_mesh(std::string_view text);

/// One point per row, comma separated, validated against `space`.
PointSet parse_points_csv(std::string_view text, const DiscreteSpectrumSpace& space);

/// Rectangular real matrix, comma separated. Blank lines are skipped.
Eigen::MatrixXd parse_matrix_csv(std::string_view text);

/// Shortest round-trip decimal per entry, "," between columns, "\n" after each row.
std::string format_matrix_csv(const Eigen::MatrixXd& matrix);

/// Writes through a temporary file and renames, so a failed write leaves no
/// partial output behind.
void write_matrix_csv(const Eigen::MatrixXd& matrix, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace geokernels::io
