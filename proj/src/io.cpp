#include "geokernels/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "geokernels/errors.hpp"

namespace geokernels::io {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Nonempty lines with '#' comments stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    const auto end = s.find_first_of(" \t\r", start);
    out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return out;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = s.find(',', pos);
    out.push_back(trim(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

double to_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a number, got '" + std::string(token) + "'");
  }
  return v;
}

std::size_t to_index(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

GraphData parse_graph_edgelist(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing node count");
  GraphData g;
  {
    const auto tokens = split_whitespace(lines.front().text);
    if (tokens.size() != 1) throw ParseError(lines.front().number, "first line must be the node count");
    g.num_nodes = to_index(tokens[0], lines.front().number);
    if (g.num_nodes == 0) throw ParseError(lines.front().number, "graph needs at least one node");
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [number, line] = lines[k];
    const auto tokens = split_whitespace(line);
    if (tokens.size() < 2 || tokens.size() > 3) throw ParseError(number, "expected 'i j [w]'");
    std::size_t i = to_index(tokens[0], number);
    std::size_t j = to_index(tokens[1], number);
    const double w = tokens.size() == 3 ? to_double(tokens[2], number) : 1.0;
    if (i >= g.num_nodes || j >= g.num_nodes) {
      throw ParseError(number, "node index out of range for " + std::to_string(g.num_nodes) + " nodes");
    }
    if (i == j) throw ParseError(number, "self-loop at node " + std::to_string(i));
    if (!std::isfinite(w) || w < 0.0) throw ParseError(number, "edge weight must be finite and nonnegative");
    if (i > j) std::swap(i, j);
    if (!seen.emplace(i, j).second) {
      throw ParseError(number, "duplicate edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    g.edges.push_back({i, j, w});
  }
  return g;
}

MeshData parse_off_mesh(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty() || split_whitespace(lines[0].text).front() != "OFF") {
    throw ParseError(lines.empty() ? 1 : lines[0].number, "missing OFF header");
  }
  // Counts may share the header line ("OFF V F E") or follow it.
  auto header = split_whitespace(lines[0].text);
  std::size_t cursor = 1;
  std::vector<std::string_view> counts(header.begin() + 1, header.end());
  std::size_t counts_line = lines[0].number;
  if (counts.empty()) {
    if (lines.size() < 2) throw ParseError(lines[0].number, "missing 'V F E' counts line");
    counts = split_whitespace(lines[1].text);
    counts_line = lines[1].number;
    cursor = 2;
  }
  if (counts.size() != 3) throw ParseError(counts_line, "expected 'V F E' counts");
  const std::size_t nv = to_index(counts[0], counts_line);
  const std::size_t nf = to_index(counts[1], counts_line);
  to_index(counts[2], counts_line);

  if (lines.size() - cursor != nv + nf) {
    throw ParseError(counts_line, "counts mismatch: header announces " + std::to_string(nv) + " vertices and " +
                                      std::to_string(nf) + " faces, file has " +
                                      std::to_string(lines.size() - cursor) + " data lines");
  }
  MeshData mesh;
  for (std::size_t k = 0; k < nv; ++k) {
    const auto& [number, line] = lines[cursor + k];
    const auto tokens = split_whitespace(line);
    if (tokens.size() < 3) throw ParseError(number, "vertex line needs three coordinates");
    mesh.vertices.push_back({to_double(tokens[0], number), to_double(tokens[1], number), to_double(tokens[2], number)});
    for (double c : mesh.vertices.back()) {
      if (!std::isfinite(c)) throw ParseError(number, "non-finite vertex coordinate");
    }
  }
  cursor += nv;
  for (std::size_t k = 0; k < nf; ++k) {
    const auto& [number, line] = lines[cursor + k];
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) throw ParseError(number, "empty face line");
    const std::size_t arity = to_index(tokens[0], number);
    if (arity != 3) throw ParseError(number, "non-triangular face with " + std::to_string(arity) + " vertices");
    if (tokens.size() < 4) throw ParseError(number, "face line needs three vertex indices");
    std::array<std::size_t, 3> face{};
    for (std::size_t c = 0; c < 3; ++c) {
      face[c] = to_index(tokens[c + 1], number);
      if (face[c] >= nv) throw ParseError(number, "vertex index " + std::to_string(face[c]) + " out of range");
    }
    const auto& a = mesh.vertices[face[0]];
    const auto& b = mesh.vertices[face[1]];
    const auto& c = mesh.vertices[face[2]];
    const Eigen::Vector3d ab(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
    const Eigen::Vector3d ac(c[0] - a[0], c[1] - a[1], c[2] - a[2]);
    const Eigen::Vector3d bc = ac - ab;
    const double longest = std::max({ab.squaredNorm(), ac.squaredNorm(), bc.squaredNorm()});
    if (!(longest > 0.0) || ab.cross(ac).norm() <= 1e-12 * longest) {
      throw ParseError(number, "degenerate face (zero area)");
    }
    mesh.faces.push_back(face);
  }
  mesh.validate();
  return mesh;
}

PointSet parse_points_csv(std::string_view text, const DiscreteSpectrumSpace& space) {
  const auto lines = content_lines(text);
  const auto width = static_cast<Eigen::Index>(space.point_width());
  PointSet out(static_cast<Eigen::Index>(lines.size()), width);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto& [number, line] = lines[r];
    const auto fields = split_commas(line);
    if (static_cast<Eigen::Index>(fields.size()) != width) {
      throw ParseError(number, space.name() + " points need " + std::to_string(width) + " values, got " +
                                   std::to_string(fields.size()));
    }
    std::vector<double> raw(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) raw[c] = to_double(fields[c], number);
    std::vector<double> canonical;
    try {
      canonical = space.validate_point(raw);
    } catch (const ValidationError& e) {
      throw ParseError(number, e.what());
    }
    std::copy(canonical.begin(), canonical.end(), out.row(static_cast<Eigen::Index>(r)).data());
  }
  return out;
}

Eigen::MatrixXd parse_matrix_csv(std::string_view text) {
  const auto lines = content_lines(text);
  std::vector<std::vector<double>> rows;
  for (const auto& [number, line] : lines) {
    const auto fields = split_commas(line);
    if (!rows.empty() && fields.size() != rows.front().size()) {
      throw ParseError(number, "expected " + std::to_string(rows.front().size()) + " columns, got " +
                                   std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (const auto f : fields) row.push_back(to_double(f, number));
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

std::string format_matrix_csv(const Eigen::MatrixXd& matrix) {
  std::string out;
  char buf[32];
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c) out += ',';
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), matrix(r, c));
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const Eigen::MatrixXd& matrix, const std::filesystem::path& path) {
  const std::string text = format_matrix_csv(matrix);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace geokernels::io
