#include "bfsbias/edge_list.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace bfsbias {

namespace {

[[noreturn]] void parse_error(const std::filesystem::path& path, std::size_t line_no,
                              const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

// Parses one nonnegative integer starting at *pos (skipping leading blanks);
// advances *pos past the digits. Returns false if no digits are present.
bool parse_id(const std::string& line, std::size_t* pos, std::int64_t* out) {
  while (*pos < line.size() && std::isspace(static_cast<unsigned char>(line[*pos])))
    ++*pos;
  const char* begin = line.data() + *pos;
  const char* end = line.data() + line.size();
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  if (ec != std::errc{} || ptr == begin) return false;
  *pos += static_cast<std::size_t>(ptr - begin);
  return true;
}

}  // namespace

EdgeListResult read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open edge list: " + path.string());

  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  EdgeListResult result;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = 0;
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
    if (pos == line.size() || line[pos] == '#') continue;

    std::int64_t u, v;
    if (!parse_id(line, &pos, &u) || !parse_id(line, &pos, &v))
      parse_error(path, line_no, "expected two nonnegative integer ids");
    if (u < 0 || v < 0)
      parse_error(path, line_no, "vertex ids must be nonnegative");
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
    if (pos != line.size())
      parse_error(path, line_no, "trailing characters after edge");

    if (u == v) {
      ++result.dropped_self_loops;
      continue;
    }
    raw.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (in.bad())
    throw std::runtime_error("i/o error reading edge list: " + path.string());

  // Duplicate edges (in either orientation) collapse to one.
  std::sort(raw.begin(), raw.end());
  const std::size_t before = raw.size();
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  result.dropped_duplicates = before - raw.size();

  // External ids -> dense 0..n-1, in ascending external order.
  std::vector<std::int64_t>& ids = result.external_ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto to_internal = [&ids](std::int64_t ext) {
    return static_cast<VertexId>(
        std::lower_bound(ids.begin(), ids.end(), ext) - ids.begin());
  };
  result.ids_were_dense =
      ids.empty() || (ids.front() == 0 &&
                      ids.back() == static_cast<std::int64_t>(ids.size()) - 1);

  std::vector<std::vector<VertexId>> adj(ids.size());
  for (const auto& [u, v] : raw) {
    const VertexId iu = to_internal(u), iv = to_internal(v);
    adj[iu].push_back(iv);
    adj[iv].push_back(iu);
  }
  result.graph = Graph(std::move(adj), /*simple=*/true);
  return result;
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  if (!g.simple())
    throw std::invalid_argument("write_edge_list: graph must be simple");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.size());
  for (std::size_t u = 0; u < g.order(); ++u)
    for (VertexId v : g.neighbors(static_cast<VertexId>(u)))
      if (u < v) edges.emplace_back(static_cast<VertexId>(u), v);
  std::sort(edges.begin(), edges.end());

  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
  out.flush();
  if (!out)
    throw std::runtime_error("i/o error writing edge list: " + path.string());
}

void write_id_map(const EdgeListResult& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << "external_id,internal_id\n";
  for (std::size_t i = 0; i < r.external_ids.size(); ++i)
    out << r.external_ids[i] << ',' << i << '\n';
  out.flush();
  if (!out)
    throw std::runtime_error("i/o error writing id map: " + path.string());
}

}  // namespace bfsbias
