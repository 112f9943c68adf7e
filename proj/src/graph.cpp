#include "mcprune/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mcprune/errors.hpp"

namespace mcprune {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::uint64_t> labels) {
  if (!labels.empty() && labels.size() != n) {
    throw ArgumentError("label count does not match vertex count");
  }
  Graph g;
  g.adj_.resize(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ArgumentError("edge endpoint out of range");
    }
    if (u == v) continue;
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  std::size_t total = 0;
  for (auto& list : g.adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.shrink_to_fit();
    total += list.size();
  }
  g.num_edges_ = total / 2;
  g.labels_ = std::move(labels);
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edge-list" || name == "edgelist" || name == "el") return GraphFormat::EdgeList;
  if (name == "dimacs" || name == "clq") return GraphFormat::Dimacs;
  throw ArgumentError("unknown graph format '" + std::string(name) + "'");
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_uint(std::string_view tok, std::uint64_t& value) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

Graph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '%' || toks[0][0] == '#') continue;
    if (toks.size() < 2) throw ParseError(lineno, "expected two vertex ids");
    std::uint64_t u = 0, v = 0;
    if (!parse_uint(toks[0], u) || !parse_uint(toks[1], v)) {
      throw ParseError(lineno, "vertex ids must be non-negative integers");
    }
    // Any further columns are weights and are ignored.
    raw.emplace_back(u, v);
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto index_of = [&](std::uint64_t id) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(index_of(u), index_of(v));
  const std::size_t n = ids.size();
  return Graph::from_edges(n, edges, std::move(ids));
}

Graph load_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] == "c" || toks[0][0] == '%') continue;
    if (toks[0] == "p") {
      if (have_header) throw FormatError("line " + std::to_string(lineno) + ": duplicate problem line");
      if (toks.size() != 4 || (toks[1] != "edge" && toks[1] != "col")) {
        throw ParseError(lineno, "expected 'p edge <n> <m>'");
      }
      if (!parse_uint(toks[2], n) || !parse_uint(toks[3], m)) {
        throw ParseError(lineno, "bad vertex or edge count");
      }
      have_header = true;
      edges.reserve(m);
    } else if (toks[0] == "e") {
      if (!have_header) throw FormatError("line " + std::to_string(lineno) + ": edge before problem line");
      std::uint64_t u = 0, v = 0;
      if (toks.size() < 3 || !parse_uint(toks[1], u) || !parse_uint(toks[2], v)) {
        throw ParseError(lineno, "expected 'e <u> <v>'");
      }
      if (u < 1 || v < 1 || u > n || v > n) {
        throw FormatError("line " + std::to_string(lineno) + ": vertex id outside 1.." + std::to_string(n));
      }
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(toks[0]) + "'");
    }
  }
  if (!have_header) throw FormatError("missing 'p edge' problem line");
  if (edges.size() != m) {
    throw FormatError("problem line declares " + std::to_string(m) + " edges but " +
                      std::to_string(edges.size()) + " were listed");
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph load_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::EdgeList ? load_edge_list(in) : load_dimacs(in);
}

Graph load_graph_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_graph(in, format);
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format) {
  if (format == GraphFormat::Dimacs) {
    out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  } else {
    for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
  }
}

void write_graph_file(const std::string& path, const Graph& g, GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_graph(out, g, format);
  if (!out) throw IoError("write failed for '" + path + "'");
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  const std::size_t n = g.num_vertices();
  std::vector<char> kept(n, 0);
  for (Vertex v : keep) {
    if (v >= n) throw ArgumentError("vertex " + std::to_string(v) + " out of range");
    kept[v] = 1;
  }
  std::vector<Vertex> new_id(n, 0);
  std::vector<std::uint64_t> labels;
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!kept[v]) continue;
    new_id[v] = next++;
    labels.push_back(g.label(v));
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    if (!kept[u]) continue;
    for (Vertex v : g.neighbors(u)) {
      if (u < v && kept[v]) edges.emplace_back(new_id[u], new_id[v]);
    }
  }
  return Graph::from_edges(next, edges, std::move(labels));
}

std::vector<Vertex> k_core_vertices(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < k) {
      removed[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(v)) {
      if (removed[u]) continue;
      if (--deg[u] < k) {
        removed[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v]) out.push_back(v);
  }
  return out;
}

Graph k_core_prune(const Graph& g, std::size_t k) {
  auto keep = k_core_vertices(g, k);
  return induced_subgraph(g, keep);
}

CoreDecomposition core_decomposition(const Graph& g) {
  // Bucket-based peeling (Batagelj–Zaversnik).
  const std::size_t n = g.num_vertices();
  CoreDecomposition out;
  out.core.assign(n, 0);
  out.order.reserve(n);
  if (n == 0) return out;

  std::size_t max_deg = 0;
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    std::size_t count = b;
    b = start;
    start += count;
  }
  std::vector<Vertex> vert(n);
  std::vector<std::size_t> pos(n);
  for (Vertex v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = vert[i];
    out.order.push_back(v);
    out.core[v] = static_cast<std::uint32_t>(deg[v]);
    for (Vertex u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::size_t du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        Vertex w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return out;
}

Coloring greedy_coloring(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.num_vertices();
  if (order.size() != n) throw ArgumentError("coloring order must list every vertex once");
  Coloring c;
  c.colors.assign(n, 0);
  // mark[color] == stamp means the color is taken by a neighbor of the current vertex
  std::vector<std::size_t> mark(n + 2, 0);
  std::size_t stamp = 0;
  for (Vertex v : order) {
    if (v >= n || c.colors[v] != 0) throw ArgumentError("coloring order is not a permutation");
    ++stamp;
    for (Vertex u : g.neighbors(v)) {
      if (c.colors[u] != 0) mark[c.colors[u]] = stamp;
    }
    std::uint32_t color = 1;
    while (mark[color] == stamp) ++color;
    c.colors[v] = color;
    c.num_colors = std::max(c.num_colors, color);
  }
  return c;
}

Coloring greedy_coloring(const Graph& g) {
  std::vector<Vertex> order(g.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  return greedy_coloring(g, order);
}

}  // namespace mcprune
