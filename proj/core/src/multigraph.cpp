#include "gcalc/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "gcalc/errors.hpp"

namespace gcalc {

Multigraph::Multigraph(int vertex_count, const std::vector<Edge>& edges, std::vector<int> labels)
    : n_(vertex_count), labels_(std::move(labels)) {
  if (vertex_count < 0) throw InvalidArgument("negative vertex count");
  adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw InvalidArgument("edge endpoint out of range");
    }
    if (e.u == e.v) throw InvalidArgument("self loops are not allowed");
    if (e.multiplicity < 1) throw InvalidArgument("edge multiplicity must be at least 1");
    const int total = adjacency_[e.u * n_ + e.v] + e.multiplicity;
    if (total > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidArgument("edge multiplicity too large");
    }
    adjacency_[e.u * n_ + e.v] = static_cast<std::uint16_t>(total);
    adjacency_[e.v * n_ + e.u] = static_cast<std::uint16_t>(total);
    edge_count_ += e.multiplicity;
  }
  std::vector<bool> seen(n_, false);
  for (int v : labels_) {
    if (v < 0 || v >= n_) throw InvalidArgument("label refers to a missing vertex");
    if (seen[v]) throw InvalidArgument("labels must be injective");
    seen[v] = true;
  }
}

int Multigraph::multiplicity(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidArgument("vertex out of range");
  return adjacency_[u * n_ + v];
}

int Multigraph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += multiplicity(v, w);
  return d;
}

std::optional<int> Multigraph::label_of(int v) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == v) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

std::vector<Edge> Multigraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (const int m = adjacency_[u * n_ + v]) out.push_back({u, v, m});
    }
  }
  return out;
}

std::vector<std::pair<int, int>> Multigraph::edge_copies() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (const Edge& e : edges()) {
    for (int i = 0; i < e.multiplicity; ++i) out.emplace_back(e.u, e.v);
  }
  return out;
}

bool Multigraph::has_isolated_unlabelled() const {
  for (int v = 0; v < n_; ++v) {
    if (degree(v) == 0 && !is_labelled(v)) return true;
  }
  return false;
}

bool Multigraph::is_simple() const {
  return std::all_of(adjacency_.begin(), adjacency_.end(), [](auto m) { return m <= 1; });
}

Multigraph Multigraph::with_edge(int u, int v, int multiplicity) const {
  auto list = edges();
  list.push_back({u, v, multiplicity});
  return Multigraph(n_, list, labels_);
}

Multigraph Multigraph::with_isolated(int count) const {
  if (count < 0) throw InvalidArgument("negative isolated vertex count");
  return Multigraph(n_ + count, edges(), labels_);
}

Multigraph Multigraph::with_label_count(int k) const {
  if (k < label_count()) throw InvalidArgument("cannot drop labels by padding");
  auto labels = labels_;
  int n = n_;
  while (static_cast<int>(labels.size()) < k) labels.push_back(n++);
  return Multigraph(n, edges(), std::move(labels));
}

Multigraph Multigraph::relabelled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw InvalidArgument("permutation arity mismatch");
  std::vector<bool> hit(n_, false);
  for (int x : perm) {
    if (x < 0 || x >= n_ || hit[x]) throw InvalidArgument("not a permutation");
    hit[x] = true;
  }
  std::vector<Edge> list;
  for (const Edge& e : edges()) list.push_back({perm[e.u], perm[e.v], e.multiplicity});
  std::vector<int> labels;
  for (int v : labels_) labels.push_back(perm[v]);
  return Multigraph(n_, list, std::move(labels));
}

Multigraph Multigraph::single_edge() { return Multigraph(2, {{0, 1, 1}}); }

Multigraph Multigraph::multi_edge(int multiplicity) {
  return Multigraph(2, {{0, 1, multiplicity}});
}

Multigraph Multigraph::complete(int n) {
  std::vector<Edge> list;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) list.push_back({u, v, 1});
  }
  return Multigraph(n, list);
}

Multigraph Multigraph::path(int edge_count) {
  std::vector<Edge> list;
  for (int i = 0; i < edge_count; ++i) list.push_back({i, i + 1, 1});
  return Multigraph(edge_count + 1, list);
}

Multigraph Multigraph::cycle(int n) {
  if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
  std::vector<Edge> list;
  for (int i = 0; i < n; ++i) list.push_back({i, (i + 1) % n, 1});
  return Multigraph(n, list);
}

Multigraph Multigraph::star(int leaves) {
  std::vector<Edge> list;
  for (int i = 1; i <= leaves; ++i) list.push_back({0, i, 1});
  return Multigraph(leaves + 1, list);
}

Multigraph Multigraph::matching(int edge_count) {
  std::vector<Edge> list;
  for (int i = 0; i < edge_count; ++i) list.push_back({2 * i, 2 * i + 1, 1});
  return Multigraph(2 * edge_count, list);
}

Multigraph strip_isolated(const Multigraph& g) {
  std::vector<int> keep;
  std::vector<int> index(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 0 || g.is_labelled(v)) {
      index[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  }
  std::vector<Edge> list;
  for (const Edge& e : g.edges()) list.push_back({index[e.u], index[e.v], e.multiplicity});
  std::vector<int> labels;
  for (int v : g.labels()) labels.push_back(index[v]);
  return Multigraph(static_cast<int>(keep.size()), list, std::move(labels));
}

Multigraph simplify(const Multigraph& g) {
  std::vector<Edge> list = g.edges();
  for (Edge& e : list) e.multiplicity = 1;
  return Multigraph(g.vertex_count(), list, g.labels());
}

Multigraph glue_product(const Multigraph& g_in, const Multigraph& h_in) {
  const int k = std::max(g_in.label_count(), h_in.label_count());
  const Multigraph g = g_in.with_label_count(k);
  const Multigraph h = h_in.with_label_count(k);

  // h's labelled vertices map onto g's equally labelled ones; the rest are new.
  std::vector<int> target(h.vertex_count(), -1);
  for (int i = 0; i < k; ++i) target[h.labels()[i]] = g.labels()[i];
  int n = g.vertex_count();
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (target[v] < 0) target[v] = n++;
  }
  std::vector<Edge> list = g.edges();
  for (const Edge& e : h.edges()) list.push_back({target[e.u], target[e.v], e.multiplicity});
  return Multigraph(n, list, g.labels());
}

Multigraph disjoint_union(const Multigraph& g, const Multigraph& h) {
  if (h.label_count() != 0) throw InvalidArgument("disjoint_union expects an unlabelled right operand");
  std::vector<Edge> list = g.edges();
  const int shift = g.vertex_count();
  for (const Edge& e : h.edges()) list.push_back({e.u + shift, e.v + shift, e.multiplicity});
  return Multigraph(g.vertex_count() + h.vertex_count(), list, g.labels());
}

Multigraph pad_to_vertices(const Multigraph& g, int p) {
  if (p < g.vertex_count()) throw InvalidArgument("graph has more vertices than requested");
  return g.with_isolated(p - g.vertex_count());
}

std::string describe(const Multigraph& g) {
  std::ostringstream os;
  os << "V=" << g.vertex_count() << " {";
  bool first = true;
  for (const Edge& e : g.edges()) {
    if (!first) os << ", ";
    first = false;
    os << e.u << '-' << e.v;
    if (e.multiplicity > 1) os << 'x' << e.multiplicity;
  }
  os << '}';
  if (g.label_count() > 0) {
    os << " L=[";
    for (int i = 0; i < g.label_count(); ++i) os << (i ? "," : "") << g.labels()[i];
    os << ']';
  }
  return os.str();
}

}  // namespace gcalc
