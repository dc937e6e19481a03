#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gcalc {

/// One entry of an edge list: unordered pair {u, v} repeated `multiplicity` times.
struct Edge {
  int u = 0;
  int v = 0;
  int multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A loop-free undirected multigraph on vertices 0..n-1 with an optional
/// injective labelling. labels()[i] is the vertex carrying label i+1.
///
/// Values are immutable; the transformations below return new graphs.
class Multigraph {
 public:
  /// The empty graph (no vertices, no labels).
  Multigraph() = default;

  /// Validates: endpoints in range, u != v, multiplicities >= 1, labels
  /// injective and in range. Repeated pairs in `edges` accumulate.
  Multigraph(int vertex_count, const std::vector<Edge>& edges, std::vector<int> labels = {});

  int vertex_count() const { return n_; }
  /// Number of edges counted with multiplicity.
  int edge_count() const { return edge_count_; }
  int label_count() const { return static_cast<int>(labels_.size()); }

  int multiplicity(int u, int v) const;
  /// Sum of multiplicities of edges at v.
  int degree(int v) const;

  const std::vector<int>& labels() const { return labels_; }
  /// 1-based label carried by v, if any.
  std::optional<int> label_of(int v) const;
  bool is_labelled(int v) const { return label_of(v).has_value(); }

  /// Distinct vertex pairs (u < v) with their multiplicities, ascending.
  std::vector<Edge> edges() const;
  /// Each parallel copy listed separately, in the order of edges(). This is
  /// the edge indexing used by decorated densities and derivatives.
  std::vector<std::pair<int, int>> edge_copies() const;

  bool has_isolated_unlabelled() const;
  bool is_simple() const;

  /// Same graph with one more edge copy between u and v.
  Multigraph with_edge(int u, int v, int multiplicity = 1) const;
  /// Same graph with `count` extra unlabelled isolated vertices.
  Multigraph with_isolated(int count) const;
  /// Pads to k labels by appending labelled isolated vertices for the missing
  /// labels (the embedding of k'-labelled graphs into k-labelled ones).
  Multigraph with_label_count(int k) const;
  /// Graph with vertex v renamed to perm[v]. perm must be a permutation.
  Multigraph relabelled(const std::vector<int>& perm) const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

  /// Named shapes used throughout tests and examples.
  static Multigraph single_edge();                  // K_2
  static Multigraph multi_edge(int multiplicity);   // D_m: m parallel edges
  static Multigraph complete(int n);                // K_n
  static Multigraph path(int edge_count);           // P with `edge_count` edges
  static Multigraph cycle(int n);
  static Multigraph star(int leaves);               // S_k = K_{1,k}, centre 0
  static Multigraph matching(int edge_count);       // A_2^{⊔n}

 private:
  int n_ = 0;
  int edge_count_ = 0;
  std::vector<std::uint16_t> adjacency_;  // n_ * n_, symmetric, zero diagonal
  std::vector<int> labels_;
};

/// Totally ordered byte string identifying an isomorphism class. For labelled
/// graphs the isomorphism must fix every label.
struct CanonicalKey {
  std::vector<std::uint8_t> bytes;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

  std::string hex() const;
};

CanonicalKey canonical_key(const Multigraph& g);

/// Representative of g's class with vertices renumbered canonically: labelled
/// vertices first in label order, then the non-isolated unlabelled vertices,
/// then unlabelled isolated vertices.
Multigraph canonical_form(const Multigraph& g);

bool isomorphic(const Multigraph& a, const Multigraph& b);

/// Drops every unlabelled isolated vertex; labels and edges are kept.
Multigraph strip_isolated(const Multigraph& g);

/// Every multiplicity replaced by 1.
Multigraph simplify(const Multigraph& g);

/// Disjoint union with equally labelled vertices identified. The operand
/// with fewer labels is first padded with labelled isolated vertices.
Multigraph glue_product(const Multigraph& g, const Multigraph& h);

/// Disjoint union ignoring labels of h (h must be unlabelled).
Multigraph disjoint_union(const Multigraph& g, const Multigraph& h);

/// Pads g with isolated vertices up to exactly p vertices.
Multigraph pad_to_vertices(const Multigraph& g, int p);

/// Total order used for every listing of classes: (edge count of the
/// simplification, vertex count, canonical key). If H surjects onto G and
/// they are not isomorphic then G precedes H.
bool class_order_less(const Multigraph& a, const Multigraph& b);

/// The k-labelled classes with n edges and no unlabelled isolated vertices
/// (for k = 0: no isolated vertices at all), one canonical representative
/// per class, sorted by class_order_less.
std::vector<Multigraph> enumerate_Hn(int n, int k = 0);

/// Unlabelled classes with n edges and exactly p vertices (isolated vertices
/// allowed), in the order of their stripped forms.
std::vector<Multigraph> enumerate_Hnp(int n, int p);

/// Human-readable edge list, e.g. "V=3 {0-1, 1-2x2} L=[0]".
std::string describe(const Multigraph& g);

}  // namespace gcalc
