#pragma once

#include <functional>
#include <span>

#include "gcalc/multigraph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// Node-and-edge homomorphisms between multigraphs. A morphism is a vertex
/// map V_f together with an edge map E_f sending every edge copy of h to an
/// edge copy of g with the same (image) endpoints; when both graphs carry k
/// labels, V_f must send label i to label i. Graphs with different label
/// counts are padded to the larger count first.

enum class MapKind {
  kAll,         ///< every node-and-edge homomorphism
  kSurjective,  ///< V_f and E_f both surjective
};

/// Visits every vertex map h -> g that extends to at least one node-and-edge
/// map of the requested kind. `edge_maps` is the number of compatible edge
/// maps for that vertex map (always positive).
using VertexMapVisitor =
    std::function<void(std::span<const int> vertex_map, const BigInt& edge_maps)>;
void for_each_vertex_map(const Multigraph& h, const Multigraph& g, MapKind kind,
                         const VertexMapVisitor& visit);

BigInt count_hom(const Multigraph& h, const Multigraph& g);
BigInt count_surj(const Multigraph& h, const Multigraph& g);
/// |Aut(h)| = |Surj(h, h)|, parallel-edge permutations included.
BigInt count_aut(const Multigraph& h);

/// hom(h, g) / |V(g)|^|V(h)|.
Rational t_combinatorial(const Multigraph& h, const Multigraph& g);

}  // namespace gcalc
