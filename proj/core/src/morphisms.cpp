#include "gcalc/morphisms.hpp"

#include <algorithm>
#include <vector>

#include "gcalc/errors.hpp"

namespace gcalc {
namespace {

class MapSearch {
 public:
  MapSearch(const Multigraph& h, const Multigraph& g, MapKind kind, const VertexMapVisitor& visit)
      : h_(h), g_(g), kind_(kind), visit_(visit), image_(h.vertex_count(), -1),
        cover_(g.vertex_count(), 0) {
    // Labelled vertices are forced; the rest are placed in an order that keeps
    // each new vertex adjacent to already placed ones where possible.
    for (int i = 0; i < h.label_count(); ++i) {
      const int v = h.labels()[i];
      image_[v] = g.labels()[i];
      ++cover_[image_[v]];
    }
    std::vector<bool> placed(h.vertex_count(), false);
    for (int v : h.labels()) placed[v] = true;
    for (int step = 0; step < h.vertex_count() - h.label_count(); ++step) {
      int best = -1;
      int best_links = -1;
      for (int v = 0; v < h.vertex_count(); ++v) {
        if (placed[v]) continue;
        int links = 0;
        for (int w = 0; w < h.vertex_count(); ++w) {
          if (placed[w] && h.multiplicity(v, w) > 0) ++links;
        }
        if (links > best_links) {
          best = v;
          best_links = links;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
    uncovered_ = static_cast<int>(std::count(cover_.begin(), cover_.end(), 0));
  }

  void run() {
    if (!labelled_edges_ok()) return;
    extend(0);
  }

 private:
  bool labelled_edges_ok() const {
    for (int a : h_.labels()) {
      for (int b : h_.labels()) {
        if (a < b && h_.multiplicity(a, b) > 0 && g_.multiplicity(image_[a], image_[b]) == 0) {
          return false;
        }
      }
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (depth == order_.size()) {
      finish();
      return;
    }
    const int v = order_[depth];
    const int remaining = static_cast<int>(order_.size() - depth);
    for (int target = 0; target < g_.vertex_count(); ++target) {
      if (kind_ == MapKind::kSurjective) {
        const int still_uncovered = uncovered_ - (cover_[target] == 0 ? 1 : 0);
        if (still_uncovered > remaining - 1) continue;
      }
      bool ok = true;
      for (int w = 0; w < h_.vertex_count() && ok; ++w) {
        if (image_[w] >= 0 && h_.multiplicity(v, w) > 0 && g_.multiplicity(target, image_[w]) == 0) {
          ok = false;
        }
      }
      if (!ok) continue;
      image_[v] = target;
      if (cover_[target]++ == 0) --uncovered_;
      extend(depth + 1);
      if (--cover_[target] == 0) ++uncovered_;
      image_[v] = -1;
    }
  }

  void finish() {
    if (kind_ == MapKind::kSurjective && uncovered_ > 0) return;
    // Group the edge copies of h by the vertex pair of g they land on.
    const int n = g_.vertex_count();
    std::vector<int> load(static_cast<std::size_t>(n) * n, 0);
    for (const Edge& e : h_.edges()) {
      const int a = std::min(image_[e.u], image_[e.v]);
      const int b = std::max(image_[e.u], image_[e.v]);
      load[a * n + b] += e.multiplicity;
    }
    BigInt edge_maps = 1;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const int m = g_.multiplicity(a, b);
        const int c = load[a * n + b];
        if (kind_ == MapKind::kAll) {
          if (c > 0) edge_maps *= pow(BigInt(m), static_cast<unsigned>(c));
        } else {
          if (m > 0) edge_maps *= surjection_count(c, m);
        }
        if (edge_maps == 0) return;
      }
    }
    visit_(image_, edge_maps);
  }

  const Multigraph& h_;
  const Multigraph& g_;
  MapKind kind_;
  const VertexMapVisitor& visit_;
  std::vector<int> image_;
  std::vector<int> cover_;
  std::vector<int> order_;
  int uncovered_ = 0;
};

}  // namespace

void for_each_vertex_map(const Multigraph& h_in, const Multigraph& g_in, MapKind kind,
                         const VertexMapVisitor& visit) {
  const int k = std::max(h_in.label_count(), g_in.label_count());
  const Multigraph h = h_in.with_label_count(k);
  const Multigraph g = g_in.with_label_count(k);
  if (g.vertex_count() == 0) {
    if (h.vertex_count() == 0) {
      const std::vector<int> empty;
      visit(empty, BigInt(1));
    }
    return;
  }
  MapSearch(h, g, kind, visit).run();
}

BigInt count_hom(const Multigraph& h, const Multigraph& g) {
  BigInt total = 0;
  for_each_vertex_map(h, g, MapKind::kAll,
                      [&](std::span<const int>, const BigInt& edge_maps) { total += edge_maps; });
  return total;
}

BigInt count_surj(const Multigraph& h, const Multigraph& g) {
  BigInt total = 0;
  for_each_vertex_map(h, g, MapKind::kSurjective,
                      [&](std::span<const int>, const BigInt& edge_maps) { total += edge_maps; });
  return total;
}

BigInt count_aut(const Multigraph& h) { return count_surj(h, h); }

Rational t_combinatorial(const Multigraph& h, const Multigraph& g) {
  if (g.vertex_count() == 0) throw InvalidArgument("t(H,G) needs a non-empty target graph");
  if (h.label_count() != 0 || g.label_count() != 0) {
    throw InvalidArgument("t(H,G) is defined for unlabelled graphs");
  }
  Rational t(count_hom(h, g), pow(BigInt(g.vertex_count()), static_cast<unsigned>(h.vertex_count())));
  t.canonicalize();
  return t;
}

}  // namespace gcalc
