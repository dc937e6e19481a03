#pragma once

// Independent reference implementations used by the tests. Nothing here
// calls the library's search, canonisation or summation code; everything is
// the most literal brute force that fits in a few lines.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gcalc/graphon.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/rational.hpp"

namespace oracle {

using gcalc::BigInt;
using gcalc::Edge;
using gcalc::Multigraph;
using gcalc::Rational;
using gcalc::StepKernel;

inline std::vector<std::pair<int, int>> copies(const Multigraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      for (int c = 0; c < g.multiplicity(u, v); ++c) out.emplace_back(u, v);
    }
  }
  return out;
}

// Calls visit(map) for every map {0..n-1} -> {0..m-1}.
template <typename F>
void for_each_map(int n, int m, F&& visit) {
  std::vector<int> map(n, 0);
  if (m == 0) {
    if (n == 0) visit(map);
    return;
  }
  for (;;) {
    visit(map);
    int i = 0;
    while (i < n && ++map[i] == m) map[i++] = 0;
    if (i == n) return;
  }
}

inline bool fixes_labels(const Multigraph& h, const Multigraph& g, const std::vector<int>& map) {
  const int k = std::max(h.label_count(), g.label_count());
  const Multigraph hp = h.with_label_count(k);
  const Multigraph gp = g.with_label_count(k);
  for (int i = 0; i < k; ++i) {
    if (map[hp.labels()[i]] != gp.labels()[i]) return false;
  }
  return true;
}

// Counts node-and-edge maps by listing every vertex map and every edge map
// explicitly. Surjective mode checks both maps for surjectivity by set.
inline BigInt morphisms(const Multigraph& h_in, const Multigraph& g_in, bool surjective) {
  const int k = std::max(h_in.label_count(), g_in.label_count());
  const Multigraph h = h_in.with_label_count(k);
  const Multigraph g = g_in.with_label_count(k);
  const auto hc = copies(h);
  const auto gc = copies(g);
  BigInt total = 0;
  for_each_map(h.vertex_count(), g.vertex_count(), [&](const std::vector<int>& vmap) {
    if (!fixes_labels(h, g, vmap)) return;
    if (surjective) {
      std::set<int> image(vmap.begin(), vmap.end());
      if (static_cast<int>(image.size()) != g.vertex_count()) return;
    }
    for (const auto& [u, v] : hc) {
      if (g.multiplicity(vmap[u], vmap[v]) == 0) return;  // no edge map can exist
    }
    for_each_map(static_cast<int>(hc.size()), static_cast<int>(gc.size()), [&](const std::vector<int>& emap) {
      for (std::size_t e = 0; e < hc.size(); ++e) {
        const int a = vmap[hc[e].first];
        const int b = vmap[hc[e].second];
        const auto& target = gc[emap[e]];
        if (!((target.first == a && target.second == b) || (target.first == b && target.second == a))) return;
      }
      if (surjective) {
        std::set<int> hit(emap.begin(), emap.end());
        if (hit.size() != gc.size()) return;
      }
      total += 1;
    });
  });
  return total;
}

// Simple graphs only: vertex maps preserving adjacency.
inline BigInt adjacency_hom(const Multigraph& h, const Multigraph& g) {
  BigInt total = 0;
  for_each_map(h.vertex_count(), g.vertex_count(), [&](const std::vector<int>& map) {
    for (const Edge& e : h.edges()) {
      if (g.multiplicity(map[e.u], map[e.v]) == 0) return;
    }
    total += 1;
  });
  return total;
}

// Isomorphism fixing labels, by trying every permutation.
inline bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.label_count() != b.label_count() ||
      a.edge_count() != b.edge_count()) {
    return false;
  }
  std::vector<int> perm(a.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.label_count() && ok; ++i) ok = perm[a.labels()[i]] == b.labels()[i];
    for (int u = 0; u < a.vertex_count() && ok; ++u) {
      for (int v = u + 1; v < a.vertex_count() && ok; ++v) {
        ok = a.multiplicity(u, v) == b.multiplicity(perm[u], perm[v]);
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Cheap isomorphism invariant: vertex count and the sorted list of
// (degree, sorted incident multiplicities) per vertex.
inline std::vector<std::vector<int>> invariant(const Multigraph& g) {
  std::vector<std::vector<int>> rows;
  for (int u = 0; u < g.vertex_count(); ++u) {
    std::vector<int> row;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.multiplicity(u, v) > 0) row.push_back(g.multiplicity(u, v));
    }
    std::sort(row.begin(), row.end());
    row.insert(row.begin(), g.degree(u));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.push_back({g.vertex_count()});
  return rows;
}

// One representative per class of n-edge loop-free multigraphs without
// isolated vertices. Every multiset of n pairs on 2n vertices is generated
// and deduplicated with the permutation test above.
inline std::vector<Multigraph> brute_classes(int n) {
  if (n == 0) return {Multigraph()};
  const int v = 2 * n;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
  }
  std::map<std::vector<std::vector<int>>, std::vector<Multigraph>> buckets;
  std::vector<int> pick(n, 0);
  for (;;) {
    std::vector<Edge> edges;
    for (int i : pick) edges.push_back({pairs[i].first, pairs[i].second, 1});
    const Multigraph g = gcalc::strip_isolated(Multigraph(v, edges));
    auto& bucket = buckets[invariant(g)];
    const bool seen = std::any_of(bucket.begin(), bucket.end(), [&](const Multigraph& r) { return oracle::isomorphic(r, g); });
    if (!seen) bucket.push_back(g);
    int i = n - 1;
    while (i >= 0 && pick[i] == static_cast<int>(pairs.size()) - 1) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[i];
  }
  std::vector<Multigraph> out;
  for (auto& [key, bucket] : buckets) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

// (1/p^|V|) sum over all part maps of the edge product.
inline Rational density(const Multigraph& h, const StepKernel& f) {
  const int p = f.parts();
  Rational total = 0;
  for_each_map(h.vertex_count(), p, [&](const std::vector<int>& tau) {
    Rational prod = 1;
    for (const Edge& e : h.edges()) {
      for (int c = 0; c < e.multiplicity; ++c) prod *= f(tau[e.u], tau[e.v]);
    }
    total += prod;
  });
  return total / gcalc::pow(Rational(p), static_cast<unsigned>(h.vertex_count()));
}

// max over all S, T subsets of parts of |sum_{S x T} M| / p^2.
inline Rational cut_norm(const StepKernel& f) {
  const int p = f.parts();
  Rational best = 0;
  for (std::uint32_t s = 0; s < (1u << p); ++s) {
    for (std::uint32_t t = 0; t < (1u << p); ++t) {
      Rational sum = 0;
      for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) {
          if ((s >> a & 1) && (t >> b & 1)) sum += f(a, b);
        }
      }
      best = std::max(best, gcalc::abs(sum));
    }
  }
  return best / (p * p);
}

// ---- random instances -----------------------------------------------------

inline Rational random_rational(std::mt19937_64& rng, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d, hi * d);
  Rational x(num(rng), d);
  x.canonicalize();
  return x;
}

// Symmetric kernel with entries in [lo, hi].
inline StepKernel random_kernel(std::mt19937_64& rng, int p, int lo, int hi, int max_den = 6) {
  std::vector<Rational> cells(static_cast<std::size_t>(p) * p);
  for (int a = 0; a < p; ++a) {
    for (int b = a; b < p; ++b) {
      const Rational x = random_rational(rng, lo, hi, max_den);
      cells[a * p + b] = x;
      cells[b * p + a] = x;
    }
  }
  return StepKernel(p, std::move(cells));
}

inline StepKernel random_graphon(std::mt19937_64& rng, int p, int max_den = 6) {
  return random_kernel(rng, p, 0, 1, max_den);
}

// Entries strictly inside (0, 1).
inline StepKernel random_interior_graphon(std::mt19937_64& rng, int p) {
  std::vector<Rational> cells(static_cast<std::size_t>(p) * p);
  std::uniform_int_distribution<int> num(1, 9);
  for (int a = 0; a < p; ++a) {
    for (int b = a; b < p; ++b) {
      const Rational x(num(rng), 10);
      cells[a * p + b] = x;
      cells[b * p + a] = x;
    }
  }
  return StepKernel(p, std::move(cells));
}

inline Multigraph random_multigraph(std::mt19937_64& rng, int vertices, int max_mult, double density = 0.6) {
  std::vector<Edge> edges;
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<int> mult(1, max_mult);
  for (int u = 0; u < vertices; ++u) {
    for (int v = u + 1; v < vertices; ++v) {
      if (present(rng)) edges.push_back({u, v, mult(rng)});
    }
  }
  return Multigraph(vertices, edges);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// Every class in H_0 .. H_max as unlabelled representatives.
inline std::vector<Multigraph> classes_up_to(int max_edges) {
  std::vector<Multigraph> out;
  for (int n = 0; n <= max_edges; ++n) {
    for (const auto& g : gcalc::enumerate_Hn(n, 0)) out.push_back(g);
  }
  return out;
}

}  // namespace oracle
