// Canonical labelling by ordered-partition refinement and individualisation,
// pruned with automorphisms found between equal leaves. Multiplicities act as
// edge colours. Labelled vertices
// are fixed singleton cells placed first in label order, so keys respect
// label-pointwise isomorphism. Unlabelled isolated vertices are
// interchangeable and only contribute a count to the key.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

#include "gcalc/multigraph.hpp"

namespace gcalc {
namespace {

using Cell = std::vector<int>;
using Signature = std::vector<int>;

class Canonicalizer {
 public:
  explicit Canonicalizer(const Multigraph& g) : g_(g) {
    for (int v : g.labels()) fixed_.push_back(v);
    Cell core;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.is_labelled(v)) continue;
      if (g.degree(v) == 0) {
        isolated_.push_back(v);
      } else {
        core.push_back(v);
      }
    }
    std::vector<Cell> cells;
    if (!core.empty()) cells.push_back(std::move(core));
    std::vector<int> path;
    search(std::move(cells), path);
  }

  // best_order_[pos] = original vertex, covering fixed + core vertices.
  const std::vector<int>& order() const { return best_order_; }
  const std::vector<int>& isolated() const { return isolated_; }
  const std::vector<std::uint8_t>& adjacency_code() const { return best_code_; }

 private:
  Signature signature(int v, const std::vector<Cell>& cells) const {
    Signature sig;
    auto add_cell = [&](const Cell& cell) {
      std::vector<int> mults;
      for (int w : cell) {
        if (const int m = g_.multiplicity(v, w)) mults.push_back(m);
      }
      std::sort(mults.begin(), mults.end());
      sig.push_back(static_cast<int>(mults.size()));
      sig.insert(sig.end(), mults.begin(), mults.end());
    };
    for (int f : fixed_) add_cell(Cell{f});
    for (const Cell& cell : cells) add_cell(cell);
    return sig;
  }

  // Splits cells until every vertex in a cell has the same signature with
  // respect to the current partition. Sub-cells are ordered by signature.
  void refine(std::vector<Cell>& cells) const {
    for (;;) {
      std::vector<Cell> next;
      for (const Cell& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::map<Signature, Cell> groups;
        for (int v : cell) groups[signature(v, cells)].push_back(v);
        for (auto& [sig, members] : groups) next.push_back(std::move(members));
      }
      const bool stable = next.size() == cells.size();
      cells = std::move(next);
      if (stable) return;
    }
  }

  std::vector<std::uint8_t> encode(const std::vector<int>& order) const {
    std::vector<std::uint8_t> code;
    const std::size_t n = order.size();
    code.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int m = g_.multiplicity(order[i], order[j]);
        code.push_back(static_cast<std::uint8_t>(m >> 8));
        code.push_back(static_cast<std::uint8_t>(m & 0xff));
      }
    }
    return code;
  }

  // Orbits of the vertices of cell under the stored automorphisms that fix
  // every vertex of path.
  std::vector<int> orbit_roots(const Cell& cell, const std::vector<int>& path) const {
    std::vector<int> parent(g_.vertex_count());
    for (int v = 0; v < g_.vertex_count(); ++v) parent[v] = v;
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& gamma : automorphisms_) {
      const bool fixes = std::all_of(path.begin(), path.end(), [&](int v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (int v : cell) parent[find(v)] = find(gamma[v]);
    }
    std::vector<int> roots;
    for (int v : cell) roots.push_back(find(v));
    return roots;
  }

  void record_leaf(std::vector<int> order) {
    auto code = encode(order);
    if (found_ && code == best_code_) {
      std::vector<int> gamma(g_.vertex_count());
      for (int v = 0; v < g_.vertex_count(); ++v) gamma[v] = v;
      for (std::size_t i = 0; i < order.size(); ++i) gamma[best_order_[i]] = order[i];
      automorphisms_.push_back(std::move(gamma));
      return;
    }
    if (!found_ || code < best_code_) {
      found_ = true;
      best_code_ = std::move(code);
      best_order_ = std::move(order);
    }
  }

  void search(std::vector<Cell> cells, std::vector<int>& path) {
    refine(cells);
    auto open = std::find_if(cells.begin(), cells.end(), [](const Cell& c) { return c.size() > 1; });
    if (open == cells.end()) {
      std::vector<int> order = fixed_;
      for (const Cell& c : cells) order.push_back(c.front());
      record_leaf(std::move(order));
      return;
    }
    const std::size_t at = static_cast<std::size_t>(open - cells.begin());
    const Cell cell = *open;
    std::vector<int> tried_roots;
    for (int v : cell) {
      // Orbits are recomputed because the subtree just explored may have
      // produced new automorphisms.
      const auto roots = orbit_roots(cell, path);
      const std::size_t idx = static_cast<std::size_t>(std::find(cell.begin(), cell.end(), v) - cell.begin());
      bool seen = false;
      for (int t : tried_roots) {
        const std::size_t tidx = static_cast<std::size_t>(std::find(cell.begin(), cell.end(), t) - cell.begin());
        if (roots[tidx] == roots[idx]) seen = true;
      }
      if (seen) continue;
      tried_roots.push_back(v);

      std::vector<Cell> child(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(at));
      child.push_back(Cell{v});
      Cell rest;
      for (int w : cell) {
        if (w != v) rest.push_back(w);
      }
      child.push_back(std::move(rest));
      child.insert(child.end(), cells.begin() + static_cast<std::ptrdiff_t>(at) + 1, cells.end());
      path.push_back(v);
      search(std::move(child), path);
      path.pop_back();
    }
  }

  const Multigraph& g_;
  std::vector<int> fixed_;
  std::vector<int> isolated_;
  bool found_ = false;
  std::vector<std::uint8_t> best_code_;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> automorphisms_;
};

void put16(std::vector<std::uint8_t>& out, int value) {
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value & 0xff));
}

}  // namespace

CanonicalKey canonical_key(const Multigraph& g) {
  Canonicalizer canon(g);
  CanonicalKey key;
  put16(key.bytes, g.vertex_count());
  put16(key.bytes, g.label_count());
  put16(key.bytes, static_cast<int>(canon.isolated().size()));
  const auto& code = canon.adjacency_code();
  key.bytes.insert(key.bytes.end(), code.begin(), code.end());
  return key;
}

Multigraph canonical_form(const Multigraph& g) {
  Canonicalizer canon(g);
  std::vector<int> perm(g.vertex_count(), -1);
  int pos = 0;
  for (int v : canon.order()) perm[v] = pos++;
  for (int v : canon.isolated()) perm[v] = pos++;
  return g.relabelled(perm);
}

bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
      a.label_count() != b.label_count()) {
    return false;
  }
  return canonical_key(a) == canonical_key(b);
}

std::string CanonicalKey::hex() const {
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (auto b : bytes) os << std::setw(2) << static_cast<int>(b);
  return os.str();
}

}  // namespace gcalc
