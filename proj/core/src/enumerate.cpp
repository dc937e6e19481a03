#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/multigraph.hpp"

namespace gcalc {
namespace {

using OrderKey = std::tuple<int, int, CanonicalKey>;

OrderKey order_key(const Multigraph& g) {
  const Multigraph core = strip_isolated(g);
  return {static_cast<int>(core.edges().size()), core.vertex_count(), canonical_key(core)};
}

void sort_classes(std::vector<Multigraph>& graphs) {
  std::vector<OrderKey> keys;
  keys.reserve(graphs.size());
  for (const auto& g : graphs) keys.push_back(order_key(g));
  std::vector<std::size_t> idx(graphs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  std::vector<Multigraph> sorted;
  sorted.reserve(graphs.size());
  for (auto i : idx) sorted.push_back(std::move(graphs[i]));
  graphs = std::move(sorted);
}

}  // namespace

bool class_order_less(const Multigraph& a, const Multigraph& b) {
  return order_key(a) < order_key(b);
}

namespace {

std::vector<Multigraph> generate_classes(int n, int k) {
  const auto cap = resource_limits().max_enumerated_classes;

  std::vector<int> labels(k);
  std::iota(labels.begin(), labels.end(), 0);
  std::vector<Multigraph> level{Multigraph(k, {}, labels)};

  // Every class with m edges arises from a class with m-1 edges by adding one
  // edge between existing vertices and/or up to two new vertices: deleting an
  // edge and then the unlabelled vertices it isolated inverts the step.
  for (int m = 1; m <= n; ++m) {
    std::map<CanonicalKey, Multigraph> next;
    for (const Multigraph& g : level) {
      const int nv = g.vertex_count();
      auto add = [&](int u, int v, int new_vertices) {
        Multigraph h = g.with_isolated(new_vertices).with_edge(u, v);
        auto key = canonical_key(h);
        if (!next.contains(key)) {
          next.emplace(std::move(key), canonical_form(h));
          require_within_limit(static_cast<std::int64_t>(next.size()), cap,
                               "enumerated isomorphism classes");
        }
      };
      for (int u = 0; u < nv; ++u) {
        for (int v = u + 1; v < nv; ++v) add(u, v, 0);
        add(u, nv, 1);
      }
      add(nv, nv + 1, 2);
    }
    level.clear();
    for (auto& [key, g] : next) level.push_back(std::move(g));
  }
  sort_classes(level);
  return level;
}

}  // namespace

std::vector<Multigraph> enumerate_Hn(int n, int k) {
  if (n < 0 || k < 0) throw InvalidArgument("enumerate_Hn needs n >= 0 and k >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Multigraph>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({n, k}); it != cache.end()) return it->second;
  }
  auto classes = generate_classes(n, k);
  std::lock_guard lock(mutex);
  cache.emplace(std::pair{n, k}, classes);
  return classes;
}

std::vector<Multigraph> enumerate_Hnp(int n, int p) {
  if (n < 0) throw InvalidArgument("enumerate_Hnp needs n >= 0");
  if (p < 2) throw InvalidArgument("enumerate_Hnp needs p >= 2");
  std::vector<Multigraph> out;
  for (const Multigraph& h : enumerate_Hn(n, 0)) {
    if (h.vertex_count() <= p) out.push_back(pad_to_vertices(h, p));
  }
  return out;
}

}  // namespace gcalc
