#include "gcalc/density.hpp"

#include <numeric>

#include "edge_product_sum.hpp"
#include "gcalc/errors.hpp"
#include "pins.hpp"

namespace gcalc {

int part_of_point(const Rational& x, int p) {
  if (x <= 0 || x > 1) throw InvalidArgument("pin " + to_string(x) + " is outside (0, 1]");
  const Rational scaled = x * p;
  if (scaled.get_den() == 1 && scaled < p) {
    throw InvalidArgument("pin " + to_string(x) + " lies on a part boundary of the " +
                          std::to_string(p) + "-part partition");
  }
  // ceil(p x) - 1
  BigInt q = scaled.get_num() / scaled.get_den();
  if (scaled.get_den() == 1) q -= 1;
  return static_cast<int>(q.get_si());
}

namespace detail {

std::vector<int> pinned_parts(const Multigraph& g, const PinAssignment& pins, int p,
                              std::span<const int> own_parts) {
  std::vector<int> parts(g.vertex_count(), -1);
  for (int i = 0; i < g.label_count(); ++i) {
    const auto it = pins.find(i + 1);
    if (it == pins.end()) throw InvalidArgument("label " + std::to_string(i + 1) + " has no pin");
    for (int q : own_parts) part_of_point(it->second, q);
    if (it->second <= 0 || it->second > 1) part_of_point(it->second, 1);  // throws
    // A boundary of the common refinement is harmless once every kernel that
    // is read sees the pin inside one of its parts: both neighbours agree.
    const Rational scaled = it->second * p;
    BigInt ceil = scaled.get_num() / scaled.get_den();
    if (ceil * scaled.get_den() != scaled.get_num()) ceil += 1;
    parts[g.labels()[i]] = static_cast<int>(ceil.get_si()) - 1;
  }
  return parts;
}

}  // namespace detail

Rational density(const Multigraph& h, const StepKernel& f) {
  if (h.label_count() != 0) throw InvalidArgument("density() takes an unlabelled graph");
  return labelled_density(h, f, {});
}

Rational labelled_density(const Multigraph& h, const StepKernel& f, const PinAssignment& pins) {
  const std::vector<int> own{f.parts()};
  const std::vector<int> parts = detail::pinned_parts(h, pins, f.parts(), own);
  std::vector<detail::EdgeFactor> factors;
  for (const Edge& e : h.edges()) factors.push_back({e.u, e.v, 0, e.multiplicity});
  const detail::EdgeProductSum sum(f.parts(), std::span<const StepKernel>(&f, 1));
  return sum.evaluate(h.vertex_count(), factors, parts);
}

Rational eval_decorated(const DecoratedDensity& d, const StepKernel& f) {
  const auto copies = d.graph.edge_copies();
  if (d.edge_kernels.size() != copies.size()) {
    throw InvalidArgument("decorated density needs one kernel per edge copy");
  }
  for (const auto& [label, x] : d.pins) {
    if (label < 1 || label > d.graph.label_count()) {
      throw InvalidArgument("pin for label " + std::to_string(label) + " which the graph does not carry");
    }
  }

  // Kernel 0 is the argument; concrete kernels follow in edge order.
  std::vector<StepKernel> kernels{f};
  std::vector<detail::EdgeFactor> factors;
  bool uses_arg = false;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const auto [u, v] = copies[i];
    if (std::holds_alternative<ArgSlot>(d.edge_kernels[i])) {
      uses_arg = true;
      factors.push_back({u, v, 0, 1});
    } else {
      kernels.push_back(std::get<StepKernel>(d.edge_kernels[i]));
      factors.push_back({u, v, static_cast<int>(kernels.size()) - 1, 1});
    }
  }
  std::vector<int> own;
  for (std::size_t i = uses_arg ? 0 : 1; i < kernels.size(); ++i) own.push_back(kernels[i].parts());
  const auto refined = common_refinement(kernels);
  const int p = refined.front().parts();
  const std::vector<int> parts = detail::pinned_parts(d.graph, d.pins, p, own);
  const detail::EdgeProductSum sum(p, refined);
  return sum.evaluate(d.graph.vertex_count(), factors, parts);
}

bool multiplicativity_check(const Multigraph& h1, const Multigraph& h2, const StepKernel& f) {
  return density(disjoint_union(h1, h2), f) == density(h1, f) * density(h2, f);
}

bool tensor_multiplicativity_check(const Multigraph& h, const StepKernel& f, const StepKernel& g) {
  return density(h, tensor_product(f, g)) == density(h, f) * density(h, g);
}

}  // namespace gcalc
