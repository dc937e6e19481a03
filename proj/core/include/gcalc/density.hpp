#pragma once

#include <map>
#include <variant>
#include <vector>

#include "gcalc/graphon.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// Points x_i in [0,1] for labels i (1-based). Labels a graph does not carry
/// are ignored, which matches padding the graph with labelled isolated
/// vertices.
using PinAssignment = std::map<int, Rational>;

/// 0-based index of the part ((a-1)/p, a/p] containing x. Points with p*x an
/// integer below p lie on a boundary and are rejected, as is anything
/// outside (0, 1].
int part_of_point(const Rational& x, int p);

/// t(h, f) for unlabelled h; the empty graph has density 1.
Rational density(const Multigraph& h, const StepKernel& f);

/// t_x(h, f): labelled vertices sit at their pins, the rest are integrated.
Rational labelled_density(const Multigraph& h, const StepKernel& f, const PinAssignment& pins);

/// Marks an edge copy that evaluates the argument kernel.
struct ArgSlot {
  friend bool operator==(ArgSlot, ArgSlot) { return true; }
};

using EdgeKernel = std::variant<ArgSlot, StepKernel>;

/// A density whose edge copies carry individual kernels. edge_kernels is
/// indexed like graph.edge_copies().
struct DecoratedDensity {
  Multigraph graph;
  std::vector<EdgeKernel> edge_kernels;
  PinAssignment pins;
};

/// Evaluates d with every ArgSlot edge reading f. Operands are refined to
/// the lcm of their part counts; pins are checked against every kernel's own
/// partition.
Rational eval_decorated(const DecoratedDensity& d, const StepKernel& f);

/// t(h1 ⊔ h2, f) == t(h1, f) t(h2, f), computed without factorising.
bool multiplicativity_check(const Multigraph& h1, const Multigraph& h2, const StepKernel& f);

/// t(h, f ⊗ g) == t(h, f) t(h, g).
bool tensor_multiplicativity_check(const Multigraph& h, const StepKernel& f, const StepKernel& g);

}  // namespace gcalc
