#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gcalc/multigraph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// Closed interval [lo, hi] every cell of a kernel is declared to lie in.
struct Interval {
  Rational lo;
  Rational hi;
};

/// A symmetric step function on [0,1]^2, constant on the cells
/// ((a-1)/p, a/p] x ((b-1)/p, b/p] of the uniform p-part partition.
/// Indices are 0-based in this API: cell (a, b) with 0 <= a, b < p.
class StepKernel {
 public:
  /// `cells` is the p x p matrix in row-major order; it must be symmetric and,
  /// when `bounds` is given, every entry must lie inside it.
  StepKernel(int parts, std::vector<Rational> cells, std::optional<Interval> bounds = std::nullopt);

  static StepKernel constant(const Rational& value, int parts = 1);
  static StepKernel zero(int parts) { return constant(Rational(0), parts); }
  /// The step kernel f^G of a graph: cell (a, b) = multiplicity of {a, b}.
  static StepKernel from_graph(const Multigraph& g);

  int parts() const { return parts_; }
  const Rational& operator()(int a, int b) const { return cells_[a * parts_ + b]; }
  const std::vector<Rational>& cells() const { return cells_; }
  const std::optional<Interval>& declared_bounds() const { return bounds_; }

  /// Membership in the graphon space: every entry in [0, 1].
  bool is_graphon() const;
  bool is_zero() const;
  /// Largest |entry|.
  Rational sup_norm() const;

  StepKernel operator+(const StepKernel& rhs) const;
  StepKernel operator-(const StepKernel& rhs) const;
  StepKernel operator*(const Rational& scale) const;

  /// Cell-wise equality after refining both operands to a common partition.
  bool same_function(const StepKernel& rhs) const;
  friend bool operator==(const StepKernel& a, const StepKernel& b) {
    return a.parts_ == b.parts_ && a.cells_ == b.cells_;
  }

 private:
  int parts_;
  std::vector<Rational> cells_;
  std::optional<Interval> bounds_;
};

/// e^p_{(a,b)}: indicator of the two off-diagonal cells (a,b) and (b,a).
/// Indices are 1-based as in the usual notation; requires 1 <= a < b <= p.
StepKernel basis_edge(int p, int a, int b);

/// Same function on the k*p-part partition.
StepKernel refine(const StepKernel& f, int k);

/// Both kernels refined to the lcm of their part counts.
std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& f, const StepKernel& g);

/// Refines every kernel to the lcm of all part counts.
std::vector<StepKernel> common_refinement(std::span<const StepKernel> kernels);

/// (1/p^2) * sum |M[a][b]|.
Rational l1_norm(const StepKernel& f);

/// sup over measurable S, T of |integral of f over S x T|, exact.
Rational cut_norm(const StepKernel& f);

/// (f ⊗ g) with parts identified lexicographically: (a, c) -> a * p_g + c.
StepKernel tensor_product(const StepKernel& f, const StepKernel& g);

/// f^σ with M'[a][b] = M[σ(a)][σ(b)]; sigma is a 0-based permutation.
StepKernel permute_parts(const StepKernel& f, std::span<const int> sigma);

/// Whether f + εg stays in the graphon space for all small ε > 0. Requires
/// f to be a graphon; operands are refined to a common partition first.
bool is_admissible(const StepKernel& f, const StepKernel& g);

}  // namespace gcalc
