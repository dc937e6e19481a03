#pragma once

#include <map>

#include "gcalc/density.hpp"
#include "gcalc/graphon.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// A finite rational combination of k-labelled multigraphs. Terms are stored
/// under the canonical key of the graph with unlabelled isolated vertices
/// removed (they do not change any density); zero coefficients are dropped.
class QuantumGraph {
 public:
  struct Term {
    Multigraph graph;
    Rational coeff;
  };

  explicit QuantumGraph(int k = 0) : k_(k) {}

  /// coeff * g, with k = g.label_count().
  static QuantumGraph monomial(const Multigraph& g, const Rational& coeff = Rational(1));
  /// coeff * (empty k-labelled graph): the constant function.
  static QuantumGraph constant(const Rational& coeff, int k = 0);

  int label_count() const { return k_; }
  const std::map<CanonicalKey, Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest edge count present, or -1 for the zero element.
  int max_degree() const;

  /// Adds coeff * g. g may carry fewer labels than k (it is padded).
  void add(const Multigraph& g, const Rational& coeff);
  /// Coefficient of the class of g (0 when absent).
  Rational coefficient(const Multigraph& g) const;

  /// Terms with exactly n edges.
  QuantumGraph slice(int n) const;

  QuantumGraph operator+(const QuantumGraph& rhs) const;
  QuantumGraph operator-(const QuantumGraph& rhs) const;
  QuantumGraph operator*(const Rational& scale) const;

  friend bool operator==(const QuantumGraph& a, const QuantumGraph& b);

 private:
  int k_;
  std::map<CanonicalKey, Term> terms_;
};

/// Bilinear extension of glue_product; the result has the larger label count.
QuantumGraph quantum_multiply(const QuantumGraph& a, const QuantumGraph& b);

/// sum of coeff * t_x(H, f).
Rational eval_quantum(const QuantumGraph& F, const StepKernel& f, const PinAssignment& pins = {});

}  // namespace gcalc
