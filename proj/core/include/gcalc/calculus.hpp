#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gcalc/density.hpp"
#include "gcalc/graphon.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/quantum_graph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// d^m F(base; directions[0], ..., directions[m-1]). Pins are used when F is
/// a labelled quantum graph.
struct DerivativeRequest {
  StepKernel base = StepKernel::zero(1);
  std::vector<StepKernel> directions;
  PinAssignment pins;
};

/// Exact m-th Gateaux derivative of a quantum-graph functional. For each term
/// H the value is the sum, over injective assignments of the m directions to
/// edge copies of H, of the decorated density with the remaining copies
/// reading the base kernel. m = 0 gives F(base). Admissibility is not
/// required: the formula is the multilinear extension.
Rational gateaux_exact(const QuantumGraph& F, const DerivativeRequest& req);

/// As gateaux_exact, but refuses directions that are not admissible at the
/// base (throws InvalidArgument).
Rational gateaux_exact_strict(const QuantumGraph& F, const DerivativeRequest& req);

/// Nested central differences with step h: sum over signs s in {-1,1}^m of
/// (prod s) F(base + h sum s_i g_i), divided by (2h)^m. The functional values
/// themselves are exact (h is converted exactly); only the final quotient is
/// rounded. Supports m <= 3.
double gateaux_numeric(const QuantumGraph& F, const DerivativeRequest& req, double step);

/// Γ_{n,p}: the multigraph on p vertices with one edge copy {a_l, b_l} per
/// entry of x (1-based, a_l < b_l).
Multigraph gamma(int n, int p, std::span<const std::pair<int, int>> x);

/// A tuple x with Γ(x) = h: the edge copies of h shifted to 1-based indices.
std::vector<std::pair<int, int>> gamma_preimage(const Multigraph& h);

/// An element of X_{n,p}: one value per class of enumerate_Hnp(n, p), in
/// that order.
struct ConsistencyVector {
  int n = 0;
  int p = 0;
  std::vector<Multigraph> classes;
  std::vector<Rational> entries;

  /// Entry of the class of h (h may have any vertex numbering; isolated
  /// vertices are padded up to p).
  const Rational& at(const Multigraph& h) const;
};

struct ExtractOptions {
  /// Re-evaluates every entry on a second tuple of the same orbit and throws
  /// VerificationFailure if the values differ.
  bool check_well_defined = true;
};

/// T_{n,p}(F): entry h is d^n F(0; e_{x_1}, ..., e_{x_n}) for x with Γ(x) = h.
ConsistencyVector extract_T(const QuantumGraph& F, int n, int p, ExtractOptions options = {});

struct SidorenkoReport {
  Rational lhs;          ///< t(S_k, f)
  Rational rhs;          ///< t(K_2, f)^k
  bool holds = false;    ///< lhs >= rhs
  bool equality = false; ///< lhs == rhs
  /// Every part's row mean equals t(K_2, f).
  bool regular = false;
};

SidorenkoReport sidorenko_star_check(int k, const StepKernel& f);

}  // namespace gcalc
