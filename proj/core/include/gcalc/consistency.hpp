#pragma once

#include <string>
#include <vector>

#include "gcalc/calculus.hpp"
#include "gcalc/linalg.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// π_{n,k}: rows and columns indexed by enumerate_Hn(n) in class order.
/// entries[g][h] relates the class g at scale p to the class h at scale kp.
struct ConsistencyMatrix {
  int n = 0;
  int k = 0;
  std::vector<Multigraph> classes;
  std::vector<std::vector<BigInt>> entries;

  friend bool operator==(const ConsistencyMatrix&, const ConsistencyMatrix&) = default;
};

/// entry(g, h) = (1/|Aut H|) * sum over ψ in Surj(H, G) of prod over v in
/// V(G) of the falling factorial (k)_{|ψ^{-1}(v)|}. Throws
/// VerificationFailure if a division is not exact.
ConsistencyMatrix pi_formula(int n, int k);

/// Fiber counts of the refinement map: for each g, the n-tuple x with
/// Γ(x) = g on p parts is split into k^{2n} tuples on kp parts; entry(g, h)
/// counts those landing in the class h. Needs p >= 2n.
ConsistencyMatrix pi_fiber_oracle(int n, int k, int p);

/// π_{n,kp->p} applied to a vector at scale kp; the result lives at scale
/// a.p / k.
ConsistencyVector apply_constraint(const ConsistencyVector& a, int k);

/// The matrix of π_{n,kp->p}: rows enumerate_Hnp(n, p), columns
/// enumerate_Hnp(n, kp).
RationalMatrix constraint_matrix(int n, int p, int k);

struct StructureReport {
  int n = 0;
  bool triangular = true;          ///< support only where H surjects onto G, upper triangular
  bool positive_diagonal = true;
  bool invertible = true;          ///< π_{n,kp->p} nonsingular for every 2n <= p <= p_max
  bool compatible = true;          ///< π_{k2} π_{k1} = π_{k1 k2}
  bool t_matrix_full_rank = true;  ///< rank of T_n(t(H,-)) over H in ℋ_n equals |ℋ_n|
  bool solution_dimension_ok = true;
  std::vector<std::string> lines;  ///< one human-readable line per check

  bool passed() const {
    return triangular && positive_diagonal && invertible && compatible && t_matrix_full_rank &&
           solution_dimension_ok;
  }
};

/// Runs the structure checks for ℋ_n with k in 1..k_max and p up to p_max.
/// The consistent-family dimension is computed over the scales dividing 4n.
StructureReport verify_structure(int n, int p_max, int k_max);

}  // namespace gcalc
