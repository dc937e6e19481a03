#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gcalc/density.hpp"
#include "gcalc/graphon.hpp"
#include "gcalc/linalg.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/quantum_graph.hpp"
#include "gcalc/rational.hpp"

namespace gcalc {

/// Nothing beyond the truncation: every higher coefficient is zero.
struct PolynomialTail {};

/// Degree norms beyond the truncation are s_n = c_{n mod P} q^{floor(n/P)}.
struct PeriodicGeometricTail {
  int period = 1;
  Rational ratio;                     ///< q >= 0
  std::vector<Rational> coefficients; ///< c_0 .. c_{P-1}, all >= 0
};

/// Only an upper bound is known: s_n <= C (n+1)^d ρ^n beyond the truncation.
struct EnvelopeTail {
  double scale = 0;
  int power = 0;
  double rate = 0;
};

/// No information beyond the truncation.
struct UnknownTail {};

using SeriesTail = std::variant<PolynomialTail, PeriodicGeometricTail, EnvelopeTail, UnknownTail>;

/// A graph power series sum a_H t_x(H, -) with scalar weights, given by its
/// terms up to `truncation` edges plus a description of the degree norms
/// s_n = sum over n-edge classes of |a_H| beyond that.
struct PowerSeries {
  int k = 0;
  PinAssignment pins;
  QuantumGraph terms;
  int truncation = 0;
  SeriesTail tail = PolynomialTail{};
};

/// Checks terms.k == k and that no term exceeds the truncation.
void validate(const PowerSeries& s);

/// s_n, exact. Throws InvalidArgument when the tail does not determine it.
Rational degree_norm(const PowerSeries& s, int n);

struct RadiusReport {
  /// Guaranteed lower bound (infinity for polynomials; 0 when nothing is known).
  double lower = 0;
  /// Exact value when the tail determines the limsup.
  std::optional<double> exact;
  /// Root-test estimate from the truncation, for unknown tails.
  std::optional<double> estimate;
  bool heuristic = false;
};

/// R with 1/R = limsup s_n^{1/n}.
RadiusReport radius_of_convergence(const PowerSeries& s);

struct SeriesValue {
  Rational value;                  ///< partial sum through degree N
  Rational sup;                    ///< sup |f|
  std::optional<Rational> tail_bound;  ///< sum over n > N of s_n sup^n, when exact
};

/// Partial sum through degree N (N <= truncation). The tail bound is
/// produced for polynomial and periodic-geometric tails; for the latter
/// sup|f| must be below the radius or InvalidArgument is thrown.
SeriesValue eval_series(const PowerSeries& s, const StepKernel& f, int N, bool with_tail = true);

/// Partial sums for degrees 0..N.
std::vector<Rational> partial_sums(const PowerSeries& s, const StepKernel& f, int N);

/// Smallest index from which the sequence decreases strictly to its end
/// (needs at least two such entries).
std::optional<int> strictly_decreasing_from(std::span<const Rational> values);

/// Sum and Cauchy product. Coefficients are exact up to the smaller
/// truncation; non-polynomial tails are combined into an envelope bound.
PowerSeries series_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_multiply(const PowerSeries& a, const PowerSeries& b);

/// Exact derivative oracle: receives the directions g_1..g_m and returns
/// d^m F(0; g_1, ..., g_m); an empty span asks for F(0).
using DerivativeOracle = std::function<Rational(std::span<const StepKernel>)>;

struct TaylorReport {
  int N = 0;
  int p = 0;
  QuantumGraph coefficients;
  /// One entry per degree 0..N describing what was verified.
  std::vector<std::string> residual;
};

/// Recovers the a_H with F = sum a_H t(H, -) from derivative values at 0
/// along basis-edge tuples on p >= 2N parts. Throws SingularSystem if the
/// system is singular and VerificationFailure if the oracle is not symmetric
/// under part relabelling and tuple reordering.
TaylorReport taylor_recover(const DerivativeOracle& oracle, int N, int p);

/// DerivativeOracle backed by gateaux_exact for a quantum graph.
DerivativeOracle quantum_oracle(const QuantumGraph& F);

struct RemainderReport {
  Rational remainder;  ///< F(f) - sum_{n<=N} d^nF(0; f,..,f)/n!
  Rational grid_min;   ///< min over the grid of d^{N+1}F(c f; f,..,f)/(N+1)!
  Rational grid_max;
  bool within = false;
};

/// Taylor remainder of a quantum-graph functional at f, compared with the
/// range of the (N+1)-th derivative term over c in {0, 1/m, ..., 1}.
RemainderReport taylor_remainder(const QuantumGraph& F, const StepKernel& f, int N, int grid = 16);

struct WhitneyMatrix {
  int n = 0;
  int k = 0;
  int p = 0;
  std::vector<Multigraph> classes;  ///< enumerate_Hn(n, k)
  RationalMatrix matrix;            ///< |Surj(H,G)| / p^{|V0(H)|}, rows H
};

/// Smallest p > 2n + 2/min|x_i - x_j| coprime to every pin denominator.
int whitney_parts(int n, const PinAssignment& pins, int k);

WhitneyMatrix whitney_matrix(int n, int k, const PinAssignment& pins);

/// A quantum graph taking value values[j] at points[j]. Separating graphs are
/// searched among simple graphs with up to max_separation_edges edges; if a
/// pair cannot be separated ResourceLimitExceeded is thrown.
QuantumGraph lagrange_interpolate(std::span<const StepKernel> points, std::span<const Rational> values);

/// First simple graph (class order) whose densities at f and g differ.
std::optional<Multigraph> separating_graph(const StepKernel& f, const StepKernel& g);

}  // namespace gcalc
