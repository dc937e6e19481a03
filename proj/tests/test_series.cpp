#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gcalc/calculus.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/morphisms.hpp"
#include "gcalc/series.hpp"
#include "oracles.hpp"

using namespace gcalc;

namespace {

QuantumGraph random_quantum(std::mt19937_64& rng, int max_edges, int k = 0) {
  QuantumGraph F(k);
  const auto pool = k == 0 ? oracle::classes_up_to(max_edges) : [&] {
    std::vector<Multigraph> out;
    for (int n = 0; n <= max_edges; ++n) {
      for (const auto& g : enumerate_Hn(n, k)) out.push_back(g);
    }
    return out;
  }();
  for (const auto& h : pool) {
    if (rng() % 2 == 0) F.add(h, oracle::random_rational(rng, -3, 3, 4));
  }
  return F;
}

Multigraph disjoint_copies(const Multigraph& g, int m) {
  Multigraph out;
  for (int i = 0; i < m; ++i) out = disjoint_union(out, g);
  return out;
}

// Sum over m <= M of 2^{-m} t(K_3^{⊔m}, -), with the matching periodic tail.
PowerSeries geometric_series(int M) {
  PowerSeries s;
  s.truncation = 3 * M;
  for (int m = 0; m <= M; ++m) s.terms.add(disjoint_copies(Multigraph::complete(3), m), Rational(1, 1 << m));
  s.tail = PeriodicGeometricTail{3, Rational(1, 2), {1, 0, 0}};
  return s;
}

}  // namespace

TEST_CASE("quantum graph storage") {
  QuantumGraph F;
  F.add(Multigraph::single_edge(), 2);
  F.add(Multigraph::single_edge().with_isolated(2), 1);
  CHECK(F.terms().size() == 1);
  CHECK(F.coefficient(Multigraph::single_edge()) == 3);
  F.add(Multigraph::single_edge(), -3);
  CHECK(F.is_zero());
  CHECK(F.max_degree() == -1);
  CHECK((QuantumGraph::monomial(Multigraph::path(2)) * 0).is_zero());
}

TEST_CASE("quantum products") {
  const QuantumGraph k2 = QuantumGraph::monomial(Multigraph::single_edge());
  const QuantumGraph sq = quantum_multiply(k2, k2);
  CHECK(sq.terms().size() == 1);
  CHECK(sq.coefficient(Multigraph::matching(2)) == 1);

  std::mt19937_64 rng(1);
  const QuantumGraph one = QuantumGraph::constant(1);
  for (int trial = 0; trial < 10; ++trial) {
    const QuantumGraph F = random_quantum(rng, 2);
    const QuantumGraph G = random_quantum(rng, 2);
    CHECK(quantum_multiply(F, one) == F);
    CHECK(quantum_multiply(F, G) == quantum_multiply(G, F));
    const StepKernel f = oracle::random_graphon(rng, 1 + trial % 3);
    CHECK(eval_quantum(quantum_multiply(F, G), f) == eval_quantum(F, f) * eval_quantum(G, f));
  }
}

TEST_CASE("labelled evaluation is an algebra homomorphism") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 8; ++trial) {
    const QuantumGraph F = random_quantum(rng, 2, 1);
    const QuantumGraph G = random_quantum(rng, 1, 1);
    const StepKernel f = oracle::random_graphon(rng, 2 + trial % 2);
    const PinAssignment pins{{1, Rational(2 * trial + 1, 17)}};
    CHECK(eval_quantum(quantum_multiply(F, G), f, pins) == eval_quantum(F, f, pins) * eval_quantum(G, f, pins));
  }
}

TEST_CASE("graded convolution") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const QuantumGraph F = random_quantum(rng, 3);
    const QuantumGraph G = random_quantum(rng, 3);
    const QuantumGraph FG = quantum_multiply(F, G);
    for (int n = 0; n <= 6; ++n) {
      QuantumGraph expected;
      for (int i = 0; i <= n; ++i) expected = expected + quantum_multiply(F.slice(i), G.slice(n - i));
      CHECK(FG.slice(n) == expected);
    }
  }
}

TEST_CASE("eval_quantum") {
  QuantumGraph F;
  F.add(Multigraph::single_edge(), 3);
  F.add(Multigraph::complete(3), -2);
  const Rational c(2, 5);
  CHECK(eval_quantum(F, StepKernel::constant(c, 2)) == 3 * c - 2 * c * c * c);
  CHECK(eval_quantum(QuantumGraph::constant(1), StepKernel::zero(3)) == 1);
  const StepKernel fk2 = StepKernel::from_graph(Multigraph::single_edge());
  CHECK(eval_quantum(QuantumGraph::monomial(Multigraph::complete(3)), fk2) == 0);
}

TEST_CASE("radius of convergence") {
  const RadiusReport geo = radius_of_convergence(geometric_series(2));
  REQUIRE(geo.exact.has_value());
  CHECK(std::abs(*geo.exact - std::cbrt(2.0)) <= 1e-9);
  CHECK(geo.lower == *geo.exact);

  PowerSeries poly;
  poly.truncation = 2;
  poly.terms = QuantumGraph::monomial(Multigraph::path(2), 5);
  CHECK(std::isinf(radius_of_convergence(poly).lower));
  const PowerSeries empty;
  CHECK(std::isinf(radius_of_convergence(empty).lower));

  PowerSeries unknown = geometric_series(4);
  unknown.tail = UnknownTail{};
  const RadiusReport est = radius_of_convergence(unknown);
  CHECK(est.heuristic);
  CHECK_FALSE(est.exact.has_value());
  REQUIRE(est.estimate.has_value());
  CHECK(*est.estimate > 1.0);
}

TEST_CASE("degree norms") {
  const PowerSeries s = geometric_series(1);
  CHECK(degree_norm(s, 3) == Rational(1, 2));
  CHECK(degree_norm(s, 4) == 0);
  CHECK(degree_norm(s, 6) == Rational(1, 4));
  CHECK(degree_norm(s, 30) == Rational(1, 1024));
  PowerSeries u = s;
  u.tail = UnknownTail{};
  CHECK_THROWS_AS(degree_norm(u, 6), InvalidArgument);
}

TEST_CASE("geometric series at f = 1") {
  const PowerSeries s = geometric_series(4);
  const StepKernel one = StepKernel::constant(1);
  CHECK_THROWS_AS(eval_series(s, StepKernel::constant(Rational(13, 10)), 12), InvalidArgument);
  for (int m = 0; m <= 4; ++m) {
    const SeriesValue v = eval_series(s, one, 3 * m);
    CHECK(v.value == 2 - Rational(1, 1 << m));
    REQUIRE(v.tail_bound.has_value());
    CHECK(*v.tail_bound == Rational(1, 1 << m));
    CHECK(v.value + *v.tail_bound == 2);
  }
  // Below the radius the tail bound also covers degrees past the truncation.
  const SeriesValue v = eval_series(s, StepKernel::constant(Rational(1, 2)), 6);
  // sum_{m>2} 2^{-m} (1/8)^m = (1/16)^3 / (1 - 1/16)
  CHECK(*v.tail_bound == Rational(1, 4096) * Rational(16, 15));
}

TEST_CASE("polynomial series have zero tail") {
  PowerSeries s;
  s.truncation = 3;
  s.terms.add(Multigraph::single_edge(), 1);
  s.terms.add(Multigraph::path(2), -2);
  const StepKernel f = StepKernel::constant(Rational(1, 3), 2);
  const SeriesValue v = eval_series(s, f, 3);
  CHECK(v.value == Rational(1, 3) - Rational(2, 9));
  CHECK(*v.tail_bound == 0);
  CHECK(*eval_series(s, f, 1).tail_bound == 2 * Rational(1, 9));
}

TEST_CASE("divergence witness") {
  ResourceLimits limits;
  limits.max_pattern_vertices = 16;
  ScopedResourceLimits scope(limits);
  const int M = 4;
  PowerSeries s;
  s.truncation = 3 * M;
  for (int m = 1; m <= M; ++m) {
    s.terms.add(disjoint_copies(Multigraph::complete(3), m), Rational(1, 1 << m));
    s.terms.add(Multigraph::star(3 * m), Rational(-1, 1 << m));
  }
  s.tail = PeriodicGeometricTail{3, Rational(1, 2), {2, 0, 0}};
  CHECK(std::abs(*radius_of_convergence(s).exact - std::cbrt(2.0)) <= 1e-9);

  const StepKernel f = StepKernel::from_graph(Multigraph::single_edge()) * Rational(3);
  const auto sums = partial_sums(s, f, 3 * M);
  std::vector<Rational> at_multiples;
  for (int m = 0; m <= M; ++m) at_multiples.push_back(sums[3 * m]);
  for (int m = 1; m <= M; ++m) {
    CHECK(at_multiples[m] - at_multiples[m - 1] == -pow(Rational(27, 16), static_cast<unsigned>(m)));
  }
  const auto from = strictly_decreasing_from(at_multiples);
  REQUIRE(from.has_value());
  CHECK(*from == 0);
  CHECK_THROWS_AS(eval_series(s, f, 3 * M), InvalidArgument);
}

TEST_CASE("strictly_decreasing_from") {
  const std::vector<Rational> a{1, 3, 2, 1};
  CHECK(strictly_decreasing_from(a) == 1);
  const std::vector<Rational> b{1, 2, 3};
  CHECK_FALSE(strictly_decreasing_from(b).has_value());
  const std::vector<Rational> c{5, 5, 4};
  CHECK(strictly_decreasing_from(c) == 1);
}

TEST_CASE("series arithmetic respects radii") {
  const PowerSeries geo = geometric_series(2);
  PowerSeries other;
  other.truncation = 4;
  other.terms.add(Multigraph::single_edge(), Rational(1, 3));
  other.terms.add(Multigraph::matching(2), Rational(1, 9));
  other.terms.add(Multigraph::path(3), Rational(1, 27));
  other.tail = PeriodicGeometricTail{1, Rational(1, 3), {1}};
  const double ra = *radius_of_convergence(geo).exact;
  const double rb = *radius_of_convergence(other).exact;
  CHECK(std::abs(rb - 3.0) <= 1e-12);

  const PowerSeries sum = series_add(geo, other);
  const PowerSeries prod = series_multiply(geo, other);
  CHECK(radius_of_convergence(sum).lower >= std::min(ra, rb) * (1 - 1e-12));
  CHECK(radius_of_convergence(prod).lower >= std::min(ra, rb) * (1 - 1e-12));

  // The envelope really bounds the degree norms of the exact product.
  const auto& env = std::get<EnvelopeTail>(prod.tail);
  for (int n = 0; n <= 12; ++n) {
    Rational exact = 0;
    for (int i = 0; i <= n; ++i) exact += degree_norm(geo, i) * degree_norm(other, n - i);
    CHECK(to_double(exact) <= env.scale * std::pow(n + 1.0, env.power) * std::pow(env.rate, n) * (1 + 1e-9));
  }

  // Exact coefficients through the known degree.
  for (int n = 0; n <= prod.truncation; ++n) {
    QuantumGraph expected;
    for (int i = 0; i <= n; ++i) expected = expected + quantum_multiply(geo.terms.slice(i), other.terms.slice(n - i));
    CHECK(prod.terms.slice(n) == expected);
  }
}

TEST_CASE("polynomial series arithmetic stays polynomial") {
  std::mt19937_64 rng(4);
  PowerSeries a;
  a.truncation = 3;
  a.terms = random_quantum(rng, 3);
  PowerSeries b;
  b.truncation = 3;
  b.terms = random_quantum(rng, 3);
  const PowerSeries prod = series_multiply(a, b);
  CHECK(std::holds_alternative<PolynomialTail>(prod.tail));
  CHECK(prod.terms == quantum_multiply(a.terms, b.terms));
  const StepKernel f = oracle::random_graphon(rng, 2);
  CHECK(eval_series(prod, f, prod.truncation).value == eval_quantum(a.terms, f) * eval_quantum(b.terms, f));
  CHECK(eval_series(series_add(a, b), f, 3).value == eval_quantum(a.terms, f) + eval_quantum(b.terms, f));
}

TEST_CASE("termwise differentiation of polynomial series") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const QuantumGraph F = random_quantum(rng, 3);
    const StepKernel base = oracle::random_graphon(rng, 2);
    const std::vector<StepKernel> dirs{oracle::random_kernel(rng, 2, -1, 1), oracle::random_kernel(rng, 3, -1, 1)};
    Rational termwise = 0;
    for (const auto& [key, term] : F.terms()) {
      termwise += term.coeff * gateaux_exact(QuantumGraph::monomial(term.graph), {base, dirs, {}});
    }
    CHECK(gateaux_exact(F, {base, dirs, {}}) == termwise);
  }
}

TEST_CASE("Taylor recovery round trips") {
  QuantumGraph F;
  F.add(Multigraph::single_edge(), 3);
  F.add(Multigraph::complete(3), -2);
  F.add(Multigraph::multi_edge(2), 5);
  const TaylorReport r = taylor_recover(quantum_oracle(F), 3, 6);
  CHECK(r.coefficients == F);
  CHECK(r.residual.size() == 4);

  const DerivativeOracle zero = [](std::span<const StepKernel>) { return Rational(0); };
  CHECK(taylor_recover(zero, 2, 4).coefficients.is_zero());

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const QuantumGraph G = random_quantum(rng, 3);
    CHECK(taylor_recover(quantum_oracle(G), 3, 6).coefficients == G);
  }
  CHECK_THROWS_AS(taylor_recover(zero, 3, 5), InvalidArgument);
}

TEST_CASE("Taylor recovery rejects asymmetric oracles") {
  // Depends on where the direction sits, not only on its class.
  const DerivativeOracle lopsided = [](std::span<const StepKernel> dirs) {
    if (dirs.empty()) return Rational(0);
    return dirs.front()(0, 1);
  };
  CHECK_THROWS_AS(taylor_recover(lopsided, 1, 3), VerificationFailure);
}

TEST_CASE("Taylor remainder") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const QuantumGraph F = random_quantum(rng, 3);
    const StepKernel f = oracle::random_graphon(rng, 2);
    for (int N = 1; N <= 3; ++N) {
      const RemainderReport r = taylor_remainder(F, f, N);
      CHECK(r.within);
      if (N == 3) CHECK(r.remainder == 0);
    }
  }
}

TEST_CASE("Whitney matrices") {
  const WhitneyMatrix w1 = whitney_matrix(1, 0, {});
  CHECK(w1.p == 3);
  REQUIRE(w1.matrix.rows() == 1);
  CHECK(w1.matrix(0, 0) == Rational(2) / (w1.p * w1.p));

  const WhitneyMatrix w2 = whitney_matrix(2, 0, {});
  CHECK(w2.matrix.rows() == 3);
  CHECK(w2.matrix.determinant() != 0);

  // Unlabelled entries coincide with the derivative data of the densities.
  for (int n = 1; n <= 2; ++n) {
    const WhitneyMatrix w = whitney_matrix(n, 0, {});
    for (std::size_t i = 0; i < w.classes.size(); ++i) {
      const auto t = extract_T(QuantumGraph::monomial(w.classes[i]), n, w.p);
      for (std::size_t j = 0; j < w.classes.size(); ++j) CHECK(w.matrix(i, j) == t.at(w.classes[j]));
    }
  }

  const PinAssignment one_pin{{1, Rational(1, 3)}};
  const WhitneyMatrix w11 = whitney_matrix(1, 1, one_pin);
  CHECK(w11.p == 4);
  CHECK(w11.matrix.determinant() != 0);

  const PinAssignment two_pins{{1, Rational(1, 4)}, {2, Rational(1, 2)}};
  CHECK(whitney_parts(1, two_pins, 2) == 11);
  CHECK_THROWS_AS(whitney_matrix(1, 2, {{1, Rational(1, 2)}, {2, Rational(1, 2)}}), InvalidArgument);
  CHECK_THROWS_AS(whitney_matrix(1, 1, {{1, Rational(1)}}), InvalidArgument);

  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{3, 0}, {2, 1}, {1, 2}}) {
    const WhitneyMatrix w = whitney_matrix(n, k, two_pins);
    CHECK(w.matrix.determinant() != 0);
    for (std::size_t i = 0; i < w.classes.size(); ++i) {
      CHECK(w.matrix(i, i) > 0);
      for (std::size_t j = 0; j < w.classes.size(); ++j) {
        if (w.matrix(i, j) != 0) CHECK(count_surj(w.classes[i], w.classes[j]) > 0);
        if (j > i) CHECK(w.matrix(i, j) == 0);
      }
    }
  }
}

TEST_CASE("Lagrange interpolation") {
  const Rational c1(1, 3);
  const Rational c2(3, 4);
  const std::vector<StepKernel> pts{StepKernel::constant(c1), StepKernel::constant(c2)};
  const std::vector<Rational> vals{1, 0};
  const QuantumGraph F = lagrange_interpolate(pts, vals);
  CHECK(F.coefficient(Multigraph::single_edge()) == 1 / (c1 - c2));
  CHECK(F.coefficient(Multigraph()) == -c2 / (c1 - c2));
  CHECK(F.terms().size() == 2);

  const std::vector<StepKernel> single{StepKernel::constant(c1)};
  const std::vector<Rational> single_val{Rational(7, 2)};
  const QuantumGraph G = lagrange_interpolate(single, single_val);
  CHECK(G == QuantumGraph::constant(Rational(7, 2)));

  std::mt19937_64 rng(8);
  std::vector<StepKernel> three;
  while (three.size() < 3) {
    const StepKernel f = oracle::random_graphon(rng, 2 + three.size() % 2);
    bool fresh = true;
    for (const auto& g : three) fresh = fresh && density(Multigraph::single_edge(), f) != density(Multigraph::single_edge(), g);
    if (fresh) three.push_back(f);
  }
  const std::vector<Rational> targets{Rational(1, 2), -2, Rational(5, 3)};
  const QuantumGraph H = lagrange_interpolate(three, targets);
  for (int j = 0; j < 3; ++j) CHECK(eval_quantum(H, three[j]) == targets[j]);

  // Weakly equivalent points cannot be separated.
  const StepKernel a(2, {1, 0, 0, Rational(1, 2)});
  const StepKernel b(2, {Rational(1, 2), 0, 0, 1});
  const std::vector<StepKernel> twins{a, b};
  CHECK_THROWS_AS(lagrange_interpolate(twins, vals), ResourceLimitExceeded);
  CHECK_FALSE(separating_graph(a, b).has_value());
}
