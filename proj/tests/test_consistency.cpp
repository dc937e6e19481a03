#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gcalc/consistency.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/morphisms.hpp"
#include "oracles.hpp"

using namespace gcalc;

namespace {

int index_of(const std::vector<Multigraph>& classes, const Multigraph& g) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (canonical_key(classes[i]) == canonical_key(g)) return static_cast<int>(i);
  }
  return -1;
}

ConsistencyVector random_vector(std::mt19937_64& rng, int n, int p) {
  ConsistencyVector v;
  v.n = n;
  v.p = p;
  v.classes = enumerate_Hnp(n, p);
  for (std::size_t i = 0; i < v.classes.size(); ++i) v.entries.push_back(oracle::random_rational(rng, -4, 4, 5));
  return v;
}

}  // namespace

TEST_CASE("diagonal and bottom row") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 4; ++k) {
      const auto pi = pi_formula(n, k);
      const int bottom = index_of(pi.classes, Multigraph::matching(n));
      REQUIRE(bottom >= 0);
      for (std::size_t g = 0; g < pi.classes.size(); ++g) {
        const Multigraph& G = pi.classes[g];
        BigInt diagonal = 1;
        for (int v = 0; v < G.vertex_count(); ++v) diagonal *= k;
        CHECK(pi.entries[g][g] == diagonal);
        BigInt product = 1;
        for (int v = 0; v < G.vertex_count(); ++v) product *= falling_factorial(k, G.degree(v));
        CHECK(pi.entries[g][bottom] == product);
      }
    }
  }
}

TEST_CASE("k = 1 is the identity") {
  for (int n = 1; n <= 3; ++n) {
    const auto pi = pi_formula(n, 1);
    for (std::size_t g = 0; g < pi.classes.size(); ++g) {
      for (std::size_t h = 0; h < pi.classes.size(); ++h) CHECK(pi.entries[g][h] == (g == h ? 1 : 0));
    }
  }
}

TEST_CASE("formula agrees with fiber counts") {
  for (int n = 1; n <= 2; ++n) {
    for (int k = 2; k <= 3; ++k) {
      for (int p = 2 * n; p <= 2 * n + 1; ++p) CHECK(pi_formula(n, k) == pi_fiber_oracle(n, k, p));
    }
  }
  CHECK(pi_formula(3, 2) == pi_fiber_oracle(3, 2, 6));
  CHECK_THROWS_AS(pi_fiber_oracle(2, 2, 3), InvalidArgument);
}

TEST_CASE("fibers partition k^{2n} index tuples") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 2; k <= 3; ++k) {
      if (n == 3 && k == 3) continue;
      const auto pi = pi_fiber_oracle(n, k, 2 * n);
      for (const auto& row : pi.entries) {
        BigInt total = 0;
        for (const auto& x : row) total += x;
        BigInt expected = 1;
        for (int i = 0; i < 2 * n; ++i) expected *= k;
        CHECK(total == expected);
      }
    }
  }
}

TEST_CASE("fiber enumeration cap") {
  ResourceLimits limits;
  limits.max_fiber_iterations = 100;
  ScopedResourceLimits scope(limits);
  CHECK_THROWS_AS(pi_fiber_oracle(2, 4, 4), ResourceLimitExceeded);
}

TEST_CASE("support follows the surjection preorder") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 2; k <= 4; ++k) {
      const auto pi = pi_formula(n, k);
      for (std::size_t g = 0; g < pi.classes.size(); ++g) {
        for (std::size_t h = 0; h < pi.classes.size(); ++h) {
          const bool onto = count_surj(pi.classes[h], pi.classes[g]) > 0;
          if (pi.entries[g][h] != 0) CHECK(onto);
          // Every fiber of a surjection has at most 2n <= k vertices here.
          if (k >= 2 * n && onto) CHECK(pi.entries[g][h] != 0);
          if (h < g) CHECK(pi.entries[g][h] == 0);
        }
      }
    }
  }
}

TEST_CASE("consistency relation on derivative data") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& H : enumerate_Hn(n)) {
      const QuantumGraph F = QuantumGraph::monomial(H);
      for (int p = 2; p <= 4; ++p) {
        for (int k = 2; k <= 3; ++k) {
          const auto fine = extract_T(F, n, k * p);
          const auto coarse = extract_T(F, n, p);
          const auto projected = apply_constraint(fine, k);
          CHECK(projected.p == p);
          CHECK(projected.entries == coarse.entries);
        }
      }
    }
  }
}

TEST_CASE("apply_constraint basics") {
  std::mt19937_64 rng(3);
  ConsistencyVector zero = random_vector(rng, 2, 6);
  for (auto& x : zero.entries) x = 0;
  for (const auto& x : apply_constraint(zero, 2).entries) CHECK(x == 0);
  CHECK_THROWS_AS(apply_constraint(zero, 4), InvalidArgument);
  ConsistencyVector broken = zero;
  broken.entries.pop_back();
  CHECK_THROWS_AS(apply_constraint(broken, 2), InvalidArgument);
}

TEST_CASE("composition of constraints") {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 2; ++n) {
    for (int p = 2; p <= 3; ++p) {
      const ConsistencyVector a = random_vector(rng, n, 6 * p);
      const auto two_steps = apply_constraint(apply_constraint(a, 2), 3);
      const auto one_step = apply_constraint(a, 6);
      CHECK(two_steps.entries == one_step.entries);
      const auto other_order = apply_constraint(apply_constraint(a, 3), 2);
      CHECK(other_order.entries == one_step.entries);
    }
  }
  CHECK(constraint_matrix(2, 4, 2) * constraint_matrix(2, 8, 2) == constraint_matrix(2, 4, 4));
}

TEST_CASE("constraint matrices are invertible from p = 2n") {
  for (int n = 1; n <= 3; ++n) {
    for (int p = 2 * n; p <= 2 * n + 1; ++p) {
      const auto m = constraint_matrix(n, p, 2);
      CHECK(m.rows() == m.cols());
      CHECK(m.determinant() != 0);
    }
  }
}

TEST_CASE("verify_structure") {
  for (int n = 1; n <= 3; ++n) {
    const auto report = verify_structure(n, 2 * n + 1, 3);
    CAPTURE(n);
    for (const auto& line : report.lines) MESSAGE(line);
    CHECK(report.triangular);
    CHECK(report.positive_diagonal);
    CHECK(report.invertible);
    CHECK(report.compatible);
    CHECK(report.t_matrix_full_rank);
    CHECK(report.solution_dimension_ok);
    CHECK(report.passed());
  }
}
