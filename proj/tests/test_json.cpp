#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gcalc/errors.hpp"
#include "gcalc/json_io.hpp"
#include "oracles.hpp"

using namespace gcalc;

TEST_CASE("graphs") {
  const Multigraph g(4, {{0, 1, 2}, {1, 2, 1}}, {3, 0});
  const Multigraph back = graph_from_json(graph_to_json(g));
  CHECK(back == g);
  CHECK(graph_from_json(R"({"vertices": 2, "edges": [[0, 1, 1]]})") == Multigraph::single_edge());
  CHECK(graph_from_json(R"({"vertices": 3, "edges": [[0, 1]], "labels": {"1": 2}})").labels() ==
        std::vector<int>{2});
  CHECK_THROWS_AS(graph_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(graph_from_json(R"({"vertices": 2, "edges": [[0, 0, 1]]})"), InvalidArgument);
  CHECK_THROWS_AS(graph_from_json(R"({"edges": []})"), InvalidArgument);
  CHECK_THROWS_AS(graph_from_json(R"({"vertices": 2, "edges": [[0, 1, 1]], "labels": {"2": 0}})"), InvalidArgument);
}

TEST_CASE("kernels") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const StepKernel f = oracle::random_kernel(rng, 1 + trial % 4, -2, 2);
    CHECK(kernel_from_json(kernel_to_json(f)) == f);
  }
  const StepKernel half = kernel_from_json(R"({"parts": 1, "matrix": [["1/2"]]})");
  CHECK(half == StepKernel::constant(Rational(1, 2)));
  const StepKernel bounded = kernel_from_json(R"({"parts": 1, "matrix": [[0]], "bounds": [0, 1]})");
  CHECK(bounded.declared_bounds().has_value());
  CHECK(kernel_from_json(kernel_to_json(bounded)).declared_bounds().has_value());
  CHECK_THROWS_AS(kernel_from_json(R"({"parts": 2, "matrix": [[0, 1], [0, 0]]})"), InvalidArgument);
  CHECK_THROWS_AS(kernel_from_json(R"({"parts": 1, "matrix": [["x"]]})"), InvalidArgument);
  CHECK_THROWS_AS(kernel_from_json(R"({"parts": 1, "matrix": [["1/0"]]})"), InvalidArgument);
}

TEST_CASE("quantum graphs") {
  QuantumGraph q(1);
  q.add(Multigraph(2, {{0, 1, 1}}, {0}), Rational(-3, 7));
  q.add(Multigraph(1, {}, {0}), 2);
  q.add(Multigraph(3, {{1, 2, 2}}, {0}), Rational(1, 9));
  CHECK(quantum_from_json(quantum_to_json(q)) == q);
  const QuantumGraph parsed = quantum_from_json(
      R"({"k": 0, "terms": [{"graph": {"vertices": 2, "edges": [[0, 1, 1]]}, "coeff": "3"},
                            {"graph": {"vertices": 2, "edges": [[0, 1, 1]]}, "coeff": -1}]})");
  CHECK(parsed.coefficient(Multigraph::single_edge()) == 2);
}

TEST_CASE("pins") {
  const PinAssignment pins{{1, Rational(1, 3)}, {2, Rational(5, 7)}};
  CHECK(pins_from_json(pins_to_json(pins)) == pins);
  CHECK(pins_from_json(R"(["1/3", "5/7"])") == pins);
  CHECK(pins_from_json(R"({"1": "1/3", "2": "5/7"})") == pins);
  CHECK_THROWS_AS(pins_from_json(R"({"0": "1/3"})"), InvalidArgument);
}

TEST_CASE("series") {
  PowerSeries s;
  s.truncation = 3;
  s.terms.add(Multigraph::complete(3), Rational(1, 2));
  s.terms.add(Multigraph(), 1);
  s.tail = PeriodicGeometricTail{3, Rational(1, 2), {1, 0, 0}};
  const PowerSeries back = series_from_json(series_to_json(s));
  CHECK(back.terms == s.terms);
  CHECK(back.truncation == 3);
  const auto& tail = std::get<PeriodicGeometricTail>(back.tail);
  CHECK(tail.period == 3);
  CHECK(tail.ratio == Rational(1, 2));
  CHECK(tail.coefficients == std::vector<Rational>{1, 0, 0});

  s.tail = EnvelopeTail{2.5, 1, 0.75};
  const auto env = std::get<EnvelopeTail>(series_from_json(series_to_json(s)).tail);
  CHECK(env.scale == 2.5);
  CHECK(env.power == 1);
  CHECK(env.rate == 0.75);

  s.tail = UnknownTail{};
  CHECK(std::holds_alternative<UnknownTail>(series_from_json(series_to_json(s)).tail));
  s.tail = PolynomialTail{};
  CHECK(std::holds_alternative<PolynomialTail>(series_from_json(series_to_json(s)).tail));
  CHECK_THROWS_AS(series_from_json(R"({"k": 0, "terms": [], "truncation": 1, "tail": {"kind": "weird"}})"),
                  InvalidArgument);
}
