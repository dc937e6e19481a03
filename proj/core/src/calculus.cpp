#include "gcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edge_product_sum.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/parallel.hpp"
#include "pins.hpp"

namespace gcalc {
namespace {

// Sum over injective assignments of directions 1..m to the edge copies of h.
Rational term_derivative(const Multigraph& h, const detail::EdgeProductSum& sum, int m,
                         bool base_is_zero, std::span<const int> pinned) {
  const auto copies = h.edge_copies();
  const int e = static_cast<int>(copies.size());
  if (m > e) return 0;
  if (base_is_zero && m < e) return 0;

  std::vector<int> assigned(e, 0);
  std::vector<detail::EdgeFactor> factors(e);
  BigInt numerator = 0;
  BigInt divisor = 0;

  auto visit = [&](auto&& self, int slot) -> void {
    if (slot > m) {
      for (int j = 0; j < e; ++j) factors[j] = {copies[j].first, copies[j].second, assigned[j], 1};
      auto raw = sum.evaluate_raw(h.vertex_count(), factors, pinned);
      // Every assignment uses each direction once and the base e - m times,
      // so the divisors agree; the check guards that invariant.
      if (divisor == 0) divisor = raw.divisor;
      if (raw.divisor != divisor) throw VerificationFailure("derivative summands with unequal divisors");
      numerator += raw.numerator;
      return;
    }
    for (int j = 0; j < e; ++j) {
      if (assigned[j] != 0) continue;
      assigned[j] = slot;
      self(self, slot + 1);
      assigned[j] = 0;
    }
  };
  visit(visit, 1);

  Rational out(numerator, divisor);
  out.canonicalize();
  return out;
}

}  // namespace

Rational gateaux_exact(const QuantumGraph& F, const DerivativeRequest& req) {
  const int m = static_cast<int>(req.directions.size());
  if (m == 0) return eval_quantum(F, req.base, req.pins);
  if (m > F.max_degree()) return 0;

  std::vector<StepKernel> kernels{req.base};
  kernels.insert(kernels.end(), req.directions.begin(), req.directions.end());
  std::vector<int> own;
  for (const auto& w : kernels) own.push_back(w.parts());
  const auto refined = common_refinement(kernels);
  const int p = refined.front().parts();
  const detail::EdgeProductSum sum(p, refined);
  const bool base_is_zero = req.base.is_zero();

  Rational total = 0;
  for (const auto& [key, term] : F.terms()) {
    if (term.graph.edge_count() < m) continue;
    const Multigraph h = term.graph.with_label_count(F.label_count());
    const auto pinned = detail::pinned_parts(h, req.pins, p, own);
    total += term.coeff * term_derivative(h, sum, m, base_is_zero, pinned);
  }
  return total;
}

Rational gateaux_exact_strict(const QuantumGraph& F, const DerivativeRequest& req) {
  for (const auto& g : req.directions) {
    if (!is_admissible(req.base, g)) throw InvalidArgument("direction is not admissible at the base point");
  }
  return gateaux_exact(F, req);
}

double gateaux_numeric(const QuantumGraph& F, const DerivativeRequest& req, double step) {
  if (!(step > 0) || !std::isfinite(step)) throw InvalidArgument("finite-difference step must be positive");
  const int m = static_cast<int>(req.directions.size());
  if (m > 3) throw InvalidArgument("numeric derivatives support order at most 3");
  if (m == 0) return to_double(eval_quantum(F, req.base, req.pins));

  const Rational h(step);
  Rational total = 0;
  for (unsigned signs = 0; signs < (1u << m); ++signs) {
    StepKernel point = req.base;
    int sign = 1;
    for (int i = 0; i < m; ++i) {
      const bool negative = signs >> i & 1;
      if (negative) sign = -sign;
      point = point + req.directions[i] * (negative ? Rational(-h) : h);
    }
    const Rational value = eval_quantum(F, point, req.pins);
    total += sign > 0 ? value : Rational(-value);
  }
  return to_double(total / pow(Rational(2) * h, static_cast<unsigned>(m)));
}

Multigraph gamma(int n, int p, std::span<const std::pair<int, int>> x) {
  if (static_cast<int>(x.size()) != n) throw InvalidArgument("gamma: tuple length must equal n");
  std::vector<Edge> edges;
  for (const auto& [a, b] : x) {
    if (a < 1 || b > p || a >= b) throw InvalidArgument("gamma: pairs must satisfy 1 <= a < b <= p");
    edges.push_back({a - 1, b - 1, 1});
  }
  return Multigraph(p, edges);
}

std::vector<std::pair<int, int>> gamma_preimage(const Multigraph& h) {
  if (h.label_count() != 0) throw InvalidArgument("gamma_preimage takes an unlabelled graph");
  std::vector<std::pair<int, int>> x;
  for (const auto& [u, v] : h.edge_copies()) x.emplace_back(u + 1, v + 1);
  return x;
}

const Rational& ConsistencyVector::at(const Multigraph& h) const {
  const auto key = canonical_key(pad_to_vertices(strip_isolated(h), p));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (canonical_key(classes[i]) == key) return entries[i];
  }
  throw InvalidArgument("class " + describe(h) + " is not indexed by this vector");
}

namespace {

Rational basis_derivative(const QuantumGraph& F, int p, std::span<const std::pair<int, int>> x) {
  DerivativeRequest req;
  req.base = StepKernel::zero(p);
  for (const auto& [a, b] : x) req.directions.push_back(basis_edge(p, a, b));
  return gateaux_exact(F, req);
}

}  // namespace

ConsistencyVector extract_T(const QuantumGraph& F, int n, int p, ExtractOptions options) {
  if (F.label_count() != 0) throw InvalidArgument("extract_T needs an unlabelled functional");
  ConsistencyVector out;
  out.n = n;
  out.p = p;
  out.classes = enumerate_Hnp(n, p);
  out.entries.assign(out.classes.size(), Rational(0));
  parallel_for(out.classes.size(), [&](std::size_t i) {
    const auto x = gamma_preimage(out.classes[i]);
    out.entries[i] = basis_derivative(F, p, x);
    if (options.check_well_defined && n > 0) {
      // Another point of the same S_p x S_n orbit: shift every part by one
      // and reverse the tuple.
      std::vector<std::pair<int, int>> y;
      for (auto it = x.rbegin(); it != x.rend(); ++it) {
        const int a = it->first % p + 1;
        const int b = it->second % p + 1;
        y.emplace_back(std::min(a, b), std::max(a, b));
      }
      if (basis_derivative(F, p, y) != out.entries[i]) {
        throw VerificationFailure("derivative value depends on the tuple chosen for " +
                                  describe(out.classes[i]));
      }
    }
  });
  return out;
}

SidorenkoReport sidorenko_star_check(int k, const StepKernel& f) {
  if (k < 1) throw InvalidArgument("star size must be at least 1");
  if (!f.is_graphon()) throw InvalidArgument("Sidorenko check needs entries in [0, 1]");
  SidorenkoReport r;
  const Rational c = density(Multigraph::single_edge(), f);
  r.lhs = density(Multigraph::star(k), f);
  r.rhs = pow(c, static_cast<unsigned>(k));
  r.holds = r.lhs >= r.rhs;
  r.equality = r.lhs == r.rhs;
  r.regular = true;
  const int p = f.parts();
  for (int a = 0; a < p && r.regular; ++a) {
    Rational row = 0;
    for (int b = 0; b < p; ++b) row += f(a, b);
    if (row / p != c) r.regular = false;
  }
  return r;
}

}  // namespace gcalc
