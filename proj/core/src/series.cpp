#include "gcalc/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gcalc/calculus.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/morphisms.hpp"

namespace gcalc {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

QuantumGraph truncate(const QuantumGraph& q, int max_degree) {
  QuantumGraph out(q.label_count());
  for (const auto& [key, term] : q.terms()) {
    if (term.graph.edge_count() <= max_degree) out.add(term.graph, term.coeff);
  }
  return out;
}

bool is_polynomial(const PowerSeries& s) { return std::holds_alternative<PolynomialTail>(s.tail); }
bool is_unknown(const PowerSeries& s) { return std::holds_alternative<UnknownTail>(s.tail); }

// Growth rate ρ and polynomial power d of the tail; 0 for polynomials.
std::pair<double, int> tail_rate(const PowerSeries& s) {
  if (const auto* g = std::get_if<PeriodicGeometricTail>(&s.tail)) {
    const bool all_zero = std::all_of(g->coefficients.begin(), g->coefficients.end(),
                                      [](const Rational& c) { return c == 0; });
    if (all_zero || g->ratio == 0) return {0.0, 0};
    return {std::pow(to_double(g->ratio), 1.0 / g->period), 0};
  }
  if (const auto* e = std::get_if<EnvelopeTail>(&s.tail)) return {e->rate, e->power};
  return {0.0, 0};
}

// Smallest C with s_n <= C (n+1)^d ρ^n for every n > after (ρ at least the
// series' own rate, d at least its own power).
double envelope_scale(const PowerSeries& s, int after, double rho, int d) {
  double c = 0;
  const int last_known = is_polynomial(s) ? std::max(s.terms.max_degree(), 0) : s.truncation;
  for (int n = after + 1; n <= last_known; ++n) {
    const double norm = to_double(degree_norm(s, n));
    if (norm == 0) continue;
    c = std::max(c, norm / (std::pow(n + 1.0, d) * std::pow(rho, n)));
  }
  if (const auto* g = std::get_if<PeriodicGeometricTail>(&s.tail)) {
    const double q = to_double(g->ratio);
    for (int r = 0; r < g->period; ++r) {
      if (g->coefficients[r] == 0) continue;
      c = std::max(c, to_double(g->coefficients[r]) * std::pow(q, -static_cast<double>(r) / g->period));
    }
  } else if (const auto* e = std::get_if<EnvelopeTail>(&s.tail)) {
    c = std::max(c, e->scale);
  }
  // Guard against rounding in the double-valued bound.
  return c * (1 + 1e-12);
}

int known_truncation(const PowerSeries& a, const PowerSeries& b) {
  int t = std::numeric_limits<int>::max();
  if (!is_polynomial(a)) t = std::min(t, a.truncation);
  if (!is_polynomial(b)) t = std::min(t, b.truncation);
  return t;
}

void require_compatible(const PowerSeries& a, const PowerSeries& b) {
  validate(a);
  validate(b);
  if (a.k != b.k || a.pins != b.pins) throw InvalidArgument("series must share label count and pins");
}

}  // namespace

void validate(const PowerSeries& s) {
  if (s.terms.label_count() != s.k) throw InvalidArgument("series terms carry the wrong label count");
  if (s.truncation < 0) throw InvalidArgument("negative truncation");
  if (s.terms.max_degree() > s.truncation) throw InvalidArgument("series term beyond the truncation degree");
  if (const auto* g = std::get_if<PeriodicGeometricTail>(&s.tail)) {
    if (g->period < 1 || static_cast<int>(g->coefficients.size()) != g->period) {
      throw InvalidArgument("periodic tail needs one coefficient per residue");
    }
    if (g->ratio < 0) throw InvalidArgument("periodic tail ratio must be nonnegative");
    for (const auto& c : g->coefficients) {
      if (c < 0) throw InvalidArgument("periodic tail coefficients must be nonnegative");
    }
  }
  if (const auto* e = std::get_if<EnvelopeTail>(&s.tail)) {
    if (!(e->scale >= 0) || !(e->rate >= 0) || e->power < 0) throw InvalidArgument("malformed envelope tail");
  }
}

Rational degree_norm(const PowerSeries& s, int n) {
  if (n < 0) throw InvalidArgument("negative degree");
  if (n <= s.truncation) {
    Rational total = 0;
    for (const auto& [key, term] : s.terms.terms()) {
      if (term.graph.edge_count() == n) total += abs(term.coeff);
    }
    return total;
  }
  if (is_polynomial(s)) return 0;
  if (const auto* g = std::get_if<PeriodicGeometricTail>(&s.tail)) {
    return g->coefficients[n % g->period] * pow(g->ratio, static_cast<unsigned>(n / g->period));
  }
  throw InvalidArgument("degree norm beyond the truncation is not determined by the tail");
}

RadiusReport radius_of_convergence(const PowerSeries& s) {
  validate(s);
  RadiusReport r;
  if (is_polynomial(s)) {
    r.lower = kInfinity;
    r.exact = kInfinity;
    return r;
  }
  if (std::holds_alternative<PeriodicGeometricTail>(s.tail)) {
    const double rate = tail_rate(s).first;
    r.exact = rate == 0 ? kInfinity : 1.0 / rate;
    r.lower = *r.exact;
    return r;
  }
  if (const auto* e = std::get_if<EnvelopeTail>(&s.tail)) {
    r.lower = e->rate == 0 ? kInfinity : 1.0 / e->rate;
    return r;
  }
  // Root test on the upper half of the known degrees.
  r.heuristic = true;
  double worst = 0;
  for (int n = std::max(1, s.truncation / 2); n <= s.truncation; ++n) {
    const double norm = to_double(degree_norm(s, n));
    if (norm > 0) worst = std::max(worst, std::pow(norm, 1.0 / n));
  }
  r.estimate = worst == 0 ? kInfinity : 1.0 / worst;
  return r;
}

std::vector<Rational> partial_sums(const PowerSeries& s, const StepKernel& f, int N) {
  validate(s);
  if (N < 0 || N > s.truncation) throw InvalidArgument("partial sums need 0 <= N <= truncation");
  std::vector<Rational> sums;
  Rational running = 0;
  for (int n = 0; n <= N; ++n) {
    running += eval_quantum(s.terms.slice(n), f, s.pins);
    sums.push_back(running);
  }
  return sums;
}

SeriesValue eval_series(const PowerSeries& s, const StepKernel& f, int N, bool with_tail) {
  SeriesValue out;
  out.value = partial_sums(s, f, N).back();
  out.sup = f.sup_norm();
  if (!with_tail) return out;

  const Rational& x = out.sup;
  auto finite_part = [&](int upto) {
    Rational t = 0;
    for (int n = N + 1; n <= upto; ++n) t += degree_norm(s, n) * pow(x, static_cast<unsigned>(n));
    return t;
  };

  if (is_polynomial(s)) {
    out.tail_bound = finite_part(s.truncation);
  } else if (const auto* g = std::get_if<PeriodicGeometricTail>(&s.tail)) {
    // n = P j + r: sum_r c_r x^r sum_{j >= j0(r)} ρ^j with ρ = q x^P.
    const Rational rho = g->ratio * pow(x, static_cast<unsigned>(g->period));
    const bool has_tail = std::any_of(g->coefficients.begin(), g->coefficients.end(),
                                      [](const Rational& c) { return c != 0; }) && g->ratio != 0;
    if (has_tail && rho >= 1) {
      throw InvalidArgument("sup|f| = " + to_string(x) + " is not below the radius of convergence");
    }
    Rational tail = finite_part(s.truncation);
    const int M = std::max(N, s.truncation);
    for (int r = 0; r < g->period; ++r) {
      if (g->coefficients[r] == 0) continue;
      const int j0 = r > M ? 0 : (M - r) / g->period + 1;
      tail += g->coefficients[r] * pow(x, static_cast<unsigned>(r)) * pow(rho, static_cast<unsigned>(j0)) /
              (1 - rho);
    }
    out.tail_bound = tail;
  }
  return out;
}

std::optional<int> strictly_decreasing_from(std::span<const Rational> values) {
  if (values.size() < 2) return std::nullopt;
  std::size_t start = values.size() - 1;
  while (start > 0 && values[start - 1] > values[start]) --start;
  if (start == values.size() - 1) return std::nullopt;
  return static_cast<int>(start);
}

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
  require_compatible(a, b);
  PowerSeries out;
  out.k = a.k;
  out.pins = a.pins;
  // A zero rate means both tails vanish: the sum is a polynomial.
  if ((is_polynomial(a) && is_polynomial(b)) ||
      (!is_unknown(a) && !is_unknown(b) && tail_rate(a).first == 0 && tail_rate(b).first == 0)) {
    out.terms = a.terms + b.terms;
    out.truncation = std::max(a.truncation, b.truncation);
    return out;
  }
  const int t = known_truncation(a, b);
  out.truncation = t;
  out.terms = truncate(a.terms + b.terms, t);
  if (is_unknown(a) || is_unknown(b)) {
    out.tail = UnknownTail{};
    return out;
  }
  const auto [ra, da] = tail_rate(a);
  const auto [rb, db] = tail_rate(b);
  const double rho = std::max(ra, rb);
  const int d = std::max(da, db);
  out.tail = EnvelopeTail{envelope_scale(a, t, rho, d) + envelope_scale(b, t, rho, d), d, rho};
  return out;
}

PowerSeries series_multiply(const PowerSeries& a, const PowerSeries& b) {
  require_compatible(a, b);
  PowerSeries out;
  out.k = a.k;
  out.pins = a.pins;
  if ((is_polynomial(a) && is_polynomial(b)) ||
      (!is_unknown(a) && !is_unknown(b) && tail_rate(a).first == 0 && tail_rate(b).first == 0)) {
    out.terms = quantum_multiply(a.terms, b.terms);
    out.truncation = a.truncation + b.truncation;
    return out;
  }
  const int t = known_truncation(a, b);
  out.truncation = t;
  out.terms = truncate(quantum_multiply(truncate(a.terms, t), truncate(b.terms, t)), t);
  if (is_unknown(a) || is_unknown(b)) {
    out.tail = UnknownTail{};
    return out;
  }
  // s^{ab}_n <= sum_i s^a_i s^b_{n-i} <= C_a C_b (n+1)^{d_a+d_b+1} ρ^n.
  const auto [ra, da] = tail_rate(a);
  const auto [rb, db] = tail_rate(b);
  const double rho = std::max(ra, rb);
  out.tail = EnvelopeTail{envelope_scale(a, -1, rho, da) * envelope_scale(b, -1, rho, db), da + db + 1, rho};
  return out;
}

DerivativeOracle quantum_oracle(const QuantumGraph& F) {
  return [F](std::span<const StepKernel> directions) {
    DerivativeRequest req;
    req.base = StepKernel::zero(directions.empty() ? 1 : directions.front().parts());
    req.directions.assign(directions.begin(), directions.end());
    return gateaux_exact(F, req);
  };
}

TaylorReport taylor_recover(const DerivativeOracle& oracle, int N, int p) {
  if (N < 0) throw InvalidArgument("taylor_recover needs N >= 0");
  if (p < std::max(2, 2 * N)) throw InvalidArgument("taylor_recover needs p >= max(2, 2N)");
  TaylorReport report;
  report.N = N;
  report.p = p;
  report.coefficients = QuantumGraph(0);

  const Rational constant = oracle({});
  report.coefficients.add(Multigraph(), constant);
  report.residual.push_back("degree 0: F(0) = " + to_string(constant));

  auto evaluate = [&](const std::vector<std::pair<int, int>>& x) {
    std::vector<StepKernel> dirs;
    for (const auto& [a, b] : x) dirs.push_back(basis_edge(p, a, b));
    return oracle(dirs);
  };

  for (int n = 1; n <= N; ++n) {
    const auto rows = enumerate_Hn(n, 0);
    const auto cols = enumerate_Hnp(n, p);
    std::vector<Rational> c(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto x = gamma_preimage(cols[j]);
      c[j] = evaluate(x);
      // Spot check: same orbit, parts shifted by one and tuple reversed.
      std::vector<std::pair<int, int>> y;
      for (auto it = x.rbegin(); it != x.rend(); ++it) {
        const int a = it->first % p + 1;
        const int b = it->second % p + 1;
        y.emplace_back(std::min(a, b), std::max(a, b));
      }
      if (evaluate(y) != c[j]) {
        throw VerificationFailure("derivative oracle is not symmetric on the orbit of " + describe(cols[j]));
      }
    }
    // Column j of the transposed system: T(H, h_j) = |Surj(H, h_j)| / p^{|V(H)|}.
    RationalMatrix system(cols.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational scale(1, pow(BigInt(p), static_cast<unsigned>(rows[i].vertex_count())));
      for (std::size_t j = 0; j < cols.size(); ++j) {
        system(j, i) = Rational(count_surj(rows[i], strip_isolated(cols[j]))) * scale;
      }
    }
    const std::vector<Rational> a = system.solve(c);
    if (system * std::span<const Rational>(a) != c) {
      throw VerificationFailure("Taylor system residual is not zero at degree " + std::to_string(n));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) report.coefficients.add(rows[i], a[i]);
    report.residual.push_back("degree " + std::to_string(n) + ": " + std::to_string(rows.size()) +
                              " coefficients, exact residual 0");
  }
  return report;
}

RemainderReport taylor_remainder(const QuantumGraph& F, const StepKernel& f, int N, int grid) {
  if (N < 0 || grid < 1) throw InvalidArgument("taylor_remainder needs N >= 0 and grid >= 1");
  if (F.label_count() != 0) throw InvalidArgument("taylor_remainder takes an unlabelled functional");
  RemainderReport r;
  Rational polynomial = 0;
  for (int n = 0; n <= N; ++n) {
    DerivativeRequest req;
    req.base = StepKernel::zero(f.parts());
    req.directions.assign(n, f);
    polynomial += gateaux_exact(F, req) / Rational(factorial(n));
  }
  r.remainder = eval_quantum(F, f) - polynomial;
  for (int i = 0; i <= grid; ++i) {
    DerivativeRequest req;
    req.base = f * (Rational(i) / grid);
    req.directions.assign(N + 1, f);
    const Rational term = gateaux_exact(F, req) / Rational(factorial(N + 1));
    if (i == 0 || term < r.grid_min) r.grid_min = term;
    if (i == 0 || term > r.grid_max) r.grid_max = term;
  }
  r.within = r.grid_min <= r.remainder && r.remainder <= r.grid_max;
  return r;
}

int whitney_parts(int n, const PinAssignment& pins, int k) {
  if (n < 1 || k < 0) throw InvalidArgument("whitney matrix needs n >= 1 and k >= 0");
  std::vector<Rational> xs;
  for (int i = 1; i <= k; ++i) {
    const auto it = pins.find(i);
    if (it == pins.end()) throw InvalidArgument("label " + std::to_string(i) + " has no pin");
    if (it->second <= 0 || it->second >= 1) throw InvalidArgument("pins must lie strictly inside (0, 1)");
    xs.push_back(it->second);
  }
  Rational bound = 2 * n;
  if (xs.size() >= 2) {
    std::sort(xs.begin(), xs.end());
    Rational gap = 1;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] == xs[i - 1]) throw InvalidArgument("pins must be distinct");
      gap = std::min(gap, Rational(xs[i] - xs[i - 1]));
    }
    bound += 2 / gap;
  }
  BigInt p = bound.get_num() / bound.get_den() + 1;
  auto coprime = [&](const BigInt& q) {
    return std::all_of(xs.begin(), xs.end(), [&](const Rational& x) { return gcd(q, x.get_den()) == 1; });
  };
  while (!coprime(p)) ++p;
  if (!p.fits_sint_p()) throw ResourceLimitExceeded("whitney part count too large");
  return static_cast<int>(p.get_si());
}

WhitneyMatrix whitney_matrix(int n, int k, const PinAssignment& pins) {
  WhitneyMatrix w;
  w.n = n;
  w.k = k;
  w.p = whitney_parts(n, pins, k);
  w.classes = enumerate_Hn(n, k);
  w.matrix = RationalMatrix(w.classes.size(), w.classes.size());
  for (std::size_t i = 0; i < w.classes.size(); ++i) {
    const Multigraph& H = w.classes[i];
    const Rational scale(1, pow(BigInt(w.p), static_cast<unsigned>(H.vertex_count() - H.label_count())));
    for (std::size_t j = 0; j < w.classes.size(); ++j) {
      w.matrix(i, j) = Rational(count_surj(H, w.classes[j])) * scale;
    }
  }
  return w;
}

std::optional<Multigraph> separating_graph(const StepKernel& f, const StepKernel& g) {
  const int cap = resource_limits().max_separation_edges;
  for (int e = 1; e <= cap; ++e) {
    for (const Multigraph& h : enumerate_Hn(e, 0)) {
      if (!h.is_simple()) continue;
      if (density(h, f) != density(h, g)) return h;
    }
  }
  return std::nullopt;
}

QuantumGraph lagrange_interpolate(std::span<const StepKernel> points, std::span<const Rational> values) {
  if (points.empty() || points.size() != values.size()) {
    throw InvalidArgument("interpolation needs as many values as points (at least one)");
  }
  const std::size_t m = points.size();
  QuantumGraph result(0);
  for (std::size_t j = 0; j < m; ++j) {
    QuantumGraph basis = QuantumGraph::constant(1);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      const auto h = separating_graph(points[j], points[i]);
      if (!h) {
        throw ResourceLimitExceeded("no simple graph with at most " +
                                    std::to_string(resource_limits().max_separation_edges) +
                                    " edges separates points " + std::to_string(i) + " and " +
                                    std::to_string(j));
      }
      const Rational ti = density(*h, points[i]);
      const Rational tj = density(*h, points[j]);
      // (t(H, -) - t(H, f_i)) / (t(H, f_j) - t(H, f_i))
      const Rational scale = 1 / (tj - ti);
      const QuantumGraph factor = QuantumGraph::monomial(*h, scale) + QuantumGraph::constant(-ti * scale);
      basis = quantum_multiply(basis, factor);
    }
    result = result + basis * values[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (eval_quantum(result, points[j]) != values[j]) {
      throw VerificationFailure("interpolant misses the value at point " + std::to_string(j));
    }
  }
  return result;
}

}  // namespace gcalc
