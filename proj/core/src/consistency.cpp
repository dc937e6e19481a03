#include "gcalc/consistency.hpp"

#include <map>
#include <numeric>

#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/morphisms.hpp"
#include "gcalc/parallel.hpp"
#include "gcalc/quantum_graph.hpp"

namespace gcalc {
namespace {

std::map<CanonicalKey, std::size_t> index_by_stripped_key(const std::vector<Multigraph>& classes) {
  std::map<CanonicalKey, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(canonical_key(strip_isolated(classes[i])), i);
  return index;
}

ConsistencyMatrix empty_matrix(int n, int k) {
  if (n < 1 || k < 1) throw InvalidArgument("π_{n,k} needs n >= 1 and k >= 1");
  ConsistencyMatrix m;
  m.n = n;
  m.k = k;
  m.classes = enumerate_Hn(n, 0);
  m.entries.assign(m.classes.size(), std::vector<BigInt>(m.classes.size(), BigInt(0)));
  return m;
}

}  // namespace

ConsistencyMatrix pi_formula(int n, int k) {
  ConsistencyMatrix m = empty_matrix(n, k);
  const std::size_t size = m.classes.size();
  std::vector<BigInt> aut(size);
  for (std::size_t h = 0; h < size; ++h) aut[h] = count_aut(m.classes[h]);

  parallel_for(size * size, [&](std::size_t cell) {
    const std::size_t g = cell / size;
    const std::size_t h = cell % size;
    const Multigraph& G = m.classes[g];
    const Multigraph& H = m.classes[h];
    BigInt total = 0;
    std::vector<int> fiber(G.vertex_count());
    for_each_vertex_map(H, G, MapKind::kSurjective, [&](std::span<const int> psi, const BigInt& edge_maps) {
      std::fill(fiber.begin(), fiber.end(), 0);
      for (int image : psi) ++fiber[image];
      BigInt weight = edge_maps;
      for (int size_v : fiber) weight *= falling_factorial(k, size_v);
      total += weight;
    });
    if (total % aut[h] != 0) {
      throw VerificationFailure("π_{n,k} entry not divisible by |Aut H| for H = " + describe(H));
    }
    m.entries[g][h] = total / aut[h];
  });
  return m;
}

ConsistencyMatrix pi_fiber_oracle(int n, int k, int p) {
  if (p < 2 * n) throw InvalidArgument("the fiber oracle needs p >= 2n");
  ConsistencyMatrix m = empty_matrix(n, k);
  const auto index = index_by_stripped_key(m.classes);

  BigInt iterations = pow(BigInt(k), static_cast<unsigned>(2 * n));
  if (iterations > resource_limits().max_fiber_iterations) {
    throw ResourceLimitExceeded("fiber enumeration needs " + to_string(iterations) +
                                " index tuples, above the configured cap of " +
                                std::to_string(resource_limits().max_fiber_iterations));
  }
  const long total = iterations.get_si();

  parallel_for(m.classes.size(), [&](std::size_t g) {
    const auto x = gamma_preimage(pad_to_vertices(m.classes[g], p));
    std::vector<int> digits(2 * n, 0);
    std::vector<std::pair<int, int>> refined(n);
    for (long it = 0; it < total; ++it) {
      long rest = it;
      for (int d = 0; d < 2 * n; ++d) {
        digits[d] = static_cast<int>(rest % k);
        rest /= k;
      }
      for (int l = 0; l < n; ++l) {
        // e^p_{(a,b)} splits into e^{kp}_{(k(a-1)+i, k(b-1)+j)}, i, j in 1..k.
        refined[l] = {k * (x[l].first - 1) + digits[2 * l] + 1, k * (x[l].second - 1) + digits[2 * l + 1] + 1};
      }
      const Multigraph h = strip_isolated(gamma(n, k * p, refined));
      const auto found = index.find(canonical_key(h));
      if (found == index.end()) throw VerificationFailure("refined tuple outside ℋ_n: " + describe(h));
      m.entries[g][found->second] += 1;
    }
  });
  return m;
}

RationalMatrix constraint_matrix(int n, int p, int k) {
  const ConsistencyMatrix pi = pi_formula(n, k);
  const auto index = index_by_stripped_key(pi.classes);
  const auto rows = enumerate_Hnp(n, p);
  const auto cols = enumerate_Hnp(n, k * p);
  RationalMatrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t g = index.at(canonical_key(strip_isolated(rows[r])));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::size_t h = index.at(canonical_key(strip_isolated(cols[c])));
      out(r, c) = Rational(pi.entries[g][h]);
    }
  }
  return out;
}

ConsistencyVector apply_constraint(const ConsistencyVector& a, int k) {
  if (k < 1 || a.p % k != 0 || a.p / k < 2) {
    throw InvalidArgument("apply_constraint needs a vector at scale kp with p >= 2");
  }
  const int p = a.p / k;
  const auto expected = enumerate_Hnp(a.n, a.p);
  if (expected.size() != a.classes.size() || a.entries.size() != a.classes.size()) {
    throw InvalidArgument("vector is not indexed by ℋ_n^(kp)");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (canonical_key(expected[i]) != canonical_key(a.classes[i])) {
      throw InvalidArgument("vector is not indexed by ℋ_n^(kp) in class order");
    }
  }
  const RationalMatrix pi = constraint_matrix(a.n, p, k);
  ConsistencyVector out;
  out.n = a.n;
  out.p = p;
  out.classes = enumerate_Hnp(a.n, p);
  out.entries = pi * std::span<const Rational>(a.entries);
  return out;
}

StructureReport verify_structure(int n, int p_max, int k_max) {
  if (n < 1 || k_max < 1 || p_max < 2) throw InvalidArgument("verify_structure needs n, k_max >= 1 and p_max >= 2");
  StructureReport report;
  report.n = n;
  const auto classes = enumerate_Hn(n, 0);
  const std::size_t size = classes.size();
  auto line = [&](bool ok, const std::string& text) {
    report.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + text);
  };

  // Surjection support, computed once.
  std::vector<std::vector<bool>> surjects(size, std::vector<bool>(size));
  for (std::size_t g = 0; g < size; ++g) {
    for (std::size_t h = 0; h < size; ++h) surjects[g][h] = count_surj(classes[h], classes[g]) > 0;
  }

  std::vector<ConsistencyMatrix> pis;
  for (int k = 1; k <= k_max; ++k) {
    pis.push_back(pi_formula(n, k));
    const auto& pi = pis.back();
    bool tri = true;
    bool diag = true;
    for (std::size_t g = 0; g < size; ++g) {
      diag = diag && pi.entries[g][g] > 0;
      for (std::size_t h = 0; h < size; ++h) {
        const bool nonzero = pi.entries[g][h] != 0;
        if (nonzero && (!surjects[g][h] || h < g)) tri = false;
        // Once k covers every fiber (k >= |V(H)|) the converse holds too.
        if (k >= 2 * n && surjects[g][h] && !nonzero) tri = false;
      }
    }
    report.triangular = report.triangular && tri;
    report.positive_diagonal = report.positive_diagonal && diag;
    line(tri, "π_{" + std::to_string(n) + "," + std::to_string(k) + "} supported on the surjection order");
    line(diag, "π_{" + std::to_string(n) + "," + std::to_string(k) + "} diagonal positive");
  }

  bool any_invertibility = false;
  for (int p = 2 * n; p <= p_max; ++p) {
    for (int k = 2; k <= k_max; ++k) {
      any_invertibility = true;
      const RationalMatrix m = constraint_matrix(n, p, k);
      const bool ok = m.rows() == m.cols() && m.determinant() != 0;
      report.invertible = report.invertible && ok;
      line(ok, "π_{" + std::to_string(n) + "," + std::to_string(k * p) + "->" + std::to_string(p) +
                   "} invertible");
    }
  }
  if (!any_invertibility) report.lines.push_back("skip invertibility (p_max < 2n)");

  auto to_matrix = [&](const ConsistencyMatrix& pi) {
    RationalMatrix m(size, size);
    for (std::size_t g = 0; g < size; ++g) {
      for (std::size_t h = 0; h < size; ++h) m(g, h) = Rational(pi.entries[g][h]);
    }
    return m;
  };
  for (int k1 = 2; k1 <= k_max; ++k1) {
    for (int k2 = 2; k2 <= k_max; ++k2) {
      const bool ok = to_matrix(pis[k2 - 1]) * to_matrix(pis[k1 - 1]) == to_matrix(pi_formula(n, k1 * k2));
      report.compatible = report.compatible && ok;
      line(ok, "π_{n," + std::to_string(k2) + "} π_{n," + std::to_string(k1) + "} = π_{n," +
                   std::to_string(k1 * k2) + "}");
    }
  }

  // T-matrix at p = 2n, evaluated through the derivative formula.
  {
    const int p = std::max(2, 2 * n);
    RationalMatrix t(size, size);
    parallel_for(size, [&](std::size_t r) {
      const ConsistencyVector row = extract_T(QuantumGraph::monomial(classes[r]), n, p);
      for (std::size_t c = 0; c < size; ++c) t(r, c) = row.entries[c];
    });
    const bool ok = t.rank() == size;
    report.t_matrix_full_rank = ok;
    line(ok, "T-matrix over ℋ_" + std::to_string(n) + " at p=" + std::to_string(p) + " has rank " +
                 std::to_string(t.rank()) + " of " + std::to_string(size));
  }

  // Consistent families (A_p) over the scales p >= 2 dividing 4n, subject
  // to A_p = π_{n,kp->p} A_{kp} whenever both scales are present.
  {
    const int top = 4 * n;
    std::vector<int> scales;
    for (int p = 2; p <= top; ++p) {
      if (top % p == 0) scales.push_back(p);
    }
    std::map<int, std::size_t> offset;
    std::map<int, std::size_t> width;
    std::size_t vars = 0;
    for (int p : scales) {
      offset[p] = vars;
      width[p] = enumerate_Hnp(n, p).size();
      vars += width[p];
    }
    std::vector<std::vector<Rational>> rows;
    for (int p : scales) {
      for (int q : scales) {
        if (q <= p || q % p != 0) continue;
        const RationalMatrix m = constraint_matrix(n, p, q / p);
        for (std::size_t r = 0; r < m.rows(); ++r) {
          std::vector<Rational> row(vars, Rational(0));
          row[offset[p] + r] = 1;
          for (std::size_t c = 0; c < m.cols(); ++c) row[offset[q] + c] -= m(r, c);
          rows.push_back(std::move(row));
        }
      }
    }
    RationalMatrix system(rows.size(), vars);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < vars; ++c) system(r, c) = rows[r][c];
    }
    const std::size_t dimension = vars - (rows.empty() ? 0 : system.rank());
    const bool ok = dimension == size;
    report.solution_dimension_ok = ok;
    line(ok, "consistent families over scales dividing " + std::to_string(top) + " have dimension " +
                 std::to_string(dimension) + " (|ℋ_" + std::to_string(n) + "| = " + std::to_string(size) + ")");
  }
  return report;
}

}  // namespace gcalc
