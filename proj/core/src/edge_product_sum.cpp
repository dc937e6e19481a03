#include "edge_product_sum.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/parallel.hpp"

namespace gcalc::detail {

std::vector<EdgeFactor> merge_factors(std::span<const EdgeFactor> factors) {
  std::map<std::tuple<int, int, int>, int> merged;
  for (const EdgeFactor& f : factors) {
    merged[{std::min(f.u, f.v), std::max(f.u, f.v), f.kernel}] += f.exponent;
  }
  std::vector<EdgeFactor> out;
  out.reserve(merged.size());
  for (const auto& [key, exponent] : merged) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), exponent});
  }
  return out;
}

EdgeProductSum::EdgeProductSum(int parts, std::span<const StepKernel> kernels) : parts_(parts) {
  require_within_limit(parts, resource_limits().max_parts, "common part count");
  kernels_.reserve(kernels.size());
  for (const StepKernel& w : kernels) {
    if (w.parts() != parts) throw InvalidArgument("kernels must share the part count");
    IntegerKernel ik;
    ik.denominator = 1;
    for (const Rational& x : w.cells()) ik.denominator = lcm(ik.denominator, x.get_den());
    ik.numerators.reserve(w.cells().size());
    for (const Rational& x : w.cells()) {
      ik.numerators.push_back(x.get_num() * (ik.denominator / x.get_den()));
    }
    kernels_.push_back(std::move(ik));
  }
}

EdgeProductSum::Raw EdgeProductSum::evaluate_raw(int vertex_count, std::span<const EdgeFactor> factors_in,
                                                 std::span<const int> pinned_part) const {
  if (static_cast<int>(pinned_part.size()) != vertex_count) {
    throw InvalidArgument("pin vector does not match the vertex count");
  }
  for (int part : pinned_part) {
    if (part < -1 || part >= parts_) throw InvalidArgument("pinned part out of range");
  }
  const std::vector<EdgeFactor> factors = merge_factors(factors_in);
  for (const EdgeFactor& f : factors) {
    if (f.u < 0 || f.v < 0 || f.u >= vertex_count || f.v >= vertex_count || f.u == f.v) {
      throw InvalidArgument("edge factor endpoints invalid");
    }
    if (f.kernel < 0 || f.kernel >= static_cast<int>(kernels_.size())) {
      throw InvalidArgument("edge factor refers to an unknown kernel");
    }
  }

  const int p = parts_;
  const std::size_t cells = static_cast<std::size_t>(p) * p;

  // Power tables, shared between factors with the same kernel and exponent.
  std::map<std::pair<int, int>, int> table_of;
  std::vector<std::vector<BigInt>> tables;
  BigInt divisor = 1;
  std::vector<int> factor_table(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto key = std::pair{factors[i].kernel, factors[i].exponent};
    auto it = table_of.find(key);
    if (it == table_of.end()) {
      const IntegerKernel& ik = kernels_[key.first];
      std::vector<BigInt> table(cells);
      for (std::size_t c = 0; c < cells; ++c) table[c] = pow(ik.numerators[c], key.second);
      tables.push_back(std::move(table));
      it = table_of.emplace(key, static_cast<int>(tables.size()) - 1).first;
    }
    factor_table[i] = it->second;
    divisor *= pow(kernels_[key.first].denominator, key.second);
  }

  std::vector<bool> touched(vertex_count, false);
  for (const EdgeFactor& f : factors) touched[f.u] = touched[f.v] = true;

  std::vector<bool> placed(vertex_count, false);
  int free_touched = 0;
  for (int v = 0; v < vertex_count; ++v) {
    if (pinned_part[v] >= 0) {
      placed[v] = true;
    } else if (touched[v]) {
      ++free_touched;
    }
  }

  // Product of factors between pinned vertices.
  BigInt constant = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const EdgeFactor& f = factors[i];
    if (placed[f.u] && placed[f.v]) {
      constant *= tables[factor_table[i]][pinned_part[f.u] * p + pinned_part[f.v]];
    }
  }
  divisor *= pow(BigInt(p), static_cast<unsigned>(free_touched));
  if (constant == 0) return {BigInt(0), divisor};

  // Free vertices joined by factors between free vertices form independent
  // components; the sum factorises over them.
  std::vector<int> component(vertex_count, -1);
  int component_count = 0;
  for (int s = 0; s < vertex_count; ++s) {
    if (placed[s] || !touched[s] || component[s] >= 0) continue;
    std::vector<int> stack{s};
    component[s] = component_count;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const EdgeFactor& f : factors) {
        const int w = f.u == v ? f.v : f.v == v ? f.u : -1;
        if (w < 0 || placed[w] || component[w] >= 0) continue;
        component[w] = component_count;
        stack.push_back(w);
      }
    }
    ++component_count;
  }

  BigInt total = constant;
  for (int c = 0; c < component_count && total != 0; ++c) {
    int size = 0;
    for (int v = 0; v < vertex_count; ++v) size += component[v] == c;
    require_within_limit(size, resource_limits().max_pattern_vertices, "unpinned pattern vertices");
    total *= component_sum(factors, factor_table, tables, component, c, size, pinned_part);
  }
  return {total, divisor};
}

BigInt EdgeProductSum::component_sum(std::span<const EdgeFactor> factors, std::span<const int> factor_table,
                                     const std::vector<std::vector<BigInt>>& tables,
                                     std::span<const int> component, int which, int size,
                                     std::span<const int> pinned_part) const {
  const int p = parts_;
  const int vertex_count = static_cast<int>(component.size());
  std::vector<bool> placed(vertex_count, false);
  for (int v = 0; v < vertex_count; ++v) placed[v] = pinned_part[v] >= 0;

  // Placement order: most links to already placed vertices first.
  struct Closing {
    int table;
    int other;
  };
  std::vector<int> order;
  std::vector<std::vector<Closing>> closing;
  for (int step = 0; step < size; ++step) {
    int best = -1;
    int best_links = -1;
    for (int v = 0; v < vertex_count; ++v) {
      if (placed[v] || component[v] != which) continue;
      int links = 0;
      for (const EdgeFactor& f : factors) {
        if ((f.u == v && placed[f.v]) || (f.v == v && placed[f.u])) ++links;
      }
      if (links > best_links) {
        best = v;
        best_links = links;
      }
    }
    std::vector<Closing> here;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const EdgeFactor& f = factors[i];
      if (f.u == best && placed[f.v]) here.push_back({factor_table[i], f.v});
      if (f.v == best && placed[f.u]) here.push_back({factor_table[i], f.u});
    }
    placed[best] = true;
    order.push_back(best);
    closing.push_back(std::move(here));
  }

  // Split on the part of the first vertex; each branch owns its state.
  std::vector<BigInt> branch_sums(p);
  parallel_for(static_cast<std::size_t>(p), [&](std::size_t first_part) {
    std::vector<int> part(pinned_part.begin(), pinned_part.end());
    std::vector<BigInt> partial(order.size() + 1);
    partial[0] = 1;
    BigInt sum = 0;

    auto extend = [&](auto&& self, std::size_t depth) -> void {
      if (depth == order.size()) {
        sum += partial[depth];
        return;
      }
      const int v = order[depth];
      const int lo = depth == 0 ? static_cast<int>(first_part) : 0;
      const int hi = depth == 0 ? static_cast<int>(first_part) + 1 : p;
      for (int a = lo; a < hi; ++a) {
        BigInt& acc = partial[depth + 1];
        acc = partial[depth];
        for (const Closing& c : closing[depth]) {
          const BigInt& w = tables[c.table][a * p + part[c.other]];
          if (w == 0) {
            acc = 0;
            break;
          }
          acc *= w;
        }
        if (acc == 0) continue;
        part[v] = a;
        self(self, depth + 1);
      }
      part[v] = -1;
    };
    extend(extend, 0);
    branch_sums[first_part] = std::move(sum);
  });

  BigInt total = 0;
  for (const BigInt& s : branch_sums) total += s;
  return total;
}

Rational EdgeProductSum::evaluate(int vertex_count, std::span<const EdgeFactor> factors,
                                  std::span<const int> pinned_part) const {
  Raw raw = evaluate_raw(vertex_count, factors, pinned_part);
  Rational out(raw.numerator, raw.divisor);
  out.canonicalize();
  return out;
}

}  // namespace gcalc::detail
