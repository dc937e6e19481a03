#pragma once

#include <span>
#include <vector>

#include "gcalc/graphon.hpp"
#include "gcalc/rational.hpp"

namespace gcalc::detail {

/// One factor of an edge product: kernel `kernel` evaluated at the parts of
/// u and v, raised to `exponent`.
struct EdgeFactor {
  int u = 0;
  int v = 0;
  int kernel = 0;
  int exponent = 1;
};

/// Exact evaluation of
///   (1/p^{#free}) * sum over part assignments of the free vertices of
///   prod over factors of W_kernel(part(u), part(v))^exponent
/// for kernels that share one part count p. Kernels are converted once to
/// integer numerators over a common denominator so the inner loop only
/// multiplies integers.
class EdgeProductSum {
 public:
  /// Every kernel must already have `parts` parts.
  EdgeProductSum(int parts, std::span<const StepKernel> kernels);

  int parts() const { return parts_; }
  std::size_t kernel_count() const { return kernels_.size(); }

  /// `pinned_part[v]` is the 0-based part of a pinned vertex, or -1 when v is
  /// integrated over. Factors with equal (u, v, kernel) should be merged by
  /// the caller for speed but need not be.
  Rational evaluate(int vertex_count, std::span<const EdgeFactor> factors,
                    std::span<const int> pinned_part) const;

  /// The integer sum alone (without dividing by denominators and p^{#free}),
  /// together with the divisor. Used to accumulate many evaluations that share
  /// a divisor without normalising each one.
  struct Raw {
    BigInt numerator;
    BigInt divisor;
  };
  Raw evaluate_raw(int vertex_count, std::span<const EdgeFactor> factors,
                   std::span<const int> pinned_part) const;

 private:
  struct IntegerKernel {
    std::vector<BigInt> numerators;  // parts x parts
    BigInt denominator;
  };

  // Integer sum over the free vertices of one connected component.
  BigInt component_sum(std::span<const EdgeFactor> factors, std::span<const int> factor_table,
                       const std::vector<std::vector<BigInt>>& tables, std::span<const int> component,
                       int which, int size, std::span<const int> pinned_part) const;

  int parts_;
  std::vector<IntegerKernel> kernels_;
};

/// Merges factors with the same endpoints and kernel.
std::vector<EdgeFactor> merge_factors(std::span<const EdgeFactor> factors);

}  // namespace gcalc::detail
