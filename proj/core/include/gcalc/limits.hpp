#pragma once

#include <cstdint>
#include <string_view>

namespace gcalc {

/// Process-wide resource caps. Every exhaustive kernel in the library checks
/// the relevant cap before starting and throws ResourceLimitExceeded instead
/// of running unbounded.
struct ResourceLimits {
  /// Common part count allowed when evaluating densities and derivatives.
  int max_parts = 12;
  /// Unpinned vertices in one connected piece of a pattern graph (densities
  /// factor over the pieces).
  int max_pattern_vertices = 8;
  /// Part count accepted by the exact cut-norm routine (2^p subsets).
  int max_cut_norm_parts = 20;
  /// Part count of a tensor product.
  int max_tensor_parts = 144;
  /// Index tuples visited by the fiber-counting consistency oracle (k^{2n}).
  std::int64_t max_fiber_iterations = 10'000'000;
  /// Isomorphism classes produced by a single enumeration.
  std::int64_t max_enumerated_classes = 1'000'000;
  /// Edge count searched when looking for a separating graph.
  int max_separation_edges = 4;
};

/// Current limits (read by all library routines).
const ResourceLimits& resource_limits();

/// Replaces the process-wide limits. Not synchronised with concurrent
/// readers: call it before starting work.
void set_resource_limits(const ResourceLimits& limits);

/// Restores the previous limits when it goes out of scope.
class ScopedResourceLimits {
 public:
  explicit ScopedResourceLimits(const ResourceLimits& limits);
  ~ScopedResourceLimits();
  ScopedResourceLimits(const ScopedResourceLimits&) = delete;
  ScopedResourceLimits& operator=(const ScopedResourceLimits&) = delete;

 private:
  ResourceLimits saved_;
};

/// Throws ResourceLimitExceeded with a uniform message if value > cap.
void require_within_limit(std::int64_t value, std::int64_t cap, std::string_view what);

}  // namespace gcalc
