#include "gcalc/graphon.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "gcalc/errors.hpp"
#include "gcalc/limits.hpp"

namespace gcalc {

StepKernel::StepKernel(int parts, std::vector<Rational> cells, std::optional<Interval> bounds)
    : parts_(parts), cells_(std::move(cells)), bounds_(std::move(bounds)) {
  if (parts_ < 1) throw InvalidArgument("a step kernel needs at least one part");
  if (cells_.size() != static_cast<std::size_t>(parts_) * parts_) {
    throw InvalidArgument("step kernel matrix must be parts x parts");
  }
  for (int a = 0; a < parts_; ++a) {
    for (int b = a + 1; b < parts_; ++b) {
      if ((*this)(a, b) != (*this)(b, a)) throw InvalidArgument("step kernel matrix must be symmetric");
    }
  }
  if (bounds_) {
    if (bounds_->lo > bounds_->hi) throw InvalidArgument("empty declared bounds");
    for (const Rational& x : cells_) {
      if (x < bounds_->lo || x > bounds_->hi) {
        throw InvalidArgument("step kernel entry outside declared bounds");
      }
    }
  }
}

StepKernel StepKernel::constant(const Rational& value, int parts) {
  return StepKernel(parts, std::vector<Rational>(static_cast<std::size_t>(parts) * parts, value));
}

StepKernel StepKernel::from_graph(const Multigraph& g) {
  if (g.vertex_count() == 0) throw InvalidArgument("f^G needs a graph with vertices");
  const int p = g.vertex_count();
  std::vector<Rational> cells(static_cast<std::size_t>(p) * p);
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) cells[a * p + b] = a == b ? 0 : g.multiplicity(a, b);
  }
  return StepKernel(p, std::move(cells));
}

bool StepKernel::is_graphon() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Rational& x) { return x >= 0 && x <= 1; });
}

bool StepKernel::is_zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Rational& x) { return x == 0; });
}

Rational StepKernel::sup_norm() const {
  Rational best = 0;
  for (const Rational& x : cells_) best = std::max(best, abs(x));
  return best;
}

StepKernel StepKernel::operator+(const StepKernel& rhs) const {
  auto [a, b] = common_refinement(*this, rhs);
  std::vector<Rational> cells(a.cells_.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = a.cells_[i] + b.cells_[i];
  return StepKernel(a.parts_, std::move(cells));
}

StepKernel StepKernel::operator-(const StepKernel& rhs) const { return *this + rhs * Rational(-1); }

StepKernel StepKernel::operator*(const Rational& scale) const {
  std::vector<Rational> cells(cells_.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = cells_[i] * scale;
  return StepKernel(parts_, std::move(cells));
}

bool StepKernel::same_function(const StepKernel& rhs) const {
  auto [a, b] = common_refinement(*this, rhs);
  return a.cells_ == b.cells_;
}

StepKernel basis_edge(int p, int a, int b) {
  if (a < 1 || b < 1 || a > p || b > p) throw InvalidArgument("basis edge index out of range");
  if (a == b) throw InvalidArgument("basis edges are off-diagonal (a != b)");
  if (a > b) std::swap(a, b);
  std::vector<Rational> cells(static_cast<std::size_t>(p) * p);
  cells[(a - 1) * p + (b - 1)] = 1;
  cells[(b - 1) * p + (a - 1)] = 1;
  return StepKernel(p, std::move(cells));
}

StepKernel refine(const StepKernel& f, int k) {
  if (k < 1) throw InvalidArgument("refinement factor must be positive");
  if (k == 1) return f;
  const int p = f.parts();
  const int q = p * k;
  std::vector<Rational> cells(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) cells[a * q + b] = f(a / k, b / k);
  }
  return StepKernel(q, std::move(cells));
}

std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& f, const StepKernel& g) {
  const int l = std::lcm(f.parts(), g.parts());
  return {refine(f, l / f.parts()), refine(g, l / g.parts())};
}

std::vector<StepKernel> common_refinement(std::span<const StepKernel> kernels) {
  int l = 1;
  for (const auto& f : kernels) l = std::lcm(l, f.parts());
  std::vector<StepKernel> out;
  out.reserve(kernels.size());
  for (const auto& f : kernels) out.push_back(refine(f, l / f.parts()));
  return out;
}

Rational l1_norm(const StepKernel& f) {
  Rational sum = 0;
  for (const Rational& x : f.cells()) sum += abs(x);
  return sum / (f.parts() * f.parts());
}

Rational cut_norm(const StepKernel& f) {
  const int p = f.parts();
  require_within_limit(p, resource_limits().max_cut_norm_parts, "cut-norm part count");
  // The integral over S x T is the bilinear form s^T M t / p^2 in the part
  // fractions s, t in [0,1]^p, so the supremum is attained at 0/1 vectors.
  // For fixed s the best t keeps exactly the columns of one sign.
  Rational best = 0;
  std::vector<Rational> column(p);
  const std::uint64_t subsets = std::uint64_t{1} << p;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    for (int b = 0; b < p; ++b) column[b] = 0;
    for (int a = 0; a < p; ++a) {
      if (!(s >> a & 1)) continue;
      for (int b = 0; b < p; ++b) column[b] += f(a, b);
    }
    Rational positive = 0;
    Rational negative = 0;
    for (const Rational& c : column) {
      if (c > 0) {
        positive += c;
      } else {
        negative -= c;
      }
    }
    best = std::max({best, positive, negative});
  }
  return best / (p * p);
}

StepKernel tensor_product(const StepKernel& f, const StepKernel& g) {
  const int pf = f.parts();
  const int pg = g.parts();
  require_within_limit(static_cast<std::int64_t>(pf) * pg, resource_limits().max_tensor_parts,
                       "tensor product part count");
  const int q = pf * pg;
  std::vector<Rational> cells(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < pf; ++a) {
    for (int c = 0; c < pg; ++c) {
      for (int b = 0; b < pf; ++b) {
        for (int d = 0; d < pg; ++d) cells[(a * pg + c) * q + (b * pg + d)] = f(a, b) * g(c, d);
      }
    }
  }
  return StepKernel(q, std::move(cells));
}

StepKernel permute_parts(const StepKernel& f, std::span<const int> sigma) {
  const int p = f.parts();
  if (static_cast<int>(sigma.size()) != p) throw InvalidArgument("permutation arity mismatch");
  std::vector<bool> hit(p, false);
  for (int x : sigma) {
    if (x < 0 || x >= p || hit[x]) throw InvalidArgument("not a permutation of the parts");
    hit[x] = true;
  }
  std::vector<Rational> cells(static_cast<std::size_t>(p) * p);
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) cells[a * p + b] = f(sigma[a], sigma[b]);
  }
  return StepKernel(p, std::move(cells));
}

bool is_admissible(const StepKernel& f, const StepKernel& g) {
  if (!f.is_graphon()) throw InvalidArgument("admissibility is defined at graphons (entries in [0,1])");
  auto [fr, gr] = common_refinement(f, g);
  for (std::size_t i = 0; i < fr.cells().size(); ++i) {
    const Rational& base = fr.cells()[i];
    const Rational& dir = gr.cells()[i];
    if (base == 0 && dir < 0) return false;
    if (base == 1 && dir > 0) return false;
  }
  return true;
}

}  // namespace gcalc
