#include "gcalc/quantum_graph.hpp"

#include <algorithm>

#include "gcalc/errors.hpp"

namespace gcalc {

QuantumGraph QuantumGraph::monomial(const Multigraph& g, const Rational& coeff) {
  QuantumGraph q(g.label_count());
  q.add(g, coeff);
  return q;
}

QuantumGraph QuantumGraph::constant(const Rational& coeff, int k) {
  QuantumGraph q(k);
  q.add(Multigraph(), coeff);
  return q;
}

int QuantumGraph::max_degree() const {
  int best = -1;
  for (const auto& [key, term] : terms_) best = std::max(best, term.graph.edge_count());
  return best;
}

void QuantumGraph::add(const Multigraph& g, const Rational& coeff) {
  if (g.label_count() > k_) {
    throw InvalidArgument("graph carries more labels than the quantum graph");
  }
  if (coeff == 0) return;
  const Multigraph rep = canonical_form(strip_isolated(g.with_label_count(k_)));
  auto key = canonical_key(rep);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), Term{rep, coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == 0) terms_.erase(it);
}

Rational QuantumGraph::coefficient(const Multigraph& g) const {
  if (g.label_count() > k_) return 0;
  const auto it = terms_.find(canonical_key(strip_isolated(g.with_label_count(k_))));
  return it == terms_.end() ? Rational(0) : it->second.coeff;
}

QuantumGraph QuantumGraph::slice(int n) const {
  QuantumGraph out(k_);
  for (const auto& [key, term] : terms_) {
    if (term.graph.edge_count() == n) out.terms_.emplace(key, term);
  }
  return out;
}

QuantumGraph QuantumGraph::operator+(const QuantumGraph& rhs) const {
  QuantumGraph out(std::max(k_, rhs.k_));
  for (const auto& [key, term] : terms_) out.add(term.graph, term.coeff);
  for (const auto& [key, term] : rhs.terms_) out.add(term.graph, term.coeff);
  return out;
}

QuantumGraph QuantumGraph::operator-(const QuantumGraph& rhs) const { return *this + rhs * Rational(-1); }

QuantumGraph QuantumGraph::operator*(const Rational& scale) const {
  QuantumGraph out(k_);
  if (scale == 0) return out;
  out.terms_ = terms_;
  for (auto& [key, term] : out.terms_) term.coeff *= scale;
  return out;
}

bool operator==(const QuantumGraph& a, const QuantumGraph& b) {
  if (a.k_ != b.k_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.coeff != ib->second.coeff) return false;
  }
  return true;
}

QuantumGraph quantum_multiply(const QuantumGraph& a, const QuantumGraph& b) {
  QuantumGraph out(std::max(a.label_count(), b.label_count()));
  for (const auto& [ka, ta] : a.terms()) {
    for (const auto& [kb, tb] : b.terms()) out.add(glue_product(ta.graph, tb.graph), ta.coeff * tb.coeff);
  }
  return out;
}

Rational eval_quantum(const QuantumGraph& F, const StepKernel& f, const PinAssignment& pins) {
  Rational total = 0;
  for (const auto& [key, term] : F.terms()) {
    total += term.coeff * labelled_density(term.graph.with_label_count(F.label_count()), f, pins);
  }
  return total;
}

}  // namespace gcalc
