#include "gcalc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gcalc/errors.hpp"
#include "json.hpp"

namespace gcalc {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_of(const json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidArgument("expected a rational as \"num/den\" or an integer, got " + j.dump());
}

json rational_json(const Rational& x) { return to_string(x); }

int int_of(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidArgument(std::string("expected an integer for ") + what);
  return j.get<int>();
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidArgument(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Multigraph graph_of(const json& j) {
  const int n = int_of(field(j, "vertices"), "vertices");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InvalidArgument("edge must be [u, v] or [u, v, mult]");
      edges.push_back({int_of(e[0], "edge endpoint"), int_of(e[1], "edge endpoint"),
                       e.size() == 3 ? int_of(e[2], "edge multiplicity") : 1});
    }
  }
  std::vector<int> labels;
  if (j.contains("labels")) {
    const json& l = j.at("labels");
    if (!l.is_object()) throw InvalidArgument("labels must be an object {\"1\": v, ...}");
    labels.assign(l.size(), -1);
    for (const auto& [key, value] : l.items()) {
      std::size_t used = 0;
      int index = 0;
      try {
        index = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || index < 1 || index > static_cast<int>(l.size())) {
        throw InvalidArgument("label keys must be 1..k without gaps");
      }
      labels[index - 1] = int_of(value, "labelled vertex");
    }
  }
  return Multigraph(n, edges, labels);
}

json graph_json(const Multigraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.multiplicity});
  json out = {{"vertices", g.vertex_count()}, {"edges", edges}};
  if (g.label_count() > 0) {
    json labels = json::object();
    for (int i = 0; i < g.label_count(); ++i) labels[std::to_string(i + 1)] = g.labels()[i];
    out["labels"] = labels;
  }
  return out;
}

StepKernel kernel_of(const json& j) {
  const int p = int_of(field(j, "parts"), "parts");
  const json& m = field(j, "matrix");
  if (p < 1 || !m.is_array() || static_cast<int>(m.size()) != p) throw InvalidArgument("matrix must have p rows");
  std::vector<Rational> cells;
  for (const json& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != p) throw InvalidArgument("matrix rows must have p entries");
    for (const json& x : row) cells.push_back(rational_of(x));
  }
  std::optional<Interval> bounds;
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_array() || b.size() != 2) throw InvalidArgument("bounds must be [lo, hi]");
    bounds = Interval{rational_of(b[0]), rational_of(b[1])};
  }
  return StepKernel(p, std::move(cells), bounds);
}

json kernel_json(const StepKernel& f) {
  json rows = json::array();
  for (int a = 0; a < f.parts(); ++a) {
    json row = json::array();
    for (int b = 0; b < f.parts(); ++b) row.push_back(rational_json(f(a, b)));
    rows.push_back(row);
  }
  json out = {{"parts", f.parts()}, {"matrix", rows}};
  if (const auto& b = f.declared_bounds()) out["bounds"] = {rational_json(b->lo), rational_json(b->hi)};
  return out;
}

QuantumGraph quantum_of(const json& j) {
  const int k = j.contains("k") ? int_of(j.at("k"), "k") : 0;
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  QuantumGraph q(k);
  for (const json& t : field(j, "terms")) q.add(graph_of(field(t, "graph")), rational_of(field(t, "coeff")));
  return q;
}

json quantum_json(const QuantumGraph& q) {
  json terms = json::array();
  for (const auto& [key, term] : q.terms()) {
    terms.push_back({{"graph", graph_json(term.graph)}, {"coeff", rational_json(term.coeff)}});
  }
  return {{"k", q.label_count()}, {"terms", terms}};
}

PinAssignment pins_of(const json& j) {
  PinAssignment pins;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) pins[static_cast<int>(i) + 1] = rational_of(j[i]);
    return pins;
  }
  if (!j.is_object()) throw InvalidArgument("pins must be an object or an array");
  for (const auto& [key, value] : j.items()) {
    int label = 0;
    try {
      label = std::stoi(key);
    } catch (const std::exception&) {
      throw InvalidArgument("pin keys must be label numbers");
    }
    if (label < 1) throw InvalidArgument("pin keys must be >= 1");
    pins[label] = rational_of(value);
  }
  return pins;
}

json pins_json(const PinAssignment& pins) {
  json out = json::object();
  for (const auto& [label, x] : pins) out[std::to_string(label)] = rational_json(x);
  return out;
}

SeriesTail tail_of(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "polynomial") return PolynomialTail{};
  if (kind == "unknown") return UnknownTail{};
  if (kind == "periodic_geometric") {
    PeriodicGeometricTail t;
    t.period = int_of(field(j, "period"), "period");
    t.ratio = rational_of(field(j, "ratio"));
    for (const json& c : field(j, "coefficients")) t.coefficients.push_back(rational_of(c));
    return t;
  }
  if (kind == "envelope") {
    EnvelopeTail t;
    t.scale = field(j, "scale").get<double>();
    t.power = int_of(field(j, "power"), "power");
    t.rate = field(j, "rate").get<double>();
    return t;
  }
  throw InvalidArgument("unknown tail kind \"" + kind + "\"");
}

json tail_json(const SeriesTail& tail) {
  if (std::holds_alternative<PolynomialTail>(tail)) return {{"kind", "polynomial"}};
  if (std::holds_alternative<UnknownTail>(tail)) return {{"kind", "unknown"}};
  if (const auto* g = std::get_if<PeriodicGeometricTail>(&tail)) {
    json coeffs = json::array();
    for (const auto& c : g->coefficients) coeffs.push_back(rational_json(c));
    return {{"kind", "periodic_geometric"}, {"period", g->period}, {"ratio", rational_json(g->ratio)},
            {"coefficients", coeffs}};
  }
  const auto& e = std::get<EnvelopeTail>(tail);
  return {{"kind", "envelope"}, {"scale", e.scale}, {"power", e.power}, {"rate", e.rate}};
}

template <typename F>
auto guarded(F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Multigraph graph_from_json(std::string_view text) {
  return guarded([&] { return graph_of(parse(text)); });
}
std::string graph_to_json(const Multigraph& g) { return graph_json(g).dump(); }

StepKernel kernel_from_json(std::string_view text) {
  return guarded([&] { return kernel_of(parse(text)); });
}
std::string kernel_to_json(const StepKernel& f) { return kernel_json(f).dump(); }

QuantumGraph quantum_from_json(std::string_view text) {
  return guarded([&] { return quantum_of(parse(text)); });
}
std::string quantum_to_json(const QuantumGraph& q) { return quantum_json(q).dump(); }

PinAssignment pins_from_json(std::string_view text) {
  return guarded([&] { return pins_of(parse(text)); });
}
std::string pins_to_json(const PinAssignment& pins) { return pins_json(pins).dump(); }

PowerSeries series_from_json(std::string_view text) {
  return guarded([&] {
    const json j = parse(text);
    PowerSeries s;
    s.k = j.contains("k") ? int_of(j.at("k"), "k") : 0;
    if (j.contains("pins")) s.pins = pins_of(j.at("pins"));
    json q = {{"k", s.k}, {"terms", field(j, "terms")}};
    s.terms = quantum_of(q);
    s.truncation = int_of(field(j, "truncation"), "truncation");
    s.tail = j.contains("tail") ? tail_of(j.at("tail")) : SeriesTail{PolynomialTail{}};
    validate(s);
    return s;
  });
}

std::string series_to_json(const PowerSeries& s) {
  json out = quantum_json(s.terms);
  out["k"] = s.k;
  out["pins"] = pins_json(s.pins);
  out["truncation"] = s.truncation;
  out["tail"] = tail_json(s.tail);
  return out.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace gcalc
