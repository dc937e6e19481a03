#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcalc/calculus.hpp"
#include "gcalc/consistency.hpp"
#include "gcalc/density.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/graphon.hpp"
#include "gcalc/json_io.hpp"
#include "gcalc/limits.hpp"
#include "gcalc/morphisms.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/series.hpp"

namespace gcalc::cli {
namespace {

using Json = nlohmann::ordered_json;

Json number(const Rational& x) { return Json{{"exact", to_string(x)}, {"decimal", to_double(x)}}; }
Json number(const BigInt& x) { return number(Rational(x)); }

std::string text(const BigInt& x) { return format_exact(Rational(x)); }
std::string text(const Rational& x) { return format_exact(x); }

std::string text(double x) {
  if (std::isinf(x)) return "inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

Json real(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

Json embed(const std::string& schema_text) { return Json::parse(schema_text); }

Multigraph load_graph(const std::string& path) { return graph_from_json(read_text_file(path)); }
StepKernel load_kernel(const std::string& path) { return kernel_from_json(read_text_file(path)); }
QuantumGraph load_quantum(const std::string& path) { return quantum_from_json(read_text_file(path)); }

// A single existing file is read as pins JSON; otherwise the tokens are the
// points for labels 1, 2, ... in order.
PinAssignment load_pins(const std::vector<std::string>& tokens) {
  if (tokens.size() == 1 && std::filesystem::is_regular_file(tokens[0])) {
    return pins_from_json(read_text_file(tokens[0]));
  }
  PinAssignment pins;
  for (std::size_t i = 0; i < tokens.size(); ++i) pins[static_cast<int>(i) + 1] = parse_rational(tokens[i]);
  return pins;
}

Json classes_json(const std::vector<Multigraph>& classes) {
  Json list = Json::array();
  for (const auto& g : classes) list.push_back(embed(graph_to_json(g)));
  return list;
}

void list_classes(std::ostringstream& os, const std::vector<Multigraph>& classes) {
  for (std::size_t i = 0; i < classes.size(); ++i) os << "  [" << i << "] " << describe(classes[i]) << '\n';
}

struct Output {
  Json json = Json::object();
  std::ostringstream table;
  int code = kOk;
};

struct Options {
  int n = 0;
  int k = 0;
  int p = 0;
  int N = 0;
  std::string graph, kernel, pattern, target, F, base, series;
  std::vector<std::string> dirs, pins, points, values, kernels;
  std::optional<double> step;
  bool oracle = false;
};

void cmd_enumerate(const Options& o, CLI::App* sub, Output& r) {
  const bool by_vertices = sub->count("-p") > 0;
  const auto classes = by_vertices ? enumerate_Hnp(o.n, o.p) : enumerate_Hn(o.n, o.k);
  r.json["n"] = o.n;
  if (by_vertices) r.json["p"] = o.p; else r.json["k"] = o.k;
  r.json["count"] = classes.size();
  r.json["graphs"] = classes_json(classes);
  r.table << classes.size() << " classes\n";
  list_classes(r.table, classes);
}

void cmd_count(const Options& o, bool surjective, Output& r) {
  const Multigraph h = load_graph(o.pattern);
  const Multigraph g = load_graph(o.target);
  const BigInt count = surjective ? count_surj(h, g) : count_hom(h, g);
  r.json["count"] = number(count);
  r.table << text(count) << '\n';
}

void cmd_aut(const Options& o, Output& r) {
  const BigInt count = count_aut(load_graph(o.graph));
  r.json["count"] = number(count);
  r.table << text(count) << '\n';
}

void cmd_density(const Options& o, Output& r) {
  const Multigraph h = load_graph(o.graph);
  const StepKernel f = load_kernel(o.kernel);
  const Rational value = o.pins.empty() ? density(h, f) : labelled_density(h, f, load_pins(o.pins));
  r.json["density"] = number(value);
  r.table << text(value) << '\n';
}

void cmd_derivative(const Options& o, Output& r) {
  const QuantumGraph F = load_quantum(o.F);
  DerivativeRequest req;
  req.base = load_kernel(o.base);
  for (const auto& path : o.dirs) req.directions.push_back(load_kernel(path));
  if (!o.pins.empty()) req.pins = load_pins(o.pins);
  const Rational exact = gateaux_exact(F, req);
  r.json["order"] = req.directions.size();
  r.json["derivative"] = number(exact);
  r.table << text(exact) << '\n';
  if (o.step) {
    const double numeric = gateaux_numeric(F, req, *o.step);
    r.json["numeric"] = numeric;
    r.table << "numeric " << text(numeric) << '\n';
  }
}

void cmd_extract(const Options& o, Output& r) {
  const auto T = extract_T(load_quantum(o.F), o.n, o.p);
  r.json["n"] = T.n;
  r.json["p"] = T.p;
  Json entries = Json::array();
  r.table << "T for n=" << T.n << " p=" << T.p << '\n';
  for (std::size_t i = 0; i < T.classes.size(); ++i) {
    entries.push_back(Json{{"graph", embed(graph_to_json(T.classes[i]))}, {"value", number(T.entries[i])}});
    r.table << "  " << describe(T.classes[i]) << "  " << text(T.entries[i]) << '\n';
  }
  r.json["entries"] = entries;
}

void cmd_pi(const Options& o, Output& r) {
  const auto pi = o.oracle ? pi_fiber_oracle(o.n, o.k, o.p) : pi_formula(o.n, o.k);
  r.json["n"] = pi.n;
  r.json["k"] = pi.k;
  r.json["method"] = o.oracle ? "fiber" : "formula";
  r.json["classes"] = classes_json(pi.classes);
  Json rows = Json::array();
  for (const auto& row : pi.entries) {
    Json cells = Json::array();
    for (const auto& x : row) cells.push_back(to_string(x));
    rows.push_back(cells);
  }
  r.json["matrix"] = rows;
  r.table << "pi for n=" << pi.n << " k=" << pi.k << " (rows G, columns H)\n";
  list_classes(r.table, pi.classes);
  for (std::size_t g = 0; g < pi.entries.size(); ++g) {
    r.table << "  [" << g << "]";
    for (const auto& x : pi.entries[g]) r.table << ' ' << to_string(x);
    r.table << '\n';
  }
}

void cmd_verify(const Options& o, CLI::App* sub, Output& r) {
  const int p_max = sub->count("-p") > 0 ? o.p : 2 * o.n;
  const int k_max = sub->count("-k") > 0 ? o.k : 2;
  const auto report = verify_structure(o.n, p_max, k_max);
  const bool ok = report.passed();
  r.json["n"] = o.n;
  r.json["p_max"] = p_max;
  r.json["k_max"] = k_max;
  r.json["checks"] = Json{{"triangular", report.triangular},
                          {"positive_diagonal", report.positive_diagonal},
                          {"invertible", report.invertible},
                          {"compatible", report.compatible},
                          {"t_matrix_full_rank", report.t_matrix_full_rank},
                          {"solution_dimension_ok", report.solution_dimension_ok}};
  r.json["lines"] = report.lines;
  r.json["result"] = ok ? "PASS" : "FAIL";
  for (const auto& line : report.lines) r.table << line << '\n';
  r.table << (ok ? "PASS" : "FAIL") << '\n';
  if (!ok) r.code = kFailure;
}

void cmd_taylor(const Options& o, CLI::App* sub, Output& r) {
  const QuantumGraph F = load_quantum(o.F);
  const int p = sub->count("-p") > 0 ? o.p : std::max(2 * o.N, 1);
  const auto report = taylor_recover(quantum_oracle(F), o.N, p);
  r.json["N"] = report.N;
  r.json["p"] = report.p;
  r.json["coefficients"] = embed(quantum_to_json(report.coefficients));
  r.json["residual"] = report.residual;
  r.table << "recovered through degree " << report.N << " on " << report.p << " parts\n";
  for (const auto& [key, term] : report.coefficients.terms()) {
    r.table << "  " << describe(term.graph) << "  " << text(term.coeff) << '\n';
  }
  for (const auto& line : report.residual) r.table << line << '\n';
}

void cmd_whitney(const Options& o, Output& r) {
  const auto w = whitney_matrix(o.n, o.k, load_pins(o.pins));
  r.json["n"] = w.n;
  r.json["k"] = w.k;
  r.json["p"] = w.p;
  r.json["classes"] = classes_json(w.classes);
  Json rows = Json::array();
  for (std::size_t i = 0; i < w.matrix.rows(); ++i) {
    Json cells = Json::array();
    for (std::size_t j = 0; j < w.matrix.cols(); ++j) cells.push_back(to_string(w.matrix(i, j)));
    rows.push_back(cells);
  }
  r.json["matrix"] = rows;
  r.json["determinant"] = number(w.matrix.determinant());
  r.table << "Whitney matrix for n=" << w.n << " k=" << w.k << " on " << w.p << " parts\n";
  list_classes(r.table, w.classes);
  for (std::size_t i = 0; i < w.matrix.rows(); ++i) {
    r.table << "  [" << i << "]";
    for (std::size_t j = 0; j < w.matrix.cols(); ++j) r.table << ' ' << to_string(w.matrix(i, j));
    r.table << '\n';
  }
  r.table << "determinant " << text(w.matrix.determinant()) << '\n';
}

void cmd_interpolate(const Options& o, Output& r) {
  if (o.points.size() != o.values.size()) throw InvalidArgument("--points and --values differ in length");
  std::vector<StepKernel> points;
  std::vector<Rational> values;
  for (const auto& path : o.points) points.push_back(load_kernel(path));
  for (const auto& v : o.values) values.push_back(parse_rational(v));
  const QuantumGraph q = lagrange_interpolate(points, values);
  r.json["quantum"] = embed(quantum_to_json(q));
  for (const auto& [key, term] : q.terms()) r.table << describe(term.graph) << "  " << text(term.coeff) << '\n';
  if (q.is_zero()) r.table << "0\n";
}

void cmd_series(const Options& o, Output& r) {
  const PowerSeries s = series_from_json(read_text_file(o.series));
  const StepKernel f = load_kernel(o.kernel);
  const auto value = eval_series(s, f, o.N);
  const auto radius = radius_of_convergence(s);
  r.json["N"] = o.N;
  r.json["value"] = number(value.value);
  r.json["sup"] = number(value.sup);
  r.json["tail_bound"] = value.tail_bound ? number(*value.tail_bound) : Json(nullptr);
  Json rj{{"lower", real(radius.lower)}, {"heuristic", radius.heuristic}};
  rj["exact"] = radius.exact ? real(*radius.exact) : Json(nullptr);
  rj["estimate"] = radius.estimate ? real(*radius.estimate) : Json(nullptr);
  r.json["radius"] = rj;
  r.table << "partial sum " << text(value.value) << '\n';
  r.table << "sup |f| " << text(value.sup) << '\n';
  r.table << "tail bound " << (value.tail_bound ? text(*value.tail_bound) : std::string("unknown")) << '\n';
  r.table << "radius >= " << text(radius.lower);
  if (radius.exact) r.table << ", exact " << text(*radius.exact);
  if (radius.estimate) r.table << ", estimate " << text(*radius.estimate) << (radius.heuristic ? " (heuristic)" : "");
  r.table << '\n';
}

void cmd_cutnorm(const Options& o, Output& r) {
  const StepKernel f = load_kernel(o.kernel);
  const Rational cut = cut_norm(f);
  const Rational l1 = l1_norm(f);
  r.json["cut_norm"] = number(cut);
  r.json["l1_norm"] = number(l1);
  r.table << "cut norm " << text(cut) << '\n' << "L1 norm " << text(l1) << '\n';
}

void cmd_tensor(const Options& o, Output& r) {
  if (o.kernels.size() != 2) throw InvalidArgument("tensor takes exactly two --kernel files");
  const StepKernel t = tensor_product(load_kernel(o.kernels[0]), load_kernel(o.kernels[1]));
  r.json["kernel"] = embed(kernel_to_json(t));
  r.table << t.parts() << " parts\n";
  for (int a = 0; a < t.parts(); ++a) {
    for (int b = 0; b < t.parts(); ++b) r.table << (b ? " " : "") << to_string(t(a, b));
    r.table << '\n';
  }
}

void cmd_sidorenko(const Options& o, Output& r) {
  const auto report = sidorenko_star_check(o.k, load_kernel(o.kernel));
  r.json["k"] = o.k;
  r.json["star_density"] = number(report.lhs);
  r.json["edge_density_power"] = number(report.rhs);
  r.json["holds"] = report.holds;
  r.json["equality"] = report.equality;
  r.json["regular"] = report.regular;
  r.table << "t(S_" << o.k << ", f) = " << text(report.lhs) << '\n';
  r.table << "t(K_2, f)^" << o.k << " = " << text(report.rhs) << '\n';
  r.table << (report.holds ? "holds" : "violated") << (report.equality ? ", equality" : "")
          << (report.regular ? ", regular" : "") << '\n';
  if (!report.holds) r.code = kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact calculus on step graphons", "graphon-calc"};
  app.require_subcommand(1);

  std::string format = "table";
  ResourceLimits limits = resource_limits();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--max-parts", limits.max_parts, "Common part count cap")->check(CLI::PositiveNumber);
  app.add_option("--max-vertices", limits.max_pattern_vertices, "Unpinned vertices per connected piece")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-fiber-iterations", limits.max_fiber_iterations, "Index tuples for the fiber oracle")
      ->check(CLI::PositiveNumber);

  Options o;
  std::vector<std::pair<CLI::App*, std::function<void(Output&)>>> commands;
  auto command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  auto* enumerate = command("enumerate", "List isomorphism classes with n edges");
  enumerate->add_option("-n", o.n, "Edge count")->required()->check(CLI::NonNegativeNumber);
  auto* enumerate_k = enumerate->add_option("-k", o.k, "Label count")->check(CLI::NonNegativeNumber);
  enumerate->add_option("-p", o.p, "Exact vertex count (unlabelled)")->check(CLI::NonNegativeNumber)->excludes(enumerate_k);
  commands.emplace_back(enumerate, [&](Output& r) { cmd_enumerate(o, enumerate, r); });

  for (const bool surjective : {false, true}) {
    auto* sub = command(surjective ? "surj" : "hom",
                        surjective ? "Count surjective homomorphisms" : "Count homomorphisms");
    sub->add_option("--pattern", o.pattern, "Pattern graph JSON")->required();
    sub->add_option("--target", o.target, "Target graph JSON")->required();
    commands.emplace_back(sub, [&, surjective](Output& r) { cmd_count(o, surjective, r); });
  }

  auto* aut = command("aut", "Count automorphisms");
  aut->add_option("--graph", o.graph, "Graph JSON")->required();
  commands.emplace_back(aut, [&](Output& r) { cmd_aut(o, r); });

  auto* dens = command("density", "Homomorphism density t(H, f)");
  dens->add_option("--graph", o.graph, "Graph JSON")->required();
  dens->add_option("--kernel", o.kernel, "Kernel JSON")->required();
  dens->add_option("--pins", o.pins, "Pins JSON file or points for labels 1, 2, ...");
  commands.emplace_back(dens, [&](Output& r) { cmd_density(o, r); });

  auto* deriv = command("derivative", "Gateaux derivative of a quantum graph");
  deriv->add_option("--F", o.F, "Quantum graph JSON")->required();
  deriv->add_option("--base", o.base, "Base kernel JSON")->required();
  deriv->add_option("--dirs", o.dirs, "Direction kernel JSON files");
  deriv->add_option("--pins", o.pins, "Pins JSON file or points for labels 1, 2, ...");
  deriv->add_option("--numeric-step", o.step, "Also report a finite-difference estimate with this step");
  commands.emplace_back(deriv, [&](Output& r) { cmd_derivative(o, r); });

  auto* extract = command("extractT", "Consistency vector T_{n,p}(F)");
  extract->add_option("--F", o.F, "Quantum graph JSON")->required();
  extract->add_option("-n", o.n, "Degree")->required()->check(CLI::PositiveNumber);
  extract->add_option("-p", o.p, "Part count")->required()->check(CLI::PositiveNumber);
  commands.emplace_back(extract, [&](Output& r) { cmd_extract(o, r); });

  auto* pi = command("pi", "Consistency matrix pi_{n,k}");
  pi->add_option("-n", o.n, "Edge count")->required()->check(CLI::PositiveNumber);
  pi->add_option("-k", o.k, "Refinement factor")->required()->check(CLI::PositiveNumber);
  pi->add_flag("--oracle", o.oracle, "Count fibers instead of using the closed form");
  auto* pi_p = pi->add_option("-p", o.p, "Part count for the fiber oracle")->check(CLI::PositiveNumber);
  pi->get_option("--oracle")->needs(pi_p);
  commands.emplace_back(pi, [&](Output& r) { cmd_pi(o, r); });

  auto* verify = command("verify", "Verification suites");
  verify->require_subcommand(1);
  auto* consistency = verify->add_subcommand("consistency", "Structure of the consistency matrices");
  consistency->fallthrough();
  consistency->add_option("-n", o.n, "Edge count")->required()->check(CLI::PositiveNumber);
  consistency->add_option("-p", o.p, "Largest part count (default 2n)")->check(CLI::PositiveNumber);
  consistency->add_option("-k", o.k, "Largest refinement factor (default 2)")->check(CLI::PositiveNumber);
  commands.emplace_back(consistency, [&](Output& r) { cmd_verify(o, consistency, r); });

  auto* taylor = command("taylor-recover", "Recover quantum coefficients from derivatives at 0");
  taylor->add_option("--F", o.F, "Quantum graph JSON used as the oracle")->required();
  taylor->add_option("-N", o.N, "Degree")->required()->check(CLI::NonNegativeNumber);
  taylor->add_option("-p", o.p, "Part count (default 2N)")->check(CLI::PositiveNumber);
  commands.emplace_back(taylor, [&](Output& r) { cmd_taylor(o, taylor, r); });

  auto* whitney = command("whitney", "Labelled Whitney matrix");
  whitney->add_option("-n", o.n, "Edge count")->required()->check(CLI::NonNegativeNumber);
  whitney->add_option("-k", o.k, "Label count")->required()->check(CLI::NonNegativeNumber);
  whitney->add_option("--pins", o.pins, "Pins JSON file or points for labels 1, 2, ...");
  commands.emplace_back(whitney, [&](Output& r) { cmd_whitney(o, r); });

  auto* interp = command("interpolate", "Quantum graph through given kernel values");
  interp->add_option("--points", o.points, "Kernel JSON files")->required();
  interp->add_option("--values", o.values, "Target values")->required();
  commands.emplace_back(interp, [&](Output& r) { cmd_interpolate(o, r); });

  auto* series = command("series-eval", "Partial sum, tail bound and radius of a power series");
  series->add_option("--series", o.series, "Power series JSON")->required();
  series->add_option("--kernel", o.kernel, "Kernel JSON")->required();
  series->add_option("-N", o.N, "Truncation degree")->required()->check(CLI::NonNegativeNumber);
  commands.emplace_back(series, [&](Output& r) { cmd_series(o, r); });

  auto* cut = command("cutnorm", "Cut norm and L1 norm of a kernel");
  cut->add_option("--kernel", o.kernel, "Kernel JSON")->required();
  commands.emplace_back(cut, [&](Output& r) { cmd_cutnorm(o, r); });

  auto* tensor = command("tensor", "Tensor product of two kernels");
  tensor->add_option("--kernel", o.kernels, "Kernel JSON (twice)")->required()->expected(2);
  commands.emplace_back(tensor, [&](Output& r) { cmd_tensor(o, r); });

  auto* sidorenko = command("sidorenko", "Compare t(S_k, f) with t(K_2, f)^k");
  sidorenko->add_option("-k", o.k, "Star size")->required()->check(CLI::PositiveNumber);
  sidorenko->add_option("--kernel", o.kernel, "Kernel JSON")->required();
  commands.emplace_back(sidorenko, [&](Output& r) { cmd_sidorenko(o, r); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kFailure;
  }

  try {
    ScopedResourceLimits scope(limits);
    Output result;
    for (auto& [sub, handler] : commands) {
      if (sub->parsed()) {
        handler(result);
        break;
      }
    }
    if (format == "json") {
      out << result.json.dump(2) << '\n';
    } else {
      out << result.table.str();
    }
    return result.code;
  } catch (const ResourceLimitExceeded& e) {
    err << "resource limit exceeded: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kFailure;
  } catch (const SingularSystem& e) {
    err << "singular system: " << e.what() << '\n';
    return kFailure;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace gcalc::cli
