#pragma once

#include <string>
#include <string_view>

#include "gcalc/density.hpp"
#include "gcalc/graphon.hpp"
#include "gcalc/multigraph.hpp"
#include "gcalc/quantum_graph.hpp"
#include "gcalc/series.hpp"

namespace gcalc {

// JSON schemas (rationals are "num/den" strings or integers):
//   graph    {"vertices": n, "edges": [[u, v, mult], ...], "labels": {"1": v, ...}}
//   kernel   {"parts": p, "matrix": [[x, ...], ...], "bounds": [lo, hi]}
//   quantum  {"k": k, "terms": [{"graph": graph, "coeff": x}, ...]}
//   pins     {"1": x, ...} or [x1, x2, ...]
//   series   {"k": k, "pins": pins, "terms": [...], "truncation": N,
//             "tail": {"kind": "polynomial" | "periodic_geometric" | "envelope" | "unknown", ...}}
// Malformed input raises InvalidArgument.

Multigraph graph_from_json(std::string_view text);
std::string graph_to_json(const Multigraph& g);

StepKernel kernel_from_json(std::string_view text);
std::string kernel_to_json(const StepKernel& f);

QuantumGraph quantum_from_json(std::string_view text);
std::string quantum_to_json(const QuantumGraph& q);

PinAssignment pins_from_json(std::string_view text);
std::string pins_to_json(const PinAssignment& pins);

PowerSeries series_from_json(std::string_view text);
std::string series_to_json(const PowerSeries& s);

/// Whole file as text; InvalidArgument if it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace gcalc
