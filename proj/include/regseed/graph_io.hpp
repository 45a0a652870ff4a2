#pragma once

#include <string>
#include <vector>

#include "regseed/graph.hpp"
#include "regseed/regularize.hpp"

namespace regseed {

// Canonical JSON form:
//   {"b": [b1, b2],
//    "pairs": [{"i": 0, "j": 1, "palette": p, "matrix": [row-major ids]}, ...],
//    "parts": [sizes], "r": r, "vertex_colors": [[ids per part], ...]}
// Pairs are emitted sorted by (i, j); writing what read produced is
// byte-identical.  Readers reject unknown fields by name.  The format carries
// one b1, so per-part vertex palette sizes coarsen to b1 on read.
std::string write_graph_json(const ColoredGraph& g);
ColoredGraph read_graph_json(const std::string& text);

void save_graph(const ColoredGraph& g, const std::string& path);
ColoredGraph load_graph(const std::string& path);

// Audit sidecar for a regularization: fresh color id -> signature, per part.
std::string write_signature_sidecar(const std::vector<std::vector<Signature>>& palettes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace regseed
