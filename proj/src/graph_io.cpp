#include "regseed/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "regseed/errors.hpp"

namespace regseed {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ValidationError("unknown field \"" + item.key() + "\" in " + where);
}

int get_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError("missing field \"" + key + "\" in " + where);
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw ValidationError("field \"" + key + "\" in " + where + " must be an integer");
  return v.get<int>();
}

std::vector<ColorId> get_color_row(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + " must be an array");
  std::vector<ColorId> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw ValidationError(where + " must hold non-negative integers");
    out.push_back(v.get<ColorId>());
  }
  return out;
}

}  // namespace

std::string write_graph_json(const ColoredGraph& g) {
  require_valid(g);
  json j;
  j["r"] = g.r;
  j["parts"] = g.part_sizes;
  j["b"] = {g.b1, g.b2};
  j["vertex_colors"] = g.vertex_colors;
  json pairs = json::array();
  for (int i = 0; i < g.r; ++i) {
    for (int jj = i + 1; jj < g.r; ++jj) {
      int pi = g.pair_index(i, jj);
      json p;
      p["i"] = i;
      p["j"] = jj;
      p["palette"] = g.pair_palette[pi];
      p["matrix"] = g.pair_matrix[pi];
      pairs.push_back(std::move(p));
    }
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

ColoredGraph read_graph_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad graph JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("graph JSON must be an object");
  reject_unknown(j, {"r", "parts", "b", "vertex_colors", "pairs"}, "graph");

  ColoredGraph g;
  g.r = get_int(j, "r", "graph");
  if (g.r < 2 || g.r > 1000) throw ValidationError("graph field \"r\" out of range");

  if (!j.contains("parts") || !j.at("parts").is_array() ||
      static_cast<int>(j.at("parts").size()) != g.r)
    throw ValidationError("graph field \"parts\" must list one size per part");
  for (const json& v : j.at("parts")) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw ValidationError("part sizes must be positive integers");
    g.part_sizes.push_back(v.get<int>());
  }

  if (!j.contains("b") || !j.at("b").is_array() || j.at("b").size() != 2)
    throw ValidationError("graph field \"b\" must be [b1, b2]");
  g.b1 = j.at("b")[0].is_number_integer() ? j.at("b")[0].get<int>() : 0;
  g.b2 = j.at("b")[1].is_number_integer() ? j.at("b")[1].get<int>() : 0;
  if (g.b1 < 1 || g.b2 < 1) throw ValidationError("palette bounds must be positive");

  if (!j.contains("vertex_colors") || !j.at("vertex_colors").is_array() ||
      static_cast<int>(j.at("vertex_colors").size()) != g.r)
    throw ValidationError("graph field \"vertex_colors\" must list one row per part");
  for (int i = 0; i < g.r; ++i) {
    g.vertex_colors.push_back(get_color_row(j.at("vertex_colors")[i], "vertex_colors row"));
    // The format carries a single b1, so per-part palettes coarsen to b1.
    g.vertex_palette.push_back(g.b1);
  }

  if (!j.contains("pairs") || !j.at("pairs").is_array())
    throw ValidationError("graph field \"pairs\" must be an array");
  g.pair_palette.assign(g.pair_count(), 0);
  g.pair_matrix.assign(g.pair_count(), {});
  std::vector<bool> seen(g.pair_count(), false);
  for (const json& p : j.at("pairs")) {
    if (!p.is_object()) throw ValidationError("each pair must be an object");
    reject_unknown(p, {"i", "j", "palette", "matrix"}, "pair");
    int i = get_int(p, "i", "pair");
    int jj = get_int(p, "j", "pair");
    if (i < 0 || jj <= i || jj >= g.r)
      throw ValidationError("pair (i, j) must satisfy 0 <= i < j < r");
    int pi = g.pair_index(i, jj);
    if (seen[pi]) throw ValidationError("duplicate pair in graph JSON");
    seen[pi] = true;
    g.pair_palette[pi] = get_int(p, "palette", "pair");
    if (!p.contains("matrix"))
      throw ValidationError("missing field \"matrix\" in pair");
    g.pair_matrix[pi] = get_color_row(p.at("matrix"), "pair matrix");
  }
  for (int pi = 0; pi < g.pair_count(); ++pi)
    if (!seen[pi]) {
      auto [i, jj] = g.pair_parts(pi);
      throw ValidationError("missing pair (" + std::to_string(i) + ", " +
                            std::to_string(jj) + ") in graph JSON");
    }

  require_valid(g);
  return g;
}

void save_graph(const ColoredGraph& g, const std::string& path) {
  write_file(path, write_graph_json(g));
}

ColoredGraph load_graph(const std::string& path) {
  return read_graph_json(read_file(path));
}

std::string write_signature_sidecar(const std::vector<std::vector<Signature>>& palettes) {
  json j;
  json parts = json::array();
  for (const auto& part : palettes) {
    json classes = json::array();
    for (const Signature& s : part) {
      json c;
      c["original"] = s.original;
      c["adjacency"] = s.adjacency;
      classes.push_back(std::move(c));
    }
    parts.push_back(std::move(classes));
  }
  j["palettes"] = std::move(parts);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw ValidationError("failed writing " + path);
}

}  // namespace regseed
