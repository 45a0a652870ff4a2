#include "regseed/generators.hpp"

#include <sstream>

#include "regseed/errors.hpp"
#include "regseed/rng.hpp"

namespace regseed {

namespace {

ColoredGraph blank(const std::vector<int>& sizes, int b1, int b2) {
  if (sizes.size() < 2) throw ValidationError("generator needs at least 2 parts");
  ColoredGraph g;
  g.r = static_cast<int>(sizes.size());
  g.part_sizes = sizes;
  g.b1 = b1;
  g.b2 = b2;
  for (int i = 0; i < g.r; ++i) {
    if (sizes[i] < 1) throw ValidationError("generator part sizes must be positive");
    g.vertex_palette.push_back(b1);
    g.vertex_colors.emplace_back(sizes[i], 0);
  }
  for (int i = 0; i < g.r; ++i)
    for (int j = i + 1; j < g.r; ++j) {
      g.pair_palette.push_back(b2);
      g.pair_matrix.emplace_back(static_cast<std::size_t>(sizes[i]) * sizes[j], 0);
    }
  return g;
}

void fisher_yates(std::vector<ColorId>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.bounded(i)]);
}

std::vector<int> parse_sizes(const std::string& text, const std::string& spec) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size() || v < 1) throw std::invalid_argument(item);
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("bad part size '" + item + "' in generator spec '" + spec + "'");
    }
  }
  if (sizes.size() < 2) throw ValidationError("generator spec '" + spec + "' needs >= 2 part sizes");
  return sizes;
}

}  // namespace

ColoredGraph generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  switch (spec.kind) {
    case GeneratorSpec::Kind::monochromatic:
      return blank(spec.sizes, 1, 1);

    case GeneratorSpec::Kind::uniform_random: {
      if (spec.b1 < 1 || spec.b2 < 1)
        throw ValidationError("uniform generator needs positive palette bounds");
      ColoredGraph g = blank(spec.sizes, spec.b1, spec.b2);
      for (int i = 0; i < g.r; ++i)
        for (ColorId& c : g.vertex_colors[i])
          c = static_cast<ColorId>(rng.bounded(spec.b1));
      for (auto& m : g.pair_matrix)
        for (ColorId& c : m) c = static_cast<ColorId>(rng.bounded(spec.b2));
      return g;
    }

    case GeneratorSpec::Kind::half_graph: {
      if (spec.sizes.size() != 1 || spec.sizes[0] < 1)
        throw ValidationError("half graph takes a single positive size");
      int n = spec.sizes[0];
      ColoredGraph g = blank({n, n}, 1, 2);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          g.pair_matrix[0][static_cast<std::size_t>(u) * n + v] = u <= v ? 0 : 1;
      return g;
    }

    case GeneratorSpec::Kind::planted_blocks: {
      if (spec.k < 1) throw ValidationError("planted generator needs k >= 1");
      if (spec.noise < 0.0 || spec.noise > 1.0)
        throw ValidationError("planted noise must lie in [0, 1]");
      int p = spec.k < 2 ? 2 : spec.k;
      ColoredGraph g = blank(spec.sizes, 1, p);
      std::vector<std::vector<ColorId>> cls(g.r);
      for (int i = 0; i < g.r; ++i) {
        cls[i].resize(g.part_sizes[i]);
        for (int v = 0; v < g.part_sizes[i]; ++v)
          cls[i][v] = static_cast<ColorId>(v % spec.k);
        fisher_yates(cls[i], rng);
      }
      for (int i = 0; i < g.r; ++i)
        for (int j = i + 1; j < g.r; ++j) {
          auto& m = g.pair_matrix[g.pair_index(i, j)];
          for (int u = 0; u < g.part_sizes[i]; ++u)
            for (int v = 0; v < g.part_sizes[j]; ++v) {
              ColorId c = (cls[i][u] + cls[j][v]) % p;
              if (spec.noise > 0.0 && rng.unit() < spec.noise) {
                ColorId other = static_cast<ColorId>(rng.bounded(p - 1));
                c = other < c ? other : other + 1;
              }
              m[static_cast<std::size_t>(u) * g.part_sizes[j] + v] = c;
            }
        }
      return g;
    }
  }
  throw ValidationError("unknown generator kind");
}

GeneratorSpec parse_generator_spec(const std::string& text, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.seed = seed;
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ValidationError("generator spec '" + text + "' needs the form kind:args");
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);

  if (kind == "mono") {
    spec.kind = GeneratorSpec::Kind::monochromatic;
    spec.sizes = parse_sizes(rest, text);
    return spec;
  }
  if (kind == "half") {
    spec.kind = GeneratorSpec::Kind::half_graph;
    try {
      std::size_t pos = 0;
      int n = std::stoi(rest, &pos);
      if (pos != rest.size() || n < 1) throw std::invalid_argument(rest);
      spec.sizes = {n};
    } catch (const std::exception&) {
      throw ValidationError("half graph spec '" + text + "' needs a positive size");
    }
    return spec;
  }

  auto colon2 = rest.find(':');
  if (colon2 == std::string::npos)
    throw ValidationError("generator spec '" + text + "' needs the form kind:params:sizes");
  std::string params = rest.substr(0, colon2);
  std::string sizes = rest.substr(colon2 + 1);

  if (kind == "uniform") {
    spec.kind = GeneratorSpec::Kind::uniform_random;
    auto comma = params.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(params);
      std::size_t p1 = 0, p2 = 0;
      std::string a = params.substr(0, comma), b = params.substr(comma + 1);
      spec.b1 = std::stoi(a, &p1);
      spec.b2 = std::stoi(b, &p2);
      if (p1 != a.size() || p2 != b.size() || spec.b1 < 1 || spec.b2 < 1)
        throw std::invalid_argument(params);
    } catch (const std::exception&) {
      throw ValidationError("uniform spec '" + text + "' needs b1,b2 as positive integers");
    }
    spec.sizes = parse_sizes(sizes, text);
    return spec;
  }
  if (kind == "planted") {
    spec.kind = GeneratorSpec::Kind::planted_blocks;
    auto comma = params.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(params);
      std::size_t p1 = 0, p2 = 0;
      std::string a = params.substr(0, comma), b = params.substr(comma + 1);
      spec.k = std::stoi(a, &p1);
      spec.noise = std::stod(b, &p2);
      if (p1 != a.size() || p2 != b.size() || spec.k < 1 || spec.noise < 0.0 ||
          spec.noise > 1.0)
        throw std::invalid_argument(params);
    } catch (const std::exception&) {
      throw ValidationError("planted spec '" + text + "' needs k,noise with noise in [0, 1]");
    }
    spec.sizes = parse_sizes(sizes, text);
    return spec;
  }
  throw ValidationError("unknown generator kind '" + kind + "'");
}

}  // namespace regseed
