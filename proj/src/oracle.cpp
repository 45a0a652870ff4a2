#include "regseed/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "regseed/densities.hpp"
#include "regseed/errors.hpp"
#include "regseed/experiment.hpp"
#include "regseed/generators.hpp"
#include "regseed/regularize.hpp"

namespace regseed::oracle {

namespace {

bool map_matches(const ColoredGraph& g, const std::vector<VertexSlot>& vv,
                 const std::vector<EdgeSlot>& ve, const PartitionwiseMap& phi) {
  for (const VertexSlot& s : vv)
    if (g.vertex_color(s.part, phi.targets[s.part][s.slot]) != s.color) return false;
  for (const EdgeSlot& e : ve)
    if (g.edge_color(e.i, phi.targets[e.i][e.a], e.j, phi.targets[e.j][e.b]) != e.color)
      return false;
  return true;
}

// Members of every vertex color class, per part.
std::vector<std::vector<std::vector<int>>> color_classes(const ColoredGraph& g) {
  std::vector<std::vector<std::vector<int>>> members(g.r);
  for (int i = 0; i < g.r; ++i) {
    members[i].resize(g.vertex_palette[i]);
    for (int v = 0; v < g.part_sizes[i]; ++v)
      members[i][g.vertex_colors[i][v]].push_back(v);
  }
  return members;
}

// Odometer over explicit candidate lists; calls fn once per assignment with
// the chosen candidate values.
template <typename Fn>
void for_each_assignment(const std::vector<const std::vector<int>*>& cands, Fn&& fn) {
  std::vector<std::size_t> idx(cands.size(), 0);
  std::vector<int> chosen(cands.size());
  for (;;) {
    for (std::size_t p = 0; p < cands.size(); ++p) chosen[p] = (*cands[p])[idx[p]];
    fn(chosen);
    std::size_t p = cands.size();
    while (p-- > 0) {
      if (++idx[p] < cands[p]->size()) break;
      idx[p] = 0;
      if (p == 0) return;
    }
    if (p == static_cast<std::size_t>(-1)) return;
  }
}

std::uint64_t assignment_space(const std::vector<const std::vector<int>*>& cands,
                               std::uint64_t work_cap, const char* what) {
  BigInt space = 1;
  for (const auto* c : cands) space *= static_cast<std::int64_t>(c->size());
  if (space > work_cap)
    throw WorkCapError(std::string(what) + " needs " + space.str() +
                       " assignments, exceeding the work cap " + std::to_string(work_cap));
  return space.convert_to<std::uint64_t>();
}

struct BucketStats {
  // per bucket of one pair: edge count, per-color count, frame
  std::vector<std::int64_t> n;
  std::vector<std::vector<std::int64_t>> color_count;
  std::vector<std::pair<ColorId, ColorId>> frame;
};

BucketStats bucket_pair(const ColoredGraph& g, const VertexPartition& part, int i, int j) {
  BucketStats b;
  int pi = g.pair_index(i, j);
  int ncu = part.class_count[i], ncv = part.class_count[j];
  int pal = g.pair_palette[pi];
  b.n.assign(static_cast<std::size_t>(ncu) * ncv, 0);
  b.color_count.assign(static_cast<std::size_t>(ncu) * ncv,
                       std::vector<std::int64_t>(pal, 0));
  b.frame.resize(static_cast<std::size_t>(ncu) * ncv);
  for (int cu = 0; cu < ncu; ++cu)
    for (int cv = 0; cv < ncv; ++cv)
      b.frame[static_cast<std::size_t>(cu) * ncv + cv] = {part.class_orig[i][cu],
                                                          part.class_orig[j][cv]};
  const auto& mat = g.pair_matrix[pi];
  int szj = g.part_sizes[j];
  for (int u = 0; u < g.part_sizes[i]; ++u) {
    std::size_t cu = part.cls[i][u];
    for (int v = 0; v < szj; ++v) {
      std::size_t bk = cu * ncv + part.cls[j][v];
      ++b.n[bk];
      ++b.color_count[bk][mat[static_cast<std::size_t>(u) * szj + v]];
    }
  }
  return b;
}

}  // namespace

BigRat exhaustive_embed(const ColoredGraph& g, const Complex& s, std::uint64_t work_cap) {
  require_valid(g);
  require_valid(s, g);
  auto vv = visible_vertices(s);
  auto ve = visible_edges(s);
  MapEnumerator en(g.part_sizes, std::vector<int>(g.r, s.h), work_cap);
  std::uint64_t hits = 0;
  while (en.next())
    if (map_matches(g, vv, ve, en.current())) ++hits;
  return BigRat(hits) / en.total();
}

LemmaCheckResult check_counting_lemma(const ColoredGraph& g, const Complex& s,
                                      std::uint64_t work_cap) {
  require_valid(g);
  require_valid(s, g);
  LemmaCheckResult res;
  auto ve = visible_edges(s);
  int k = static_cast<int>(ve.size());
  if (k == 0) {
    res.holds = true;
    return res;
  }
  if (k > 12)
    throw WorkCapError("counting check with " + std::to_string(k) +
                       " visible edges needs 4^" + std::to_string(k) + " subset terms");

  auto members = color_classes(g);
  DensityTable dens = density_table(g);

  // Only the endpoint slots of visible edges matter; every other slot's
  // candidate count cancels between numerator and denominator.
  std::map<std::pair<int, int>, int> slot_of;  // (part, slot) -> enumeration position
  std::vector<const std::vector<int>*> cands;
  auto add_slot = [&](int part, int slot) {
    auto key = std::make_pair(part, slot);
    if (slot_of.count(key)) return;
    ColorId c = *s.vertex_at(part, slot);
    const auto& cls = members[part][c];
    if (cls.empty())
      throw ValidationError("the vertex condition has probability zero: no vertex of part " +
                            std::to_string(part) + " has color " + std::to_string(c));
    slot_of[key] = static_cast<int>(cands.size());
    cands.push_back(&cls);
  };
  for (const EdgeSlot& e : ve) {
    add_slot(e.i, e.a);
    add_slot(e.j, e.b);
  }
  std::uint64_t total = assignment_space(cands, work_cap, "counting enumeration");

  std::vector<std::uint64_t> mask_count(std::size_t(1) << k, 0);
  for_each_assignment(cands, [&](const std::vector<int>& chosen) {
    std::uint32_t mask = 0;
    for (int e = 0; e < k; ++e) {
      const EdgeSlot& es = ve[e];
      int u = chosen[slot_of.at({es.i, es.a})];
      int v = chosen[slot_of.at({es.j, es.b})];
      if (g.edge_color(es.i, u, es.j, v) == es.color) mask |= 1u << e;
    }
    ++mask_count[mask];
  });

  std::vector<BigRat> d(k);
  for (int e = 0; e < k; ++e) {
    const EdgeSlot& es = ve[e];
    d[e] = dens.density_exact(TotalColor::edge(es.i, es.j, es.color,
                                               *s.vertex_at(es.i, es.a),
                                               *s.vertex_at(es.j, es.b)));
  }

  BigRat p_all = BigRat(mask_count[(std::size_t(1) << k) - 1]) / total;
  BigRat prod_d = 1;
  for (const BigRat& de : d) prod_d *= de;
  BigRat lhs = p_all - prod_d;
  if (lhs < 0) lhs = -lhs;

  BigRat best = 0;
  for (std::uint32_t D = 1; D < (1u << k); ++D) {
    BigRat sum = 0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (mask_count[mask] == 0) continue;
      BigRat term = mask_count[mask];
      for (int e = 0; e < k; ++e)
        if (D & (1u << e)) term *= (mask & (1u << e)) ? BigRat(1 - d[e]) : BigRat(-d[e]);
      sum += term;
    }
    if (sum < 0) sum = -sum;
    if (sum > best) best = sum;
  }
  BigRat rhs = k * best / total;

  res.lhs = to_double(lhs);
  res.rhs = to_double(rhs);
  res.holds = lhs <= rhs;
  res.slack = to_double(rhs - lhs);
  return res;
}

LemmaCheckResult check_cauchy_refinement(const std::vector<BigRat>& X,
                                         const std::vector<int>& coarse,
                                         const std::vector<int>& fine) {
  std::size_t n = X.size();
  if (n == 0 || coarse.size() != n || fine.size() != n)
    throw ValidationError("refinement check needs equally sized X, coarse, fine");
  std::map<int, int> fine_to_coarse;
  for (std::size_t w = 0; w < n; ++w) {
    auto [it, inserted] = fine_to_coarse.emplace(fine[w], coarse[w]);
    if (!inserted && it->second != coarse[w])
      throw ValidationError("the fine partition does not refine the coarse one");
  }
  auto mean_square = [&](const std::vector<int>& labels) {
    std::map<int, std::pair<BigRat, std::int64_t>> cls;
    for (std::size_t w = 0; w < n; ++w) {
      auto& c = cls[labels[w]];
      c.first += X[w];
      c.second += 1;
    }
    BigRat total = 0;
    for (const auto& [lab, c] : cls) total += c.first * c.first / (c.second * BigInt(n));
    return total;
  };
  LemmaCheckResult res;
  BigRat lo = mean_square(coarse), hi = mean_square(fine);
  res.lhs = to_double(lo);
  res.rhs = to_double(hi);
  res.holds = lo <= hi;
  res.slack = to_double(hi - lo);
  return res;
}

std::vector<LemmaCheckResult> check_mean_square_lemma(
    const ColoredGraph& g, const Complex& s, const EdgeSlot& e0, int m,
    const std::map<int, std::vector<BigRat>>& F, std::uint64_t work_cap) {
  require_valid(g);
  require_valid(s, g);
  if (m < 1) throw ValidationError("mean-square check needs m >= 1");
  auto vv = visible_vertices(s);
  auto ve = visible_edges(s);
  auto slot_c = s.edge_at(e0.i, e0.j, e0.a, e0.b);
  if (!slot_c || *slot_c != e0.color)
    throw ValidationError("e0 must name a visible edge slot of the complex");
  for (const EdgeSlot& e : ve) {
    auto it = F.find(s.eslot(e.i, e.j, e.a, e.b));
    if (it == F.end())
      throw ValidationError("F is missing a table for a visible edge slot");
    int pal = g.pair_palette[g.pair_index(e.i, e.j)];
    if (static_cast<int>(it->second.size()) != pal)
      throw ValidationError("an F table does not cover its pair palette");
    for (const BigRat& f : it->second)
      if (f < -1 || f > 1) throw ValidationError("F values must lie in [-1, 1]");
  }
  DensityTable dens = density_table(g);
  auto members = color_classes(g);

  // Unconditional left-hand side: every visible vertex slot ranges over its
  // whole part; invisible slots integrate out.
  std::vector<std::pair<int, int>> slots;  // (part, slot)
  std::map<std::pair<int, int>, int> pos;
  std::vector<std::vector<int>> whole(g.r);
  std::vector<const std::vector<int>*> cands;
  for (int i = 0; i < g.r; ++i) {
    whole[i].resize(g.part_sizes[i]);
    for (int v = 0; v < g.part_sizes[i]; ++v) whole[i][v] = v;
  }
  for (const VertexSlot& v : vv) {
    pos[{v.part, v.slot}] = static_cast<int>(cands.size());
    slots.push_back({v.part, v.slot});
    cands.push_back(&whole[v.part]);
  }
  std::uint64_t total = assignment_space(cands, work_cap, "mean-square enumeration");

  const std::vector<BigRat>& F0 = F.at(s.eslot(e0.i, e0.j, e0.a, e0.b));
  BigRat lhs_sum = 0;
  for_each_assignment(cands, [&](const std::vector<int>& chosen) {
    for (const VertexSlot& v : vv)
      if (g.vertex_color(v.part, chosen[pos.at({v.part, v.slot})]) != v.color) return;
    BigRat w = 1;
    for (const EdgeSlot& e : ve) {
      int u = chosen[pos.at({e.i, e.a})];
      int v = chosen[pos.at({e.j, e.b})];
      w *= F.at(s.eslot(e.i, e.j, e.a, e.b))[g.edge_color(e.i, u, e.j, v)];
      if (w == 0) break;
    }
    lhs_sum += w;
  });
  BigRat lhs_mean = lhs_sum / total;
  BigRat lhs = lhs_mean * lhs_mean;

  // Bucketed mean-square terms over Phi(mh), exact.
  ColorId fi = *s.vertex_at(e0.i, e0.a), fj = *s.vertex_at(e0.j, e0.b);
  std::int64_t frame_n = dens.frame_support(g.pair_index(e0.i, e0.j), fi, fj);
  BigRat ms_plain = 0, ms_cond = 0;
  {
    MapEnumerator en(g.part_sizes, std::vector<int>(g.r, m * s.h), work_cap);
    std::int64_t edge_total =
        static_cast<std::int64_t>(g.part_sizes[e0.i]) * g.part_sizes[e0.j];
    while (en.next()) {
      VertexPartition part = signature_partition(g, en.current());
      BucketStats b = bucket_pair(g, part, e0.i, e0.j);
      for (std::size_t bk = 0; bk < b.n.size(); ++bk) {
        if (b.n[bk] == 0) continue;
        BigRat fsum = 0;
        for (ColorId c = 0; c < F0.size(); ++c)
          if (b.color_count[bk][c] != 0) fsum += F0[c] * b.color_count[bk][c];
        // (sum/n)^2 weighted n/N collapses to sum^2/(n N)
        if (b.frame[bk] == std::make_pair(fi, fj)) {
          ms_plain += fsum * fsum / (b.n[bk] * BigInt(edge_total));
          if (frame_n > 0) ms_cond += fsum * fsum / (b.n[bk] * BigInt(frame_n));
        }
      }
    }
    ms_plain /= BigInt(en.total());
    ms_cond /= BigInt(en.total());
  }

  BigRat prod_all = 1, prod_out = 1;
  for (const VertexSlot& v : vv) {
    BigRat dv = dens.vertex_density_exact(v.part, v.color);
    prod_all *= dv;
    bool in_e0 = (v.part == e0.i && v.slot == e0.a) || (v.part == e0.j && v.slot == e0.b);
    if (!in_e0) prod_out *= dv;
  }

  std::vector<LemmaCheckResult> out;
  {
    LemmaCheckResult res;
    BigRat rhs = ms_plain * prod_all * (prod_out + BigRat(1, m));
    res.lhs = to_double(lhs);
    res.rhs = to_double(rhs);
    res.holds = lhs <= rhs;
    res.slack = to_double(rhs - lhs);
    res.instance = "unconditional";
    out.push_back(res);
  }
  if (BigRat(1, m) <= prod_out && prod_all > 0 && frame_n > 0) {
    // Conditional form: condition the left on the vertex pattern and the
    // right on the frame of e0; needs m >= 1 / prod_out.
    BigRat lhs_c = lhs_mean / prod_all;
    lhs_c *= lhs_c;
    LemmaCheckResult res;
    BigRat rhs = 2 * ms_cond;
    res.lhs = to_double(lhs_c);
    res.rhs = to_double(rhs);
    res.holds = lhs_c <= rhs;
    res.slack = to_double(rhs - lhs_c);
    res.instance = "conditional";
    out.push_back(res);
  }
  return out;
}

std::map<std::pair<int, ColorId>, BigRat> energy(const ColoredGraph& g,
                                                 int samples_per_part,
                                                 std::uint64_t work_cap) {
  require_valid(g);
  if (samples_per_part < 0) throw ValidationError("energy needs samples_per_part >= 0");
  std::map<std::pair<int, ColorId>, BigRat> acc;
  for (int pi = 0; pi < g.pair_count(); ++pi)
    for (ColorId c = 0; c < static_cast<ColorId>(g.pair_palette[pi]); ++c)
      acc[{pi, c}] = 0;
  MapEnumerator en(g.part_sizes, std::vector<int>(g.r, samples_per_part), work_cap);
  while (en.next()) {
    VertexPartition part = signature_partition(g, en.current());
    for (int i = 0; i < g.r; ++i)
      for (int j = i + 1; j < g.r; ++j) {
        int pi = g.pair_index(i, j);
        std::int64_t edge_total =
            static_cast<std::int64_t>(g.part_sizes[i]) * g.part_sizes[j];
        BucketStats b = bucket_pair(g, part, i, j);
        for (std::size_t bk = 0; bk < b.n.size(); ++bk) {
          if (b.n[bk] == 0) continue;
          for (ColorId c = 0; c < static_cast<ColorId>(g.pair_palette[pi]); ++c) {
            std::int64_t cnt = b.color_count[bk][c];
            if (cnt != 0)
              acc[{pi, c}] += BigRat(cnt * cnt) / (b.n[bk] * BigInt(edge_total));
          }
        }
      }
  }
  for (auto& [key, v] : acc) v /= BigInt(en.total());
  return acc;
}

ExpectedScoreEstimate expected_score_estimate(const ColoredGraph& g, const PracticalSchedule& sched,
                                      int h, const BigRat& eps, int probe_budget, int trials,
                                      const SamplingPlan& plan, std::uint64_t seed,
                                      std::optional<std::int64_t> practical_M) {
  ExperimentConfig cfg;
  cfg.schedule = sched;
  cfg.h = h;
  cfg.eps = eps;
  cfg.probe_budget = probe_budget;
  cfg.trials = trials;
  cfg.plan = plan;
  cfg.seed = seed;
  cfg.faithful = true;
  cfg.practical_M = practical_M;
  ExperimentResult res = run_experiment(g, cfg);
  ExpectedScoreEstimate t;
  t.mean_score = res.mean_score;
  t.stderr_ = res.stderr_;
  for (const TrialResult& tr : res.trials) t.scores.push_back(tr.score);
  t.markov_fraction = res.markov_fraction;
  t.markov_bound = res.markov_bound;
  t.markov_ok = res.markov_ok;
  return t;
}

namespace {

struct SuiteInstance {
  ColoredGraph g;
  std::string label;
};

SuiteInstance random_instance(Rng& rng, bool allow_r3) {
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::uniform_random;
  int r = allow_r3 && rng.bounded(2) == 0 ? 3 : 2;
  int hi = r == 2 ? 4 : 3;
  for (int i = 0; i < r; ++i)
    spec.sizes.push_back(2 + static_cast<int>(rng.bounded(static_cast<std::uint32_t>(hi - 1))));
  spec.b1 = 1 + static_cast<int>(rng.bounded(2));
  spec.b2 = 1 + static_cast<int>(rng.bounded(3));
  spec.seed = rng.next_u64();
  SuiteInstance inst;
  inst.g = generate(spec);
  std::ostringstream os;
  os << "uniform r=" << r << " sizes=";
  for (int i = 0; i < r; ++i) os << (i ? "x" : "") << spec.sizes[i];
  os << " b=(" << spec.b1 << "," << spec.b2 << ")";
  inst.label = os.str();
  return inst;
}

void hide_some_edges(Complex& s, Rng& rng) {
  auto ve = visible_edges(s);
  if (ve.size() <= 1) return;
  for (std::size_t k = 1; k < ve.size(); ++k)
    if (rng.bounded(3) == 0)
      s.edge[s.eslot(ve[k].i, ve[k].j, ve[k].a, ve[k].b)].reset();
}

}  // namespace

SuiteReport counting_suite(int instances, std::uint64_t seed, std::uint64_t work_cap) {
  SuiteReport rep;
  rep.name = "counting";
  rep.instances = instances;
  for (int k = 0; k < instances; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    SuiteInstance inst = random_instance(rng, true);
    int h = inst.g.r == 2 ? 1 + static_cast<int>(rng.bounded(2)) : 1;
    Complex s = random_visible_complex(inst.g, h, rng);
    hide_some_edges(s, rng);
    LemmaCheckResult res = check_counting_lemma(inst.g, s, work_cap);
    std::ostringstream os;
    os << "#" << k << " " << inst.label << " h=" << h
       << " edges=" << visible_edges(s).size();
    res.instance = os.str();
    if (!res.holds) ++rep.violations;
    rep.results.push_back(std::move(res));
  }
  return rep;
}

SuiteReport meansquare_suite(int instances, std::uint64_t seed, std::uint64_t work_cap) {
  SuiteReport rep;
  rep.name = "meansquare";
  rep.instances = instances;
  for (int k = 0; k < instances; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k) + 0x5151));
    SuiteInstance inst = random_instance(rng, true);
    int h = inst.g.r == 2 && rng.bounded(2) == 0 ? 2 : 1;
    int m = h == 1 ? 1 + static_cast<int>(rng.bounded(2)) : 1;
    Complex s = random_visible_complex(inst.g, h, rng);
    hide_some_edges(s, rng);
    auto ve = visible_edges(s);
    const EdgeSlot& e0 = ve[rng.bounded(static_cast<std::uint32_t>(ve.size()))];
    std::map<int, std::vector<BigRat>> F;
    for (const EdgeSlot& e : ve) {
      int pal = inst.g.pair_palette[inst.g.pair_index(e.i, e.j)];
      std::vector<BigRat> table(pal);
      for (int c = 0; c < pal; ++c)
        table[c] = BigRat(static_cast<int>(rng.bounded(2001)) - 1000, 1000);
      F[s.eslot(e.i, e.j, e.a, e.b)] = std::move(table);
    }
    auto results = check_mean_square_lemma(inst.g, s, e0, m, F, work_cap);
    for (LemmaCheckResult& res : results) {
      std::ostringstream os;
      os << "#" << k << " " << inst.label << " h=" << h << " m=" << m << " "
         << res.instance;
      res.instance = os.str();
      if (!res.holds) ++rep.violations;
      rep.results.push_back(std::move(res));
    }
  }
  return rep;
}

SuiteReport cauchy_suite(int instances, std::uint64_t seed) {
  SuiteReport rep;
  rep.name = "cauchy";
  rep.instances = instances;
  for (int k = 0; k < instances; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k) + 0xca0c));
    int n = 6 + static_cast<int>(rng.bounded(7));
    std::vector<BigRat> X(n);
    std::vector<int> coarse(n), fine(n);
    for (int w = 0; w < n; ++w) {
      X[w] = BigRat(rng.bounded(1001), 1000);
      coarse[w] = static_cast<int>(rng.bounded(3));
      fine[w] = coarse[w] * 4 + static_cast<int>(rng.bounded(2));
    }
    LemmaCheckResult res = check_cauchy_refinement(X, coarse, fine);
    res.instance = "#" + std::to_string(k) + " n=" + std::to_string(n);
    if (!res.holds) ++rep.violations;
    rep.results.push_back(std::move(res));
  }
  return rep;
}

SuiteReport energy_suite(int instances, std::uint64_t seed, std::uint64_t work_cap) {
  SuiteReport rep;
  rep.name = "energy";
  rep.instances = instances;
  for (int k = 0; k < instances; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k) + 0xe4e6));
    SuiteInstance inst = random_instance(rng, true);
    auto e0 = energy(inst.g, 0, work_cap);
    auto e1 = energy(inst.g, 1, work_cap);
    auto e2 = energy(inst.g, 2, work_cap);
    const std::array<const std::map<std::pair<int, ColorId>, BigRat>*, 3> levels = {
        &e0, &e1, &e2};
    for (int lv = 0; lv + 1 < 3; ++lv) {
      LemmaCheckResult res;
      res.holds = true;
      BigRat worst_lo = 0, worst_hi = 0;
      bool first = true;
      std::pair<int, ColorId> worst_key{0, 0};
      for (const auto& [key, lo] : *levels[lv]) {
        const BigRat& hi = levels[lv + 1]->at(key);
        if (first || hi - lo < worst_hi - worst_lo) {
          first = false;
          worst_lo = lo;
          worst_hi = hi;
          worst_key = key;
        }
        if (lo > hi || hi > 1) res.holds = false;
      }
      res.lhs = to_double(worst_lo);
      res.rhs = to_double(worst_hi);
      res.slack = to_double(worst_hi - worst_lo);
      std::ostringstream os;
      os << "#" << k << " " << inst.label << " level " << lv << "->" << lv + 1
         << " pair " << worst_key.first << " color " << worst_key.second;
      res.instance = os.str();
      if (!res.holds) ++rep.violations;
      rep.results.push_back(std::move(res));
    }
  }
  return rep;
}

}  // namespace regseed::oracle
