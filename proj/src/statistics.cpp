#include "regseed/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "regseed/errors.hpp"
#include "regseed/pmap.hpp"
#include "regseed/regularize.hpp"
#include "regseed/schedule.hpp"

namespace regseed {

namespace {

constexpr std::uint64_t kEmbedStream = 0x1b3d;
constexpr std::uint64_t kCondStream = 0x2c4e;
constexpr std::uint64_t kEtaStream = 0x3d5f;

Rng sample_rng(const SamplingPlan& plan, std::uint64_t tag, std::uint64_t index) {
  return Rng(mix_seed(mix_seed(plan.seed, tag), index));
}

bool phi_matches(const ColoredGraph& g, const std::vector<VertexSlot>& vv,
                 const std::vector<EdgeSlot>& ve, const PartitionwiseMap& phi) {
  for (const VertexSlot& s : vv)
    if (g.vertex_color(s.part, phi.targets[s.part][s.slot]) != s.color) return false;
  for (const EdgeSlot& e : ve)
    if (g.edge_color(e.i, phi.targets[e.i][e.a], e.j, phi.targets[e.j][e.b]) != e.color)
      return false;
  return true;
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n) {
  double p = static_cast<double>(hits) / static_cast<double>(n);
  double se = std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n)));
  return {p, se, false};
}

void check_mc_counts(const SamplingPlan& plan) {
  if (plan.sample_count < 1)
    throw ValidationError("sampling plan needs a positive sample count");
  if (plan.eta_sample_count < 1)
    throw ValidationError("sampling plan needs a positive eta sample count");
}

}  // namespace

Estimate embed_probability(const ColoredGraph& g, const Complex& s, const SamplingPlan& plan) {
  require_valid(g);
  require_valid(s, g);
  auto vv = visible_vertices(s);
  auto ve = visible_edges(s);
  if (plan.mode == SamplingPlan::Mode::exhaustive) {
    MapEnumerator en(g.part_sizes, std::vector<int>(g.r, s.h), plan.work_cap);
    std::uint64_t hits = 0;
    while (en.next())
      if (phi_matches(g, vv, ve, en.current())) ++hits;
    return {to_double(BigRat(hits) / en.total()), 0.0, true};
  }
  check_mc_counts(plan);
  std::uint64_t hits = 0;
  for (std::int64_t k = 0; k < plan.sample_count; ++k) {
    Rng rk = sample_rng(plan, kEmbedStream, static_cast<std::uint64_t>(k));
    PartitionwiseMap phi = random_partitionwise_map(g.part_sizes, s.h, rk);
    if (phi_matches(g, vv, ve, phi)) ++hits;
  }
  return binomial_estimate(hits, static_cast<std::uint64_t>(plan.sample_count));
}

Estimate conditional_embed_probability(const ColoredGraph& g, const Complex& s,
                                       const SamplingPlan& plan) {
  require_valid(g);
  require_valid(s, g);
  auto ve = visible_edges(s);

  // per part: color -> vertices of that color
  std::vector<std::vector<std::vector<int>>> members(g.r);
  for (int i = 0; i < g.r; ++i) {
    members[i].resize(g.vertex_palette[i]);
    for (int v = 0; v < g.part_sizes[i]; ++v) members[i][g.vertex_colors[i][v]].push_back(v);
  }

  // candidate targets per slot, part-major
  std::vector<const std::vector<int>*> cands;
  std::vector<std::vector<int>> whole(g.r);
  for (int i = 0; i < g.r; ++i) {
    whole[i].resize(g.part_sizes[i]);
    std::iota(whole[i].begin(), whole[i].end(), 0);
  }
  for (int i = 0; i < g.r; ++i)
    for (int a = 0; a < s.h; ++a) {
      auto c = s.vertex_at(i, a);
      if (!c) {
        cands.push_back(&whole[i]);
      } else {
        const auto& cls = members[i][*c];
        if (cls.empty())
          throw ValidationError("conditioning on vertex color " + std::to_string(*c) +
                                " that no vertex of part " + std::to_string(i) + " has");
        cands.push_back(&cls);
      }
    }

  PartitionwiseMap phi;
  phi.targets.resize(g.r);
  for (int i = 0; i < g.r; ++i) phi.targets[i].resize(s.h);
  auto resolve = [&](const std::vector<std::size_t>& idx) {
    for (int i = 0; i < g.r; ++i)
      for (int a = 0; a < s.h; ++a)
        phi.targets[i][a] = (*cands[i * s.h + a])[idx[i * s.h + a]];
  };

  if (plan.mode == SamplingPlan::Mode::exhaustive) {
    BigInt space = 1;
    for (const auto* c : cands) space *= static_cast<std::int64_t>(c->size());
    if (space > plan.work_cap)
      throw WorkCapError("conditional enumeration needs " + space.str() +
                         " assignments, exceeding the work cap " +
                         std::to_string(plan.work_cap));
    std::uint64_t total = space.convert_to<std::uint64_t>();
    std::vector<std::size_t> idx(cands.size(), 0);
    std::uint64_t hits = 0;
    for (std::uint64_t n = 0; n < total; ++n) {
      resolve(idx);
      bool ok = true;
      for (const EdgeSlot& e : ve)
        if (g.edge_color(e.i, phi.targets[e.i][e.a], e.j, phi.targets[e.j][e.b]) != e.color) {
          ok = false;
          break;
        }
      if (ok) ++hits;
      for (std::size_t p = idx.size(); p-- > 0;) {
        if (++idx[p] < cands[p]->size()) break;
        idx[p] = 0;
      }
    }
    return {to_double(BigRat(hits) / total), 0.0, true};
  }

  check_mc_counts(plan);
  std::uint64_t hits = 0;
  for (std::int64_t k = 0; k < plan.sample_count; ++k) {
    Rng rk = sample_rng(plan, kCondStream, static_cast<std::uint64_t>(k));
    for (int i = 0; i < g.r; ++i)
      for (int a = 0; a < s.h; ++a) {
        const auto& c = *cands[i * s.h + a];
        phi.targets[i][a] = c[rk.bounded(static_cast<std::uint32_t>(c.size()))];
      }
    bool ok = true;
    for (const EdgeSlot& e : ve)
      if (g.edge_color(e.i, phi.targets[e.i][e.a], e.j, phi.targets[e.j][e.b]) != e.color) {
        ok = false;
        break;
      }
    if (ok) ++hits;
  }
  return binomial_estimate(hits, static_cast<std::uint64_t>(plan.sample_count));
}

namespace {

struct FrameItem {
  ColorId color;
  double d;
  std::size_t idx;  // into the flat accumulator
};

struct EtaAccumulator {
  std::vector<TotalColor> order;
  std::vector<double> support;  // frame support per entry
  std::vector<double> sum, sumsq, num;
  // per pair: frame key -> entries with that frame
  std::vector<std::map<std::uint64_t, std::vector<FrameItem>>> groups;
};

EtaAccumulator make_accumulator(const ColoredGraph& g, const DensityTable& dens) {
  EtaAccumulator acc;
  acc.groups.resize(g.pair_count());
  for (int pi = 0; pi < g.pair_count(); ++pi) {
    for (const TotalColor& tc : dens.occurring_edge_colors(pi)) {
      std::size_t idx = acc.order.size();
      acc.order.push_back(tc);
      acc.support.push_back(static_cast<double>(dens.frame_support(pi, tc.ci, tc.cj)));
      acc.groups[pi][DensityTable::frame_key(tc.ci, tc.cj)].push_back(
          {tc.color, to_double(dens.density_exact(tc)), idx});
    }
  }
  acc.sum.assign(acc.order.size(), 0.0);
  acc.sumsq.assign(acc.order.size(), 0.0);
  acc.num.assign(acc.order.size(), 0.0);
  return acc;
}

void eta_one_map(const ColoredGraph& g, const PartitionwiseMap& phi, EtaAccumulator& acc) {
  VertexPartition part = signature_partition(g, phi);
  std::fill(acc.num.begin(), acc.num.end(), 0.0);
  for (int i = 0; i < g.r; ++i) {
    for (int j = i + 1; j < g.r; ++j) {
      int pi = g.pair_index(i, j);
      if (acc.groups[pi].empty()) continue;
      int ncu = part.class_count[i], ncv = part.class_count[j];
      int pal = g.pair_palette[pi];
      std::vector<std::int64_t> counts(static_cast<std::size_t>(ncu) * ncv * pal, 0);
      std::vector<std::int64_t> bucket_n(static_cast<std::size_t>(ncu) * ncv, 0);
      const auto& mat = g.pair_matrix[pi];
      int szj = g.part_sizes[j];
      for (int u = 0; u < g.part_sizes[i]; ++u) {
        std::size_t bu = part.cls[i][u];
        for (int v = 0; v < szj; ++v) {
          std::size_t b = bu * ncv + part.cls[j][v];
          ++bucket_n[b];
          ++counts[b * pal + mat[static_cast<std::size_t>(u) * szj + v]];
        }
      }
      for (int bu = 0; bu < ncu; ++bu) {
        std::uint64_t fk_hi = static_cast<std::uint64_t>(part.class_orig[i][bu]) << 32;
        for (int bv = 0; bv < ncv; ++bv) {
          std::size_t b = static_cast<std::size_t>(bu) * ncv + bv;
          if (bucket_n[b] == 0) continue;
          auto it = acc.groups[pi].find(fk_hi | part.class_orig[j][bv]);
          if (it == acc.groups[pi].end()) continue;
          double nb = static_cast<double>(bucket_n[b]);
          for (const FrameItem& item : it->second) {
            double gap = static_cast<double>(counts[b * pal + item.color]) / nb - item.d;
            acc.num[item.idx] += nb * gap * gap;
          }
        }
      }
    }
  }
  for (std::size_t k = 0; k < acc.order.size(); ++k) {
    double v = acc.num[k] / acc.support[k];
    acc.sum[k] += v;
    acc.sumsq[k] += v * v;
  }
}

}  // namespace

std::map<TotalColor, Estimate> eta_table(const ColoredGraph& gstar,
                                         std::int64_t samples_per_part,
                                         const SamplingPlan& plan,
                                         const DensityTable& dens) {
  require_valid(gstar);
  if (samples_per_part < 0)
    throw ValidationError("eta needs a non-negative sample count per part");
  if (samples_per_part > (1 << 30))
    throw WorkCapError("eta with " + std::to_string(samples_per_part) +
                       " samples per part is beyond any feasible pass");
  EtaAccumulator acc = make_accumulator(gstar, dens);
  std::uint64_t draws = 0;
  bool exact = plan.mode == SamplingPlan::Mode::exhaustive;
  if (exact) {
    MapEnumerator en(gstar.part_sizes,
                     std::vector<int>(gstar.r, static_cast<int>(samples_per_part)),
                     plan.work_cap);
    while (en.next()) eta_one_map(gstar, en.current(), acc);
    draws = en.total();
  } else {
    check_mc_counts(plan);
    draws = static_cast<std::uint64_t>(plan.eta_sample_count);
    for (std::uint64_t k = 0; k < draws; ++k) {
      Rng rk = sample_rng(plan, kEtaStream, k);
      PartitionwiseMap phi = random_partitionwise_map(
          gstar.part_sizes, static_cast<int>(samples_per_part), rk);
      eta_one_map(gstar, phi, acc);
    }
  }
  std::map<TotalColor, Estimate> out;
  double n = static_cast<double>(draws);
  for (std::size_t k = 0; k < acc.order.size(); ++k) {
    Estimate e;
    e.value = acc.sum[k] / n;
    e.exact = exact;
    if (!exact && draws > 1) {
      double var = std::max(0.0, (acc.sumsq[k] - n * e.value * e.value) / (n - 1.0));
      e.stderr_ = std::sqrt(var / n);
    }
    out[acc.order[k]] = e;
  }
  return out;
}

Estimate eta(const ColoredGraph& gstar, const TotalColor& tc,
             std::int64_t samples_per_part, const SamplingPlan& plan) {
  if (tc.is_vertex())
    throw ValidationError("eta is defined for pair total colors only");
  DensityTable dens = density_table(gstar);
  auto table = eta_table(gstar, samples_per_part, plan, dens);
  auto it = table.find(tc);
  if (it == table.end())
    throw ValidationError("total color " + to_string(tc) + " does not occur");
  return it->second;
}

std::set<TotalColor> bad_colors(const ColoredGraph& gstar, const BigRat& eps1) {
  require_valid(gstar);
  if (eps1 <= 0) throw ValidationError("bad_colors needs eps1 > 0");
  DensityTable dens = density_table(gstar);
  std::set<TotalColor> out;

  auto vertex_is_bad = [&](int i, ColorId c) {
    BigRat d = dens.vertex_density_exact(i, c);
    BigInt pal = gstar.vertex_palette[i];
    return d * d * pal * pal <= eps1;
  };

  for (int i = 0; i < gstar.r; ++i)
    for (ColorId c = 0; c < static_cast<ColorId>(gstar.vertex_palette[i]); ++c)
      if (dens.vertex_count[i][c] > 0 && vertex_is_bad(i, c))
        out.insert(TotalColor::vertex(i, c));

  for (int pi = 0; pi < gstar.pair_count(); ++pi) {
    BigInt pal = gstar.pair_palette[pi];
    for (const TotalColor& tc : dens.occurring_edge_colors(pi)) {
      BigRat d = dens.density_exact(tc);
      bool bad = d * d * pal * pal <= eps1 || vertex_is_bad(tc.i, tc.ci) ||
                 vertex_is_bad(tc.j, tc.cj);
      if (bad) out.insert(tc);
    }
  }
  return out;
}

double ErrorTable::delta(const TotalColor& tc) const {
  if (tc.is_vertex()) return 0.0;
  auto it = entries.find(tc);
  return it == entries.end() ? 0.0 : it->second.delta;
}

ErrorTable delta_table(const ColoredGraph& gstar, int h, const BigRat& eps,
                       const SamplingPlan& plan,
                       std::optional<std::int64_t> practical_M) {
  require_valid(gstar);
  if (h < 1) throw ValidationError("delta_table needs h >= 1");
  if (eps <= 0) throw ValidationError("delta_table needs eps > 0");
  ErrorTable t;
  t.eps1 = epsilon1(gstar.r, gstar.b2, eps);
  t.sqrt_eps1 = sqrt_epsilon1(gstar.r, gstar.b2, eps);
  t.C = constant_C(gstar.r, h, gstar.b2, t.eps1).mid_double();
  if (practical_M) {
    if (*practical_M < 1) throw ValidationError("practical M must be positive");
    if (BigInt(*practical_M) * h > plan.work_cap)
      throw WorkCapError("practical M of " + std::to_string(*practical_M) +
                         " needs M*h samples per part beyond the work cap " +
                         std::to_string(plan.work_cap));
    t.M = *practical_M;
  } else {
    t.M = sample_budget_M(BigInt(gstar.max_vertex_palette()), t.sqrt_eps1, gstar.r, h);
    if (t.M * h > plan.work_cap)
      throw WorkCapError("the schedule budget M = " + t.M.str() +
                         " needs M*h samples per part beyond the work cap " +
                         std::to_string(plan.work_cap) +
                         "; pass a practical M to override");
  }
  t.samples_per_part = (t.M * h).convert_to<std::int64_t>();
  t.bad = bad_colors(gstar, t.eps1);
  DensityTable dens = density_table(gstar);
  auto etas = eta_table(gstar, t.samples_per_part, plan, dens);
  for (const auto& [tc, est] : etas) {
    ErrorEntry e;
    e.eta = est.value;
    e.eta_stderr = est.stderr_;
    e.is_bad = t.bad.count(tc) > 0;
    if (e.is_bad)
      e.delta = 1.0;
    else
      e.delta = est.value > 0.0 ? std::min(1.0, t.C * std::sqrt(est.value)) : 0.0;
    t.entries[tc] = e;
  }
  return t;
}

namespace {

ProbeRecord probe_record(const ColoredGraph& g, const Complex& s, const DensityTable& dens,
                         const ErrorTable& errs, const SamplingPlan& plan) {
  ProbeRecord rec;
  rec.label = probe_label(s);
  Estimate p = embed_probability(g, s, plan);
  rec.p = p.value;
  rec.p_stderr = p.stderr_;
  double lower = 1.0, upper = 1.0;
  for (const VertexSlot& v : visible_vertices(s)) {
    double d = dens.vertex_density(v.part, v.color);
    lower *= d;
    upper *= d;
  }
  for (const EdgeSlot& e : visible_edges(s)) {
    TotalColor tc = TotalColor::edge(e.i, e.j, e.color, *s.vertex_at(e.i, e.a),
                                     *s.vertex_at(e.j, e.b));
    double d = dens.density(tc);
    double del = errs.delta(tc);
    lower *= std::max(0.0, d - del);
    upper *= std::min(1.0, d + del);
  }
  rec.lower = lower;
  rec.upper = upper;
  if (rec.p < lower)
    rec.margin = lower - rec.p;
  else if (rec.p > upper)
    rec.margin = rec.p - upper;
  else
    rec.margin = 0.0;
  return rec;
}

}  // namespace

double counting_check(const ColoredGraph& g, const Complex& s, const DensityTable& dens,
                      const ErrorTable& errs, const SamplingPlan& plan) {
  return probe_record(g, s, dens, errs, plan).margin;
}

RegularityReport regularity_report(const ColoredGraph& gstar, int h, const BigRat& eps,
                                   const std::vector<Complex>& probes,
                                   const SamplingPlan& plan,
                                   std::optional<std::int64_t> practical_M) {
  RegularityReport rep;
  rep.eps = eps;
  rep.plan = plan;
  ErrorTable errs = delta_table(gstar, h, eps, plan, practical_M);
  rep.eps1 = errs.eps1;
  rep.C = errs.C;
  rep.M = errs.M;
  rep.samples_per_part = errs.samples_per_part;
  DensityTable dens = density_table(gstar);

  rep.score = 0.0;
  for (int pi = 0; pi < gstar.pair_count(); ++pi) {
    auto [i, j] = gstar.pair_parts(pi);
    PairReport pr;
    pr.i = i;
    pr.j = j;
    pr.palette = gstar.pair_palette[pi];
    double total = static_cast<double>(gstar.pair_edge_count(pi));
    for (const TotalColor& tc : dens.occurring_edge_colors(pi)) {
      double mass = static_cast<double>(dens.tc_count(tc)) / total;
      pr.mean_delta += mass * errs.delta(tc);
      if (errs.bad.count(tc) > 0) pr.bad_fraction += mass;
    }
    rep.score = std::max(rep.score, pr.palette * pr.mean_delta);
    rep.pairs.push_back(pr);
  }

  for (const Complex& s : probes)
    rep.probes.push_back(probe_record(gstar, s, dens, errs, plan));
  rep.coverage_note = "probes sample the factorization property; they are not a proof of it";
  return rep;
}

std::vector<Complex> default_probes(const ColoredGraph& g, int h, int budget,
                                    const DensityTable& dens, Rng& rng) {
  std::vector<Complex> out;
  if (budget <= 0) return out;
  auto occ = dens.occurring_edge_colors();
  int reserve = budget >= 4 ? budget / 4 : (budget > 1 ? 1 : 0);
  std::size_t edge_budget = static_cast<std::size_t>(budget - reserve);
  if (occ.size() <= edge_budget) {
    for (const TotalColor& tc : occ) out.push_back(single_edge_complex(g.r, h, tc));
  } else {
    std::vector<std::size_t> idx(occ.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < edge_budget; ++k)
      std::swap(idx[k], idx[k + rng.bounded(static_cast<std::uint32_t>(idx.size() - k))]);
    idx.resize(edge_budget);
    std::sort(idx.begin(), idx.end());
    for (std::size_t k : idx) out.push_back(single_edge_complex(g.r, h, occ[k]));
  }
  while (static_cast<int>(out.size()) < budget)
    out.push_back(random_visible_complex(g, h, rng));
  return out;
}

std::string probe_label(const Complex& s) {
  auto vv = visible_vertices(s);
  auto ve = visible_edges(s);
  if (ve.size() == 1 && vv.size() == 2) {
    const EdgeSlot& e = ve[0];
    TotalColor tc = TotalColor::edge(e.i, e.j, e.color, *s.vertex_at(e.i, e.a),
                                     *s.vertex_at(e.j, e.b));
    return "single " + to_string(tc);
  }
  std::uint64_t x = 1469598103934665603ULL;
  auto mix = [&x](std::uint64_t v) {
    x ^= v;
    x *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(s.r));
  mix(static_cast<std::uint64_t>(s.h));
  for (const auto& o : s.vertex) mix(o ? static_cast<std::uint64_t>(*o) + 1 : 0);
  for (const auto& o : s.edge) mix(o ? static_cast<std::uint64_t>(*o) + 1 : 0);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "complex-%08llx v%d e%d",
                static_cast<unsigned long long>(x & 0xffffffffULL),
                static_cast<int>(vv.size()), static_cast<int>(ve.size()));
  return buf;
}

}  // namespace regseed
