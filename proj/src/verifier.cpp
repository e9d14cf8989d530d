// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {

using nlohmann::json;

namespace {

const char* kind_name(QuotientKind kind) {
  switch (kind) {
    case QuotientKind::Central: return "central";
    case QuotientKind::Petal: return "petal";
    case QuotientKind::Strip: return "strip";
  }
  return "central";
}

QuotientTileId quotient_from_json(const json& j) {
  try {
    QuotientTileId q;
    q.k = j.at("k").get<std::size_t>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "central") {
      q.kind = QuotientKind::Central;
    } else if (kind == "petal") {
      q.kind = QuotientKind::Petal;
      q.j = j.at("j").get<std::size_t>();
      q.p = j.at("p").get<int>();
    } else if (kind == "strip") {
      q.kind = QuotientKind::Strip;
      q.n = j.at("n").get<long>();
    } else {
      throw Error(ErrorCode::InvalidTile, "unknown tile kind " + kind);
    }
    return q;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidTile, std::string("malformed tile id: ") + e.what());
  }
}

Vector minus(std::span<const double> a, std::span<const double> b) {
  Vector d(a.begin(), a.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return d;
}

Vector along(std::span<const double> c, double s, std::span<const double> u) {
  Vector x(c.begin(), c.end());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * u[i];
  return x;
}

// P_k x: the first k coordinates.
Vector keep_leading(std::span<const double> x, std::size_t k) {
  Vector out(x.size(), 0.0);
  std::copy_n(x.begin(), k, out.begin());
  return out;
}

Vector midpoint(std::span<const double> a, std::span<const double> b) {
  Vector m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (a[i] + b[i]);
  return m;
}

using Failure = std::optional<std::string>;

class Recorder {
 public:
  explicit Recorder(std::string name) { rec_.name = std::move(name); }
  void pass() { ++rec_.samples; }
  void record(const Failure& f, Witness w) {
    ++rec_.samples;
    if (!f) return;
    ++rec_.failures;
    if (rec_.witnesses.size() < CheckRecord::kMaxWitnesses) {
      w.detail = *f;
      rec_.witnesses.push_back(std::move(w));
    }
  }
  void ratio(double r) { rec_.max_ratio = std::max(rec_.max_ratio.value_or(0.0), r); }
  CheckRecord& get() { return rec_; }

 private:
  CheckRecord rec_;
};

Witness witness(std::span<const double> x, std::uint64_t seed, std::size_t index,
                json extra = json::object()) {
  return Witness{Vector(x.begin(), x.end()), seed, index, std::move(extra), ""};
}

// Point predicates shared by the suite and by witness replay.

Failure check_covering(const Tiling& t, std::span<const double> x) {
  try {
    const FullTileId id = t.starlike().locate_full(x);
    if (!t.starlike().is_member(x, id, 0.0)) return "located tile " + to_string(id) + " rejects the point";
  } catch (const Error& e) {
    return std::string("location failed: ") + e.what();
  }
  return std::nullopt;
}

Failure check_normality(const Tiling& t, std::span<const double> x, double* ratio) {
  const FullTileId id = t.starlike().locate_full(x);
  const Vector c = t.starlike().full_center(id);
  const double r = t.cylinders().constants().r;
  const double q = t.cylinders().space().norm(minus(x, c)) / r;
  if (ratio) *ratio = q;
  const double bound = t.nominal().Kbound;
  if (q > bound + 1e-6) return "ratio " + std::to_string(q) + " exceeds " + std::to_string(bound);
  return std::nullopt;
}

Failure check_disjoint(const Tiling& t, std::span<const double> x, std::size_t* owners) {
  const auto ids = t.starlike().strict_owners(x, t.config().sampling.tolerances.strict_margin);
  if (owners) *owners = ids.size();
  if (ids.size() > 1) return to_string(ids[0]) + " and " + to_string(ids[1]) + " both strictly contain the point";
  return std::nullopt;
}

Failure check_tube(const Tiling& t, std::span<const double> x) {
  const CylinderTiling& cyl = t.cylinders();
  const CylinderTileId id = cyl.locate_cylinder(x);
  const Vector a = cyl.cylinder_axis(id).x;
  const double d = cyl.space().quotient_norm(minus(x, a), id.k);
  const double bound = cyl.derived().R + t.config().sampling.tolerances.geometric;
  if (d > bound) return "distance to axis " + std::to_string(d) + " exceeds R";
  return std::nullopt;
}

Failure check_2a_lower(const Tiling& t, std::size_t k, std::span<const double> z) {
  const QuotientTileId q = t.cylinders().quotient(k).locate(z);
  if (q.kind != QuotientKind::Central) return "unit-ball point located to " + to_string(q);
  return std::nullopt;
}

Failure check_2a_upper(const Tiling& t, std::size_t k, std::span<const double> z) {
  const CylinderTiling& cyl = t.cylinders();
  if (cyl.quotient(k).locate(z).kind != QuotientKind::Central) return std::nullopt;
  const double n = cyl.space().quotient_norm(z, k);
  if (n > cyl.derived().central_radius + t.config().sampling.tolerances.geometric) {
    return "central point of quotient norm " + std::to_string(n);
  }
  return std::nullopt;
}

Failure check_2c(const Tiling& t, const QuotientTileId& tile, std::span<const double> z) {
  const QuotientTileId got = t.cylinders().quotient(tile.k).locate(z);
  if (!(got == tile)) return "inner-ball point located to " + to_string(got);
  return std::nullopt;
}

Failure check_2d(const Tiling& t, std::size_t k, std::span<const double> z) {
  const CylinderTiling& cyl = t.cylinders();
  const QuotientTiling& q = cyl.quotient(k);
  const Vector h = q.center(q.locate(z)).h;
  const double lhs = cyl.space().quotient_norm(minus(z, h), k);
  const double up = k + 1 < cyl.dim() ? cyl.space().quotient_norm(z, k + 1) : 0.0;
  const TemplateConstants& c = cyl.constants();
  const double rhs = c.a + 2.0 * c.b + 2.0 * up + t.config().sampling.tolerances.geometric;
  if (lhs > rhs) return "distance to center " + std::to_string(lhs) + " exceeds " + std::to_string(rhs);
  return std::nullopt;
}

Failure check_top_interval(const Tiling& t, std::span<const double> z) {
  const std::size_t k = t.cylinders().dim() - 1;
  const QuotientTileId q = t.cylinders().quotient(k).locate(z);
  const long n = q.kind == QuotientKind::Strip ? q.n : 0;
  if (q.kind == QuotientKind::Petal) return std::string("petal tile at the top level");
  if (n != strip_index(z[k])) return "top-level tile n=" + std::to_string(n) + " off its interval";
  if (std::abs(z[k] - 4.0 * static_cast<double>(n)) > 2.0) return std::string("point outside interval");
  return std::nullopt;
}

Failure check_inner_tube(const Tiling& t, const CylinderTileId& id, std::span<const double> x) {
  const CylinderTileId got = t.cylinders().locate_cylinder(x);
  if (!(got == id)) return "tube point located to " + to_string(got);
  return std::nullopt;
}

Failure check_k0_convexity(const Tiling& t, const CylinderTileId& id, std::span<const double> mid) {
  if (!t.cylinders().in_cylinder(mid, id, t.config().sampling.tolerances.geometric)) {
    return "midpoint leaves " + to_string(id);
  }
  return std::nullopt;
}

Failure check_member(const Tiling& t, const FullTileId& id, std::span<const double> x, double tol,
                     const char* what) {
  if (!t.starlike().is_member(x, id, tol)) return std::string(what) + " leaves " + to_string(id);
  return std::nullopt;
}

Failure check_projection_member(const Tiling& t, const FullTileId& id, std::span<const double> x,
                                double tol, const char* what) {
  if (!t.projection()->is_member(x, id, tol)) return std::string(what) + " leaves " + to_string(id);
  return std::nullopt;
}

Failure check_projection_outer(const Tiling& t, std::span<const double> x, double* ratio) {
  const ProjectionTiling& p = *t.projection();
  const FullTileId id = p.locate(x);
  const double d = t.cylinders().space().norm(minus(x, p.center(id)));
  if (ratio) *ratio = d;
  if (d > p.outer_radius() + 1e-6) return "member at distance " + std::to_string(d);
  return std::nullopt;
}

// Main box samples.

struct SampleResult {
  Vector x;
  std::optional<FullTileId> id;
  Failure covering, normality, disjoint, tube, projection_outer;
  double ratio = 0.0;
  double projection_distance = 0.0;
  std::size_t owners = 0;
  std::optional<FullTileId> projection_id;
};

SampleResult evaluate_sample(const Tiling& t, const SuiteOptions& opt, std::uint64_t seed) {
  Rng rng(seed);
  SampleResult s;
  s.x = random_box(t.cylinders().dim(), t.config().sampling.box, rng);
  if (opt.tiling_checks) {
    s.covering = check_covering(t, s.x);
    if (!s.covering) {
      s.id = t.starlike().locate_full(s.x);
      s.normality = check_normality(t, s.x, &s.ratio);
      s.disjoint = check_disjoint(t, s.x, &s.owners);
    }
  }
  if (opt.cylinder_checks) s.tube = check_tube(t, s.x);
  if (opt.projection_checks && t.projection()) {
    s.projection_id = t.projection()->locate(s.x);
    s.projection_outer = check_projection_outer(t, s.x, &s.projection_distance);
  }
  return s;
}

std::vector<SampleResult> run_samples(const Tiling& t, const SuiteOptions& opt) {
  const SamplingSpec& sp = t.config().sampling;
  std::vector<SampleResult> out(sp.count);
  const std::size_t workers = std::max<std::size_t>(1, std::min(sp.workers, sp.count));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < sp.count; i += workers) {
          out[i] = evaluate_sample(t, opt, derive_seed(sp.seed, i));
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Distinct tiles in order of first appearance.
template <typename Id, typename Get>
std::vector<std::pair<Id, std::size_t>> distinct(const std::vector<SampleResult>& samples, Get get,
                                                 std::size_t limit) {
  std::vector<std::pair<Id, std::size_t>> out;
  for (std::size_t i = 0; i < samples.size() && out.size() < limit; ++i) {
    const std::optional<Id> id = get(samples[i]);
    if (!id) continue;
    if (std::none_of(out.begin(), out.end(), [&](const auto& e) { return e.first == *id; })) {
      out.emplace_back(*id, i);
    }
  }
  return out;
}

void template_checks(const Tiling& t, std::vector<CheckRecord>& out) {
  const TemplateReport rep = verify_template(make_constants(t.config()));
  Recorder rec("template.corners");
  const std::size_t corners = 16;
  for (std::size_t i = 0; i + rep.failures.size() < corners; ++i) rec.pass();
  for (const auto& f : rep.failures) {
    json extra = {{"condition", f.condition}};
    rec.record(f.condition + ": " + f.detail, witness(std::vector<double>{f.corner.x, f.corner.y}, 0, 0, extra));
  }
  out.push_back(std::move(rec.get()));
}

void system_checks(const Tiling& t, std::vector<CheckRecord>& out) {
  const CylinderTiling& cyl = t.cylinders();
  const Space& space = cyl.space();
  const double norm_tol = t.config().sampling.tolerances.norm;
  Recorder a("system.1a"), b("system.1b"), frame("system.frame");
  const std::uint64_t seed = derive_seed(t.config().sampling.seed, 0x5e11);
  for (std::size_t level = 1; level < cyl.dim(); ++level) {
    const SemiBiorthogonalSystem& sys = cyl.system(level);
    for (std::size_t j = 0; j < sys.size(); ++j) {
      const double dn = space.dual_norm(sys.vstar[j]);
      const double qn = space.quotient_norm(sys.v[j], level);
      const double pair = act(sys.vstar[j], sys.v[j]);
      const double err = std::max({std::abs(dn - 1.0), std::abs(qn - 1.0), std::abs(pair - 1.0)});
      a.record(err > norm_tol ? Failure("pair deviates from unit by " + std::to_string(err)) : std::nullopt,
               witness(sys.v[j], 0, j, {{"level", level}}));
      for (std::size_t jj = j + 1; jj < sys.size(); ++jj) {
        const double c = std::abs(act(sys.vstar[j], sys.v[jj]));
        b.record(c > sys.delta + 1e-9 ? Failure("cross pairing " + std::to_string(c)) : std::nullopt,
                 witness(sys.v[jj], 0, j, {{"level", level}, {"j", j}}));
      }
    }
    const double bound = cyl.delta_eff() - 1e-9;
    double worst = INFINITY;
    const std::size_t trials = t.config().sampling.count;
    for (std::size_t i = 0; i < trials; ++i) {
      const std::uint64_t s = derive_seed(derive_seed(seed, level), i);
      Rng rng(s);
      const Vector u = random_unit(space, rng, level);
      double best = 0.0;
      for (const auto& f : sys.vstar) best = std::max(best, std::abs(act(f, u)));
      worst = std::min(worst, best);
      frame.record(best < bound ? Failure("sup |v*_j(u)| = " + std::to_string(best)) : std::nullopt,
                   witness(u, s, i, {{"level", level}}));
    }
    frame.get().notes["min_level_" + std::to_string(level)] = worst;
  }
  frame.get().bound = cyl.delta_eff();
  out.push_back(std::move(a.get()));
  out.push_back(std::move(b.get()));
  out.push_back(std::move(frame.get()));
}

void quotient_checks(const Tiling& t, std::vector<CheckRecord>& out) {
  const CylinderTiling& cyl = t.cylinders();
  const Space& space = cyl.space();
  const std::size_t M = cyl.dim();
  const std::size_t count = t.config().sampling.count;
  const double B = t.config().sampling.box;
  const std::uint64_t seed = derive_seed(t.config().sampling.seed, 0x9071);
  Recorder lower("quotient.2a_lower"), upper("quotient.2a_upper"), inner("quotient.2c"),
      spread("quotient.2d"), top("quotient.top_intervals");
  for (std::size_t k = 0; k < M; ++k) {
    const QuotientTiling& q = cyl.quotient(k);
    const std::uint64_t ks = derive_seed(seed, k);
    json lvl = {{"level", k}};
    for (std::size_t i = 0; i < std::max<std::size_t>(1, count / 10); ++i) {
      const std::uint64_t s = derive_seed(derive_seed(ks, 1), i);
      Rng rng(s);
      Vector z = random_unit(space, rng, k);
      for (double& zi : z) zi *= 1.0 - 1e-6;
      lower.record(check_2a_lower(t, k, z), witness(z, s, i, lvl));
    }
    // Central points come from radii up to 1.25 times the bound.
    const double reach = 1.25 * cyl.derived().central_radius;
    std::size_t hits = 0;
    for (std::size_t i = 0; hits < count && i < 20 * count; ++i) {
      const std::uint64_t s = derive_seed(derive_seed(ks, 2), i);
      Rng rng(s);
      const Vector u = random_unit(space, rng, k);
      const Vector z = along(Vector(M, 0.0), reach * rng.uniform(), u);
      if (q.locate(z).kind != QuotientKind::Central) continue;
      ++hits;
      upper.record(check_2a_upper(t, k, z), witness(z, s, i, lvl));
    }
    std::vector<QuotientTileId> petals;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = derive_seed(derive_seed(ks, 3), i);
      Rng rng(s);
      const Vector z = zero_leading(random_box(M, B, rng), k);
      spread.record(check_2d(t, k, z), witness(z, s, i, lvl));
      const QuotientTileId id = q.locate(z);
      if (id.kind == QuotientKind::Petal && petals.size() < 25 &&
          std::find(petals.begin(), petals.end(), id) == petals.end()) {
        petals.push_back(id);
      }
      if (k + 1 == M) top.record(check_top_interval(t, z), witness(z, s, i, lvl));
    }
    const double r = cyl.constants().r - 1e-6;
    for (std::size_t p = 0; p < petals.size(); ++p) {
      const Vector h = q.center(petals[p]).h;
      json extra = {{"level", k}, {"tile", to_json(petals[p])}};
      for (std::size_t i = 0; i < 100; ++i) {
        const std::uint64_t s = derive_seed(derive_seed(ks, 4 + p), i);
        Rng rng(s);
        const Vector z = along(h, r * std::pow(rng.uniform(), 1.0 / static_cast<double>(M - k)),
                               random_unit(space, rng, k));
        inner.record(check_2c(t, petals[p], z), witness(z, s, i, extra));
      }
    }
    if (k + 1 == M) {
      // Exact interval structure: interior points locate to their own
      // interval; shared endpoints go to the smaller |n|, then positive.
      for (long n = -3; n <= 3; ++n) {
        for (int step = -19; step <= 19; ++step) {
          Vector z(M, 0.0);
          z[k] = 4.0 * static_cast<double>(n) + 0.1 * step;
          top.record(check_top_interval(t, z), witness(z, 0, 0, lvl));
        }
        Vector z(M, 0.0);
        z[k] = 4.0 * static_cast<double>(n) + 2.0;
        const long want = n >= 0 ? n : n + 1;
        const QuotientTileId got = q.locate(z);
        const long gotn = got.kind == QuotientKind::Strip ? got.n : 0;
        top.record(gotn != want ? Failure("endpoint tie broken toward n=" + std::to_string(gotn)) : std::nullopt,
                   witness(z, 0, 0, lvl));
      }
    }
  }
  upper.get().bound = cyl.derived().central_radius;
  out.push_back(std::move(lower.get()));
  out.push_back(std::move(upper.get()));
  out.push_back(std::move(inner.get()));
  out.push_back(std::move(spread.get()));
  out.push_back(std::move(top.get()));
}

void cylinder_checks(const Tiling& t, const std::vector<SampleResult>& samples, std::vector<CheckRecord>& out) {
  const CylinderTiling& cyl = t.cylinders();
  const Space& space = cyl.space();
  const std::size_t M = cyl.dim();
  const std::uint64_t seed = derive_seed(t.config().sampling.seed, 0xc411);
  Recorder tube("cylinder.tube"), inner("cylinder.inner_tube"), convex("cylinder.k0_convexity");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    tube.record(samples[i].tube, witness(samples[i].x, derive_seed(t.config().sampling.seed, i), i));
  }
  tube.get().bound = cyl.derived().R;

  std::vector<std::pair<CylinderTileId, std::vector<Vector>>> groups;
  for (const auto& s : samples) {
    const CylinderTileId id = cyl.locate_cylinder(s.x);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == id; });
    if (it == groups.end()) {
      groups.push_back({id, {}});
      it = groups.end() - 1;
    }
    it->second.push_back(s.x);
  }
  const double rr = cyl.constants().r - 1e-6;
  for (std::size_t g = 0; g < groups.size() && g < 100; ++g) {
    const CylinderTileId& id = groups[g].first;
    const Vector a = cyl.cylinder_axis(id).x;
    json extra = {{"tile", to_json(id)}};
    for (std::size_t i = 0; i < 10; ++i) {
      const std::uint64_t s = derive_seed(derive_seed(seed, g), i);
      Rng rng(s);
      Vector v(M, 0.0);
      if (id.k > 0) {
        Vector w(M, 0.0);
        for (std::size_t c = 0; c < id.k; ++c) w[c] = rng.normal();
        const double n = space.norm(w);
        const double len = 2.0 * rng.uniform();
        for (std::size_t c = 0; c < id.k; ++c) v[c] = w[c] * len / n;
      }
      const Vector x = along(minus(a, Vector(M, 0.0)), 1.0, v);
      const Vector y = along(x, rr * rng.uniform(), random_unit(space, rng));
      inner.record(check_inner_tube(t, id, y), witness(y, s, i, extra));
    }
  }

  // Midpoint convexity of level-0 cylinders: pairs of members drawn from the
  // samples, topped up by rejection sampling around the axis point.
  const std::size_t want = 1000;
  const CylinderTileId origin{0, QuotientTileId::central(0)};
  if (std::none_of(groups.begin(), groups.end(), [&](const auto& g) { return g.first == origin; })) {
    groups.push_back({origin, {}});
  }
  std::vector<std::size_t> level0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].first.k == 0) level0.push_back(g);
  }
  const double reach = cyl.derived().R;
  std::size_t done = 0;
  for (std::size_t n = 0; n < level0.size() && done < want; ++n) {
    const std::size_t g = level0[n];
    const CylinderTileId& id = groups[g].first;
    std::vector<Vector> pts = groups[g].second;
    Rng rng(derive_seed(seed, 0x10000 + g));
    const Vector a = cyl.cylinder_axis(id).x;
    for (std::size_t tries = 0; tries < 20000 && pts.size() < 64; ++tries) {
      const Vector x = along(a, reach * std::pow(rng.uniform(), 2.0), random_unit(space, rng));
      if (cyl.locate_cylinder(x) == id) pts.push_back(x);
    }
    if (pts.size() < 2) continue;
    const std::size_t share = (want - done + (level0.size() - n) - 1) / (level0.size() - n);
    json extra = {{"tile", to_json(id)}};
    for (std::size_t p = 0; p < share; ++p, ++done) {
      const std::size_t i = rng.next() % pts.size();
      std::size_t j = rng.next() % pts.size();
      if (i == j) j = (j + 1) % pts.size();
      const Vector m = midpoint(pts[i], pts[j]);
      convex.record(check_k0_convexity(t, id, m), witness(m, 0, p, extra));
    }
  }
  out.push_back(std::move(tube.get()));
  out.push_back(std::move(inner.get()));
  out.push_back(std::move(convex.get()));
}

void tiling_checks(const Tiling& t, const std::vector<SampleResult>& samples, std::vector<CheckRecord>& out) {
  const StarlikeTiling& st = t.starlike();
  const Space& space = t.cylinders().space();
  const std::uint64_t base = t.config().sampling.seed;
  const std::uint64_t seed = derive_seed(base, 0x711e);
  Recorder cover("tiling.covering"), disjoint("tiling.disjointness"), normal("tiling.normality"),
      inner("tiling.inner_ball"), star("tiling.starlike");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SampleResult& s = samples[i];
    const std::uint64_t sd = derive_seed(base, i);
    cover.record(s.covering, witness(s.x, sd, i));
    if (s.covering) continue;
    disjoint.record(s.disjoint, witness(s.x, sd, i));
    normal.record(s.normality, witness(s.x, sd, i));
    normal.ratio(s.ratio);
  }
  normal.get().bound = t.nominal().Kbound;
  normal.get().notes["effective_bound"] = t.cylinders().derived().Kbound;

  const auto tiles = distinct<FullTileId>(samples, [](const SampleResult& s) { return s.id; }, 100);
  const double r = t.cylinders().constants().r - 1e-6;
  for (std::size_t n = 0; n < tiles.size(); ++n) {
    const FullTileId& id = tiles[n].first;
    const Vector c = st.full_center(id);
    json extra = {{"tile", to_json(id)}};
    for (std::size_t i = 0; i < 100; ++i) {
      const std::uint64_t s = derive_seed(derive_seed(seed, n), i);
      Rng rng(s);
      const Vector x = along(c, r, random_unit(space, rng));
      inner.record(check_member(t, id, x, 0.0, "inner-ball point"), witness(x, s, i, extra));
    }
  }

  // About 10^3 segment checks spread over the first tiles.
  const std::size_t star_tiles = std::min<std::size_t>(10, tiles.size());
  for (std::size_t n = 0; n < star_tiles; ++n) {
    const FullTileId& id = tiles[n].first;
    const std::size_t members = (1000 + 9 * star_tiles - 1) / (9 * star_tiles);
    const std::uint64_t s = derive_seed(derive_seed(seed, 0x5000), n);
    StarlikeReport rep;
    try {
      rep = st.starlike_check(id, members, s);
    } catch (const Error& e) {
      star.record(std::string("sampling failed: ") + e.what(), witness(st.full_center(id), s, n));
      continue;
    }
    const std::size_t passes = rep.checks - rep.failures;
    for (std::size_t i = 0; i < passes; ++i) star.pass();
    const Vector c = st.full_center(id);
    for (std::size_t i = 0; i < rep.failures; ++i) {
      Vector xt = c;
      double tt = 0.0;
      if (i < rep.witnesses.size()) {
        tt = rep.witnesses[i].t;
        for (std::size_t d = 0; d < xt.size(); ++d) {
          xt[d] = tt * c[d] + (1.0 - tt) * rep.witnesses[i].point[d];
        }
      }
      star.record("segment point leaves the tile", witness(xt, s, n, {{"tile", to_json(id)}, {"t", tt}}));
    }
  }
  out.push_back(std::move(cover.get()));
  out.push_back(std::move(disjoint.get()));
  out.push_back(std::move(normal.get()));
  out.push_back(std::move(inner.get()));
  out.push_back(std::move(star.get()));
}

void projection_checks(const Tiling& t, const std::vector<SampleResult>& samples, std::vector<CheckRecord>& out) {
  const ProjectionTiling& p = *t.projection();
  const Space& space = t.cylinders().space();
  const std::uint64_t base = t.config().sampling.seed;
  const std::uint64_t seed = derive_seed(base, 0x960);
  Recorder outer("projection.outer_radius"), convex("projection.convexity"), inner("projection.inner_ball"),
      pnorm("projection.P_norms");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    outer.record(samples[i].projection_outer, witness(samples[i].x, derive_seed(base, i), i));
    outer.ratio(samples[i].projection_distance);
  }
  outer.get().bound = p.outer_radius();

  // Two tiles per level 0..N, first appearance order.
  std::map<std::size_t, std::vector<FullTileId>> per_level;
  for (const auto& s : samples) {
    if (!s.projection_id || s.projection_id->cyl.k > p.config().N) continue;
    auto& v = per_level[s.projection_id->cyl.k];
    if (v.size() < 2 && std::find(v.begin(), v.end(), *s.projection_id) == v.end()) {
      v.push_back(*s.projection_id);
    }
  }
  const double reach = p.outer_radius();
  std::size_t tile_no = 0;
  for (const auto& [k, ids] : per_level) {
    for (const auto& id : ids) {
      const std::uint64_t ts = derive_seed(seed, tile_no++);
      const Vector c = p.center(id);
      json extra = {{"tile", to_json(id)}};
      Rng rng(ts);
      std::vector<Vector> members;
      for (std::size_t tries = 0; tries < 200000 && members.size() < 200; ++tries) {
        const Vector x = along(c, reach * std::pow(rng.uniform(), 3.0), random_unit(space, rng));
        if (p.is_member(x, id, 0.0)) members.push_back(x);
      }
      convex.get().notes[to_string(id)] = members.size();
      if (members.size() >= 2) {
        for (std::size_t i = 0; i < 1000; ++i) {
          const std::size_t a = rng.next() % members.size();
          std::size_t b = rng.next() % members.size();
          if (a == b) b = (b + 1) % members.size();
          const Vector m = midpoint(members[a], members[b]);
          convex.record(check_projection_member(t, id, m, t.config().sampling.tolerances.geometric, "midpoint"),
                        witness(m, ts, i, extra));
        }
      }
      const double rin = p.inner_radius(k) - 1e-6;
      for (std::size_t i = 0; i < 100; ++i) {
        const Vector x = along(c, rin, random_unit(space, rng));
        inner.record(check_projection_member(t, id, x, 0.0, "inner-ball point"), witness(x, ts, i, extra));
      }
    }
  }

  // Exact ||P_k|| never falls below a sampled ratio.
  const ProjectionConfig& cfg = p.config();
  for (std::size_t k = 1; k <= cfg.N; ++k) {
    Rng rng(derive_seed(seed, 0x1000 + k));
    double best = 0.0;
    Vector worst;
    for (std::size_t i = 0; i < 10000; ++i) {
      Vector x(space.dim());
      for (double& xi : x) xi = rng.normal();
      const double n = space.norm(x);
      const double pn = space.norm(keep_leading(x, k)) / n;
      if (pn > best) {
        best = pn;
        worst = x;
      }
    }
    const double bound = cfg.P_norms[k - 1] + t.config().sampling.tolerances.norm;
    pnorm.record(cfg.P_norms_exact && best > bound ? Failure("sampled ratio " + std::to_string(best))
                                                   : std::nullopt,
                 witness(worst, 0, k, {{"level", k}}));
    pnorm.get().notes["P_" + std::to_string(k)] = cfg.P_norms[k - 1];
  }
  pnorm.get().notes["exact"] = cfg.P_norms_exact;
  out.push_back(std::move(outer.get()));
  out.push_back(std::move(convex.get()));
  out.push_back(std::move(inner.get()));
  out.push_back(std::move(pnorm.get()));
}

json constants_json(const DerivedConstants& d) {
  return {{"delta_eff", d.delta_eff}, {"central_radius", d.central_radius}, {"R", d.R},
          {"Rprime", d.Rprime}, {"Kbound", d.Kbound}};
}

json witness_json(const Witness& w) {
  json j = w.extra;
  j["point"] = w.point;
  j["seed"] = w.seed;
  j["index"] = w.index;
  j["detail"] = w.detail;
  return j;
}

}  // namespace

json to_json(const QuotientTileId& id) {
  json j = {{"k", id.k}, {"kind", kind_name(id.kind)}};
  if (id.kind == QuotientKind::Petal) {
    j["j"] = id.j;
    j["p"] = id.p;
  } else if (id.kind == QuotientKind::Strip) {
    j["n"] = id.n;
  }
  return j;
}

json to_json(const CylinderTileId& id) { return to_json(id.q); }

json to_json(const FullTileId& id) {
  json j = to_json(id.cyl);
  j["i"] = id.site;
  if (id.projected) j["projected"] = true;
  return j;
}

FullTileId full_tile_from_json(const json& j) {
  FullTileId id;
  id.cyl.q = quotient_from_json(j);
  id.cyl.k = id.cyl.q.k;
  try {
    id.site = j.value("i", SiteKey{});
    id.projected = j.value("projected", false);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidTile, std::string("malformed tile id: ") + e.what());
  }
  return id;
}

Tiling::Tiling(const TilingConfig& cfg, std::optional<std::filesystem::path> cache_dir) : cfg_(cfg) {
  Space space = make_space(cfg.space);
  space.set_solver_tolerance(cfg.sampling.tolerances.solver);
  ConstructionOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.net_seed = cfg.net_seed;
  opts.cache_dir = std::move(cache_dir);
  cyl_ = std::make_unique<CylinderTiling>(std::move(space), make_constants(cfg), opts);
  starlike_ = std::make_unique<StarlikeTiling>(*cyl_);
  if (cfg.mode == Mode::Projection) {
    ProjectionConfig pc = make_projection_config(cyl_->space(), cfg.projection_N, cyl_->constants().r,
                                                 cfg.projection_side, derive_seed(cfg.net_seed, 0x9e));
    projection_ = std::make_unique<ProjectionTiling>(*starlike_, std::move(pc));
  }
}

DerivedConstants Tiling::nominal() const {
  return compute_K_bound(cyl_->constants(), cyl_->constants().delta);
}

FullTileId Tiling::locate(std::span<const double> x) const {
  return projection_ ? projection_->locate(x) : starlike_->locate_full(x);
}

Vector Tiling::center(const FullTileId& id) const {
  return projection_ ? projection_->center(id) : starlike_->full_center(id);
}

bool Tiling::is_member(std::span<const double> x, const FullTileId& id, double tol) const {
  return projection_ ? projection_->is_member(x, id, tol) : starlike_->is_member(x, id, tol);
}

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.failures;
  return n;
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport run_suite(const Tiling& t, const SuiteOptions& opt) {
  VerificationReport rep;
  rep.nominal = t.nominal();
  rep.effective = t.cylinders().derived();
  if (t.projection()) {
    rep.k_projection = k_projection_bound(t.projection()->config(), rep.effective, t.cylinders().constants().r);
  }
  if (opt.template_checks) template_checks(t, rep.checks);
  if (opt.system_checks) system_checks(t, rep.checks);
  if (opt.quotient_checks) quotient_checks(t, rep.checks);

  const bool need_samples = opt.cylinder_checks || opt.tiling_checks || (opt.projection_checks && t.projection());
  std::vector<SampleResult> samples;
  if (need_samples) samples = run_samples(t, opt);
  if (opt.cylinder_checks) cylinder_checks(t, samples, rep.checks);
  if (opt.tiling_checks) tiling_checks(t, samples, rep.checks);
  if (opt.projection_checks && t.projection()) projection_checks(t, samples, rep.checks);

  if (opt.sample_log) {
    std::ofstream log(*opt.sample_log, std::ios::trunc);
    if (!log) throw Error(ErrorCode::Io, "cannot write sample log " + opt.sample_log->string());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const SampleResult& s = samples[i];
      json line = {{"index", i}, {"point", s.x}};
      if (s.id) {
        line["tile"] = to_json(*s.id);
        line["distances"] = {{"center", s.ratio * t.cylinders().constants().r}, {"ratio", s.ratio}};
      }
      if (s.projection_id) line["projection_tile"] = to_json(*s.projection_id);
      line["flags"] = {{"covered", !s.covering},
                       {"strict_owners", s.owners},
                       {"normal", !s.normality},
                       {"tube", !s.tube}};
      log << line.dump() << '\n';
    }
    if (!log) throw Error(ErrorCode::Io, "cannot write sample log " + opt.sample_log->string());
  }
  return rep;
}

json to_json(const VerificationReport& report, const TilingConfig& cfg) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json w = json::array();
    for (const auto& x : c.witnesses) w.push_back(witness_json(x));
    json j = {{"name", c.name}, {"samples", c.samples}, {"failures", c.failures},
              {"passed", c.ok()}, {"witnesses", w}};
    if (c.max_ratio) j["max_observed"] = *c.max_ratio;
    if (c.bound) j["bound"] = *c.bound;
    if (!c.notes.empty()) j["notes"] = c.notes;
    checks.push_back(std::move(j));
  }
  json constants = {{"nominal", constants_json(report.nominal)}, {"effective", constants_json(report.effective)}};
  if (report.k_projection) constants["k_projection"] = *report.k_projection;
  std::size_t failed = 0;
  for (const auto& c : report.checks) failed += c.ok() ? 0 : 1;
  return json{{"report_version", kReportVersion},
              {"config", to_json(cfg)},
              {"constants", constants},
              {"checks", checks},
              {"summary", {{"checks", report.checks.size()}, {"failed_checks", failed},
                           {"failures", report.failures()}}}};
}

std::string serialize_report(const VerificationReport& report, const TilingConfig& cfg) {
  return to_json(report, cfg).dump(2) + "\n";
}

bool replay_witness(const Tiling& t, const std::string& check, const Witness& w) {
  const json& e = w.extra;
  const Vector& x = w.point;
  const auto level = [&] { return e.at("level").get<std::size_t>(); };
  const auto tile = [&] { return full_tile_from_json(e.at("tile")); };
  if (check == "template.corners") {
    const TemplateReport rep = verify_template(make_constants(t.config()));
    return std::any_of(rep.failures.begin(), rep.failures.end(), [&](const CornerFailure& f) {
      return f.condition == e.value("condition", "") && f.corner.x == x[0] && f.corner.y == x[1];
    });
  }
  if (check == "tiling.covering") return check_covering(t, x).has_value();
  if (check == "tiling.normality") return check_normality(t, x, nullptr).has_value();
  if (check == "tiling.disjointness") return check_disjoint(t, x, nullptr).has_value();
  if (check == "cylinder.tube") return check_tube(t, x).has_value();
  if (check == "quotient.2a_lower") return check_2a_lower(t, level(), x).has_value();
  if (check == "quotient.2a_upper") return check_2a_upper(t, level(), x).has_value();
  if (check == "quotient.2d") return check_2d(t, level(), x).has_value();
  if (check == "quotient.top_intervals") return check_top_interval(t, x).has_value();
  if (check == "quotient.2c") return check_2c(t, quotient_from_json(e.at("tile")), x).has_value();
  if (check == "cylinder.inner_tube") return check_inner_tube(t, tile().cyl, x).has_value();
  if (check == "cylinder.k0_convexity") return check_k0_convexity(t, tile().cyl, x).has_value();
  if (check == "tiling.inner_ball") return check_member(t, tile(), x, 0.0, "point").has_value();
  if (check == "tiling.starlike") return check_member(t, tile(), x, 1e-6, "point").has_value();
  if (t.projection()) {
    if (check == "projection.outer_radius") return check_projection_outer(t, x, nullptr).has_value();
    if (check == "projection.convexity") {
      return check_projection_member(t, tile(), x, t.config().sampling.tolerances.geometric, "point").has_value();
    }
    if (check == "projection.inner_ball") return check_projection_member(t, tile(), x, 0.0, "point").has_value();
  }
  throw Error(ErrorCode::InvalidArgument, "no replay for check " + check);
}

}  // namespace starlike
