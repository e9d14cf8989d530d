// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/voronoi_refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {
namespace {

Vector embed(const SiteKey& key, double unit, std::size_t dim) {
  Vector v(dim, 0.0);
  for (std::size_t i = 0; i < key.size(); ++i) v[i] = unit * static_cast<double>(key[i]);
  return v;
}

bool lex_less(const SiteKey& a, const SiteKey& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Calls f on every integer vector in the box [lo, hi].
template <typename F>
void for_each_in_box(const SiteKey& lo, const SiteKey& hi, F&& f) {
  const std::size_t k = lo.size();
  SiteKey c = lo;
  if (k == 0) {
    f(c);
    return;
  }
  for (;;) {
    f(c);
    std::size_t i = 0;
    while (i < k && c[i] == hi[i]) {
      c[i] = lo[i];
      ++i;
    }
    if (i == k) return;
    ++c[i];
  }
}

struct KeyHash {
  std::size_t operator()(const SiteKey& key) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (long v : key) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

SeparatedNet build_separated_net(const Space& space, std::size_t k, double r, double rho) {
  if (!(r > 0.0) || !(rho >= 2.0 * r)) {
    throw Error(ErrorCode::InvalidArgument, "separated net needs rho >= 2r > 0");
  }
  if (k > space.dim()) throw Error(ErrorCode::DimensionMismatch, "net level exceeds dimension");
  const double step = r / 2.0;
  SeparatedNet net;
  net.level = k;
  net.spacing = 2.0 * r;
  net.rho = rho;
  if (k == 0) {
    net.keys.push_back({});
    net.points.push_back(Vector(space.dim(), 0.0));
    return net;
  }

  // Coordinates are bounded by the norm because the coordinate functionals
  // have norm one.
  const long extent = static_cast<long>(std::floor(rho / step + 1e-9));
  struct Candidate {
    double norm;
    SiteKey key;
  };
  std::vector<Candidate> grid;
  for_each_in_box(SiteKey(k, -extent), SiteKey(k, extent), [&](const SiteKey& c) {
    const double n = space.norm(embed(c, step, space.dim()));
    if (n <= rho + 1e-12) grid.push_back({n, c});
  });
  std::sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return lex_less(a.key, b.key);
  });

  // Buckets of side 2r in key units (4 grid steps); a site within 2r of a
  // candidate lies in an adjacent bucket.
  std::map<SiteKey, std::vector<std::size_t>> buckets;
  const auto bucket_of = [](const SiteKey& c) {
    SiteKey b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) b[i] = static_cast<long>(std::floor(c[i] / 4.0));
    return b;
  };
  const double min_gap = 2.0 * r - 1e-12;
  for (const auto& cand : grid) {
    const Vector p = embed(cand.key, step, space.dim());
    const SiteKey b = bucket_of(cand.key);
    SiteKey lo = b, hi = b;
    for (std::size_t i = 0; i < k; ++i) {
      --lo[i];
      ++hi[i];
    }
    bool admit = true;
    for_each_in_box(lo, hi, [&](const SiteKey& nb) {
      if (!admit) return;
      auto it = buckets.find(nb);
      if (it == buckets.end()) return;
      for (std::size_t idx : it->second) {
        Vector d = p;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= net.points[idx][i];
        if (space.norm(d) < min_gap) {
          admit = false;
          return;
        }
      }
    });
    if (!admit) continue;
    buckets[b].push_back(net.points.size());
    net.keys.push_back(cand.key);
    net.points.push_back(p);
  }
  return net;
}

const char* to_string(SiteLayout layout) noexcept {
  switch (layout) {
    case SiteLayout::Origin: return "origin";
    case SiteLayout::CoordinateLattice: return "coordinate-lattice";
    case SiteLayout::Checkerboard: return "checkerboard";
    case SiteLayout::GreedyNet: return "greedy-net";
  }
  return "unknown";
}

SiteSet::SiteSet(const Space& space, std::size_t k, double r) : space_(&space), k_(k), r_(r) {
  const double p = space.p();
  if (k == 0) {
    layout_ = SiteLayout::Origin;
    unit_ = 0.0;
  } else if (space.is_lp() && (std::isinf(p) || static_cast<double>(k) <= std::pow(2.0, p))) {
    layout_ = SiteLayout::CoordinateLattice;
    unit_ = 2.0 * r;
  } else if (space.is_lp() && p == 1.0 && k <= 4) {
    layout_ = SiteLayout::Checkerboard;
    unit_ = r;
  } else {
    layout_ = SiteLayout::GreedyNet;
    unit_ = r / 2.0;
  }
}

double SiteSet::covering_radius() const {
  const double k = static_cast<double>(k_);
  switch (layout_) {
    case SiteLayout::Origin: return 0.0;
    case SiteLayout::CoordinateLattice:
      return std::isinf(space_->p()) ? r_ : r_ * std::pow(k, 1.0 / space_->p());
    case SiteLayout::Checkerboard: return r_ * std::max(1.0, k / 2.0);
    case SiteLayout::GreedyNet: return 2.0 * r_ + k * r_ / 4.0;
  }
  return 0.0;
}

Vector SiteSet::point(const SiteKey& key) const {
  if (key.size() != k_) throw Error(ErrorCode::InvalidTile, "site key has the wrong length");
  return embed(key, unit_, space_->dim());
}

bool SiteSet::is_site(const SiteKey& key) const {
  if (key.size() != k_) return false;
  switch (layout_) {
    case SiteLayout::Origin:
    case SiteLayout::CoordinateLattice: return true;
    case SiteLayout::Checkerboard: {
      long sum = 0;
      for (long v : key) sum += v;
      return sum % 2 == 0;
    }
    case SiteLayout::GreedyNet: {
      const double n = space_->norm(point(key));
      const auto net = this->net();
      if (n > net->rho) {
        // Grow until the key's norm is inside the horizon.
        std::vector<double> probe(point(key));
        nearest_distance(probe);
      }
      const auto current = this->net();
      return std::find(current->keys.begin(), current->keys.end(), key) != current->keys.end();
    }
  }
  return false;
}

bool SiteSet::precedes(const SiteKey& a, const SiteKey& b) const {
  const double na = space_->norm(point(a));
  const double nb = space_->norm(point(b));
  if (na != nb) return na < nb;
  return lex_less(a, b);
}

double SiteSet::distance_to(std::span<const double> y, const SiteKey& key) const {
  Vector d(y.begin(), y.end());
  for (std::size_t i = 0; i < key.size(); ++i) d[i] -= unit_ * static_cast<double>(key[i]);
  return space_->norm(d);
}

std::vector<SiteSet::Scored> SiteSet::box_scores(std::span<const double> y) const {
  SiteKey lo(k_), hi(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    const long c = std::lround(y[i] / unit_);
    lo[i] = c - 1;
    hi[i] = c + 1;
  }
  std::vector<Scored> out;
  for_each_in_box(lo, hi, [&](const SiteKey& c) {
    if (layout_ == SiteLayout::Checkerboard && !is_site(c)) return;
    out.push_back({c, distance_to(y, c)});
  });
  return out;
}

std::shared_ptr<const SeparatedNet> SiteSet::net() const {
  std::lock_guard<std::mutex> lock(grow_mutex_);
  if (!net_) net_ = std::make_shared<SeparatedNet>(build_separated_net(*space_, k_, r_, 8.0 * r_));
  return net_;
}

std::vector<SiteSet::Scored> SiteSet::net_scores(std::span<const double> y) const {
  double head = 0.0;
  for (std::size_t i = 0; i < k_; ++i) head = std::max(head, std::abs(y[i]));
  // An upper bound for the nearest distance: move the head to a covering site.
  Vector tail(y.begin(), y.end());
  for (std::size_t i = 0; i < k_; ++i) tail[i] = 0.0;
  const double bound = space_->norm(tail) + covering_radius();
  // Sites beyond the horizon have a coordinate above rho/k, so they are
  // farther than rho/k - head from y.
  const double reach = bound + 2.0 * r_;
  const double needed = static_cast<double>(k_) * (head + reach) + 2.0 * r_;
  std::shared_ptr<const SeparatedNet> net = this->net();
  while (net->rho < needed) {
    std::lock_guard<std::mutex> lock(grow_mutex_);
    if (net_->rho < needed) {
      const double rho = std::max(2.0 * net_->rho, needed);
      net_ = std::make_shared<SeparatedNet>(build_separated_net(*space_, k_, r_, rho));
    }
    net = net_;
  }
  std::vector<Scored> out;
  for (const auto& key : net->keys) {
    bool close = true;
    for (std::size_t i = 0; i < k_ && close; ++i) {
      close = std::abs(y[i] - unit_ * static_cast<double>(key[i])) <= reach;
    }
    if (close) out.push_back({key, distance_to(y, key)});
  }
  return out;
}

SiteKey SiteSet::locate_linf(std::span<const double> y, double* distance) const {
  double tail = 0.0;
  for (std::size_t i = k_; i < y.size(); ++i) tail = std::max(tail, std::abs(y[i]));
  double dmin = tail;
  for (std::size_t i = 0; i < k_; ++i) {
    const double u = y[i] / unit_;
    dmin = std::max(dmin, std::abs(u - std::round(u)) * unit_);
  }
  // Sites within dmin + tie tolerance form a box; take the one of least norm,
  // then the lexicographically first.
  const double reach = dmin + kTieTolerance;
  SiteKey lo(k_), hi(k_);
  long m = 0;
  for (std::size_t i = 0; i < k_; ++i) {
    lo[i] = static_cast<long>(std::ceil((y[i] - reach) / unit_));
    hi[i] = static_cast<long>(std::floor((y[i] + reach) / unit_));
    if (lo[i] > hi[i]) lo[i] = hi[i] = std::lround(y[i] / unit_);
    const long closest = (lo[i] <= 0 && hi[i] >= 0) ? 0 : std::min(std::labs(lo[i]), std::labs(hi[i]));
    m = std::max(m, closest);
  }
  SiteKey key(k_);
  for (std::size_t i = 0; i < k_; ++i) key[i] = std::max(lo[i], -m);
  if (distance) *distance = distance_to(y, key);
  return key;
}

SiteKey SiteSet::locate(std::span<const double> y) const {
  if (y.size() != space_->dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  if (layout_ == SiteLayout::Origin) return {};
  if (layout_ == SiteLayout::CoordinateLattice && std::isinf(space_->p())) return locate_linf(y, nullptr);
  const auto scores = layout_ == SiteLayout::GreedyNet ? net_scores(y) : box_scores(y);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : scores) best = std::min(best, s.distance);
  const SiteKey* pick = nullptr;
  for (const auto& s : scores) {
    if (s.distance > best + kTieTolerance) continue;
    if (!pick || precedes(s.key, *pick)) pick = &s.key;
  }
  return *pick;
}

double SiteSet::nearest_distance(std::span<const double> y) const {
  if (y.size() != space_->dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  if (layout_ == SiteLayout::Origin) return space_->norm(y);
  if (layout_ == SiteLayout::CoordinateLattice && std::isinf(space_->p())) {
    double d = 0.0;
    locate_linf(y, &d);
    return d;
  }
  const auto scores = layout_ == SiteLayout::GreedyNet ? net_scores(y) : box_scores(y);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : scores) best = std::min(best, s.distance);
  return best;
}

std::vector<SiteKey> SiteSet::candidates(std::span<const double> y) const {
  if (y.size() != space_->dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  if (layout_ == SiteLayout::Origin) return {SiteKey{}};
  const auto scores = layout_ == SiteLayout::GreedyNet ? net_scores(y) : box_scores(y);
  std::vector<SiteKey> out;
  out.reserve(scores.size() + 1);
  for (const auto& s : scores) out.push_back(s.key);
  // A dominant tail in l_inf ties sites far outside the box; any box site then
  // ties with the located one, which is all strict membership needs.
  if (layout_ == SiteLayout::CoordinateLattice && std::isinf(space_->p())) {
    SiteKey first = locate_linf(y, nullptr);
    if (std::find(out.begin(), out.end(), first) == out.end()) out.push_back(std::move(first));
  }
  return out;
}

std::string to_string(const FullTileId& id) {
  std::ostringstream os;
  os << to_string(id.cyl) << ",i=(";
  for (std::size_t i = 0; i < id.site.size(); ++i) os << (i ? "," : "") << id.site[i];
  os << ")";
  if (id.projected) os << ",projected";
  return os.str();
}

StarlikeTiling::StarlikeTiling(const CylinderTiling& cylinders) : cyl_(&cylinders) {
  for (std::size_t k = 0; k < cylinders.dim(); ++k) {
    sites_.push_back(std::make_unique<SiteSet>(cylinders.space(), k, cylinders.constants().r));
  }
}

std::optional<std::string> StarlikeTiling::invalid_reason(const FullTileId& id) const {
  if (auto why = cyl_->invalid_reason(id.cyl)) return why;
  if (id.projected) return "projected ids belong to the projection tiling";
  if (id.site.size() != id.cyl.k) return "site key length must equal the level";
  if (!sites(id.cyl.k).is_site(id.site)) return "site key is not a net point";
  return std::nullopt;
}

FullTileId StarlikeTiling::locate_full(std::span<const double> x) const {
  FullTileId id;
  id.cyl = cyl_->locate_cylinder(x);
  const CylinderAxis axis = cyl_->cylinder_axis(id.cyl);
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= axis.x[i];
  id.site = locate_cell(id.cyl.k, y);
  return id;
}

Vector StarlikeTiling::full_center(const FullTileId& id) const {
  if (auto why = invalid_reason(id)) throw Error(ErrorCode::InvalidTile, *why);
  Vector c = cyl_->cylinder_axis(id.cyl).x;
  const Vector d = sites(id.cyl.k).point(id.site);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += d[i];
  return c;
}

bool StarlikeTiling::is_member(std::span<const double> x, const FullTileId& id, double tol) const {
  if (x.size() != cyl_->dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  if (invalid_reason(id)) return false;
  if (!cyl_->in_cylinder(x, id.cyl, tol)) return false;
  const SiteSet& set = sites(id.cyl.k);
  if (set.layout() == SiteLayout::Origin) return true;
  const Vector axis = cyl_->cylinder_axis(id.cyl).x;
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= axis[i];
  Vector own = y;
  const Vector d = set.point(id.site);
  for (std::size_t i = 0; i < own.size(); ++i) own[i] -= d[i];
  const double mine = cyl_->space().norm(own);
  if (tol >= 0.0) return mine <= set.nearest_distance(y) + tol + kTieTolerance;
  for (const auto& other : set.candidates(y)) {
    if (other == id.site) continue;
    Vector diff = y;
    const Vector e = set.point(other);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= e[i];
    if (mine > cyl_->space().norm(diff) + tol) return false;
  }
  return true;
}

std::vector<FullTileId> StarlikeTiling::strict_owners(std::span<const double> x, double margin) const {
  std::vector<FullTileId> out;
  const std::size_t M = cyl_->dim();
  const Variant variant = cyl_->constants().variant;
  // strict_central[m]: x lies strictly inside the central tile of level m.
  std::vector<bool> strict_central(M + 1, true);
  for (std::size_t m = 0; m < M; ++m) {
    strict_central[m] = cyl_->quotient(m).contains(x, QuotientTileId::central(m), -margin);
  }
  bool above_ok = true;  // strictly central at every level above k
  for (std::size_t kk = M; kk-- > 0;) {
    if (!above_ok) break;
    const std::size_t k = kk;
    const QuotientTiling& q = cyl_->quotient(k);
    std::vector<QuotientTileId> tiles;
    if (k == 0 && strict_central[0]) tiles.push_back(QuotientTileId::central(0));
    const long n0 = strip_index(x[k]);
    for (long n = n0 - 1; n <= n0 + 1; ++n) {
      if (n != 0 && std::abs(x[k] - 4.0 * static_cast<double>(n)) < 2.0 - margin) {
        tiles.push_back(QuotientTileId::strip(k, n));
      }
    }
    if (std::abs(x[k]) < 2.0 - margin) {
      for (std::size_t j = 0; j < q.petal_count(); ++j) {
        const Point2 pt = q.pi_map(j, x);
        for (int p = 1; p <= 4; ++p) {
          if (in_region(variant, static_cast<Region>(p), pt, -margin)) {
            tiles.push_back(QuotientTileId::petal(k, j, p));
          }
        }
        if (!in_region(variant, Region::U0, pt, -margin)) break;
      }
    }
    for (const auto& t : tiles) {
      const CylinderTileId cyl{k, t};
      const Vector axis = cyl_->cylinder_axis(cyl).x;
      Vector y(x.begin(), x.end());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= axis[i];
      for (const auto& site : sites(k).candidates(y)) {
        FullTileId id{cyl, site, false};
        if (is_member(x, id, -margin)) out.push_back(std::move(id));
      }
    }
    above_ok = strict_central[k];
  }
  return out;
}

StarlikeReport StarlikeTiling::starlike_check(const FullTileId& id, std::size_t samples,
                                              std::uint64_t seed) const {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "starlike check needs samples >= 1");
  const Vector center = full_center(id);
  const double outer = cyl_->derived().Rprime;
  const Space& space = cyl_->space();
  Rng rng(seed);
  StarlikeReport report;
  std::size_t proposals = 0;
  constexpr std::size_t kMaxProposals = 100000;
  while (report.members < samples) {
    if (proposals >= kMaxProposals) {
      if (report.members == 0) throw Error(ErrorCode::SamplingFailed, "no tile member found");
      break;
    }
    ++proposals;
    // Radii are skewed toward the center so thin tiles are still hit.
    const Vector u = random_unit(space, rng);
    const double rho = outer * std::pow(rng.uniform(), 3.0);
    Vector x = center;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += rho * u[i];
    if (!is_member(x, id, 0.0)) continue;
    ++report.members;
    for (int s = 1; s <= 9; ++s) {
      const double t = 0.1 * s;
      Vector xt(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = t * center[i] + (1.0 - t) * x[i];
      ++report.checks;
      if (!is_member(xt, id, 1e-6)) {
        ++report.failures;
        if (report.witnesses.size() < 8) report.witnesses.push_back({x, t});
      }
    }
  }
  return report;
}

}  // namespace starlike
