// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/semibeta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {

namespace {

constexpr int kCacheFormat = 1;

struct KeyHash {
  std::size_t operator()(const std::vector<long>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (long c : key) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

SphereNet sphere_net(const Space& space, std::size_t k, double epsilon, std::uint64_t seed) {
  const std::size_t m = space.dim();
  if (k >= m) throw Error(ErrorCode::DimensionExhausted, "X/V_k is trivial for k >= M");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "net epsilon must lie in (0, 1)");
  }
  const std::size_t d = m - k;
  const auto stop = static_cast<std::size_t>(
      std::ceil(10.0 * std::pow(3.0 / epsilon, static_cast<double>(d))));

  SphereNet net{k, epsilon, seed, {}};
  // Coordinates are dominated by the quotient norm (|e*_i(z)| <= ||z||), so
  // an epsilon-neighbour lives in an adjacent epsilon-bucket. Each point is
  // filed under all 3^d buckets around its own; a query reads one bucket.
  std::unordered_map<std::vector<long>, std::vector<std::size_t>, KeyHash> buckets;
  std::vector<long> key(d), probe(d);
  const auto bucket_of = [&](const Vector& x) {
    for (std::size_t i = 0; i < d; ++i) key[i] = static_cast<long>(std::floor(x[k + i] / epsilon));
  };

  std::size_t offsets = 1;
  for (std::size_t i = 0; i < d; ++i) offsets *= 3;

  Halton stream(d, seed);
  std::vector<double> u(d);
  Vector diff(m, 0.0);
  std::size_t rejected = 0;
  while (rejected < stop) {
    stream.next(u);
    Vector x(m, 0.0);
    for (std::size_t i = 0; i < d; ++i) x[k + i] = 2.0 * u[i] - 1.0;
    const double n = space.quotient_norm(x, k);
    if (!(n > 1e-12)) {
      ++rejected;
      continue;
    }
    for (auto& c : x) c /= n;

    bucket_of(x);
    bool close = false;
    if (const auto it = buckets.find(key); it != buckets.end()) {
      for (std::size_t idx : it->second) {
        for (std::size_t i = 0; i < m; ++i) diff[i] = x[i] - net.points[idx][i];
        if (space.quotient_norm(diff, k) < epsilon) {
          close = true;
          break;
        }
      }
    }
    if (close) {
      ++rejected;
      continue;
    }
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t rest = o;
      for (std::size_t i = 0; i < d; ++i) {
        probe[i] = key[i] + static_cast<long>(rest % 3) - 1;
        rest /= 3;
      }
      buckets[probe].push_back(net.points.size());
    }
    net.points.push_back(std::move(x));
    rejected = 0;
  }
  return net;
}

SemiBiorthogonalSystem greedy_system(const Space& space, const SphereNet& net, double delta) {
  if (net.points.empty()) throw Error(ErrorCode::EmptyNet, "cannot build a system from an empty net");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  SemiBiorthogonalSystem sys;
  sys.level = net.level;
  sys.delta = delta;
  sys.epsilon = net.epsilon;
  for (const auto& x : net.points) {
    const bool admissible = std::all_of(sys.vstar.begin(), sys.vstar.end(), [&](const Functional& f) {
      return std::abs(act(f, x)) <= delta;
    });
    if (!admissible) continue;
    sys.vstar.push_back(space.quotient_norming_functional(x, net.level));
    sys.v.push_back(x);
  }
  sys.certified_bound = delta - net.epsilon;
  return sys;
}

double frame_bound(const Space& space, SemiBiorthogonalSystem& sys, std::size_t trials,
                   std::uint64_t seed) {
  if (sys.empty()) throw Error(ErrorCode::EmptySystem, "frame bound of an empty system");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "frame bound needs at least one trial");
  double empirical = INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const Vector u = random_unit(space, rng, sys.level);
    double best = 0.0;
    for (const auto& f : sys.vstar) best = std::max(best, std::abs(act(f, u)));
    empirical = std::min(empirical, best);
  }
  sys.certified_bound = std::min(empirical, sys.delta - sys.epsilon);
  return empirical;
}

std::string system_cache_key(const Space& space, std::size_t k, double delta, double epsilon,
                             std::uint64_t seed) {
  std::ostringstream os;
  os.precision(17);
  os << space.describe() << "|k=" << k << "|delta=" << delta << "|eps=" << epsilon
     << "|seed=" << seed;
  return os.str();
}

void save_system(const std::filesystem::path& file, const std::string& key,
                 const SemiBiorthogonalSystem& sys) {
  nlohmann::json j;
  j["format"] = kCacheFormat;
  j["key"] = key;
  j["level"] = sys.level;
  j["delta"] = sys.delta;
  j["epsilon"] = sys.epsilon;
  j["certified_bound"] = sys.certified_bound;
  j["v"] = sys.v;
  j["vstar"] = sys.vstar;
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::Io, "cannot write system cache " + tmp);
    out << j.dump();
    if (!out) throw Error(ErrorCode::Io, "cannot write system cache " + tmp);
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot move system cache into place: " + ec.message());
}

std::optional<SemiBiorthogonalSystem> load_system(const std::filesystem::path& file,
                                                  const std::string& key) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format").get<int>() != kCacheFormat) return std::nullopt;
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    SemiBiorthogonalSystem sys;
    sys.level = j.at("level").get<std::size_t>();
    sys.delta = j.at("delta").get<double>();
    sys.epsilon = j.at("epsilon").get<double>();
    sys.certified_bound = j.at("certified_bound").get<double>();
    sys.v = j.at("v").get<std::vector<Vector>>();
    sys.vstar = j.at("vstar").get<std::vector<Functional>>();
    if (sys.v.size() != sys.vstar.size()) return std::nullopt;
    return sys;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

}  // namespace starlike
