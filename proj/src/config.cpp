// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "starlike/error.hpp"

namespace starlike {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Config, what); }

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(std::string("unknown key '") + key + "' in " + where);
  }
}

template <typename T>
T get(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(std::string("key '") + key + "' has the wrong type");
  }
}

double parse_p(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return INFINITY;
    fail("p must be a number >= 1 or \"inf\"");
  }
  if (!v.is_number()) fail("p must be a number >= 1 or \"inf\"");
  const double p = v.get<double>();
  if (!(p >= 1.0)) fail("p must be a number >= 1 or \"inf\"");
  return p;
}

}  // namespace

TilingConfig parse_config(const json& j) {
  if (!j.is_object()) fail("config must be an object");
  reject_unknown(j, {"version", "space", "template", "net", "mode", "projection", "sampling"}, "config");
  TilingConfig cfg;
  if (!j.contains("version")) fail("missing 'version'");
  cfg.version = get<int>(j, "version", 0);
  if (cfg.version != kConfigVersion) fail("unsupported config version " + std::to_string(cfg.version));

  if (!j.contains("space") || !j["space"].is_object()) fail("missing 'space'");
  const json& s = j["space"];
  reject_unknown(s, {"dim", "family", "p", "functionals"}, "space");
  cfg.space.dim = get<std::size_t>(s, "dim", 0);
  if (cfg.space.dim < 1) fail("space.dim must be >= 1");
  cfg.space.family = get<std::string>(s, "family", "lp");
  if (cfg.space.family == "lp") {
    cfg.space.p = s.contains("p") ? parse_p(s["p"]) : 2.0;
  } else if (cfg.space.family == "polytope") {
    cfg.space.functionals = get<std::vector<Functional>>(s, "functionals", {});
    if (cfg.space.functionals.empty()) fail("polytope space needs functionals");
    for (const auto& f : cfg.space.functionals) {
      if (f.size() != cfg.space.dim) fail("functional length differs from space.dim");
    }
  } else {
    fail("space.family must be \"lp\" or \"polytope\"");
  }

  if (j.contains("template")) {
    const json& t = j["template"];
    reject_unknown(t, {"variant", "a", "b", "r", "delta"}, "template");
    const std::string v = get<std::string>(t, "variant", "A");
    if (v == "A") cfg.variant = Variant::A;
    else if (v == "B") cfg.variant = Variant::B;
    else fail("template.variant must be \"A\" or \"B\"");
    cfg.a = get<double>(t, "a", cfg.a);
    cfg.b = get<double>(t, "b", cfg.b);
    if (t.contains("r")) cfg.r = get<double>(t, "r", 0.0);
    if (t.contains("delta")) cfg.delta = get<double>(t, "delta", 0.0);
  }
  if (j.contains("net")) {
    const json& n = j["net"];
    reject_unknown(n, {"epsilon", "seed"}, "net");
    cfg.epsilon = get<double>(n, "epsilon", cfg.epsilon);
    cfg.net_seed = get<std::uint64_t>(n, "seed", cfg.net_seed);
  }
  const std::string mode = get<std::string>(j, "mode", "starlike");
  if (mode == "starlike") cfg.mode = Mode::Starlike;
  else if (mode == "projection") cfg.mode = Mode::Projection;
  else fail("mode must be \"starlike\" or \"projection\"");
  if (j.contains("projection")) {
    const json& p = j["projection"];
    reject_unknown(p, {"N", "side"}, "projection");
    cfg.projection_N = get<std::size_t>(p, "N", cfg.projection_N);
    if (p.contains("side")) cfg.projection_side = get<double>(p, "side", 0.0);
  }
  if (cfg.mode == Mode::Projection && (cfg.projection_N < 1 || cfg.projection_N >= cfg.space.dim)) {
    fail("projection.N must satisfy 1 <= N < dim");
  }
  if (j.contains("sampling")) {
    const json& sm = j["sampling"];
    reject_unknown(sm, {"count", "box", "seed", "tolerances", "workers"}, "sampling");
    cfg.sampling.count = get<std::size_t>(sm, "count", cfg.sampling.count);
    cfg.sampling.box = get<double>(sm, "box", cfg.sampling.box);
    cfg.sampling.seed = get<std::uint64_t>(sm, "seed", cfg.sampling.seed);
    cfg.sampling.workers = get<std::size_t>(sm, "workers", cfg.sampling.workers);
    if (sm.contains("tolerances")) {
      const json& t = sm["tolerances"];
      reject_unknown(t, {"geometric", "norm", "solver", "strict_margin"}, "sampling.tolerances");
      Tolerances& tol = cfg.sampling.tolerances;
      tol.geometric = get<double>(t, "geometric", tol.geometric);
      tol.norm = get<double>(t, "norm", tol.norm);
      tol.solver = get<double>(t, "solver", tol.solver);
      tol.strict_margin = get<double>(t, "strict_margin", tol.strict_margin);
    }
  }
  if (cfg.sampling.workers < 1) fail("sampling.workers must be >= 1");
  if (!(cfg.sampling.box > 0.0)) fail("sampling.box must be positive");

  // Consistency: feasible template and epsilon < delta.
  TemplateConstants c;
  try {
    c = make_constants(cfg);
  } catch (const Error& e) {
    fail(std::string("template: ") + e.what());
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < c.delta)) fail("net.epsilon must satisfy 0 < epsilon < delta");
  return cfg;
}

TilingConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed config: ") + e.what());
  }
  return parse_config(j);
}

TilingConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const TilingConfig& cfg) {
  json space = {{"dim", cfg.space.dim}, {"family", cfg.space.family}};
  if (cfg.space.family == "lp") {
    if (std::isinf(cfg.space.p)) space["p"] = "inf";
    else space["p"] = cfg.space.p;
  } else {
    space["functionals"] = cfg.space.functionals;
  }
  json tmpl = {{"variant", to_string(cfg.variant)}, {"a", cfg.a}, {"b", cfg.b}};
  if (cfg.r) tmpl["r"] = *cfg.r;
  if (cfg.delta) tmpl["delta"] = *cfg.delta;
  json projection = {{"N", cfg.projection_N}};
  if (cfg.projection_side) projection["side"] = *cfg.projection_side;
  const Tolerances& t = cfg.sampling.tolerances;
  return json{
      {"version", cfg.version},
      {"space", space},
      {"template", tmpl},
      {"net", {{"epsilon", cfg.epsilon}, {"seed", cfg.net_seed}}},
      {"mode", cfg.mode == Mode::Starlike ? "starlike" : "projection"},
      {"projection", projection},
      {"sampling",
       {{"count", cfg.sampling.count},
        {"box", cfg.sampling.box},
        {"seed", cfg.sampling.seed},
        {"workers", cfg.sampling.workers},
        {"tolerances",
         {{"geometric", t.geometric},
          {"norm", t.norm},
          {"solver", t.solver},
          {"strict_margin", t.strict_margin}}}}},
  };
}

std::string serialize_config(const TilingConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

Space make_space(const SpaceSpec& spec) {
  if (spec.family == "lp") return Space::lp(spec.dim, spec.p);
  if (spec.family == "polytope") return Space::polytope(spec.dim, spec.functionals);
  throw Error(ErrorCode::Config, "unknown space family " + spec.family);
}

TemplateConstants make_constants(const TilingConfig& cfg) {
  TemplateConstants c = make_template(cfg.variant, cfg.a, cfg.b);
  if (cfg.r) c.r = *cfg.r;
  if (cfg.delta) c.delta = *cfg.delta;
  if (!(c.r > 0.0) || !(c.delta > 0.0)) throw Error(ErrorCode::Config, "r and delta must be positive");
  return c;
}

}  // namespace starlike
