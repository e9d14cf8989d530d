// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#include "starlike/normed_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "starlike/error.hpp"
#include "starlike/sampling.hpp"

namespace starlike {

double act(std::span<const double> f, std::span<const double> x) {
  double s = 0.0;
  const std::size_t n = std::min(f.size(), x.size());
  for (std::size_t i = 0; i < n; ++i) s += f[i] * x[i];
  return s;
}

Vector zero_leading(std::span<const double> x, std::size_t k) {
  Vector v(x.begin(), x.end());
  for (std::size_t i = 0; i < k && i < v.size(); ++i) v[i] = 0.0;
  return v;
}

namespace {

double lp_norm(std::span<const double> x, double p) {
  double m = 0.0;
  for (double c : x) m = std::max(m, std::abs(c));
  if (m == 0.0 || std::isinf(p)) return m;
  if (p == 1.0) {
    double s = 0.0;
    for (double c : x) s += std::abs(c);
    return s;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (double c : x) s += (c / m) * (c / m);
    return m * std::sqrt(s);
  }
  for (double c : x) s += std::pow(std::abs(c) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double dual_exponent(double p) {
  if (p == 1.0) return INFINITY;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

Functional lp_duality_map(std::span<const double> x, double p) {
  Functional f(x.size(), 0.0);
  if (p == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      f[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
    }
    return f;
  }
  if (std::isinf(p)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      if (std::abs(x[i]) > std::abs(x[best])) best = i;
    }
    f[best] = x[best] >= 0 ? 1.0 : -1.0;
    return f;
  }
  const double n = lp_norm(x, p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::abs(x[i]) / n;
    const double mag = p == 2.0 ? u : std::pow(u, p - 1.0);
    f[i] = x[i] >= 0 ? mag : -mag;
  }
  return f;
}

// Solves A x = b in place (partial pivoting). Returns false when singular.
bool solve_linear(std::vector<double> a, std::vector<double> b, std::size_t n, Vector& x) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < 1e-12) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / a[col * n + col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return true;
}

// max g(x) over the vertices of {x : |f_i(x)| <= 1}.
double polytope_dual_norm(const std::vector<Functional>& rows, std::size_t dim,
                          std::span<const double> g) {
  double best = 0.0;
  std::vector<std::size_t> pick(dim);
  std::iota(pick.begin(), pick.end(), 0);
  const std::size_t n = rows.size();
  Vector x;
  for (;;) {
    std::vector<double> a(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) a[r * dim + c] = rows[pick[r]][c];
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      std::vector<double> b(dim);
      for (std::size_t r = 0; r < dim; ++r) b[r] = (mask >> r) & 1 ? -1.0 : 1.0;
      if (!solve_linear(a, b, dim, x)) break;
      bool feasible = true;
      for (const auto& row : rows) {
        if (std::abs(act(row, x)) > 1.0 + 1e-9) {
          feasible = false;
          break;
        }
      }
      if (feasible) best = std::max(best, std::abs(act(g, x)));
    }
    // next combination
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == n - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

// Minimizes a convex function of one variable on [lo, hi].
template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

Space Space::lp(std::size_t dim, double p) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "l_p requires p >= 1");
  Space s;
  s.dim_ = dim;
  s.family_ = NormFamily::Lp;
  s.p_ = p;
  return s;
}

Space Space::polytope(std::size_t dim, std::vector<Functional> rows) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (rows.size() < dim) throw Error(ErrorCode::InvalidArgument, "polytope norm needs at least dim functionals");
  for (const auto& r : rows) {
    if (r.size() != dim) throw Error(ErrorCode::InvalidArgument, "functional length differs from dimension");
  }
  auto shared_rows = std::make_shared<const std::vector<Functional>>(rows);
  NormFn norm = [shared_rows](std::span<const double> x) {
    double m = 0.0;
    for (const auto& r : *shared_rows) m = std::max(m, std::abs(act(r, x)));
    return m;
  };
  SubgradientFn sub = [shared_rows](std::span<const double> x) {
    std::size_t best = 0;
    double m = -1.0;
    for (std::size_t i = 0; i < shared_rows->size(); ++i) {
      const double v = std::abs(act((*shared_rows)[i], x));
      if (v > m) {
        m = v;
        best = i;
      }
    }
    Functional g = (*shared_rows)[best];
    if (act(g, x) < 0) {
      for (auto& c : g) c = -c;
    }
    return g;
  };
  Space s = custom(dim, std::move(norm), std::move(sub));
  s.rows_ = std::move(rows);
  for (std::size_t i = 0; i < dim; ++i) {
    Vector e(dim, 0.0);
    e[i] = 1.0;
    if (std::abs(s.norm(e) - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "polytope norm must satisfy ||e_i|| = 1");
    }
    if (std::abs(s.dual_norm(e) - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "polytope norm must satisfy ||e*_i|| = 1");
    }
  }
  return s;
}

Space Space::custom(std::size_t dim, NormFn norm, SubgradientFn subgradient) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Space s;
  s.dim_ = dim;
  s.family_ = NormFamily::Custom;
  s.p_ = 0.0;
  s.norm_fn_ = std::make_shared<const NormFn>(std::move(norm));
  s.subgradient_fn_ = std::make_shared<const SubgradientFn>(std::move(subgradient));
  return s;
}

double Space::norm(std::span<const double> x) const {
  if (is_lp()) return lp_norm(x, p_);
  return (*norm_fn_)(x);
}

double Space::dual_norm(std::span<const double> f) const {
  if (is_lp()) return lp_norm(f, dual_exponent(p_));
  if (is_polytope()) return polytope_dual_norm(rows_, dim_, f);
  Rng rng(0x5eed);
  double best = 0.0;
  for (int t = 0; t < 20000; ++t) {
    Vector x(dim_);
    for (auto& c : x) c = rng.normal();
    const double n = norm(x);
    if (n > 0) best = std::max(best, std::abs(act(f, x)) / n);
  }
  return best;
}

Functional Space::norming_functional(std::span<const double> x) const {
  const double n = norm(x);
  if (!(n > 0.0)) throw Error(ErrorCode::ZeroVector, "norming functional of the zero vector");
  if (is_lp()) return lp_duality_map(x, p_);
  Functional g = (*subgradient_fn_)(x);
  const double gx = act(g, x);
  if (!(std::abs(gx) > 0.0)) throw Error(ErrorCode::ConstructionFailed, "subgradient oracle returned a functional vanishing at x");
  for (auto& c : g) c *= n / gx;
  return g;
}

QuotientSolution Space::quotient_solve(std::span<const double> x, std::size_t k) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from dimension");
  if (k > dim_) throw Error(ErrorCode::InvalidArgument, "level exceeds dimension");
  QuotientSolution sol;
  sol.lambda.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
  if (k == dim_) {
    sol.value = 0.0;
    return sol;
  }
  Vector y = zero_leading(x, k);
  if (k == 0 || is_lp()) {
    sol.value = norm(y);
    return sol;
  }

  // Coordinate descent from lambda_i = e*_i(x). The optimum satisfies
  // |e*_i(y)| <= ||y|| <= f0, which bounds every line search.
  const double f0 = norm(y);
  if (f0 == 0.0) return sol;
  auto& lambda = sol.lambda;
  const auto value_at = [&](const Vector& lam) {
    Vector z(x.begin(), x.end());
    for (std::size_t i = 0; i < k; ++i) z[i] -= lam[i];
    return norm(z);
  };

  std::vector<Vector> directions;
  for (std::size_t i = 0; i < k; ++i) {
    Vector d(k, 0.0);
    d[i] = 1.0;
    directions.push_back(d);
  }
  // Diagonal moves get coordinate descent off ridges of polyhedral norms.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (double s : {1.0, -1.0}) {
        Vector d(k, 0.0);
        d[i] = 1.0;
        d[j] = s;
        directions.push_back(d);
      }
    }
  }

  double current = f0;
  for (;;) {
    const double sweep_start = current;
    for (const auto& d : directions) {
      if (sol.iterations >= iteration_cap_) {
        sol.converged = false;
        sol.value = current;
        return sol;
      }
      ++sol.iterations;
      double lo = -INFINITY, hi = INFINITY;
      for (std::size_t i = 0; i < k; ++i) {
        if (d[i] == 0.0) continue;
        const double a = (x[i] - f0 - lambda[i]) / d[i];
        const double b = (x[i] + f0 - lambda[i]) / d[i];
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
      }
      if (!(hi > lo)) continue;
      const auto along = [&](double t) {
        Vector lam = lambda;
        for (std::size_t i = 0; i < k; ++i) lam[i] += t * d[i];
        return value_at(lam);
      };
      const double t = golden_section(along, lo, hi, 1e-3 * solver_tol_);
      const double v = along(t);
      if (v < current) {
        for (std::size_t i = 0; i < k; ++i) lambda[i] += t * d[i];
        current = v;
      }
    }
    if (sweep_start - current <= solver_tol_) break;
  }
  sol.value = current;
  return sol;
}

double Space::quotient_norm(std::span<const double> x, std::size_t k) const {
  // 1-unconditional norms: the quotient norm is the norm of the tail.
  if (is_lp() && x.size() == dim_ && k <= dim_) return lp_norm(x.subspan(k), p_);
  return quotient_solve(x, k).value;
}

Functional Space::quotient_norming_functional(std::span<const double> x, std::size_t k) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from dimension");
  if (is_lp()) {
    const Vector y = zero_leading(x, k);
    return norming_functional(y);
  }
  const QuotientSolution sol = quotient_solve(x, k);
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < k; ++i) y[i] -= sol.lambda[i];
  Functional g = norming_functional(y);
  // Identify (X/V_k)* with the annihilator of V_k.
  for (std::size_t i = 0; i < k; ++i) g[i] = 0.0;
  const double gx = act(g, x);
  if (!(std::abs(gx) > 0.0)) throw Error(ErrorCode::ZeroVector, "quotient class is zero");
  for (auto& c : g) c *= sol.value / gx;
  return g;
}

std::string Space::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (is_lp()) {
    os << "lp(dim=" << dim_ << ",p=";
    if (std::isinf(p_)) os << "inf";
    else os << p_;
    os << ")";
  } else if (is_polytope()) {
    os << "polytope(dim=" << dim_ << ",rows=[";
    for (const auto& r : rows_) {
      os << "[";
      for (double c : r) os << c << ",";
      os << "]";
    }
    os << "])";
  } else {
    os << "custom(dim=" << dim_ << ")";
  }
  return os.str();
}

}  // namespace starlike
