// Copyright 2026 The starlike Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STARLIKE_NORMED_SPACE_HPP
#define STARLIKE_NORMED_SPACE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace starlike {

/// Coordinates in the basis {e_i}. Classes of X/V_k are represented by any
/// vector together with the level k (coordinates 1..k are quotiented out).
using Vector = std::vector<double>;
/// Coefficients of a linear functional in the biorthogonal basis {e*_i}.
using Functional = std::vector<double>;

enum class NormFamily { Lp, Custom };

double act(std::span<const double> f, std::span<const double> x);

/// Result of the quotient minimization dist(x, V_k) = min over lambda of
/// ||x - sum lambda_i e_i||.
struct QuotientSolution {
  double value = 0.0;
  Vector lambda;
  std::size_t iterations = 0;
  bool converged = true;
};

/// An M-dimensional normed space whose standard coordinate system is a
/// normalized biorthogonal (Auerbach) basis.
class Space {
 public:
  using NormFn = std::function<double(std::span<const double>)>;
  using SubgradientFn = std::function<Functional(std::span<const double>)>;

  /// l_p^M; pass p = INFINITY for the max norm.
  static Space lp(std::size_t dim, double p);
  /// Polytope norm ||x|| = max_i |f_i(x)|. The rows must separate points and
  /// keep the coordinate basis normalized.
  static Space polytope(std::size_t dim, std::vector<Functional> rows);
  /// Programmatic norm with a subgradient oracle. Both must be reentrant.
  static Space custom(std::size_t dim, NormFn norm, SubgradientFn subgradient);

  std::size_t dim() const { return dim_; }
  NormFamily family() const { return family_; }
  bool is_lp() const { return family_ == NormFamily::Lp; }
  bool is_polytope() const { return !rows_.empty(); }
  double p() const { return p_; }
  const std::vector<Functional>& rows() const { return rows_; }

  double norm(std::span<const double> x) const;

  /// Dual norm of a functional. Exact for l_p and polytope norms (vertex
  /// enumeration of the unit ball); a sampled lower estimate for other
  /// custom norms.
  double dual_norm(std::span<const double> f) const;

  /// f with dual norm 1 and f(x) = ||x||. Throws ZeroVector.
  Functional norming_functional(std::span<const double> x) const;

  QuotientSolution quotient_solve(std::span<const double> x, std::size_t k) const;
  double quotient_norm(std::span<const double> x, std::size_t k) const;

  /// Norming functional of the class of x in X/V_k, realized on X and
  /// vanishing on V_k. Throws ZeroVector if the class is zero.
  Functional quotient_norming_functional(std::span<const double> x, std::size_t k) const;

  /// Stable textual description, used for cache keys and reports.
  std::string describe() const;

  double solver_tolerance() const { return solver_tol_; }
  void set_solver_tolerance(double tol) { solver_tol_ = tol; }
  std::size_t iteration_cap() const { return iteration_cap_; }
  void set_iteration_cap(std::size_t cap) { iteration_cap_ = cap; }

 private:
  Space() = default;

  std::size_t dim_ = 0;
  NormFamily family_ = NormFamily::Lp;
  double p_ = 2.0;
  std::vector<Functional> rows_;
  std::shared_ptr<const NormFn> norm_fn_;
  std::shared_ptr<const SubgradientFn> subgradient_fn_;
  double solver_tol_ = 1e-8;
  std::size_t iteration_cap_ = 100000;
};

/// Tail of x: coordinates 1..k set to zero. For l_p norms this is the
/// norm-minimal representative of the class in X/V_k.
Vector zero_leading(std::span<const double> x, std::size_t k);

}  // namespace starlike

#endif  // STARLIKE_NORMED_SPACE_HPP
