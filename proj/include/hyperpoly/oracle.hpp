#pragma once

// Independent exact-rational linear algebra at numeric parameter points, used
// to cross-check every symbolic result.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hyperpoly/poly.hpp"
#include "hyperpoly/ribbon_graph.hpp"

namespace hyperpoly {

using RatMatrix = std::vector<std::vector<Rat>>;

/// Fraction-free (Bareiss) determinant after clearing row denominators.
Rat det_bareiss(const RatMatrix& m);

/// Gauss-Jordan inverse; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& a);

/// A + sign * B at the point. Throws std::domain_error when some t_l = 0.
RatMatrix a_plus_b_at(const RibbonGraph& g, const Assignment& point, int sign = 1);

/// det(A + B); det_AB_at * prod t_l equals HU at the point.
Rat det_AB_at(const RibbonGraph& g, const Assignment& point);

/// P Sym P^T with Sym = ((A+B)^{-1} + (A-B)^{-1}) / 2. Throws std::domain_error
/// at singular points.
RatMatrix pqinvpt_at(const RibbonGraph& g, const Assignment& point);

/// prod t_l * det(A+B) * pqinvpt_at: the value of the HV^R quadratic form.
RatMatrix hv_real_at(const RibbonGraph& g, const Assignment& point);

/// det(A (x) I4 - B (x) sigma) == det(A+B)^4 over the Gaussian rationals.
bool detq_check(const RibbonGraph& g, const Assignment& point);

/// Seeded sampling of rational parameter points (numerators and denominators <= 97).
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform rational in (0, 1).
  Rat unit_open();
  /// Positive rational num/den with 1 <= num, den <= 97.
  Rat positive();
  /// Rational with |num| <= 97, 1 <= den <= 97.
  Rat any();

  /// t_l in (0,1), s positive, Omega arbitrary (or fixed when given).
  Assignment point(int num_lines, const std::optional<Rat>& omega = std::nullopt);

 private:
  std::mt19937_64 rng_;
  long uniform(long lo, long hi);
};

}  // namespace hyperpoly
