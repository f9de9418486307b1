#pragma once

#include <string>
#include <string_view>

namespace rdl {

enum class PenaltyKind { identity, lq, log, capped_l1, scad, mcp };

/// A non-decreasing concave function g on the positive reals, used to
/// down-weight samples with large reconstruction residuals. The per-sample
/// loss on a squared residual v is g(sqrt(v)), and the IRLS weight of a
/// residual norm r is g'(r) / (2r), so penalties whose slope flattens for
/// large arguments make far-away samples nearly irrelevant to the fit.
///
/// Supported families:
///   identity        g(u) = u
///   lq (0 < q <= 1) g(u) = u^q
///   log (eps > 0)   g(u) = log(eps + u)
///   capped_l1       g(u) = min(u, eps)
///   scad            Fan-Li form: g'(u) = lambda on [0, lambda],
///                   (a*lambda - u)/(a - 1) on (lambda, a*lambda], 0 beyond;
///                   g is its integral with g(0) = 0, a > 2
///   mcp             g(u) = lambda*u - u^2/(2*gamma) up to gamma*lambda,
///                   then constant gamma*lambda^2/2, gamma > 1
class ConcavePenalty {
 public:
  static ConcavePenalty identity();
  static ConcavePenalty lq(double q);
  static ConcavePenalty log(double eps);
  static ConcavePenalty capped_l1(double eps);
  static ConcavePenalty scad(double lambda, double a);
  static ConcavePenalty mcp(double lambda, double gamma);

  PenaltyKind kind() const { return kind_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  /// g(u) for u >= 0.
  double value(double u) const;

  /// A nonnegative element of the superdifferential of g at u > 0. At the
  /// capped-l1 kink the right-sided slope is returned (0 at u = eps), which
  /// maximally down-weights borderline samples.
  double supergradient(double u) const;

  /// Composed loss F(v) = g(sqrt(v)) on a squared residual v >= 0.
  double loss(double v) const;

  /// IRLS weight of a residual norm r >= 0:
  ///   g'(max(r, r_floor)) / (2 * max(r, r_floor)), clamped to w_max.
  /// The floor guards the division for perfectly reconstructed samples.
  double weight(double r, double r_floor = 1e-8, double w_max = 1e8) const;

  /// Serialized form, e.g. "log:eps=1", "scad:lambda=1,a=3.7", "identity".
  std::string to_string() const;

  friend bool operator==(const ConcavePenalty&, const ConcavePenalty&) = default;

 private:
  ConcavePenalty(PenaltyKind kind, double p1, double p2)
      : kind_(kind), p1_(p1), p2_(p2) {}

  PenaltyKind kind_ = PenaltyKind::identity;
  double p1_ = 0.0;
  double p2_ = 0.0;
};

/// Parses the CLI/config penalty syntax accepted by to_string():
/// identity | lq:q=V | log:eps=V | capped:eps=V | scad:lambda=V,a=V |
/// mcp:lambda=V,gamma=V. Throws std::invalid_argument on malformed input.
ConcavePenalty parse_penalty(std::string_view text);

}  // namespace rdl
