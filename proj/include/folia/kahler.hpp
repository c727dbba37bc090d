#pragma once

// Wirtinger derivatives, the dbar-Laplacian of a conformal metric on the
// disc, and the identity  lap_dbar(|f|^2) = -(2/lambda) |df/dz|^2  for
// holomorphic f, all realized by central finite differences.
//
// Conventions fixed here:  lap_dbar h = -(2/lambda) d2h/dz dzbar, which is
// -1/2 of the Laplace-Beltrami operator, and ||df||^2 = (2/lambda) |df/dz|^2.

#include <cmath>
#include <complex>
#include <functional>
#include <utility>

#include "folia/errors.hpp"
#include "folia/moebius.hpp"

namespace folia {

template <class Real = double>
struct ConformalMetric {
  std::function<Real(const Cplx<Real>&)> lambda;

  Real lambda_at(const Cplx<Real>& z) const {
    const Real l = lambda(z);
    if (!(l > Real(0)))
      raise(ErrorCode::ConstructionFailure, "conformal factor must be positive");
    return l;
  }
};

// curvature -1 metric 4 |dz|^2 / (1 - |z|^2)^2
template <class Real = double>
inline ConformalMetric<Real> poincare_metric() {
  return {[](const Cplx<Real>& z) {
    const Real d = Real(1) - std::norm(z);
    return Real(4) / (d * d);
  }};
}

template <class Real>
inline void require_step(const Cplx<Real>& z, Real step) {
  if (!(step >= Real(1e-8) && step <= Real(1e-2)))
    raise(ErrorCode::StepOutOfRange,
          "step " + std::to_string(step) + " outside [1e-8, 1e-2]");
  if (!(std::abs(z) < Real(1) - Real(2) * step))
    raise(ErrorCode::StepOutOfRange, "point too close to the boundary circle");
}

// central differences for (dh/dz, dh/dzbar)
template <class Real, class F>
inline std::pair<Cplx<Real>, Cplx<Real>> wirtinger_derivs(F&& h,
                                                          const Cplx<Real>& z,
                                                          Real step) {
  require_step(z, step);
  const Cplx<Real> i(0, 1);
  const Cplx<Real> dx = h(z + step) - h(z - step);
  const Cplx<Real> dy = h(z + i * step) - h(z - i * step);
  const Real s4 = Real(4) * step;
  return {(dx - i * dy) / s4, (dx + i * dy) / s4};
}

// lap_dbar h = -(2/lambda) d2h/dz dzbar via the five-point stencil
// (d2h/dz dzbar = (h_xx + h_yy)/4)
template <class Real, class F>
inline Cplx<Real> laplacian_dbar(F&& h, const Cplx<Real>& z,
                                 const ConformalMetric<Real>& metric,
                                 Real step) {
  require_step(z, step);
  const Cplx<Real> i(0, 1);
  const Cplx<Real> stencil = h(z + step) + h(z - step) + h(z + i * step) +
                             h(z - i * step) - Real(4) * h(z);
  const Cplx<Real> mixed = stencil / (Real(4) * step * step);
  return -(Real(2) / metric.lambda_at(z)) * mixed;
}

// |lap_dbar(|f|^2) + (2/lambda) |df/dz|^2| at z, for holomorphic f.  The
// precheck rejects an f whose dbar-residual at z is not already small, since
// the identity only holds on holomorphic inputs.
template <class Real, class F>
inline Real identity_residual(F&& f, const Cplx<Real>& z,
                              const ConformalMetric<Real>& metric, Real step,
                              Real dbar_precheck = Real(1e-8)) {
  // the precheck runs at 1e-4 regardless of the working step: the 1e-8 bound
  // belongs to that scale (the dbar truncation error is O(step^2))
  const auto [pre_df, dbarf] =
      wirtinger_derivs<Real>(f, z, std::min(step, Real(1e-4)));
  (void)pre_df;
  const auto [df, dbar_unused] = wirtinger_derivs<Real>(f, z, step);
  (void)dbar_unused;
  if (!(std::abs(dbarf) < dbar_precheck))
    raise(ErrorCode::ConstructionFailure,
          "identity_residual needs a holomorphic input (dbar residual " +
              std::to_string(std::abs(dbarf)) + ")");
  const auto fsq = [&f](const Cplx<Real>& w) {
    return Cplx<Real>(std::norm(f(w)), Real(0));
  };
  const Cplx<Real> lhs = laplacian_dbar<Real>(fsq, z, metric, step);
  const Real rhs = (Real(2) / metric.lambda_at(z)) * std::norm(df);
  return std::abs(lhs + rhs);
}

// divergence of a vector field X = (X1, X2) with respect to the metric
// volume: div X = (1/lambda) (d(lambda X1)/dx + d(lambda X2)/dy)
template <class Real, class FX>
inline Real divergence(FX&& X, const Cplx<Real>& z,
                       const ConformalMetric<Real>& metric, Real step) {
  require_step(z, step);
  const auto weighted = [&](const Cplx<Real>& w) {
    const auto [x1, x2] = X(w);
    return std::pair<Real, Real>{metric.lambda_at(w) * x1,
                                 metric.lambda_at(w) * x2};
  };
  const Cplx<Real> i(0, 1);
  const Real ddx = (weighted(z + step).first - weighted(z - step).first) /
                   (Real(2) * step);
  const Real ddy =
      (weighted(z + i * step).second - weighted(z - i * step).second) /
      (Real(2) * step);
  return (ddx + ddy) / metric.lambda_at(z);
}

}  // namespace folia
