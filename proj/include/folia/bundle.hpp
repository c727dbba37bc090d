#pragma once

// The foliated bundle M = (D x X) / Gamma, concretely: a point is a base
// coordinate in the closed fundamental domain plus a fiber point, glued by
// the diagonal identification (z, x) ~ (gamma z, rho(gamma) x).  Holonomy
// transport walks a path in covering coordinates, and every time the tracked
// point leaves the domain through a side it applies that side's pairing
// letter to both the chart and (through fiber_action) the fiber.  A path's
// effect depends only on its endpoints because the cover is simply
// connected — the flatness tested by the path-independence properties.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "folia/cone.hpp"
#include "folia/errors.hpp"
#include "folia/fuchsian.hpp"
#include "folia/holspace.hpp"
#include "folia/moebius.hpp"
#include "folia/projdyn.hpp"

namespace folia {

template <class Real = double>
using FiberPoint =
    std::variant<ProjPoint<Real>, ConePoint<Real>, HoloFunction<Real>>;

template <class Real>
inline Real fiber_distance(const FiberPoint<Real>& a,
                           const FiberPoint<Real>& b) {
  if (a.index() != b.index())
    raise(ErrorCode::DimensionMismatch, "fibers of different kind");
  if (std::holds_alternative<ProjPoint<Real>>(a)) {
    return proj_distance(std::get<ProjPoint<Real>>(a),
                         std::get<ProjPoint<Real>>(b));
  }
  if (std::holds_alternative<ConePoint<Real>>(a)) {
    return cone_distance(std::get<ConePoint<Real>>(a),
                         std::get<ConePoint<Real>>(b));
  }
  const auto& fa = std::get<HoloFunction<Real>>(a);
  const auto& fb = std::get<HoloFunction<Real>>(b);
  if (fa.taylor.size() != fb.taylor.size())
    raise(ErrorCode::DimensionMismatch, "Taylor truncations of different degree");
  return (fa.taylor - fb.taylor).cwiseAbs().maxCoeff();
}

template <class Real = double>
struct LeafPoint {
  DiscPoint<Real> base;
  FiberPoint<Real> fiber;
};

template <class Real>
inline LeafPoint<Real> leaf_point(const FuchsianRepresentation<Real>& rep,
                                  DiscPoint<Real> base, FiberPoint<Real> fiber,
                                  Real tol = Real(1e-10)) {
  Real v;
  max_violation_side(rep, base, &v);
  if (!(v <= tol)) {
    raise(ErrorCode::ConstructionFailure,
          "base point violates the fundamental domain by " + std::to_string(v));
  }
  return {base, std::move(fiber)};
}

// The fiber transformation applied when the chart moves by a pairing letter.
template <class Real = double>
using FiberAction =
    std::function<FiberPoint<Real>(const Letter&, const FiberPoint<Real>&)>;

// rho = the identity representation Gamma -> SU(1,1), acting on each fiber
// kind its natural way: Moebius on CP^1, the cone action on C, and
// precomposition on Hol(D, Dbar).
template <class Real>
inline FiberAction<Real> natural_fiber_action(
    const FuchsianRepresentation<Real>& rep, Real r_fit = Real(0.85),
    int fit_samples = 512, Real tail_tol = Real(1e-8),
    Real sup_tol = Real(1e-6)) {
  return [&rep, r_fit, fit_samples, tail_tol, sup_tol](
             const Letter& l, const FiberPoint<Real>& x) -> FiberPoint<Real> {
    const SU11Element<Real> g = evaluate_letter(rep, l);
    if (std::holds_alternative<ProjPoint<Real>>(x))
      return act(to_matrix(g), std::get<ProjPoint<Real>>(x));
    if (std::holds_alternative<ConePoint<Real>>(x))
      return cone_act(g, std::get<ConePoint<Real>>(x));
    return precompose_action(g, std::get<HoloFunction<Real>>(x), r_fit,
                             fit_samples, tail_tol, sup_tol);
  };
}

// rho given by an arbitrary linear representation on projective fibers
template <class Real>
inline FiberAction<Real> linear_fiber_action(const LinearRep<Real>& rho) {
  return [&rho](const Letter& l, const FiberPoint<Real>& x) -> FiberPoint<Real> {
    if (!std::holds_alternative<ProjPoint<Real>>(x))
      raise(ErrorCode::DimensionMismatch,
            "linear fiber action needs projective fibers");
    Word w;
    w.letters = {l};
    return act(evaluate_word(rho, w), std::get<ProjPoint<Real>>(x));
  };
}

template <class Real = double>
struct TransportResult {
  LeafPoint<Real> leaf;
  Word chart;                    // product of pairing letters, newest first
  SU11Element<Real> chart_el;    // evaluate_word(chart)
  int crossings = 0;
};

// Transport along the polyline through the given waypoints (covering
// coordinates).  Straight Euclidean segments; each crossing is refined by
// bisection to 1e-12 before the pairing letter is applied.
template <class Real>
inline TransportResult<Real> transport_polyline(
    const FuchsianRepresentation<Real>& rep, const FiberAction<Real>& action,
    const LeafPoint<Real>& lp, const std::vector<DiscPoint<Real>>& waypoints,
    Real tol = Real(1e-12), int max_steps = 10000) {
  TransportResult<Real> st;
  st.leaf = lp;
  st.chart_el = identity<Real>();

  const auto violated = [&](const DiscPoint<Real>& z, Real* v) {
    return max_violation_side(rep, apply_disc(st.chart_el, z), v);
  };
  const auto cross = [&](int side) {
    const Letter l = side_pairing_letter(side);
    st.chart_el = compose(evaluate_letter(rep, l), st.chart_el);
    st.chart.letters.insert(st.chart.letters.begin(), l);
    st.chart = reduce(st.chart);
    st.leaf.fiber = action(l, st.leaf.fiber);
    if (++st.crossings > max_steps)
      raise(ErrorCode::PathTooLong,
            "more than " + std::to_string(max_steps) + " side crossings");
  };
  // settle the tracked point at parameter s of segment a->b, bisecting back
  // toward the last interior parameter s_in for each crossing; returns s as
  // the new interior parameter
  const auto settle = [&](const DiscPoint<Real>& a, const DiscPoint<Real>& b,
                          Real s_in, Real s) {
    Real v;
    violated(a + s * (b - a), &v);
    while (v > tol) {
      Real lo = s_in, hi = s;
      while (hi - lo > Real(1e-12)) {
        const Real mid = (lo + hi) / Real(2);
        Real vm;
        violated(a + mid * (b - a), &vm);
        if (vm > tol)
          hi = mid;
        else
          lo = mid;
      }
      Real vh;
      cross(violated(a + hi * (b - a), &vh));
      s_in = hi;  // just inside the paired side in the new chart
      violated(a + s * (b - a), &v);
    }
    return s;
  };

  DiscPoint<Real> prev = lp.base;
  for (const DiscPoint<Real>& next : waypoints) {
    require_disc(next, Real(1e-6));
    const Real len = std::abs(next - prev);
    const int substeps = std::max(2, int(len / Real(0.004)) + 1);
    Real s_in = Real(0);
    for (int i = 1; i <= substeps; ++i) {
      const Real s = Real(i) / Real(substeps);
      s_in = settle(prev, next, s_in, s);
    }
    prev = next;
  }
  st.leaf.base = apply_disc(st.chart_el, prev);
  return st;
}

template <class Real>
inline TransportResult<Real> holonomy_transport(
    const FuchsianRepresentation<Real>& rep, const FiberAction<Real>& action,
    const LeafPoint<Real>& lp, const DiscPoint<Real>& target,
    Real tol = Real(1e-12), int max_steps = 10000) {
  return transport_polyline(rep, action, lp, {target}, tol, max_steps);
}

// A function on the bundle: an evaluator plus the contract that it descends,
// i.e. F(gamma z, rho(gamma) x) = F(z, x) within 1e-9 on samples.
template <class Real = double>
struct LeafwiseFunction {
  std::function<Cplx<Real>(const DiscPoint<Real>&, const FiberPoint<Real>&)>
      eval;
};

// |dbar F| at the leaf point by central differences in the base variable,
// fiber frozen
template <class Real>
inline Real dbar_residual(const LeafwiseFunction<Real>& F,
                          const LeafPoint<Real>& lp, Real h) {
  if (!(h >= Real(1e-8) && h <= Real(1e-2)))
    raise(ErrorCode::StepOutOfRange,
          "step " + std::to_string(h) + " outside [1e-8, 1e-2]");
  if (!(std::abs(lp.base) < Real(1) - Real(2) * h))
    raise(ErrorCode::StepOutOfRange, "base too close to the boundary circle");
  const Cplx<Real> i(0, 1);
  const Cplx<Real> z = lp.base;
  const Cplx<Real> num = (F.eval(z + h, lp.fiber) - F.eval(z - h, lp.fiber)) +
                         i * (F.eval(z + i * h, lp.fiber) -
                              F.eval(z - i * h, lp.fiber));
  return std::abs(num / (Real(4) * h));
}

template <class Real = double>
struct ConstancyResult {
  bool constant = true;
  DiscPoint<Real> z1{}, z2{};  // witness base targets when not constant
  Real spread{};               // max pairwise value distance
};

// Evaluate F along the leaf through lp: transport to seeded random targets
// with |z| <= 0.9 and compare the values.  Constant when the max pairwise
// spread stays below const_tol.
template <class Real>
inline ConstancyResult<Real> leafwise_constancy(
    const LeafwiseFunction<Real>& F, const FuchsianRepresentation<Real>& rep,
    const FiberAction<Real>& action, const LeafPoint<Real>& lp, int samples,
    std::uint64_t seed, Real const_tol = Real(1e-10)) {
  if (samples < 2)
    raise(ErrorCode::ConstructionFailure, "need at least two samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> unit(Real(0), Real(1));

  std::vector<DiscPoint<Real>> targets{lp.base};
  std::vector<Cplx<Real>> values{F.eval(lp.base, lp.fiber)};
  for (int s = 1; s < samples; ++s) {
    const Real r = Real(0.9) * std::sqrt(unit(rng));
    const Real th = Real(2) * detail::pi<Real>() * unit(rng);
    const DiscPoint<Real> target = std::polar(r, th);
    const TransportResult<Real> moved =
        holonomy_transport(rep, action, lp, target);
    targets.push_back(target);
    values.push_back(F.eval(moved.leaf.base, moved.leaf.fiber));
  }

  ConstancyResult<Real> out;
  for (size_t i = 0; i < values.size(); ++i) {
    for (size_t j = i + 1; j < values.size(); ++j) {
      const Real d = std::abs(values[i] - values[j]);
      if (d > out.spread) {
        out.spread = d;
        out.z1 = targets[i];
        out.z2 = targets[j];
      }
    }
  }
  out.constant = out.spread < const_tol;
  return out;
}

// The universal-space correspondence: an equivariant psi_hat : X -> Hol(D,
// Dbar) induces the leafwise function F(z, x) = phi(z, psi_hat(x)).  The
// equivariance convention that makes the cone embedding descend is
//
//     psi_hat(gamma . x) = precompose_action(gamma, psi_hat(x)),
//
// checked here per generator on the given sample fibers, first on Taylor
// coefficients and then on values at seeded points of |z| <= 0.6 (the
// sub-disc where the truncations of all sample functions are faithful).
template <class Real>
inline LeafwiseFunction<Real> equivariant_to_leafwise(
    const std::function<HoloFunction<Real>(const FiberPoint<Real>&)>& psi_hat,
    const FuchsianRepresentation<Real>& rep, const FiberAction<Real>& action,
    const std::vector<FiberPoint<Real>>& sample_fibers, std::uint64_t seed,
    Real coeff_tol = Real(1e-8), Real value_tol = Real(1e-9)) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> unit(Real(0), Real(1));
  for (const FiberPoint<Real>& v : sample_fibers) {
    const HoloFunction<Real> fv = psi_hat(v);
    for (int k = 0; k < rep.presentation.generator_count(); ++k) {
      for (int e : {+1, -1}) {
        const Letter l{k, e};
        const SU11Element<Real> g = evaluate_letter(rep, l);
        const HoloFunction<Real> lhs = psi_hat(action(l, v));
        const HoloFunction<Real> rhs = precompose_action(g, fv);
        const Real dc = (lhs.taylor - rhs.taylor).cwiseAbs().maxCoeff();
        if (!(dc < coeff_tol)) {
          raise(ErrorCode::EquivarianceFailure,
                "coefficient residual " + std::to_string(dc) +
                    " at generator " + std::to_string(k));
        }
        for (int s = 0; s < 8; ++s) {
          const DiscPoint<Real> z = std::polar(
              Real(0.6) * std::sqrt(unit(rng)),
              Real(2) * detail::pi<Real>() * unit(rng));
          const Real dv = std::abs(tautological_phi(apply_disc(g, z), lhs) -
                                   tautological_phi(z, fv));
          if (!(dv < value_tol)) {
            raise(ErrorCode::EquivarianceFailure,
                  "descent residual " + std::to_string(dv) + " at z = (" +
                      std::to_string(z.real()) + ", " +
                      std::to_string(z.imag()) + ")");
          }
        }
      }
    }
  }
  return LeafwiseFunction<Real>{
      [psi_hat](const DiscPoint<Real>& z, const FiberPoint<Real>& x) {
        return tautological_phi(z, psi_hat(x));
      }};
}

}  // namespace folia
