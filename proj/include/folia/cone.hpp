#pragma once

// The invariant cone |z1|^2 - |z2|^2 = t^2 in RP^4 with its SU(1,1) action
//
//     g.[z1, z2, t] = [alpha z1 + beta conj(z2), alpha z2 + beta conj(z1), t]
//
// and the function
//
//     f(z, [z1, z2, t]) = (conj(z1) z - z2) / (-conj(z2) z + z1),
//
// which is invariant: f(g.z, g.p) = f(z, p).  For a normalized cone point
// with t != 0, f(., p) is t^2 times a disc automorphism, hence maps the disc
// into itself; for t = 0 it collapses to a unimodular constant.

#include <cmath>
#include <complex>
#include <cstdlib>

#include "folia/errors.hpp"
#include "folia/moebius.hpp"

namespace folia {

template <class Real = double>
struct ConePoint {
  Cplx<Real> z1{Real(1), Real(0)};
  Cplx<Real> z2{Real(0), Real(0)};
  Real t{Real(1)};
};

template <class Real>
inline Real cone_constraint_violation(const ConePoint<Real>& p) {
  return std::abs(std::norm(p.z1) - std::norm(p.z2) - p.t * p.t);
}

// Scale to the unit sphere of C x C x R and fix the projective sign: the
// first coordinate of (t, Re z1, Im z1, Re z2, Im z2) that exceeds the sign
// tolerance is made positive.  This picks one of the two representatives of
// a point of RP^4 deterministically.
template <class Real>
inline ConePoint<Real> normalize(const ConePoint<Real>& p,
                                 Real sign_tol = Real(1e-14)) {
  const Real n =
      std::sqrt(std::norm(p.z1) + std::norm(p.z2) + p.t * p.t);
  if (n <= Real(0)) raise(ErrorCode::DegenerateFiber, "zero cone vector");
  ConePoint<Real> q{p.z1 / n, p.z2 / n, p.t / n};
  const Real leads[5] = {q.t, q.z1.real(), q.z1.imag(), q.z2.real(),
                         q.z2.imag()};
  for (Real lead : leads) {
    if (std::abs(lead) > sign_tol) {
      if (lead < Real(0)) {
        q.z1 = -q.z1;
        q.z2 = -q.z2;
        q.t = -q.t;
      }
      break;
    }
  }
  return q;
}

template <class Real>
inline ConePoint<Real> cone_point(Cplx<Real> z1, Cplx<Real> z2, Real t,
                                  Real cone_tol = Real(1e-12)) {
  const ConePoint<Real> p = normalize(ConePoint<Real>{z1, z2, t});
  const Real v = cone_constraint_violation(p);
  if (v >= cone_tol) {
    raise(ErrorCode::DegenerateFiber,
          "cone constraint violated by " + std::to_string(v));
  }
  return p;
}

// Projective distance: min over the +/- representative ambiguity.
template <class Real>
inline Real cone_distance(const ConePoint<Real>& p, const ConePoint<Real>& q) {
  const auto d = [](const ConePoint<Real>& a, const ConePoint<Real>& b) {
    return std::max({std::abs(a.z1 - b.z1), std::abs(a.z2 - b.z2),
                     std::abs(a.t - b.t)});
  };
  const ConePoint<Real> qm{-q.z1, -q.z2, -q.t};
  return std::min(d(p, q), d(p, qm));
}

template <class Real>
inline ConePoint<Real> cone_act(const SU11Element<Real>& g,
                                const ConePoint<Real>& p) {
  return normalize(ConePoint<Real>{
      g.alpha * p.z1 + g.beta * std::conj(p.z2),
      g.alpha * p.z2 + g.beta * std::conj(p.z1), p.t});
}

template <class Real>
inline Cplx<Real> f_eval(const DiscPoint<Real>& z, const ConePoint<Real>& p) {
  if (std::abs(p.z1) == Real(0) && std::abs(p.z2) == Real(0)) {
    raise(ErrorCode::DegenerateFiber, "f is undefined at z1 = z2 = 0");
  }
  // for a normalized point |z1| > |z2| whenever t != 0, so the denominator
  // is bounded away from zero on the disc
  return (std::conj(p.z1) * z - p.z2) / (-std::conj(p.z2) * z + p.z1);
}

template <class Real>
inline Real invariance_residual(const SU11Element<Real>& g,
                                const DiscPoint<Real>& z,
                                const ConePoint<Real>& p) {
  return std::abs(f_eval(apply_disc(g, z), cone_act(g, p)) - f_eval(z, p));
}

// Taylor expansion of f(., p) about 0, for a normalized cone point:
//
//     c_0 = -z2/z1,   c_n = (t^2/z1^2) (conj(z2)/z1)^(n-1)   (n >= 1),
//
// from the partial-fraction form f(z) = conj(z1)/(-conj(z2)) + (t^2 / ...)
// of a rational map with the single pole z1/conj(z2) outside the closed
// disc.  Used as the independent oracle for the Taylor-fit machinery.
template <class Real>
inline void cone_taylor(const ConePoint<Real>& p, int degree,
                        Cplx<Real>* out) {
  if (std::abs(p.z1) == Real(0)) {
    raise(ErrorCode::DegenerateFiber, "cone_taylor needs |z1| > 0");
  }
  out[0] = -p.z2 / p.z1;
  const Cplx<Real> lead = Cplx<Real>(p.t * p.t) / (p.z1 * p.z1);
  const Cplx<Real> ratio = std::conj(p.z2) / p.z1;
  Cplx<Real> c = lead;
  for (int n = 1; n <= degree; ++n) {
    out[n] = c;
    c *= ratio;
  }
}

}  // namespace folia
