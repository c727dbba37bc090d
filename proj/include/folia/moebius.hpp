#pragma once

// SU(1,1) and its Möbius action on the Poincaré disc.
//
// An element is the matrix [[alpha, beta], [conj(beta), conj(alpha)]] with
// |alpha|^2 - |beta|^2 = 1; it acts on |z| < 1 by
//
//     g.z = (alpha z + beta) / (conj(beta) z + conj(alpha)).
//
// This action convention is the one under which the invariant-cone function
// of cone.hpp transforms equivariantly; see the tests that pin it down.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "folia/errors.hpp"

namespace folia {

template <class Real = double>
using Cplx = std::complex<Real>;

// A point of the open unit disc is just its coordinate; the |z| < 1
// invariant is enforced at API boundaries by require_disc.
template <class Real = double>
using DiscPoint = Cplx<Real>;

template <class Real>
inline void require_disc(const DiscPoint<Real>& z, Real margin = Real(0)) {
  if (!(std::abs(z) < Real(1) - margin)) {
    std::ostringstream os;
    os << "point (" << z.real() << ", " << z.imag()
       << ") is not inside the unit disc (margin " << margin << ")";
    raise(ErrorCode::StepOutOfRange, os.str());
  }
}

template <class Real = double>
struct SU11Element {
  Cplx<Real> alpha{Real(1), Real(0)};
  Cplx<Real> beta{Real(0), Real(0)};
};

// Validating constructor: renormalizes a slightly off-determinant pair when
// the raw determinant is positive, rejects it otherwise.
template <class Real>
inline SU11Element<Real> su11_new(Cplx<Real> alpha, Cplx<Real> beta,
                                  Real det_tol = Real(1e-12)) {
  const Real det = std::norm(alpha) - std::norm(beta);
  if (!(det > det_tol)) {
    std::ostringstream os;
    os << "|alpha|^2 - |beta|^2 = " << det << " cannot be renormalized";
    raise(ErrorCode::NonUnitDeterminant, os.str());
  }
  const Real s = Real(1) / std::sqrt(det);
  return {alpha * s, beta * s};
}

template <class Real>
inline Real determinant(const SU11Element<Real>& g) {
  return std::norm(g.alpha) - std::norm(g.beta);
}

template <class Real>
constexpr SU11Element<Real> identity() {
  return {};
}

template <class Real>
inline SU11Element<Real> compose(const SU11Element<Real>& g,
                                 const SU11Element<Real>& h) {
  return {g.alpha * h.alpha + g.beta * std::conj(h.beta),
          g.alpha * h.beta + g.beta * std::conj(h.alpha)};
}

template <class Real>
inline SU11Element<Real> inverse(const SU11Element<Real>& g) {
  return {std::conj(g.alpha), -g.beta};
}

// trace of the matrix form; always real since the diagonal is (alpha,
// conj(alpha)).
template <class Real>
inline Real trace(const SU11Element<Real>& g) {
  return Real(2) * g.alpha.real();
}

template <class Real>
inline DiscPoint<Real> apply_disc(const SU11Element<Real>& g,
                                  const DiscPoint<Real>& z) {
  return (g.alpha * z + g.beta) / (std::conj(g.beta) * z + std::conj(g.alpha));
}

// Distance of g to the nearer of +identity / -identity, entrywise max.
template <class Real>
inline Real dist_to_center(const SU11Element<Real>& g) {
  const Real dplus = std::max(std::abs(g.alpha - Cplx<Real>(1)), std::abs(g.beta));
  const Real dminus = std::max(std::abs(g.alpha + Cplx<Real>(1)), std::abs(g.beta));
  return std::min(dplus, dminus);
}

// Equality in PSU(1,1): g equals +/- h.
template <class Real>
inline bool equal_mod_center(const SU11Element<Real>& g,
                             const SU11Element<Real>& h,
                             Real tol = Real(1e-10)) {
  return dist_to_center(compose(inverse(h), g)) < tol;
}

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic };

inline const char* name(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity:   return "Identity";
    case IsometryClass::Elliptic:   return "Elliptic";
    case IsometryClass::Parabolic:  return "Parabolic";
    case IsometryClass::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

template <class Real>
inline IsometryClass classify_isometry(const SU11Element<Real>& g,
                                       Real class_tol = Real(1e-9)) {
  if (dist_to_center(g) < class_tol) return IsometryClass::Identity;
  const Real t = std::abs(trace(g));
  if (t < Real(2) - class_tol) return IsometryClass::Elliptic;
  if (t > Real(2) + class_tol) return IsometryClass::Hyperbolic;
  return IsometryClass::Parabolic;
}

// Fixed points of the Möbius action, from the quadratic
// conj(beta) z^2 + (conj(alpha) - alpha) z - beta = 0.
// Hyperbolic: two boundary points, attracting first.  Elliptic: the interior
// point (the second slot holds its exterior mirror 1/conj(z)).  Parabolic:
// one boundary point, duplicated.  Identity: none.
template <class Real>
struct FixedPoints {
  IsometryClass kind;
  int count = 0;
  std::array<Cplx<Real>, 2> z{};
};

template <class Real>
inline FixedPoints<Real> fixed_points(const SU11Element<Real>& g,
                                      Real class_tol = Real(1e-9)) {
  FixedPoints<Real> out;
  out.kind = classify_isometry(g, class_tol);
  if (out.kind == IsometryClass::Identity) return out;

  if (std::abs(g.beta) < class_tol) {
    // pure rotation: fixes the origin (the mirror point is at infinity,
    // reported as such via count = 1)
    out.count = 1;
    out.z[0] = Cplx<Real>(0);
    return out;
  }

  const Cplx<Real> a = std::conj(g.beta);
  const Cplx<Real> b = std::conj(g.alpha) - g.alpha;
  const Cplx<Real> c = -g.beta;
  const Cplx<Real> disc = std::sqrt(b * b - Real(4) * a * c);
  // stable quadratic: pick the larger-magnitude branch for q
  const Cplx<Real> q = (std::abs(b + disc) >= std::abs(b - disc))
                           ? Real(-0.5) * (b + disc)
                           : Real(-0.5) * (b - disc);
  Cplx<Real> z1 = q / a;
  Cplx<Real> z2 = c / q;

  if (out.kind == IsometryClass::Parabolic) {
    out.count = 1;
    out.z[0] = z1 / std::abs(z1);
    out.z[1] = out.z[0];
    return out;
  }
  if (out.kind == IsometryClass::Elliptic) {
    out.count = 1;
    if (std::abs(z1) > Real(1)) std::swap(z1, z2);
    out.z = {z1, z2};
    return out;
  }
  // hyperbolic: order by the derivative |g'(z)| = 1/|conj(beta) z + conj(alpha)|^2
  const auto deriv_mag = [&g](const Cplx<Real>& z) {
    return Real(1) / std::norm(std::conj(g.beta) * z + std::conj(g.alpha));
  };
  if (deriv_mag(z1) > deriv_mag(z2)) std::swap(z1, z2);
  out.count = 2;
  out.z = {z1 / std::abs(z1), z2 / std::abs(z2)};
  return out;
}

// Basic building blocks: rotation about the origin by angle theta, and the
// translation of hyperbolic length l along the real axis (0 moves to
// tanh(l/2)).  axis_translation conjugates the latter onto the axis through
// the origin at angle theta.
template <class Real>
inline SU11Element<Real> rotation(Real theta) {
  return {std::polar(Real(1), theta / Real(2)), Cplx<Real>(0)};
}

template <class Real>
inline SU11Element<Real> translation(Real l) {
  return {Cplx<Real>(std::cosh(l / Real(2))), Cplx<Real>(std::sinh(l / Real(2)))};
}

template <class Real>
inline SU11Element<Real> axis_translation(Real theta, Real l) {
  const SU11Element<Real> r = rotation(theta);
  return compose(compose(r, translation(l)), inverse(r));
}

// Hyperbolic distance between two disc points.
template <class Real>
inline Real hyperbolic_distance(const DiscPoint<Real>& z,
                                const DiscPoint<Real>& w) {
  const Real q = std::abs((z - w) / (Cplx<Real>(1) - std::conj(w) * z));
  return std::log((Real(1) + q) / (Real(1) - q));
}

}  // namespace folia
