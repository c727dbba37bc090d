#pragma once

// Seeded random elements for sweeps and property tests.  Everything draws
// from a caller-owned mt19937_64 so identical seeds reproduce identical
// sweeps.

#include <cmath>
#include <complex>
#include <random>

#include "folia/cone.hpp"
#include "folia/moebius.hpp"

namespace folia {

template <class Real = double>
inline SU11Element<Real> random_su11(std::mt19937_64& rng,
                                     Real bmax = Real(1)) {
  std::uniform_real_distribution<Real> u(Real(-1), Real(1));
  std::uniform_real_distribution<Real> angle(Real(0),
                                             Real(2) * Real(3.14159265358979323846L));
  const Cplx<Real> b = Cplx<Real>(u(rng), u(rng)) * bmax;
  const Cplx<Real> a =
      std::polar(std::sqrt(Real(1) + std::norm(b)), angle(rng));
  return {a, b};
}

// uniform disc point of radius at most rmax (area-uniform)
template <class Real = double>
inline DiscPoint<Real> random_disc_point(std::mt19937_64& rng,
                                         Real rmax = Real(0.95)) {
  std::uniform_real_distribution<Real> u(Real(0), Real(1));
  return std::polar(rmax * std::sqrt(u(rng)),
                    Real(2) * Real(3.14159265358979323846L) * u(rng));
}

// normalized cone point with |t| drawn uniformly from [tmin, tmax] (both
// within [0, 1/sqrt 2]) and a random sign; tmin = tmax pins |t|
template <class Real = double>
inline ConePoint<Real> random_cone_point(std::mt19937_64& rng,
                                         Real tmin = Real(0),
                                         Real tmax = Real(0.70710678118654752)) {
  std::uniform_real_distribution<Real> u(Real(0), Real(1));
  const Real tabs = tmin + (tmax - tmin) * u(rng);
  const Real t = u(rng) < Real(0.5) ? -tabs : tabs;
  const Real two_pi = Real(2) * Real(3.14159265358979323846L);
  const Cplx<Real> z1 =
      std::polar(Real(1) / std::sqrt(Real(2)), two_pi * u(rng));
  const Real r2sq = std::max(Real(0), Real(0.5) - t * t);
  const Cplx<Real> z2 = std::polar(std::sqrt(r2sq), two_pi * u(rng));
  return normalize(ConePoint<Real>{z1, z2, t});
}

}  // namespace folia
