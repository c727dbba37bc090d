#pragma once

// A genus-2 uniform lattice in SU(1,1) presented on the regular octagon.
//
// The four generators are hyperbolic translations along the axes through the
// origin at angles k pi/4 (k = 0..3); the octagon pairs each side with its
// opposite.  With that pairing the vertex cycle closes on the alternating
// relator
//
//     g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3,
//
// not on g0 g1 g2 g3 g0^-1 g1^-1 g2^-1 g3^-1 (that word does not evaluate to
// +-identity for any translation length; see test_fuchsian).  The two
// presentations differ by replacing g1, g3 with their inverses.  The
// translation length is found numerically from the relator residual; the
// closed form is 2 arccosh(1 + sqrt 2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "folia/errors.hpp"
#include "folia/moebius.hpp"

namespace folia {

struct Letter {
  int gen = 0;
  int exp = +1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline Letter inverse(const Letter& l) { return {l.gen, -l.exp}; }

struct Word {
  std::vector<Letter> letters;

  bool reduced() const {
    for (size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i].gen == letters[i + 1].gen &&
          letters[i].exp == -letters[i + 1].exp)
        return false;
    }
    return true;
  }
  size_t length() const { return letters.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

inline Word reduce(Word w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters) {
    if (!out.empty() && out.back() == inverse(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return {std::move(out)};
}

inline Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(inverse(*it));
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return reduce(out);
}

inline std::string to_string(const Word& w) {
  if (w.letters.empty()) return "e";
  std::string s;
  for (const Letter& l : w.letters) {
    s += "g" + std::to_string(l.gen);
    if (l.exp < 0) s += "'";
  }
  return s;
}

struct SurfaceGroupPresentation {
  int genus = 2;
  Word relator;
  int generator_count() const { return 2 * genus; }
};

inline SurfaceGroupPresentation genus2_presentation() {
  SurfaceGroupPresentation p;
  p.genus = 2;
  p.relator.letters = {{0, +1}, {1, -1}, {2, +1}, {3, -1},
                       {0, -1}, {1, +1}, {2, -1}, {3, +1}};
  return p;
}

// One side of the fundamental polygon: the geodesic |z - center| = radius
// (a circle orthogonal to the unit circle, |center|^2 - radius^2 = 1).  The
// domain is the side with |z - center| >= radius.
template <class Real = double>
struct GeodesicSide {
  Cplx<Real> center;
  Real radius;

  // positive inside the forbidden disc, i.e. when the constraint is violated
  Real violation(const DiscPoint<Real>& z) const {
    return radius - std::abs(z - center);
  }
};

template <class Real = double>
struct FuchsianRepresentation {
  SurfaceGroupPresentation presentation;
  std::vector<SU11Element<Real>> images;
  std::vector<GeodesicSide<Real>> domain;
  Real translation_length{};
};

template <class Real>
inline SU11Element<Real> evaluate_letter(const FuchsianRepresentation<Real>& rep,
                                         const Letter& l) {
  if (l.gen < 0 || l.gen >= int(rep.images.size())) {
    raise(ErrorCode::IndexOutOfRange,
          "generator index " + std::to_string(l.gen) + " out of range");
  }
  return l.exp > 0 ? rep.images[l.gen] : inverse(rep.images[l.gen]);
}

template <class Real>
inline SU11Element<Real> evaluate_word(const FuchsianRepresentation<Real>& rep,
                                       const Word& w) {
  SU11Element<Real> out = identity<Real>();
  for (const Letter& l : w.letters) out = compose(out, evaluate_letter(rep, l));
  return out;
}

namespace detail {

template <class Real>
constexpr Real pi() {
  return Real(3.14159265358979323846264338327950288L);
}

template <class Real>
inline std::vector<SU11Element<Real>> octagon_generators(Real l) {
  std::vector<SU11Element<Real>> gs;
  gs.reserve(4);
  for (int k = 0; k < 4; ++k)
    gs.push_back(axis_translation(Real(k) * pi<Real>() / Real(4), l));
  return gs;
}

// residual of the alternating relator at translation length l
template <class Real>
inline Real octagon_relator_residual(Real l, const Word& relator) {
  const auto gs = octagon_generators(l);
  SU11Element<Real> w = identity<Real>();
  for (const Letter& letter : relator.letters) {
    w = compose(w, letter.exp > 0 ? gs[letter.gen] : inverse(gs[letter.gen]));
  }
  return dist_to_center(w);
}

}  // namespace detail

// Side geodesics of the regular octagon whose side-pairing translations have
// length l: the apothem is m = l/2, the Euclidean distance from the origin
// to a side midpoint is x = tanh(m/2), and the side geodesic is the circle
// through that point orthogonal to both the unit circle and the axis.
template <class Real>
inline std::vector<GeodesicSide<Real>> octagon_domain(Real l) {
  const Real x = std::tanh(l / Real(4));
  const Real c = (x + Real(1) / x) / Real(2);
  const Real rho = (Real(1) / x - x) / Real(2);
  std::vector<GeodesicSide<Real>> sides;
  sides.reserve(8);
  for (int k = 0; k < 8; ++k) {
    sides.push_back(
        {std::polar(c, Real(k) * detail::pi<Real>() / Real(4)), rho});
  }
  return sides;
}

// Translation length determined from the relator: coarse scan over the
// bracket, then golden-section refinement of the (V-shaped near its zero)
// residual.  ConstructionFailure if the refined residual is not below
// rel_tol.
template <class Real>
inline Real solve_translation_length(const Word& relator,
                                     Real lo = Real(2.5), Real hi = Real(3.5),
                                     Real rel_tol = Real(1e-9)) {
  const auto resid = [&relator](Real l) {
    return detail::octagon_relator_residual(l, relator);
  };
  constexpr int kScan = 64;
  int best = 0;
  Real best_r = resid(lo);
  for (int i = 1; i <= kScan; ++i) {
    const Real l = lo + (hi - lo) * Real(i) / Real(kScan);
    const Real r = resid(l);
    if (r < best_r) {
      best_r = r;
      best = i;
    }
  }
  Real a = lo + (hi - lo) * Real(std::max(best - 1, 0)) / Real(kScan);
  Real b = lo + (hi - lo) * Real(std::min(best + 1, kScan)) / Real(kScan);

  const Real gr = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real c = b - gr * (b - a), d = a + gr * (b - a);
  Real fc = resid(c), fd = resid(d);
  for (int it = 0; it < 200 && (b - a) > Real(1e-14); ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = resid(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = resid(d);
    }
  }
  const Real lstar = (a + b) / Real(2);
  if (!(resid(lstar) < rel_tol)) {
    raise(ErrorCode::ConstructionFailure,
          "relator residual " + std::to_string(resid(lstar)) +
              " at length " + std::to_string(lstar));
  }
  return lstar;
}

template <class Real = double>
inline FuchsianRepresentation<Real> genus2_octagon_representation(
    Real rel_tol = Real(1e-9)) {
  FuchsianRepresentation<Real> rep;
  rep.presentation = genus2_presentation();
  rep.translation_length =
      solve_translation_length<Real>(rep.presentation.relator, Real(2.5),
                                     Real(3.5), rel_tol);
  rep.images = detail::octagon_generators(rep.translation_length);
  rep.domain = octagon_domain(rep.translation_length);

  // the cone action does not factor through PSU(1,1), so the relator must
  // evaluate to +identity, not merely +-identity; for the octagon lattice it
  // does (the surface has even Euler number)
  const SU11Element<Real> rel = evaluate_word(rep, rep.presentation.relator);
  if (!(std::max(std::abs(rel.alpha - Cplx<Real>(1)), std::abs(rel.beta)) <
        rel_tol)) {
    raise(ErrorCode::ConstructionFailure, "relator does not close on +identity");
  }
  return rep;
}

template <class Real>
inline Real relator_residual(const FuchsianRepresentation<Real>& rep) {
  return dist_to_center(evaluate_word(rep, rep.presentation.relator));
}

// The side-pairing letter applied when a point leaves the domain through
// side k: sides 0..3 are undone by g_k^-1, sides 4..7 by g_{k-4}.
inline Letter side_pairing_letter(int side) {
  return side < 4 ? Letter{side, -1} : Letter{side - 4, +1};
}

template <class Real>
inline SU11Element<Real> side_pairing(const FuchsianRepresentation<Real>& rep,
                                      int side) {
  return evaluate_letter(rep, side_pairing_letter(side));
}

template <class Real>
inline int max_violation_side(const FuchsianRepresentation<Real>& rep,
                              const DiscPoint<Real>& z, Real* violation) {
  int side = 0;
  Real v = rep.domain[0].violation(z);
  for (int k = 1; k < int(rep.domain.size()); ++k) {
    const Real vk = rep.domain[k].violation(z);
    if (vk > v) {
      v = vk;
      side = k;
    }
  }
  if (violation) *violation = v;
  return side;
}

template <class Real>
inline bool in_domain(const FuchsianRepresentation<Real>& rep,
                      const DiscPoint<Real>& z, Real tol = Real(1e-12)) {
  Real v;
  max_violation_side(rep, z, &v);
  return v <= tol;
}

// Greedy reduction into the fundamental domain: repeatedly undo the most
// violated side.  Each step strictly decreases the hyperbolic distance to
// the origin, so the greedy walk terminates for interior points.  Returns
// (w, z') with z' = evaluate_word(w) . z inside the closed domain.
template <class Real>
inline std::pair<Word, DiscPoint<Real>> locate_in_domain(
    const FuchsianRepresentation<Real>& rep, const DiscPoint<Real>& z,
    Real tol = Real(1e-12), int max_steps = 10000) {
  require_disc(z, Real(1e-6));
  Word w;
  DiscPoint<Real> cur = z;
  for (int step = 0; step < max_steps; ++step) {
    Real v;
    const int side = max_violation_side(rep, cur, &v);
    if (v <= tol) return {w, cur};
    const Letter l = side_pairing_letter(side);
    cur = apply_disc(evaluate_letter(rep, l), cur);
    w.letters.insert(w.letters.begin(), l);
    w = reduce(w);
  }
  raise(ErrorCode::NonTermination,
        "locate_in_domain did not settle after " + std::to_string(max_steps) +
            " steps");
}

// All reduced words of length 1..radius (radius 0: just the empty word),
// enumerated depth-first in generator order.  Counts for genus 2:
// 1, 8, 64, 456, ...
inline std::vector<Word> word_ball(const SurfaceGroupPresentation& pres,
                                   int radius) {
  if (radius > 12) {
    raise(ErrorCode::RadiusTooLarge,
          "word ball radius " + std::to_string(radius) + " exceeds 12");
  }
  std::vector<Word> out;
  if (radius <= 0) {
    out.push_back(Word{});
    return out;
  }
  const int n = pres.generator_count();
  Word cur;
  const auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == radius) return;
    for (int g = 0; g < n; ++g) {
      for (int e : {+1, -1}) {
        const Letter l{g, e};
        if (!cur.letters.empty() && cur.letters.back() == inverse(l)) continue;
        cur.letters.push_back(l);
        out.push_back(cur);
        self(self, depth + 1);
        cur.letters.pop_back();
      }
    }
  };
  dfs(dfs, 0);
  return out;
}

// Interior angles of the octagon (one per vertex), from the angle between
// the two side-geodesic normals at the vertex.
template <class Real>
inline std::vector<Real> interior_angles(
    const FuchsianRepresentation<Real>& rep) {
  const auto& sides = rep.domain;
  const int n = int(sides.size());
  std::vector<Real> angles;
  angles.reserve(n);
  for (int k = 0; k < n; ++k) {
    const auto& s1 = sides[k];
    const auto& s2 = sides[(k + 1) % n];
    // the vertex is the intersection of the two side circles closer to the
    // origin
    const Cplx<Real> delta = s2.center - s1.center;
    const Real dist = std::abs(delta);
    const Real h = std::sqrt(s1.radius * s1.radius - dist * dist / Real(4));
    const Cplx<Real> mid = (s1.center + s2.center) / Real(2);
    const Cplx<Real> u = delta / dist;
    const Cplx<Real> cand1 = mid + Cplx<Real>(0, 1) * u * h;
    const Cplx<Real> cand2 = mid - Cplx<Real>(0, 1) * u * h;
    const Cplx<Real> v = std::abs(cand1) < std::abs(cand2) ? cand1 : cand2;
    const Cplx<Real> n1 = (v - s1.center) / std::abs(v - s1.center);
    const Cplx<Real> n2 = (v - s2.center) / std::abs(v - s2.center);
    Real c = (n1 * std::conj(n2)).real();
    c = std::clamp(c, Real(-1), Real(1));
    angles.push_back(detail::pi<Real>() - std::acos(c));
  }
  return angles;
}

// Gauss-Bonnet: hyperbolic area of the octagon is 6 pi minus the angle sum.
template <class Real>
inline Real octagon_area(const FuchsianRepresentation<Real>& rep) {
  Real sum = Real(0);
  for (Real a : interior_angles(rep)) sum += a;
  return Real(6) * detail::pi<Real>() - sum;
}

}  // namespace folia
