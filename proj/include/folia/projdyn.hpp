#pragma once

// Dynamics of finitely generated matrix groups on projective space:
// proximality gaps, convergence probing, finite-orbit search, and the
// plainness classification heuristics built on them.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "folia/errors.hpp"
#include "folia/fuchsian.hpp"
#include "folia/moebius.hpp"

namespace folia {

template <class Real = double>
using Mat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real = double>
using Vec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

// A point of P(W), stored as a unit vector; the scalar ambiguity is handled
// by the distance function.
template <class Real = double>
struct ProjPoint {
  Vec<Real> v;
};

template <class Real>
inline ProjPoint<Real> proj_point(Vec<Real> v) {
  const Real n = v.norm();
  if (!(n > Real(0))) raise(ErrorCode::DegenerateFiber, "zero projective vector");
  return {v / n};
}

// chordal distance sqrt(1 - |<u,v>|^2); zero iff equal in P(W)
template <class Real>
inline Real proj_distance(const ProjPoint<Real>& p, const ProjPoint<Real>& q) {
  if (p.v.size() != q.v.size())
    raise(ErrorCode::DimensionMismatch, "projective points of different dimension");
  const Real ip = std::abs(p.v.dot(q.v));
  return std::sqrt(std::max(Real(0), Real(1) - ip * ip));
}

template <class Real>
inline bool proj_equal(const ProjPoint<Real>& p, const ProjPoint<Real>& q,
                       Real tol = Real(1e-10)) {
  return proj_distance(p, q) < tol;
}

template <class Real>
inline ProjPoint<Real> act(const Mat<Real>& m, const ProjPoint<Real>& p) {
  if (m.cols() != p.v.size())
    raise(ErrorCode::DimensionMismatch, "matrix/vector dimension mismatch");
  return proj_point<Real>(m * p.v);
}

template <class Real = double>
struct LinearRep {
  bool complex_field = true;  // false: all entries real, sample real points
  int dimension = 0;
  std::vector<Mat<Real>> generators;
  std::vector<std::string> labels;
};

template <class Real>
inline LinearRep<Real> linear_rep(bool complex_field,
                                  std::vector<Mat<Real>> generators,
                                  std::vector<std::string> labels = {}) {
  if (generators.empty())
    raise(ErrorCode::ConstructionFailure, "representation needs generators");
  LinearRep<Real> rep;
  rep.complex_field = complex_field;
  rep.dimension = int(generators[0].rows());
  for (const auto& m : generators) {
    if (m.rows() != rep.dimension || m.cols() != rep.dimension)
      raise(ErrorCode::DimensionMismatch, "generators of unequal dimension");
    if (!(std::abs(m.determinant()) > Real(1e-12)))
      raise(ErrorCode::ConstructionFailure, "singular generator matrix");
  }
  rep.generators = std::move(generators);
  rep.labels = std::move(labels);
  return rep;
}

template <class Real>
inline Mat<Real> to_matrix(const SU11Element<Real>& g) {
  Mat<Real> m(2, 2);
  m << g.alpha, g.beta, std::conj(g.beta), std::conj(g.alpha);
  return m;
}

template <class Real>
inline Mat<Real> evaluate_word(const LinearRep<Real>& rep, const Word& w) {
  Mat<Real> out = Mat<Real>::Identity(rep.dimension, rep.dimension);
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= int(rep.generators.size()))
      raise(ErrorCode::IndexOutOfRange,
            "generator index " + std::to_string(l.gen) + " out of range");
    if (l.exp > 0)
      out = out * rep.generators[l.gen];
    else
      out = out * rep.generators[l.gen].inverse();
  }
  return out;
}

// sorted eigenvalue moduli, largest first
template <class Real>
inline std::vector<Real> eigen_moduli(const Mat<Real>& m) {
  Eigen::ComplexEigenSolver<Mat<Real>> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    raise(ErrorCode::EigenFailure, "eigenvalue iteration did not converge");
  std::vector<Real> mods(m.rows());
  for (int i = 0; i < m.rows(); ++i) mods[i] = std::abs(es.eigenvalues()[i]);
  std::sort(mods.rbegin(), mods.rend());
  return mods;
}

// (|l1| - |l2|) / |l1| for eigenvalue moduli |l1| >= |l2| >= ...; the element
// is proximal when this exceeds prox_tol.  Invariant under conjugation and
// scalar rescaling.
template <class Real>
inline Real proximality_gap(const Mat<Real>& m) {
  if (m.rows() < 2) return Real(0);
  const auto mods = eigen_moduli(m);
  if (!(mods[0] > Real(0))) return Real(0);
  return (mods[0] - mods[1]) / mods[0];
}

template <class Real>
inline ProjPoint<Real> top_eigendirection(const Mat<Real>& m) {
  Eigen::ComplexEigenSolver<Mat<Real>> es(m, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    raise(ErrorCode::EigenFailure, "eigenvalue iteration did not converge");
  int top = 0;
  for (int i = 1; i < m.rows(); ++i) {
    if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[top])) top = i;
  }
  return proj_point<Real>(es.eigenvectors().col(top));
}

template <class Real = double>
struct ProximalWitness {
  Word word;
  Real gap{};
};

// Scan the word ball for the element with the largest proximality gap;
// absent when nothing exceeds prox_tol.
template <class Real>
inline std::optional<ProximalWitness<Real>> find_proximal(
    const LinearRep<Real>& rep, const SurfaceGroupPresentation& pres,
    int radius, Real prox_tol = Real(1e-6)) {
  std::optional<ProximalWitness<Real>> best;
  for (const Word& w : word_ball(pres, radius)) {
    const Real gap = proximality_gap(evaluate_word(rep, w));
    if (gap > prox_tol && (!best || gap > best->gap)) best = {w, gap};
  }
  return best;
}

template <class Real = double>
struct ConvergenceReport {
  std::string tested;               // label of the matrix or word probed
  ProjPoint<Real> attractor;        // top eigendirection estimate
  Real converged_fraction{};        // samples within conv_tol of the attractor
  Real exceptional_residual{};      // 1 - converged_fraction
};

template <class Real>
inline ProjPoint<Real> random_proj_point(std::mt19937_64& rng, int dim,
                                         bool complex_field) {
  std::uniform_real_distribution<Real> u(Real(-1), Real(1));
  Vec<Real> v(dim);
  for (int i = 0; i < dim; ++i) {
    const Real re = u(rng);
    const Real im = complex_field ? u(rng) : Real(0);
    v[i] = std::complex<Real>(re, im);
  }
  if (v.norm() == Real(0)) v[0] = Real(1);
  return proj_point<Real>(std::move(v));
}

// Iterate m on seeded random projective points, renormalizing each step, and
// report the fraction that lands within conv_tol of the top eigendirection.
template <class Real>
inline ConvergenceReport<Real> convergence_probe(const Mat<Real>& m,
                                                 int samples, int iterations,
                                                 std::uint64_t seed,
                                                 Real conv_tol = Real(1e-6),
                                                 bool complex_field = true) {
  ConvergenceReport<Real> report;
  report.attractor = top_eigendirection(m);
  std::mt19937_64 rng(seed);
  int converged = 0;
  for (int s = 0; s < samples; ++s) {
    ProjPoint<Real> p = random_proj_point<Real>(rng, int(m.rows()), complex_field);
    for (int it = 0; it < iterations; ++it) p = act(m, p);
    if (proj_distance(p, report.attractor) < conv_tol) ++converged;
  }
  report.converged_fraction = Real(converged) / Real(std::max(samples, 1));
  report.exceptional_residual = Real(1) - report.converged_fraction;
  return report;
}

// Breadth-first closure of p under the generators and their inverses.  The
// closure counts as a finite orbit only if every generator acts on it as a
// permutation (within tol); merging two distinct points into one tolerance
// ball — the signature of a contracting infinite orbit — reports absent.
template <class Real>
inline std::optional<int> finite_orbit_search(const LinearRep<Real>& rep,
                                              const ProjPoint<Real>& p,
                                              int bound,
                                              Real tol = Real(1e-8)) {
  if (bound > 100000)
    raise(ErrorCode::RadiusTooLarge, "orbit bound exceeds 10^5");
  std::vector<Mat<Real>> maps;
  for (const auto& g : rep.generators) {
    maps.push_back(g);
    maps.push_back(g.inverse());
  }
  std::vector<ProjPoint<Real>> orbit{p};
  const auto find_index = [&](const ProjPoint<Real>& q) -> int {
    for (size_t i = 0; i < orbit.size(); ++i) {
      if (proj_distance(orbit[i], q) < tol) return int(i);
    }
    return -1;
  };
  for (size_t head = 0; head < orbit.size(); ++head) {
    if (int(orbit.size()) > bound) return std::nullopt;
    const ProjPoint<Real> cur = orbit[head];  // copy: orbit reallocates
    for (const auto& m : maps) {
      const ProjPoint<Real> q = act(m, cur);
      if (find_index(q) < 0) orbit.push_back(q);
    }
  }
  // permutation consistency
  for (const auto& m : maps) {
    std::vector<char> hit(orbit.size(), 0);
    for (const auto& s : orbit) {
      const int j = find_index(act(m, s));
      if (j < 0 || hit[j]) return std::nullopt;
      hit[j] = 1;
    }
  }
  return int(orbit.size());
}

enum class Plainness { PlainByCompactness, PlainByProximal, Undetermined };

inline const char* name(Plainness p) {
  switch (p) {
    case Plainness::PlainByCompactness: return "PlainByCompactness";
    case Plainness::PlainByProximal:    return "PlainByProximal";
    case Plainness::Undetermined:       return "Undetermined";
  }
  return "?";
}

template <class Real = double>
struct ClassificationReport {
  Plainness verdict = Plainness::Undetermined;
  std::optional<ProximalWitness<Real>> witness;  // set for PlainByProximal
  Real norm_bound{};                             // max word-ball matrix norm
  Real max_gap{};                                // largest gap seen
};

// Heuristic plainness classification: a proximal element in the word ball
// wins; otherwise uniformly bounded word-ball norms with all gaps below
// prox_tol count as evidence of precompact image.  An empty search space
// (radius 0) decides nothing.
template <class Real>
inline ClassificationReport<Real> classify_action(
    const LinearRep<Real>& rep, const SurfaceGroupPresentation& pres,
    int radius, Real prox_tol = Real(1e-6), Real comp_bound = Real(1e3)) {
  ClassificationReport<Real> report;
  if (radius < 1) return report;
  Real norm_bound = Real(0);
  Real max_gap = Real(0);
  std::optional<ProximalWitness<Real>> best;
  for (const Word& w : word_ball(pres, radius)) {
    const Mat<Real> m = evaluate_word(rep, w);
    const Real gap = proximality_gap(m);
    max_gap = std::max(max_gap, gap);
    norm_bound = std::max(norm_bound, Real(m.norm()));
    if (gap > prox_tol && (!best || gap > best->gap)) best = {w, gap};
  }
  report.norm_bound = norm_bound;
  report.max_gap = max_gap;
  if (best) {
    report.verdict = Plainness::PlainByProximal;
    report.witness = best;
  } else if (norm_bound <= comp_bound) {
    report.verdict = Plainness::PlainByCompactness;
  }
  return report;
}

}  // namespace folia
