#pragma once

// Hol(D, Dbar) — holomorphic maps of the disc into its closure — modeled by
// degree-N Taylor truncations carrying a sampled sup-norm certificate, with
// the Moebius group acting by precomposition (g, f) -> f o g^-1.
//
// A truncation represents its function faithfully on sub-discs where the
// coefficient decay ratio q satisfies q r < 1 comfortably; the tail estimate
// below guards precompositions that would leave that regime.  Coefficients
// are recovered by sampling on a circle |z| = r_fit and discrete Fourier
// orthogonality.  r_fit trades off two error sources: roundoff in the
// samples is amplified by r_fit^-n on the n-th coefficient (fatal for
// small radii: 0.5^-64 is ~2e19), while aliasing contributes
// |c_{n+M}| r_fit^M.  The default 0.85 with M = 512 keeps both far below
// the 1e-9 per-coefficient contract.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "folia/errors.hpp"
#include "folia/moebius.hpp"

namespace folia {

template <class Real = double>
struct HoloFunction {
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> taylor;  // c_0..c_N
  Real certified_sup{};
  Real r_check{};

  int degree() const { return int(taylor.size()) - 1; }
};

template <class Real>
inline Cplx<Real> eval_taylor(
    const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>& coeffs,
    const Cplx<Real>& z) {
  Cplx<Real> acc(0);
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) acc = acc * z + coeffs[n];
  return acc;
}

// max modulus of the truncation sampled on 16 circles up to r_check with
// 2048 angles each (the max-modulus principle makes the outermost circle
// decisive; the inner circles are cheap corroboration)
template <class Real>
inline Real sampled_sup(
    const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>& coeffs,
    Real r_check = Real(0.999), int n_radii = 16, int n_angles = 2048) {
  Real sup(0);
  for (int ir = 1; ir <= n_radii; ++ir) {
    const Real r = r_check * Real(ir) / Real(n_radii);
    for (int ia = 0; ia < n_angles; ++ia) {
      const Real th =
          Real(2) * Real(3.14159265358979323846L) * Real(ia) / Real(n_angles);
      sup = std::max(sup, std::abs(eval_taylor(coeffs, std::polar(r, th))));
    }
  }
  return sup;
}

// validating constructor: computes the certificate and enforces the
// membership invariant certified_sup <= 1 + sup_tol
template <class Real>
inline HoloFunction<Real> holo_function(
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> coeffs,
    Real sup_tol = Real(1e-6), Real r_check = Real(0.999)) {
  HoloFunction<Real> f;
  f.taylor = std::move(coeffs);
  f.r_check = r_check;
  f.certified_sup = sampled_sup(f.taylor, r_check);
  if (!(f.certified_sup <= Real(1) + sup_tol)) {
    raise(ErrorCode::SupViolation,
          "certified sup " + std::to_string(f.certified_sup) +
              " exceeds 1 + sup_tol");
  }
  return f;
}

template <class Real = double>
inline HoloFunction<Real> holo_identity(int degree = 64) {
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> c =
      Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>::Zero(degree + 1);
  c[1] = Real(1);
  return holo_function<Real>(std::move(c));
}

template <class Real = double>
inline HoloFunction<Real> holo_constant(Cplx<Real> value, int degree = 64,
                                        Real sup_tol = Real(1e-6)) {
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> c =
      Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>::Zero(degree + 1);
  c[0] = value;
  return holo_function<Real>(std::move(c), sup_tol);
}

// Taylor coefficients c_0..c_N of a callable, via the discrete Fourier sum
// c_n = (1/M) sum_k F(r e^{i th_k}) e^{-i n th_k} / r^n.
template <class Real, class F>
inline Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> fit_taylor(
    F&& func, int degree = 64, Real r_fit = Real(0.85), int samples = 512) {
  const Real two_pi = Real(2) * Real(3.14159265358979323846L);
  std::vector<Cplx<Real>> vals(samples);
  for (int k = 0; k < samples; ++k)
    vals[k] = func(std::polar(r_fit, two_pi * Real(k) / Real(samples)));
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> coeffs(degree + 1);
  Real rpow = Real(1);
  for (int n = 0; n <= degree; ++n) {
    Cplx<Real> acc(0);
    for (int k = 0; k < samples; ++k) {
      const Real th = -two_pi * Real(n) * Real(k) / Real(samples);
      acc += vals[k] * std::polar(Real(1), th);
    }
    coeffs[n] = acc / (Real(samples) * rpow);
    rpow *= r_fit;
  }
  return coeffs;
}

// Estimated tail sum_{n>N} |c_n| r^n of the represented function, from the
// measured decay ratio of the trailing coefficients.  Coefficients at the
// fit roundoff plateau are treated as zero.  Two plateau regimes matter:
// for exact sample values the DFT amplifies eps-level roundoff by r_fit^-n
// (near peak * 1e-11 at n = 64), while refitting an already-fitted
// composition -- which holonomy transport does on every crossing -- feeds
// the previous fit's coefficient noise back in as a smooth sample error,
// measured as a flat plateau near peak * 3e-10.  The floor sits above
// both, because plateau entries have decay ratios near 1 and would turn
// roundoff into a divergent-tail verdict for perfectly tame functions.  A
// genuine tail violation at the tolerances used here needs trailing
// coefficients above 1e-5, three orders past the floor, so nothing real
// can hide under it.  With no usable ratio a conservative geometric bound
// in r itself is used.
template <class Real>
inline Real tail_estimate(
    const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>& coeffs,
    Real r) {
  const int N = int(coeffs.size()) - 1;
  if (N < 1) return Real(0);
  const Real peak = coeffs.cwiseAbs().maxCoeff();
  const Real floor = std::max(peak * Real(1e-9), Real(1e-300));
  const Real cN = std::abs(coeffs[N]);
  if (cN <= floor) return Real(0);
  Real ratio = Real(-1);
  for (int n = std::max(1, N - 8); n <= N; ++n) {
    const Real a = std::abs(coeffs[n - 1]), b = std::abs(coeffs[n]);
    if (a > floor && b > floor) ratio = std::max(ratio, b / a);
  }
  if (ratio < Real(0)) ratio = Real(1);  // no decay information: assume flat
  const Real q = ratio * r;
  if (q >= Real(1)) return std::numeric_limits<Real>::infinity();
  return cN * std::pow(r, Real(N)) * q / (Real(1) - q);
}

// (g, f) -> f o g^-1, refit at degree N.  TruncationError when the measured
// tail at r_fit says the truncation stopped representing the composition;
// SupViolation (from the constructor) when the certificate leaves Hol(D,Dbar).
template <class Real>
inline HoloFunction<Real> precompose_action(const SU11Element<Real>& g,
                                            const HoloFunction<Real>& f,
                                            Real r_fit = Real(0.85),
                                            int samples = 512,
                                            Real tail_tol = Real(1e-8),
                                            Real sup_tol = Real(1e-6)) {
  // +-identity act trivially; skip the refit and its roundoff plateau
  if (dist_to_center(g) == Real(0)) return f;
  const SU11Element<Real> gi = inverse(g);
  const auto composed = [&](const Cplx<Real>& z) {
    return eval_taylor(f.taylor, apply_disc(gi, z));
  };
  auto coeffs = fit_taylor<Real>(composed, f.degree(), r_fit, samples);
  const Real tail = tail_estimate(coeffs, r_fit);
  if (!(tail < tail_tol)) {
    raise(ErrorCode::TruncationError,
          "degree-" + std::to_string(f.degree()) + " tail estimate " +
              std::to_string(tail) + " at r_fit");
  }
  return holo_function<Real>(std::move(coeffs), sup_tol, f.r_check);
}

// phi(z, f) = f(z), the function that descends to every foliated bundle
// with fiber Hol(D, Dbar)
template <class Real>
inline Cplx<Real> tautological_phi(const DiscPoint<Real>& z,
                                   const HoloFunction<Real>& f) {
  require_disc(z);
  return eval_taylor(f.taylor, z);
}

// evaluation grid for compact-set comparisons
template <class Real = double>
struct GridSample {
  std::vector<Real> radii;
  std::vector<Real> angles;
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> values;
};

template <class Real, class F>
inline GridSample<Real> sample_grid(F&& func, std::vector<Real> radii,
                                    int n_angles) {
  GridSample<Real> grid;
  grid.radii = std::move(radii);
  grid.angles.reserve(n_angles);
  const Real two_pi = Real(2) * Real(3.14159265358979323846L);
  for (int ia = 0; ia < n_angles; ++ia)
    grid.angles.push_back(two_pi * Real(ia) / Real(n_angles));
  grid.values.resize(Eigen::Index(grid.radii.size()), n_angles);
  for (size_t ir = 0; ir < grid.radii.size(); ++ir) {
    for (int ia = 0; ia < n_angles; ++ia) {
      grid.values(Eigen::Index(ir), ia) =
          func(std::polar(grid.radii[ir], grid.angles[ia]));
    }
  }
  return grid;
}

template <class Real = double>
struct OrbitLimitResult {
  bool has_limit = false;
  Cplx<Real> limit{};
  bool unimodular = false;  // | |limit| - 1 | within 1e-6
  Real final_sup_dist = std::numeric_limits<Real>::infinity();
};

// Watches f o g_n^-1 on the closed sub-disc |z| <= compact_radius (sampling
// its boundary circle, which the maximum principle makes decisive) and
// reports the constant limit if the tail of the sequence has settled:
// sup-distance to the constant below 1e-6 and the constants Cauchy.
template <class Real>
inline OrbitLimitResult<Real> orbit_limit_probe(
    const std::vector<SU11Element<Real>>& g_seq, const HoloFunction<Real>& f,
    Real compact_radius = Real(0.5), Real limit_tol = Real(1e-6),
    int n_angles = 256) {
  if (!(compact_radius <= Real(0.9)))
    raise(ErrorCode::StepOutOfRange, "compact_radius must be <= 0.9");
  OrbitLimitResult<Real> out;
  if (g_seq.size() < 2) return out;

  std::vector<Cplx<Real>> centers;
  std::vector<Real> sup_dists;
  const Real two_pi = Real(2) * Real(3.14159265358979323846L);
  for (const auto& g : g_seq) {
    const SU11Element<Real> gi = inverse(g);
    const Cplx<Real> c = eval_taylor(f.taylor, apply_disc(gi, Cplx<Real>(0)));
    Real d(0);
    for (int ia = 0; ia < n_angles; ++ia) {
      const Cplx<Real> z =
          std::polar(compact_radius, two_pi * Real(ia) / Real(n_angles));
      d = std::max(d,
                   std::abs(eval_taylor(f.taylor, apply_disc(gi, z)) - c));
    }
    centers.push_back(c);
    sup_dists.push_back(d);
  }

  const int len = int(centers.size());
  const int tail = std::max(3, len / 4);
  const int start = std::max(0, len - tail);
  Real worst_sup(0), worst_cauchy(0);
  for (int i = start; i < len; ++i) {
    worst_sup = std::max(worst_sup, sup_dists[i]);
    worst_cauchy = std::max(worst_cauchy, std::abs(centers[i] - centers[len - 1]));
  }
  out.final_sup_dist = sup_dists[len - 1];
  if (worst_sup < limit_tol && worst_cauchy < limit_tol) {
    out.has_limit = true;
    out.limit = centers[len - 1];
    out.unimodular = std::abs(std::abs(out.limit) - Real(1)) <= limit_tol;
  }
  return out;
}

}  // namespace folia
