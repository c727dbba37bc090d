#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "folia/cone.hpp"
#include "folia/fuchsian.hpp"
#include "folia/holspace.hpp"
#include "folia/sampling.hpp"

using namespace folia;
using C = Cplx<double>;
using Coeffs = Eigen::Matrix<C, Eigen::Dynamic, 1>;

namespace {

Coeffs cone_coeffs(const ConePoint<double>& p, int degree = 64) {
  Coeffs c(degree + 1);
  cone_taylor(p, degree, c.data());
  return c;
}

}  // namespace

TEST_CASE("holo_identity and holo_constant construct with honest certificates") {
  const HoloFunction<double> id = holo_identity<double>();
  CHECK(id.degree() == 64);
  CHECK(std::abs(id.taylor[1] - C(1)) < 1e-16);
  CHECK(std::abs(id.taylor[0]) + std::abs(id.taylor[2]) == 0.0);
  // the sup of |z| over the sampled disc is the outermost radius
  CHECK(id.certified_sup == doctest::Approx(0.999).epsilon(1e-12));

  const HoloFunction<double> c = holo_constant<double>(C(0.3, 0.4));
  CHECK(c.certified_sup == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(eval_taylor(c.taylor, C(0.7, -0.1)) - C(0.3, 0.4)) < 1e-15);
}

TEST_CASE("the membership certificate rejects functions leaving the disc") {
  try {
    holo_constant<double>(C(1.1, 0));
    FAIL("expected SupViolation");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::SupViolation);
  }

  Coeffs big(3);
  big << C(0), C(0.9), C(0.9);  // |f(0.999)| ~ 1.79 on the positive axis
  CHECK_THROWS_AS(holo_function<double>(std::move(big)), Error);
}

TEST_CASE("eval_taylor is plain Horner evaluation") {
  Coeffs c(3);
  c << C(1), C(2), C(3);
  CHECK(std::abs(eval_taylor(c, C(0.5)) - C(2.75)) < 1e-15);
  CHECK(std::abs(eval_taylor(c, C(0)) - C(1)) < 1e-16);
}

TEST_CASE("fit_taylor recovers polynomial coefficients from circle samples") {
  const auto fitted =
      fit_taylor<double>([](const C& z) { return z * z; }, 64, 0.85, 512);
  REQUIRE(fitted.size() == 65);
  CHECK(std::abs(fitted[2] - C(1)) < 1e-13);
  double off = 0;
  for (int n = 0; n <= 64; ++n) {
    if (n != 2) off = std::max(off, std::abs(fitted[n]));
  }
  // sample roundoff lands on coefficient n amplified by r_fit^-n, so the
  // vanishing coefficients sit on a plateau near eps / 0.85^64 ~ 7e-12
  CHECK(off < 1e-10);
}

TEST_CASE("fit_taylor agrees with the closed-form cone coefficients") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const ConePoint<double> p = random_cone_point<double>(rng, 0.4, 0.7071);
    const auto fitted = fit_taylor<double>(
        [&p](const C& z) { return f_eval(z, p); }, 64, 0.85, 512);
    const Coeffs exact = cone_coeffs(p);
    CHECK((fitted - exact).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("tail_estimate reproduces the geometric closed form") {
  // c_n = 0.5^n: the measured decay ratio is exactly 0.5, so the estimate
  // c_N r^N q/(1-q) with q = 0.5 r is the true tail.  N = 20 keeps c_N above
  // the coefficient noise floor (peak * 1e-9), which treats smaller entries
  // as exact zeros.
  const int N = 20;
  Coeffs c(N + 1);
  for (int n = 0; n <= N; ++n) c[n] = std::pow(0.5, n);
  const double r = 0.85;
  const double q = 0.5 * r;
  const double exact = std::pow(q, N + 1) / (1 - q);
  CHECK(tail_estimate(c, r) == doctest::Approx(exact).epsilon(1e-12));

  // exactly truncated series have no tail to report
  Coeffs poly = Coeffs::Zero(65);
  poly[0] = C(0.2);
  poly[3] = C(0.4);
  CHECK(tail_estimate(poly, r) == 0.0);
}

TEST_CASE("precompose with the identity is exact") {
  const HoloFunction<double> f = holo_function<double>(
      cone_coeffs(cone_point<double>(C(1, 0), C(0.2, 0.1), std::sqrt(0.95))));
  const HoloFunction<double> g = precompose_action(identity<double>(), f);
  CHECK((g.taylor - f.taylor).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("precompose of the identity function is the inverse Moebius map") {
  std::mt19937_64 rng(52);
  const HoloFunction<double> id = holo_identity<double>();
  for (int trial = 0; trial < 20; ++trial) {
    const SU11Element<double> g = random_su11<double>(rng, 0.35);
    const HoloFunction<double> moved = precompose_action(g, id);
    // f o g^-1 at 0 is g^-1(0)
    CHECK(std::abs(eval_taylor(moved.taylor, C(0)) -
                   apply_disc(inverse(g), C(0))) < 1e-10);
    CHECK(moved.certified_sup <= 1.0 + 1e-6);
  }
}

TEST_CASE("precompose fixes constants") {
  std::mt19937_64 rng(53);
  const HoloFunction<double> c = holo_constant<double>(C(0.25, -0.4));
  for (int trial = 0; trial < 10; ++trial) {
    const SU11Element<double> g = random_su11<double>(rng, 0.35);
    const HoloFunction<double> moved = precompose_action(g, c);
    CHECK(std::abs(moved.taylor[0] - C(0.25, -0.4)) < 1e-10);
    for (int n = 1; n <= moved.degree(); ++n)
      CHECK(std::abs(moved.taylor[n]) < 1e-10);
  }
}

TEST_CASE("precompose satisfies the anti-composition action law") {
  // (f o h^-1) o g^-1 = f o (gh)^-1.  The fiber is chosen with a small |z2|
  // so the pole of f stays far outside the disc even after a worst-case
  // composed Moebius pulls it inward; the refit tails stay representable.
  std::mt19937_64 rng(54);
  const HoloFunction<double> f = holo_function<double>(
      cone_coeffs(cone_point<double>(C(1, 0), C(0.1, -0.1), std::sqrt(0.98))));
  for (int trial = 0; trial < 10; ++trial) {
    const SU11Element<double> g = random_su11<double>(rng, 0.35);
    const SU11Element<double> h = random_su11<double>(rng, 0.35);
    const HoloFunction<double> two_step =
        precompose_action(g, precompose_action(h, f));
    const HoloFunction<double> one_step = precompose_action(compose(g, h), f);
    CHECK((two_step.taylor - one_step.taylor).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("precompose reports truncation failure instead of wrong answers") {
  // a full octagon side-pairing pulls the pole of f o g^-1 inside the fit
  // circle's comfort zone (|alpha/beta| ~ 1.099 < 1/0.85), so the degree-64
  // tail at r_fit is no longer negligible and the action must refuse
  const double l = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
  try {
    precompose_action(translation(l), holo_identity<double>());
    FAIL("expected TruncationError");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::TruncationError);
  }
}

TEST_CASE("tautological phi and its equivariance") {
  const HoloFunction<double> id = holo_identity<double>();
  CHECK(std::abs(tautological_phi(C(0.3, -0.2), id) - C(0.3, -0.2)) < 1e-12);

  const HoloFunction<double> f = holo_function<double>(
      cone_coeffs(cone_point<double>(C(1, 0), C(0.2, 0.1), std::sqrt(0.95))));
  CHECK(std::abs(tautological_phi(C(0), f) - f.taylor[0]) < 1e-16);

  // phi(g z, f o g^-1) = phi(z, f)
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const SU11Element<double> g = random_su11<double>(rng, 0.35);
    const HoloFunction<double> moved = precompose_action(g, f);
    const C z = random_disc_point<double>(rng, 0.6);
    CHECK(std::abs(tautological_phi(apply_disc(g, z), moved) -
                   tautological_phi(z, f)) < 1e-9);
  }
}

TEST_CASE("orbit limit probe: diverging translations settle on -1") {
  std::vector<SU11Element<double>> seq;
  for (int n = 1; n <= 40; ++n) seq.push_back(translation(double(n)));
  const auto out = orbit_limit_probe(seq, holo_identity<double>());
  CHECK(out.has_limit);
  CHECK(out.unimodular);
  CHECK(std::abs(out.limit - C(-1)) < 1e-6);
  CHECK(out.final_sup_dist < 1e-6);
}

TEST_CASE("orbit limit probe: rotations never settle") {
  std::vector<SU11Element<double>> seq;
  for (int n = 1; n <= 40; ++n) seq.push_back(rotation(0.7 * n));
  const auto out = orbit_limit_probe(seq, holo_identity<double>());
  CHECK_FALSE(out.has_limit);
}

TEST_CASE("orbit limit probe: interior constants are flagged non-unimodular") {
  std::vector<SU11Element<double>> seq;
  for (int n = 1; n <= 10; ++n) seq.push_back(translation(double(n)));
  const auto out = orbit_limit_probe(seq, holo_constant<double>(C(0.5, 0)));
  CHECK(out.has_limit);
  CHECK_FALSE(out.unimodular);
  CHECK(std::abs(out.limit - C(0.5)) < 1e-12);
}

TEST_CASE("orbit limit probe guards its compact radius") {
  std::vector<SU11Element<double>> seq{translation(1.0), translation(2.0)};
  CHECK_THROWS_AS(orbit_limit_probe(seq, holo_identity<double>(), 0.95), Error);
}

TEST_CASE("sample_grid evaluates on the polar product grid") {
  const auto grid = sample_grid<double>([](const C& z) { return z * z; },
                                        {0.3, 0.6}, 8);
  REQUIRE(grid.radii.size() == 2);
  REQUIRE(grid.angles.size() == 8);
  CHECK(grid.values.rows() == 2);
  CHECK(grid.values.cols() == 8);
  CHECK(std::abs(grid.values(0, 0) - C(0.09)) < 1e-15);
  CHECK(std::abs(grid.values(1, 2) -
                 std::pow(std::polar(0.6, grid.angles[2]), 2)) < 1e-15);
}
