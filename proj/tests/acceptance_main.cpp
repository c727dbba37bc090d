// Acceptance battery: one line per criterion, every line carrying the
// measured value next to the tolerance it is held against.  Exit status is
// nonzero when any criterion fails.  Everything is constructed in code; no
// input files are read and no output files are written.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "folia/bundle.hpp"
#include "folia/kahler.hpp"
#include "folia/runners.hpp"
#include "folia/sampling.hpp"

using namespace folia;
using C = std::complex<double>;

namespace {

int failures = 0;

void line(int idx, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %-30s %s\n", ok ? "PASS" : "FAIL", idx, title,
              detail.c_str());
  if (!ok) ++failures;
}

void criterion(int idx, const char* title,
               const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    line(idx, title, ok, detail);
  } catch (const std::exception& e) {
    line(idx, title, false, std::string("exception: ") + e.what());
  }
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<C> disc_grid() {
  std::vector<C> pts;
  for (int iy = 0; iy < 21; ++iy) {
    for (int ix = 0; ix < 21; ++ix) {
      const C z(-0.7 + 1.4 * ix / 20.0, -0.7 + 1.4 * iy / 20.0);
      if (std::abs(z) <= 0.7) pts.push_back(z);
    }
  }
  return pts;
}

LeafwiseFunction<double> cone_leafwise() {
  return {[](const DiscPoint<double>& z, const FiberPoint<double>& x) {
    return f_eval(z, std::get<ConePoint<double>>(x));
  }};
}

Mat<double> mat2(C a, C b, C c, C d) {
  Mat<double> m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat<double> rot2(double th) {
  return mat2(C(std::cos(th)), C(-std::sin(th)), C(std::sin(th)),
              C(std::cos(th)));
}

}  // namespace

namespace {

int run_battery() {
  const auto rep = genus2_octagon_representation<double>();
  const auto action = natural_fiber_action(rep);
  const LeafwiseFunction<double> F = cone_leafwise();
  const ConePoint<double> p0 = cone_point(C(1), C(0), 1.0);

  criterion(1, "cone invariance sweep", [&] {
    std::mt19937_64 rng(2026);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto g = random_su11(rng, 1.25);
      const auto z = random_disc_point(rng, 0.95);
      const auto p = random_cone_point(rng);
      worst = std::max(worst, invariance_residual(g, z, p));
    }
    return std::pair{worst < 1e-10,
                     "max |f(gz, g.p) - f(z, p)| = " + sci(worst) +
                         " (tol 1e-10, 10000 samples)"};
  });

  criterion(2, "cone constraint preservation", [&] {
    std::mt19937_64 rng(2027);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto g = random_su11(rng, 1.25);
      const auto p = random_cone_point(rng);
      worst = std::max(worst, cone_constraint_violation(cone_act(g, p)));
    }
    return std::pair{worst < 1e-10, "max violation = " + sci(worst) +
                                        " (tol 1e-10, 10000 samples)"};
  });

  criterion(3, "non-plain witness leaf", [&] {
    const LeafPoint<double> lp = leaf_point(rep, C(0), FiberPoint<double>(p0));
    const C v0 = F.eval(lp.base, lp.fiber);
    const auto moved = holonomy_transport(rep, action, lp, C(0.5));
    const C v1 = F.eval(moved.leaf.base, moved.leaf.fiber);
    const double gap_err = std::abs(std::abs(v1 - v0) - 0.5);

    std::mt19937_64 rng(2031);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool all_constant = true;
    double worst_spread = 0;
    for (int i = 0; i < 4; ++i) {
      const ConePoint<double> p = cone_point(
          std::polar(1 / std::sqrt(2.0), 2 * detail::pi<double>() * u(rng)),
          std::polar(1 / std::sqrt(2.0), 2 * detail::pi<double>() * u(rng)),
          0.0);
      const LeafPoint<double> flat =
          leaf_point(rep, C(0.1 * i, -0.05), FiberPoint<double>(p));
      const auto verdict =
          leafwise_constancy(F, rep, action, flat, 16, 2032 + i);
      all_constant = all_constant && verdict.constant;
      worst_spread = std::max(worst_spread, verdict.spread);
    }
    return std::pair{gap_err <= 1e-12 && all_constant && worst_spread < 1e-10,
                     "|gap - 0.5| = " + sci(gap_err) +
                         " (tol 1e-12); max t=0 spread = " +
                         sci(worst_spread) + " (tol 1e-10, 4 leaves)"};
  });

  criterion(4, "leafwise dbar residual", [&] {
    std::mt19937_64 rng(2028);
    std::vector<ConePoint<double>> fibers{p0};
    for (int i = 0; i < 7; ++i)
      fibers.push_back(random_cone_point(rng, 0.65, 0.70710678118654752));
    double worst = 0;
    for (const auto& p : fibers) {
      for (const C& z : disc_grid()) {
        const LeafPoint<double> lp{z, FiberPoint<double>(p)};
        worst = std::max(worst, dbar_residual(F, lp, 1e-4));
      }
    }
    return std::pair{worst < 1e-8, "max residual = " + sci(worst) +
                                       " (tol 1e-8, step 1e-4, 8 fibers)"};
  });

  criterion(5, "octagon group and holonomy", [&] {
    const double res = relator_residual(rep);
    const double area_err =
        std::abs(octagon_area(rep) - 4 * detail::pi<double>());

    const C b0(0.1, 0.05);
    std::vector<DiscPoint<double>> waypoints;
    Word prefix;
    for (const Letter& l : rep.presentation.relator.letters) {
      prefix.letters.push_back(l);
      waypoints.push_back(apply_disc(evaluate_word(rep, prefix), b0));
    }
    std::mt19937_64 rng(2033);
    Vec<double> v(2);
    v << C(0.3, 0.1), C(1, 0);
    const std::vector<FiberPoint<double>> fibers{
        FiberPoint<double>(p0),
        FiberPoint<double>(random_cone_point(rng)),
        FiberPoint<double>(random_cone_point(rng, 0.6, 0.70710678118654752)),
        FiberPoint<double>(proj_point<double>(std::move(v)))};
    double worst = 0;
    for (const auto& x : fibers) {
      const auto moved =
          transport_polyline(rep, action, leaf_point(rep, b0, x), waypoints);
      worst = std::max(worst, fiber_distance(x, moved.leaf.fiber));
    }
    return std::pair{res < 1e-9 && area_err < 1e-6 && worst < 1e-8,
                     "relator residual = " + sci(res) +
                         " (tol 1e-9); |area - 4pi| = " + sci(area_err) +
                         " (tol 1e-6); max loop return = " + sci(worst) +
                         " (tol 1e-8, 4 fibers)"};
  });

  criterion(6, "proximality gap oracles", [&] {
    const double g1 = proximality_gap(mat2(C(2), C(0), C(0), C(1)));
    const double g2 = proximality_gap(mat2(C(2), C(1), C(1), C(1)));
    const double g3 = proximality_gap(rot2(0.73));
    const double fib = 2 * std::sqrt(5.0) / (3 + std::sqrt(5.0));
    return std::pair{g1 == 0.5 && std::abs(g2 - fib) < 1e-10 && g3 < 1e-12,
                     "diag gap = " + sci(g1) + " (exact 0.5); |fib gap - " +
                         sci(fib) + "| = " + sci(std::abs(g2 - fib)) +
                         " (tol 1e-10); rotation gap = " + sci(g3) +
                         " (tol 1e-12)"};
  });

  criterion(7, "projective convergence probe", [&] {
    const auto probe =
        convergence_probe(to_matrix(translation(1.7)), 1000, 200, 2029);
    return std::pair{probe.converged_fraction >= 0.99,
                     "converged fraction = " +
                         sci(probe.converged_fraction) +
                         " (need >= 0.99 within 1e-6, 1000 samples, "
                         "200 iterations)"};
  });

  criterion(8, "plainness classification", [&] {
    const auto pres = genus2_presentation();
    const LinearRep<double> unitary = linear_rep<double>(
        true,
        {mat2(std::polar(1.0, 0.3), C(0), C(0), std::polar(1.0, -0.3)),
         rot2(0.6), mat2(C(0, 1), C(0), C(0), C(0, -1)), rot2(-1.1)});
    const auto cu = classify_action(unitary, pres, 3);

    Mat<double> d(3, 3), r01(3, 3), r12(3, 3), ph(3, 3);
    d << C(2), C(0), C(0), C(0), C(1), C(0), C(0), C(0), C(1);
    r01 << C(std::cos(0.4)), C(-std::sin(0.4)), C(0), C(std::sin(0.4)),
        C(std::cos(0.4)), C(0), C(0), C(0), C(1);
    r12 << C(1), C(0), C(0), C(0), C(std::cos(0.9)), C(-std::sin(0.9)), C(0),
        C(std::sin(0.9)), C(std::cos(0.9));
    ph << std::polar(1.0, 0.5), C(0), C(0), C(0), std::polar(1.0, -1.2), C(0),
        C(0), C(0), std::polar(1.0, 0.7);
    const LinearRep<double> prox =
        linear_rep<double>(true, {d, r01, r12, ph});
    const auto cp = classify_action(prox, pres, 3);

    double recheck = 0;
    if (cp.witness)
      recheck = proximality_gap(evaluate_word(prox, cp.witness->word));
    const bool ok = cu.verdict == Plainness::PlainByCompactness &&
                    cp.verdict == Plainness::PlainByProximal &&
                    cp.witness.has_value() && recheck > 1e-6;
    return std::pair{
        ok, std::string("unitary -> ") + name(cu.verdict) +
                " (norm bound " + sci(cu.norm_bound) + "); diag(2,1,1) -> " +
                name(cp.verdict) + ", witness " +
                (cp.witness ? to_string(cp.witness->word) : "none") +
                " rechecked gap = " + sci(recheck) + " (need > 1e-6)"};
  });

  criterion(9, "kahler dbar-laplacian identity", [&] {
    const auto metric = poincare_metric<double>();
    std::mt19937_64 rng(2030);
    const ConePoint<double> pc =
        random_cone_point(rng, 0.65, 0.70710678118654752);
    const auto f_id = [](const C& z) { return z; };
    const auto f_sq = [](const C& z) { return z * z; };
    const auto f_cone = [&pc](const C& z) { return f_eval(z, pc); };
    double worst = 0;
    for (const C& z : disc_grid()) {
      worst = std::max(worst, identity_residual(f_id, z, metric, 1e-3));
      worst = std::max(worst, identity_residual(f_sq, z, metric, 1e-3));
      worst = std::max(worst, identity_residual(f_cone, z, metric, 1e-3));
    }
    const C lap0 = laplacian_dbar([](const C& z) { return C(std::norm(z), 0); },
                                  C(0), metric, 1e-3);
    const double point_err = std::abs(lap0 - C(-0.5));
    return std::pair{worst < 1e-5 && point_err < 1e-6,
                     "max grid residual = " + sci(worst) +
                         " (tol 1e-5, f in {z, z^2, cone}); "
                         "|lap|f|^2(0) + 0.5| = " +
                         sci(point_err) + " (tol 1e-6)"};
  });

  criterion(10, "universal orbit limit", [&] {
    const HoloFunction<double> f_id = holo_identity<double>();
    Eigen::Matrix<C, Eigen::Dynamic, 1> pc =
        Eigen::Matrix<C, Eigen::Dynamic, 1>::Zero(65);
    pc[0] = C(0.3, 0.0);
    pc[1] = C(0.0, 0.4);
    pc[2] = C(0.2, 0.0);
    const HoloFunction<double> f_poly = holo_function(std::move(pc));

    std::mt19937_64 rng(2034);
    double worst = 0;
    for (int i = 0; i < 12; ++i) {
      const auto g = random_su11(rng, 0.35);
      const auto h = random_su11(rng, 0.35);
      for (const auto* f : {&f_id, &f_poly}) {
        const auto lhs = precompose_action(compose(g, h), *f);
        const auto rhs = precompose_action(g, precompose_action(h, *f));
        worst =
            std::max(worst, (lhs.taylor - rhs.taylor).cwiseAbs().maxCoeff());
      }
    }

    std::vector<SU11Element<double>> seq;
    for (int n = 1; n <= 40; ++n) seq.push_back(translation(double(n)));
    const auto probe = orbit_limit_probe(seq, f_id);
    const double limit_err =
        probe.has_limit ? std::abs(probe.limit - C(-1)) : 1.0;
    return std::pair{worst < 1e-9 && probe.has_limit && probe.unimodular &&
                         limit_err < 1e-6,
                     "action law residual = " + sci(worst) +
                         " (tol 1e-9, 12 pairs); T(n) limit err = " +
                         sci(limit_err) + " (tol 1e-6, unimodular " +
                         (probe.unimodular ? "yes" : "no") + ")"};
  });

  criterion(11, "deterministic reports", [&] {
    Config cfg;
    cfg.invariance_samples = 300;
    cfg.dbar_fibers = 3;
    cfg.constancy_samples = 6;
    Report a = run_verify_cone(cfg);
    Report b = run_verify_cone(cfg);
    a.with_timestamp = false;
    b.with_timestamp = false;
    const std::string da = a.to_json().dump(2);
    const std::string db = b.to_json().dump(2);
    return std::pair{da == db && a.all_pass(),
                     std::string("reruns byte-identical: ") +
                         (da == db ? "yes" : "no") + " (" +
                         std::to_string(da.size()) + " bytes, all checks " +
                         (a.all_pass() ? "pass" : "FAIL") + ")"};
  });

  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main() {
  try {
    return run_battery();
  } catch (const std::exception& e) {
    std::printf("[FAIL] battery setup: %s\n", e.what());
    return 1;
  }
}
