#include "folia/runners.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "folia/bundle.hpp"
#include "folia/cone.hpp"
#include "folia/fuchsian.hpp"
#include "folia/holspace.hpp"
#include "folia/kahler.hpp"
#include "folia/moebius.hpp"
#include "folia/projdyn.hpp"
#include "folia/sampling.hpp"
#include "folia/serialize.hpp"

namespace folia {
namespace {

using C = std::complex<double>;

nlohmann::json json_complex(const C& z) { return {z.real(), z.imag()}; }

nlohmann::json json_cone(const ConePoint<double>& p) {
  return {{"z1", json_complex(p.z1)},
          {"z2", json_complex(p.z2)},
          {"t", p.t}};
}

// the 21x21 evaluation grid over [-0.7, 0.7]^2 clipped to |z| <= 0.7 that the
// dbar and Laplacian sweeps share
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

// cone fibers for derivative sweeps: |t| >= 0.65 keeps the third derivative
// of f(., p) small enough for the finite-difference contracts (the invariance
// and constancy checks have no such restriction and draw t freely)
ConePoint<double> derivative_regime_fiber(std::mt19937_64& rng) {
  return random_cone_point(rng, 0.65, 0.70710678118654752);
}

LeafwiseFunction<double> cone_leafwise() {
  return {[](const DiscPoint<double>& z, const FiberPoint<double>& x) {
    return f_eval(z, std::get<ConePoint<double>>(x));
  }};
}

CheckRecord expect_check(std::string name, bool ok, double measured,
                         double threshold, nlohmann::json witness = nullptr) {
  CheckRecord r;
  r.check = std::move(name);
  r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  r.measured = measured;
  r.threshold = threshold;
  r.witness = std::move(witness);
  return r;
}

std::string format_sci(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::ConfigError, "cannot write " + path);
  out << body;
}

}  // namespace

Report run_verify_cone(const Config& cfg) {
  validate(cfg);
  Report report;
  report.command = "verify-cone";
  report.config = config_echo(cfg);
  report.warnings = cfg.warnings;

  const auto rep = genus2_octagon_representation(cfg.rel_tol);
  const auto action = natural_fiber_action(rep, cfg.r_fit, cfg.fit_samples,
                                           cfg.tail_tol, cfg.sup_tol);
  const LeafwiseFunction<double> F = cone_leafwise();

  // 1. cone preservation
  {
    std::mt19937_64 rng(cfg.seed);
    double worst = 0;
    for (int i = 0; i < cfg.invariance_samples; ++i) {
      const auto g = random_su11(rng, 1.25);
      const auto p = random_cone_point(rng);
      worst = std::max(worst, cone_constraint_violation(cone_act(g, p)));
    }
    report.add(bounded_check("cone_preservation", worst, 1e-10,
                             {{"samples", cfg.invariance_samples}}));
  }

  // 2. invariance sweep
  {
    std::mt19937_64 rng(cfg.seed + 1);
    double worst = 0;
    for (int i = 0; i < cfg.invariance_samples; ++i) {
      const auto g = random_su11(rng, 1.25);
      const auto z = random_disc_point(rng, 0.95);
      const auto p = random_cone_point(rng);
      worst = std::max(worst, invariance_residual(g, z, p));
    }
    report.add(bounded_check("invariance_sweep", worst, 1e-10,
                             {{"samples", cfg.invariance_samples}}));
  }

  // 3. dbar residual sweep
  {
    std::mt19937_64 rng(cfg.seed + 2);
    std::vector<ConePoint<double>> fibers{cone_point(C(1), C(0), 1.0)};
    for (int i = 1; i < cfg.dbar_fibers; ++i)
      fibers.push_back(derivative_regime_fiber(rng));
    const auto grid = disc_grid();
    double worst = 0;
    for (const auto& p : fibers) {
      for (const C& z : grid) {
        const LeafPoint<double> lp{z, p};  // f is global: no domain reduction
        worst = std::max(worst, dbar_residual(F, lp, cfg.dbar_step));
      }
    }
    report.add(bounded_check(
        "dbar_sweep", worst, 1e-8,
        {{"fibers", cfg.dbar_fibers}, {"grid_points", grid.size()}}));
  }

  // 4. relator holonomy loop
  {
    const C b0(0.1, 0.05);
    std::vector<DiscPoint<double>> waypoints;
    Word prefix;
    for (const Letter& l : rep.presentation.relator.letters) {
      prefix.letters.push_back(l);
      waypoints.push_back(apply_disc(evaluate_word(rep, prefix), b0));
    }
    std::mt19937_64 rng(cfg.seed + 3);
    std::vector<FiberPoint<double>> fibers{
        cone_point(C(1), C(0), 1.0), random_cone_point(rng),
        random_cone_point(rng),
        proj_point<double>([] {
          Vec<double> v(2);
          v << C(0.3, 0.1), C(1, 0);
          return v;
        }())};
    double worst = 0;
    double chart_dist = 0;
    int crossings = 0;
    for (const auto& x : fibers) {
      const LeafPoint<double> lp = leaf_point(rep, b0, x);
      const auto moved =
          transport_polyline(rep, action, lp, waypoints, 1e-12, cfg.max_steps);
      worst = std::max(worst, fiber_distance(lp.fiber, moved.leaf.fiber));
      chart_dist = std::max(
          chart_dist, std::max(std::abs(moved.chart_el.alpha - C(1)),
                               std::abs(moved.chart_el.beta)));
      crossings = moved.crossings;
    }
    report.add(bounded_check("relator_loop", worst, 1e-8,
                             {{"chart_to_identity", chart_dist},
                              {"crossings", crossings},
                              {"translation_length", rep.translation_length},
                              {"relator_residual", relator_residual(rep)}}));
  }

  // 5. t != 0 non-constancy witness on the fiber [1, 0, 1]
  const ConePoint<double> p0 = cone_point(C(1), C(0), 1.0);
  {
    const LeafPoint<double> lp = leaf_point(rep, C(0), FiberPoint<double>(p0));
    const C v0 = F.eval(lp.base, lp.fiber);
    const auto moved = holonomy_transport(rep, action, lp, C(0.5));
    const C v1 = F.eval(moved.leaf.base, moved.leaf.fiber);
    const double measured = std::abs(std::abs(v1 - v0) - 0.5);
    report.add(bounded_check("nonconstancy_witness", measured, 1e-12,
                             {{"value_at_0", json_complex(v0)},
                              {"value_at_half", json_complex(v1)}}));

    // self-test: the same leaf run through leafwise_constancy must come back
    // Witness; a tolerance so slack that it reports Constant contradicts the
    // direct two-point spread above and fails the suite
    const auto verdict = leafwise_constancy(F, rep, action, lp,
                                            cfg.constancy_samples, cfg.seed + 4,
                                            cfg.const_tol);
    report.add(expect_check(
        "constancy_selftest", !verdict.constant, verdict.spread, cfg.const_tol,
        {{"verdict", verdict.constant ? "Constant" : "Witness"},
         {"note", "a t != 0 leaf reported Constant means const_tol is vacuous"}}));
  }

  // 6. t = 0 leaves are constant
  {
    std::mt19937_64 rng(cfg.seed + 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
      const ConePoint<double> p =
          cone_point(std::polar(1 / std::sqrt(2.0), 2 * detail::pi<double>() * u(rng)),
                     std::polar(1 / std::sqrt(2.0), 2 * detail::pi<double>() * u(rng)),
                     0.0);
      const DiscPoint<double> base = std::polar(0.55 * std::sqrt(u(rng)),
                                                2 * detail::pi<double>() * u(rng));
      const LeafPoint<double> lp = leaf_point(rep, base, FiberPoint<double>(p));
      const auto verdict = leafwise_constancy(F, rep, action, lp,
                                              cfg.constancy_samples,
                                              cfg.seed + 6 + i, cfg.const_tol);
      worst = std::max(worst, verdict.spread);
    }
    report.add(bounded_check("t0_constancy", worst, cfg.const_tol,
                             {{"leaves", 4}}));
  }

  return report;
}

Report run_classify(const Config& cfg, const std::string& rep_file) {
  validate(cfg);
  Report report;
  report.command = "classify";
  report.config = config_echo(cfg);
  report.warnings = cfg.warnings;

  const LinearRep<double> rep = linear_rep_from_json(parse_json_file(rep_file));
  const SurfaceGroupPresentation pres = genus2_presentation();

  const auto cls =
      classify_action(rep, pres, cfg.word_radius, cfg.prox_tol, cfg.comp_bound);
  {
    CheckRecord r;
    r.check = "classification";
    r.status = cls.verdict == Plainness::Undetermined ? CheckStatus::Undetermined
                                                      : CheckStatus::Pass;
    r.measured = cls.max_gap;
    r.threshold = cfg.prox_tol;
    r.witness = {{"verdict", name(cls.verdict)},
                 {"norm_bound", cls.norm_bound},
                 {"heuristic", true}};
    if (cls.witness) {
      r.witness["witness_word"] = to_string(cls.witness->word);
      r.witness["witness_gap"] = cls.witness->gap;
    }
    report.add(std::move(r));
  }

  // recompute the witness gap from scratch; PlainByProximal without a
  // confirmable witness is a contract violation
  if (cls.witness) {
    const double gap =
        proximality_gap(evaluate_word(rep, cls.witness->word));
    report.add(expect_check("witness_recheck", gap > cfg.prox_tol, gap,
                            cfg.prox_tol,
                            {{"word", to_string(cls.witness->word)}}));
  }

  // finite-orbit search from the first basis direction and a seeded point
  {
    std::mt19937_64 rng(cfg.seed);
    Vec<double> e1 = Vec<double>::Zero(rep.dimension);
    e1[0] = C(1);
    const std::vector<std::pair<std::string, ProjPoint<double>>> starts{
        {"finite_orbit_e1", proj_point<double>(std::move(e1))},
        {"finite_orbit_random",
         random_proj_point<double>(rng, rep.dimension, rep.complex_field)}};
    for (const auto& [label, p] : starts) {
      const auto size = finite_orbit_search(rep, p, cfg.orbit_bound);
      CheckRecord r;
      r.check = label;
      r.status = CheckStatus::Pass;  // informational: both outcomes are valid
      r.measured = size ? double(*size) : -1.0;
      r.threshold = double(cfg.orbit_bound);
      r.witness = {{"finite", bool(size)}};
      report.add(std::move(r));
    }
  }

  // convergence probe on the best proximal witness
  if (cls.witness) {
    const auto probe = convergence_probe(
        evaluate_word(rep, cls.witness->word), cfg.probe_samples,
        cfg.probe_iterations, cfg.seed + 1, cfg.conv_tol, rep.complex_field);
    report.add(bounded_check("convergence_probe", probe.exceptional_residual,
                             0.01,
                             {{"word", to_string(cls.witness->word)},
                              {"converged_fraction", probe.converged_fraction}}));
  } else {
    CheckRecord r;
    r.check = "convergence_probe";
    r.status = CheckStatus::Undetermined;
    r.measured = 0;
    r.threshold = 0.01;
    r.witness = {{"note", "no proximal witness to probe"}};
    report.add(std::move(r));
  }

  return report;
}

Report run_laplacian_check(const Config& cfg) {
  validate(cfg);
  Report report;
  report.command = "laplacian-check";
  report.config = config_echo(cfg);
  report.warnings = cfg.warnings;

  const auto metric = poincare_metric<double>();
  const auto grid = disc_grid();
  std::mt19937_64 rng(cfg.seed);
  const ConePoint<double> pc = derivative_regime_fiber(rng);

  const auto f_id = [](const C& z) { return z; };
  const auto f_sq = [](const C& z) { return z * z; };
  const auto f_cone = [&pc](const C& z) { return f_eval(z, pc); };

  std::ostringstream csv;
  csv << "re_z,im_z,residual_id,residual_sq,residual_cone\n";
  double worst_id = 0, worst_sq = 0, worst_cone = 0, worst_kernel = 0;
  for (const C& z : grid) {
    const double rid = identity_residual(f_id, z, metric, cfg.lap_step);
    const double rsq = identity_residual(f_sq, z, metric, cfg.lap_step);
    const double rcone = identity_residual(f_cone, z, metric, cfg.lap_step);
    worst_id = std::max(worst_id, rid);
    worst_sq = std::max(worst_sq, rsq);
    worst_cone = std::max(worst_cone, rcone);
    worst_kernel = std::max(
        worst_kernel,
        std::max(std::abs(laplacian_dbar(f_sq, z, metric, cfg.lap_step)),
                 std::abs(laplacian_dbar(
                     [&f_sq](const C& w) { return std::conj(f_sq(w)); }, z,
                     metric, cfg.lap_step))));
    csv << format_sci(z.real()) << ',' << format_sci(z.imag()) << ','
        << format_sci(rid) << ',' << format_sci(rsq) << ','
        << format_sci(rcone) << '\n';
  }
  write_text_file(cfg.out_dir + "/laplacian_residuals.csv", csv.str());

  report.add(bounded_check("identity_grid_id", worst_id, 1e-5,
                           {{"csv", "laplacian_residuals.csv"}}));
  report.add(bounded_check("identity_grid_sq", worst_sq, 1e-5));
  report.add(bounded_check("identity_grid_cone", worst_cone, 1e-5,
                           {{"fiber", json_cone(pc)}}));

  // point values at the origin: lap(|z|^2) = -1/2 and both sides of the
  // identity for f = z equal -0.5
  {
    const auto habs = [](const C& z) { return C(std::norm(z), 0); };
    const C lap0 = laplacian_dbar(habs, C(0), metric, cfg.lap_step);
    const double rid0 = identity_residual(f_id, C(0), metric, cfg.lap_step);
    report.add(bounded_check("point_value", std::abs(lap0 - C(-0.5)), 1e-6,
                             {{"laplacian_abssq_at_0", json_complex(lap0)},
                              {"identity_residual_id_at_0", rid0}}));
  }

  report.add(bounded_check("holomorphic_kernel", worst_kernel, 1e-6));

  // the residual converges at order step^2: halving quarters it, within a
  // factor of two
  {
    const C z0(0.31, 0.17);
    const double r1 = identity_residual(f_sq, z0, metric, cfg.lap_step);
    const double r2 = identity_residual(f_sq, z0, metric, 2 * cfg.lap_step);
    const double ratio = r2 / std::max(r1, 1e-300);
    report.add(expect_check("convergence_order", ratio > 2.0 && ratio < 8.0,
                            ratio, 8.0,
                            {{"residual_step", r1}, {"residual_2step", r2}}));
  }

  return report;
}

Report run_universal_orbit(const Config& cfg) {
  validate(cfg);
  Report report;
  report.command = "universal-orbit";
  report.config = config_echo(cfg);
  report.warnings = cfg.warnings;

  const HoloFunction<double> f_id = holo_identity<double>(cfg.taylor_degree);
  Eigen::Matrix<C, Eigen::Dynamic, 1> pc =
      Eigen::Matrix<C, Eigen::Dynamic, 1>::Zero(cfg.taylor_degree + 1);
  pc[0] = C(0.3, 0.0);
  pc[1] = C(0.0, 0.4);
  pc[2] = C(0.2, 0.0);
  const HoloFunction<double> f_poly = holo_function(std::move(pc), cfg.sup_tol);

  // 1. action law (f o (gh)^-1 twice) on moderate group elements; bmax is
  // chosen so the pole of the composed inverse stays well outside |z| = 1.18
  // and the degree-N truncation keeps representing f o (gh)^-1
  {
    std::mt19937_64 rng(cfg.seed);
    double worst = 0;
    for (int i = 0; i < 12; ++i) {
      const auto g = random_su11(rng, 0.35);
      const auto h = random_su11(rng, 0.35);
      for (const auto* f : {&f_id, &f_poly}) {
        const auto lhs =
            precompose_action(compose(g, h), *f, cfg.r_fit, cfg.fit_samples,
                              cfg.tail_tol, cfg.sup_tol);
        const auto rhs = precompose_action(
            g,
            precompose_action(h, *f, cfg.r_fit, cfg.fit_samples, cfg.tail_tol,
                              cfg.sup_tol),
            cfg.r_fit, cfg.fit_samples, cfg.tail_tol, cfg.sup_tol);
        worst = std::max(worst,
                         (lhs.taylor - rhs.taylor).cwiseAbs().maxCoeff());
      }
    }
    report.add(bounded_check("action_law", worst, 1e-9, {{"pairs", 12}}));
  }

  // 2. identity acts trivially
  {
    const auto back =
        precompose_action(identity<double>(), f_id, cfg.r_fit, cfg.fit_samples,
                          cfg.tail_tol, cfg.sup_tol);
    report.add(bounded_check("identity_action",
                             (back.taylor - f_id.taylor).cwiseAbs().maxCoeff(),
                             1e-12));
  }

  // 3. translations g_n = T(n): f o g_n^-1 -> the constant -1
  {
    std::vector<SU11Element<double>> seq;
    for (int n = 1; n <= cfg.orbit_sequence_length; ++n)
      seq.push_back(translation(double(n)));
    const auto probe = orbit_limit_probe(seq, f_id, 0.5, cfg.conv_tol);
    const double measured =
        probe.has_limit ? std::abs(probe.limit - C(-1)) : 1.0;
    report.add(expect_check("translation_limit",
                            probe.has_limit && probe.unimodular &&
                                measured < 1e-6,
                            measured, 1e-6,
                            {{"has_limit", probe.has_limit},
                             {"unimodular", probe.unimodular},
                             {"final_sup_dist", probe.final_sup_dist}}));
  }

  // 4. rotations never settle on a constant
  {
    std::vector<SU11Element<double>> seq;
    for (int n = 1; n <= cfg.orbit_sequence_length; ++n)
      seq.push_back(rotation(0.7 * n));
    const auto probe = orbit_limit_probe(seq, f_id, 0.5, cfg.conv_tol);
    report.add(expect_check("rotation_no_limit", !probe.has_limit,
                            probe.final_sup_dist, cfg.conv_tol,
                            {{"has_limit", probe.has_limit}}));
  }

  // 5. constants are fixed; a non-unimodular constant limit is flagged
  {
    const auto f_const = holo_constant<double>(C(0.5), cfg.taylor_degree);
    std::vector<SU11Element<double>> seq;
    for (int n = 1; n <= 8; ++n) seq.push_back(translation(double(n)));
    const auto probe = orbit_limit_probe(seq, f_const, 0.5, cfg.conv_tol);
    const double measured =
        probe.has_limit ? std::abs(probe.limit - C(0.5)) : 1.0;
    report.add(expect_check("constant_flagged",
                            probe.has_limit && !probe.unimodular &&
                                measured < 1e-12,
                            measured, 1e-12,
                            {{"unimodular", probe.unimodular}}));
  }

  // 6. the Taylor fit agrees with the closed-form cone coefficients
  {
    std::mt19937_64 rng(cfg.seed + 1);
    const ConePoint<double> p = derivative_regime_fiber(rng);
    const auto fitted = fit_taylor<double>(
        [&p](const C& z) { return f_eval(z, p); }, cfg.taylor_degree,
        cfg.r_fit, cfg.fit_samples);
    std::vector<C> exact(cfg.taylor_degree + 1);
    cone_taylor(p, cfg.taylor_degree, exact.data());
    double worst = 0;
    for (int n = 0; n <= cfg.taylor_degree; ++n)
      worst = std::max(worst, std::abs(fitted[n] - exact[n]));
    report.add(bounded_check("taylor_oracle", worst, 1e-9,
                             {{"fiber", json_cone(p)}}));
  }

  return report;
}

Report run_leaf_grid(const Config& cfg) {
  validate(cfg);
  Report report;
  report.command = "leaf-grid";
  report.config = config_echo(cfg);
  report.warnings = cfg.warnings;

  const auto rep = genus2_octagon_representation(cfg.rel_tol);
  std::mt19937_64 rng(cfg.seed);
  const ConePoint<double> fiber = random_cone_point(rng, 0.3, 0.7);

  // bounding box of the fundamental domain: the vertices are the extreme
  // points (the geodesic sides bow inward), all at the same radius
  const auto& s1 = rep.domain[0];
  const auto& s2 = rep.domain[1];
  const C delta = s2.center - s1.center;
  const double half = std::abs(delta) / 2;
  const double h = std::sqrt(s1.radius * s1.radius - half * half);
  const C mid = (s1.center + s2.center) / 2.0;
  const C u = delta / std::abs(delta);
  const C v1 = mid + C(0, 1) * u * h;
  const C v2 = mid - C(0, 1) * u * h;
  const double R = std::min(std::abs(v1), std::abs(v2));

  const int n = cfg.grid_n;
  std::ostringstream csv;
  csv << "re_z,im_z,re_F,im_F\n";
  std::string pixels(size_t(n) * size_t(n), '\0');
  int inside = 0;
  double max_abs = 0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = R - 2 * R * iy / double(n - 1);  // top row first
    for (int ix = 0; ix < n; ++ix) {
      const double x = -R + 2 * R * ix / double(n - 1);
      const C z(x, y);
      if (std::abs(z) >= 1.0 || !in_domain(rep, z, 1e-9)) continue;
      const C F = f_eval(z, fiber);
      ++inside;
      max_abs = std::max(max_abs, std::abs(F));
      csv << format_sci(x) << ',' << format_sci(y) << ','
          << format_sci(F.real()) << ',' << format_sci(F.imag()) << '\n';
      double val;
      if (cfg.grid_mode == "abs") {
        val = std::clamp(std::abs(F), 0.0, 1.0);
      } else {
        val = (std::arg(F) + detail::pi<double>()) / (2 * detail::pi<double>());
      }
      const int byte = std::clamp(int(std::lround(val * 255.0)), 0, 255);
      pixels[size_t(iy) * size_t(n) + size_t(ix)] = char(byte);
    }
  }
  write_text_file(cfg.out_dir + "/leaf_grid.csv", csv.str());
  std::ostringstream pgm;
  pgm << "P5\n" << n << ' ' << n << "\n255\n" << pixels;
  write_text_file(cfg.out_dir + "/leaf_grid.pgm", pgm.str());

  report.add(expect_check("grid_emitted", inside > 0, double(inside),
                          double(n) * double(n),
                          {{"csv", "leaf_grid.csv"},
                           {"pgm", "leaf_grid.pgm"},
                           {"mode", cfg.grid_mode},
                           {"bounding_half_width", R},
                           {"fiber", json_cone(fiber)}}));
  report.add(bounded_check("leaf_boundedness", max_abs, 1.0 + 1e-12));
  return report;
}

}  // namespace folia
