#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <string>

#include "folia/fuchsian.hpp"
#include "folia/sampling.hpp"

using namespace folia;
using C = Cplx<double>;

namespace {

const FuchsianRepresentation<double>& octagon() {
  static const FuchsianRepresentation<double> rep =
      genus2_octagon_representation<double>();
  return rep;
}

// 2 arccosh(1 + sqrt 2), the closed form the numeric solve must reproduce
const double kLength = 2.0 * std::acosh(1.0 + std::sqrt(2.0));

}  // namespace

TEST_CASE("word reduction and inversion") {
  Word w;
  w.letters = {{0, +1}, {1, +1}, {1, -1}, {0, -1}, {2, +1}};
  const Word r = reduce(w);
  CHECK(r.length() == 1);
  CHECK(r.letters[0] == Letter{2, +1});
  CHECK(r.reduced());
  CHECK_FALSE(w.reduced());

  CHECK(concat(inverse(r), r).length() == 0);
  CHECK(to_string(r) == "g2");
  CHECK(to_string(inverse(r)) == "g2'");
  CHECK(to_string(Word{}) == "e");
}

TEST_CASE("genus-2 presentation carries the alternating length-8 relator") {
  const SurfaceGroupPresentation pres = genus2_presentation();
  CHECK(pres.genus == 2);
  CHECK(pres.generator_count() == 4);
  CHECK(pres.relator.length() == 8);
  CHECK(pres.relator.reduced());
  CHECK(to_string(pres.relator) == "g0g1'g2g3'g0'g1g2'g3");
}

TEST_CASE("word_ball sizes match the reduced-word counts") {
  const SurfaceGroupPresentation pres = genus2_presentation();
  CHECK(word_ball(pres, 0).size() == 1);
  CHECK(word_ball(pres, 0)[0].length() == 0);
  CHECK(word_ball(pres, 1).size() == 8);
  // 8 + 8*7 and 8 + 8*7 + 8*7*7
  CHECK(word_ball(pres, 2).size() == 64);
  CHECK(word_ball(pres, 3).size() == 456);

  std::set<std::string> seen;
  for (const Word& w : word_ball(pres, 3)) {
    CHECK(w.reduced());
    seen.insert(to_string(w));
  }
  CHECK(seen.size() == 456);  // no free-group duplicates

  CHECK_THROWS_AS(word_ball(pres, 13), Error);
}

TEST_CASE("translation length solves to 2 arccosh(1 + sqrt 2)") {
  const double l = solve_translation_length<double>(genus2_presentation().relator);
  CHECK(l == doctest::Approx(kLength).epsilon(1e-9));
  CHECK(std::cosh(l / 2) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("the non-alternating pairing word does not close") {
  // with opposite sides paired, the vertex cycle closes on the alternating
  // relator; the word g0 g1 g2 g3 g0' g1' g2' g3' stays far from the center
  // for every candidate length, so solving against it must fail
  Word plain;
  plain.letters = {{0, +1}, {1, +1}, {2, +1}, {3, +1},
                   {0, -1}, {1, -1}, {2, -1}, {3, -1}};
  CHECK(detail::octagon_relator_residual(kLength, plain) > 0.1);
  CHECK_THROWS_AS(solve_translation_length<double>(plain), Error);
}

TEST_CASE("octagon representation closes the relator on +identity") {
  const auto& rep = octagon();
  CHECK(relator_residual(rep) < 1e-9);

  // the cone action distinguishes g from -g, so mod-center closure is not
  // enough; the constructor guarantees the exact identity
  const SU11Element<double> rel = evaluate_word(rep, rep.presentation.relator);
  CHECK(std::abs(rel.alpha - C(1)) < 1e-9);
  CHECK(std::abs(rel.beta) < 1e-9);
}

TEST_CASE("octagon generators are hyperbolic translations on rotated axes") {
  const auto& rep = octagon();
  REQUIRE(rep.images.size() == 4);
  for (const auto& g : rep.images) {
    CHECK(classify_isometry(g) == IsometryClass::Hyperbolic);
    CHECK(std::abs(determinant(g) - 1.0) < 1e-12);
  }
  CHECK(std::abs(apply_disc(rep.images[0], C(0)) -
                 C(std::tanh(rep.translation_length / 2))) < 1e-12);

  const auto fp = fixed_points(rep.images[1]);
  CHECK(std::abs(fp.z[0] - std::polar(1.0, detail::pi<double>() / 4)) < 1e-9);
}

TEST_CASE("domain sides are geodesics with the right apothem") {
  const auto& rep = octagon();
  REQUIRE(rep.domain.size() == 8);
  const double x = std::tanh(rep.translation_length / 4);
  for (const auto& s : rep.domain) {
    // orthogonality to the unit circle
    CHECK(std::norm(s.center) - s.radius * s.radius ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Euclidean distance from the origin to the side
    CHECK(std::abs(s.center) - s.radius == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("octagon vertices sit at radius 2^(-1/4)") {
  const auto& rep = octagon();
  const auto& s1 = rep.domain[0];
  const auto& s2 = rep.domain[1];
  const C delta = s2.center - s1.center;
  const double dist = std::abs(delta);
  const double h = std::sqrt(s1.radius * s1.radius - dist * dist / 4);
  const C mid = (s1.center + s2.center) / 2.0;
  const C v1 = mid + C(0, 1) * (delta / dist) * h;
  const C v2 = mid - C(0, 1) * (delta / dist) * h;
  const C v = std::abs(v1) < std::abs(v2) ? v1 : v2;
  CHECK(std::abs(v) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-12));
  CHECK(std::arg(v) == doctest::Approx(detail::pi<double>() / 8).epsilon(1e-12));
}

TEST_CASE("interior angles are pi/4 and the area is 4 pi") {
  const auto& rep = octagon();
  const auto angles = interior_angles(rep);
  REQUIRE(angles.size() == 8);
  for (double a : angles)
    CHECK(a == doctest::Approx(detail::pi<double>() / 4).epsilon(1e-9));
  // Gauss-Bonnet: 6 pi minus the angle sum
  CHECK(octagon_area(rep) ==
        doctest::Approx(4.0 * detail::pi<double>()).epsilon(1e-9));
}

TEST_CASE("in_domain separates the origin from points beyond the apothem") {
  const auto& rep = octagon();
  CHECK(in_domain(rep, C(0)));
  const double x = std::tanh(rep.translation_length / 4);
  CHECK(in_domain(rep, C(x), 1e-9));        // side midpoint, on the boundary
  CHECK_FALSE(in_domain(rep, C(x + 0.01)));
  CHECK_FALSE(in_domain(rep, C(0.9, 0)));
}

TEST_CASE("side pairings map a side midpoint to the opposite midpoint") {
  const auto& rep = octagon();
  const double x = std::tanh(rep.translation_length / 4);
  CHECK(side_pairing_letter(0) == Letter{0, -1});
  CHECK(side_pairing_letter(4) == Letter{0, +1});
  CHECK(side_pairing_letter(6) == Letter{2, +1});
  // side 4 has midpoint -x; its pairing g0 carries it to the midpoint of
  // side 0
  CHECK(std::abs(apply_disc(side_pairing(rep, 4), C(-x)) - C(x)) < 1e-12);
  CHECK(std::abs(apply_disc(side_pairing(rep, 0), C(x)) - C(-x)) < 1e-12);
}

TEST_CASE("locate_in_domain is a retraction") {
  const auto& rep = octagon();
  const auto [w, z] = locate_in_domain(rep, C(0));
  CHECK(w.length() == 0);
  CHECK(std::abs(z) < 1e-15);

  // one pairing step undoes a generator push
  for (int k = 0; k < 4; ++k) {
    const C pushed = apply_disc(rep.images[size_t(k)], C(0));
    const auto [wk, zk] = locate_in_domain(rep, pushed);
    CHECK(wk.length() == 1);
    CHECK(wk.letters[0] == Letter{k, -1});
    CHECK(std::abs(zk) < 1e-10);
  }
}

TEST_CASE("locate_in_domain undoes every word in the radius-2 ball") {
  // tile disjointness: pushing an interior point around by a short word and
  // reducing it back must recover the same point
  const auto& rep = octagon();
  const C z0(0.11, -0.07);
  for (const Word& w : word_ball(rep.presentation, 2)) {
    const C pushed = apply_disc(evaluate_word(rep, w), z0);
    const auto [back, zr] = locate_in_domain(rep, pushed);
    CHECK(std::abs(zr - z0) < 1e-9);
    CHECK(std::abs(apply_disc(evaluate_word(rep, back), pushed) - zr) < 1e-12);
  }
}

TEST_CASE("locate_in_domain terminates on deep points") {
  const auto& rep = octagon();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 2 * detail::pi<double>());
  for (int i = 0; i < 25; ++i) {
    const C z = std::polar(0.95, u(rng));
    const auto [w, zr] = locate_in_domain(rep, z);
    CHECK(in_domain(rep, zr, 1e-10));
    CHECK(std::abs(apply_disc(evaluate_word(rep, w), z) - zr) < 1e-10);
  }
}

TEST_CASE("evaluate rejects out-of-range generator indices") {
  const auto& rep = octagon();
  try {
    evaluate_letter(rep, Letter{7, +1});
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::IndexOutOfRange);
  }
}
