#pragma once

// JSON import/export for representations and Taylor truncations.  Doubles go
// through nlohmann's shortest-roundtrip printing, so a write/read cycle
// reproduces values exactly (well inside the 1e-15 relative contract).

#include <json.hpp>

#include <complex>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "folia/errors.hpp"
#include "folia/fuchsian.hpp"
#include "folia/holspace.hpp"
#include "folia/projdyn.hpp"

namespace folia {

inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorCode::ParseError,
          path + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
  }
}

inline nlohmann::json to_json(const Word& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const Letter& l : w.letters) j.push_back({l.gen, l.exp});
  return j;
}

inline Word word_from_json(const nlohmann::json& j) {
  Word w;
  for (const auto& entry : j) {
    const Letter l{entry.at(0).get<int>(), entry.at(1).get<int>()};
    if (l.exp != 1 && l.exp != -1)
      raise(ErrorCode::ParseError, "letter exponent must be +1 or -1");
    w.letters.push_back(l);
  }
  return w;
}

template <class Real>
inline nlohmann::json to_json(const FuchsianRepresentation<Real>& rep) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : rep.images) {
    gens.push_back({{"alpha", {g.alpha.real(), g.alpha.imag()}},
                    {"beta", {g.beta.real(), g.beta.imag()}}});
  }
  nlohmann::json sides = nlohmann::json::array();
  for (const auto& s : rep.domain) {
    sides.push_back(
        {{"center", {s.center.real(), s.center.imag()}}, {"radius", s.radius}});
  }
  return nlohmann::json{{"genus", rep.presentation.genus},
                        {"relator", to_json(rep.presentation.relator)},
                        {"translation_length", rep.translation_length},
                        {"generators", std::move(gens)},
                        {"domain", std::move(sides)}};
}

template <class Real = double>
inline FuchsianRepresentation<Real> fuchsian_from_json(
    const nlohmann::json& j) {
  try {
    FuchsianRepresentation<Real> rep;
    rep.presentation.genus = j.at("genus").get<int>();
    rep.presentation.relator = word_from_json(j.at("relator"));
    rep.translation_length = j.value("translation_length", Real(0));
    for (const auto& g : j.at("generators")) {
      const auto a = g.at("alpha");
      const auto b = g.at("beta");
      rep.images.push_back(su11_new<Real>(
          {a.at(0).get<Real>(), a.at(1).get<Real>()},
          {b.at(0).get<Real>(), b.at(1).get<Real>()}));
    }
    for (const auto& s : j.at("domain")) {
      const auto c = s.at("center");
      rep.domain.push_back(GeodesicSide<Real>{
          {c.at(0).get<Real>(), c.at(1).get<Real>()},
          s.at("radius").get<Real>()});
    }
    return rep;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("representation: ") + e.what());
  }
}

template <class Real = double>
inline LinearRep<Real> linear_rep_from_json(const nlohmann::json& j) {
  try {
    const std::string field = j.at("field").get<std::string>();
    if (field != "C" && field != "R")
      raise(ErrorCode::ParseError, "field tag must be 'C' or 'R'");
    const int n = j.at("dimension").get<int>();
    if (n < 1) raise(ErrorCode::ParseError, "dimension must be positive");
    std::vector<Mat<Real>> gens;
    for (const auto& g : j.at("generators")) {
      const auto& re = g.at("re");
      if (int(re.size()) != n * n)
        raise(ErrorCode::DimensionMismatch,
              "matrix entry count does not match dimension");
      Mat<Real> m(n, n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          Real im(0);
          if (g.contains("im")) im = g.at("im").at(r * n + c).get<Real>();
          m(r, c) = std::complex<Real>(re.at(r * n + c).get<Real>(), im);
        }
      }
      gens.push_back(std::move(m));
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
      labels = j.at("labels").get<std::vector<std::string>>();
    return linear_rep<Real>(field == "C", std::move(gens), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("linear rep: ") + e.what());
  }
}

template <class Real>
inline nlohmann::json to_json(const LinearRep<Real>& rep) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& m : rep.generators) {
    std::vector<Real> re, im;
    for (int r = 0; r < rep.dimension; ++r) {
      for (int c = 0; c < rep.dimension; ++c) {
        re.push_back(m(r, c).real());
        im.push_back(m(r, c).imag());
      }
    }
    gens.push_back({{"re", re}, {"im", im}});
  }
  nlohmann::json j{{"field", rep.complex_field ? "C" : "R"},
                   {"dimension", rep.dimension},
                   {"generators", std::move(gens)}};
  if (!rep.labels.empty()) j["labels"] = rep.labels;
  return j;
}

template <class Real>
inline nlohmann::json to_json(const HoloFunction<Real>& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (Eigen::Index n = 0; n < f.taylor.size(); ++n)
    coeffs.push_back({f.taylor[n].real(), f.taylor[n].imag()});
  return nlohmann::json{{"taylor", std::move(coeffs)},
                        {"degree", f.degree()},
                        {"r_check", f.r_check},
                        {"certified_sup", f.certified_sup}};
}

template <class Real = double>
inline HoloFunction<Real> holo_from_json(const nlohmann::json& j,
                                         Real sup_tol = Real(1e-6)) {
  try {
    const auto& coeffs = j.at("taylor");
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> c(coeffs.size());
    for (size_t n = 0; n < coeffs.size(); ++n) {
      c[Eigen::Index(n)] = std::complex<Real>(coeffs.at(n).at(0).get<Real>(),
                                              coeffs.at(n).at(1).get<Real>());
    }
    // the certificate is recomputed, not trusted from the file
    return holo_function<Real>(std::move(c), sup_tol,
                               j.value("r_check", Real(0.999)));
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("holo function: ") + e.what());
  }
}

}  // namespace folia
