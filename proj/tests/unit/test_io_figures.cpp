// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "illspec/discretize/gram.hpp"
#include "illspec/figures/figures.hpp"
#include "illspec/io/serialize.hpp"
#include "illspec/util/errors.hpp"

using namespace illspec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("illspec_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("sha256") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("gram round trips in every arithmetic") {
  const mpfr_prec_t p = 160;
  for (const GramMatrix& g : {left_gram(compositions::ha_j(), 4), right_gram(compositions::d_ha(), 3, resolution(p)),
                              galerkin_gram(compositions::mj(), 5, Arithmetic::Double)}) {
    const nlohmann::json j = io::gram_to_json(g);
    CHECK(j["schema_version"] == io::kSchemaVersion);
    const GramMatrix back = io::gram_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.entries == g.entries);
    CHECK(back.op == g.op);
    CHECK(back.scheme == g.scheme);
    CHECK(back.precision == g.precision);
  }
  nlohmann::json bad = io::gram_to_json(left_gram(compositions::d_ha(), 2));
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(io::gram_from_json(bad), ValidationError);
}

TEST_CASE("spectrum JSON is bit exact and CSV has one row per value") {
  const Spectrum s = eigen_sym(left_gram(compositions::d_ha(), 6), 256);
  const Spectrum back = io::spectrum_from_json(nlohmann::json::parse(io::spectrum_to_json(s).dump()));
  CHECK(back.values == s.values);
  CHECK(back.trust_cutoff == s.trust_cutoff);
  const std::string csv = io::spectrum_csv(s);
  CHECK(csv.rfind("index,sigma,log10_sigma,trusted\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

}

TEST_SUITE("figures") {

TEST_CASE("curve CSV round trip") {
  Curve c;
  c.index = {1, 2, 3};
  c.log10_sigma = {0.0, -1.2345678901234567, -3.5};
  const Curve back = curve_from_csv(curve_csv(c));
  CHECK(back.index == c.index);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.log10_sigma[i] == doctest::Approx(c.log10_sigma[i]).epsilon(1e-15));
}

TEST_CASE("tail linearity of an exact exponential") {
  std::vector<BigFloat> v;
  for (int i = 1; i <= 10; ++i) v.emplace_back(std::exp(-0.7 * i), 128);
  CHECK(tail_linearity_residual(spectrum_from_values(v, 128)) < 1e-12);
}

TEST_CASE("svg panel is well formed") {
  Panel p{"t", "title & more", {Curve{"a", {1, 2}, {0.0, -1.0}, 1, false, "#000"}}};
  const std::string svg = render_svg(p);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("title &amp; more") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("figure 2 bound curves and manifest") {
  const fs::path out = scratch("fig2");
  FigureSpec spec;
  spec.which = 2;
  spec.ns = {12};
  spec.precision = 256;
  const FigureOutput f = render_figure(spec, out.string());
  CHECK(fs::exists(out / "fig2" / "manifest.json"));
  CHECK(f.manifest["files"].size() == f.files.size() - 1);
  const Curve lower = curve_from_csv(io::read_file((out / "fig2" / "bound_DHa_lower.csv").string()));
  CHECK(std::pow(10.0, lower.log10_sigma.front()) == doctest::Approx(0.1353).epsilon(1e-3));
  const Curve hl = curve_from_csv(io::read_file((out / "fig2" / "bound_HaJ_lower.csv").string()));
  CHECK(std::pow(10.0, hl.log10_sigma.front()) == doctest::Approx(0.2019).epsilon(1e-3));
  fs::remove_all(out);
}

}
