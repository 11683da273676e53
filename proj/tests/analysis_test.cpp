#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "roughsim/analysis.hpp"

using namespace rough;

namespace {

// Samples ds1/ds2 from the profile shape dS(x) = a|x| + b x^2 plus noise.
DeltaEnsemble shape_ensemble(double a, double b, double noise, std::size_t n,
                             std::uint64_t seed, double p = 0.1) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> eps(0.0, noise);
  DeltaEnsemble e;
  e.L = 6;
  e.d = 3;
  e.p = p;
  e.t = 12;
  for (std::size_t i = 0; i < n; ++i) {
    e.ds1.push_back(a + b + eps(gen));
    e.ds2.push_back(2 * a + 4 * b + eps(gen));
  }
  return e;
}

RatioCurve synthetic_curve(std::size_t L, double slope_scale,
                           const std::vector<double>& ps, double err) {
  // R = 0.5 - L * slope_scale * (p - 0.1): all curves meet at p = 0.1.
  RatioCurve c;
  c.L = L;
  c.name = "r12";
  for (double p : ps) {
    RatioPoint pt;
    pt.p = p;
    pt.value = 0.5 - double(L) * slope_scale * (p - 0.1);
    pt.std_error = err;
    pt.valid = true;
    c.points.push_back(pt);
  }
  return c;
}

// Datasets drawn exactly from the master curve f(u) = tanh(u) with
// u = (p - p_c) t^{1/nu}, optionally with amplitude t^theta.
std::vector<CollapseDataset> master_curve_data(double p_c, double nu,
                                               double theta, double err) {
  std::vector<CollapseDataset> sets;
  for (std::size_t L : {4, 6, 8, 12}) {
    CollapseDataset ds;
    ds.L = L;
    ds.t = double(2 * L);
    for (double p = 0.05; p <= 0.145; p += 0.005) {
      const double u = (p - p_c) * std::pow(ds.t, 1.0 / nu);
      const double y = std::pow(ds.t, theta) * std::tanh(u);
      ds.points.push_back({p, y, err * std::max(1.0, std::pow(ds.t, theta))});
    }
    sets.push_back(std::move(ds));
  }
  return sets;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("r12 on pure profile shapes") {
  // dS = c|x|  -> 1/2
  auto smooth = shape_ensemble(3.0, 0.0, 0.0, 50, 1);
  CHECK(ratio_r12(smooth).value == doctest::Approx(0.5));
  // dS = c x^2 -> 1/4
  auto rough_e = shape_ensemble(0.0, 0.7, 0.0, 50, 2);
  CHECK(ratio_r12(rough_e).value == doctest::Approx(0.25));
  // mixed a|x| + b x^2 -> (a+b)/(2a+4b)
  auto mixed = shape_ensemble(2.0, 0.5, 0.0, 50, 3);
  CHECK(ratio_r12(mixed).value == doctest::Approx(2.5 / 6.0));
}

TEST_CASE("r12 is scale invariant and flags zero denominators") {
  auto e = shape_ensemble(1.0, 0.3, 0.2, 200, 4);
  const double r = ratio_r12(e).value;
  for (auto& v : e.ds1) v *= 7.0;
  for (auto& v : e.ds2) v *= 7.0;
  CHECK(ratio_r12(e).value == doctest::Approx(r));

  DeltaEnsemble zero;
  zero.ds1 = {1, 1, 1};
  zero.ds2 = {0, 0, 0};
  CHECK(!ratio_r12(zero).valid);
}

TEST_CASE("r12 standard error shrinks like 1/sqrt(n)") {
  const double e1 = ratio_r12(shape_ensemble(1, 0.3, 0.5, 100, 9)).std_error;
  const double e2 = ratio_r12(shape_ensemble(1, 0.3, 0.5, 10000, 9)).std_error;
  CHECK(e2 < e1);
  CHECK(e2 * 5.0 < e1 * 1.0 + 1e-12);  // roughly the factor 10
}

TEST_CASE("r1d1 basics") {
  // Identical samples: sigma = 0, flagged.
  DeltaEnsemble flat;
  flat.ds1 = {5, 5, 5, 5};
  flat.ds2 = flat.ds1;
  CHECK(!ratio_r1d1(flat).valid);

  // Normal samples mean 10 sigma 2 -> about 5 with a sane bootstrap error.
  std::mt19937_64 gen(12);
  std::normal_distribution<double> d(10.0, 2.0);
  DeltaEnsemble e;
  for (int i = 0; i < 4000; ++i) {
    e.ds1.push_back(d(gen));
    e.ds2.push_back(0.0);
  }
  const RatioPoint pt = ratio_r1d1(e);
  REQUIRE(pt.valid);
  CHECK(pt.value == doctest::Approx(5.0).epsilon(0.05));
  CHECK(pt.std_error > 0.0);
  CHECK(pt.std_error < 0.5);
}

TEST_CASE("crossing of two exactly constructed curves is at p = 0.1") {
  const std::vector<double> ps{0.06, 0.08, 0.1, 0.12, 0.14};
  const auto cross = find_crossings(
      {synthetic_curve(4, 1.0, ps, 0.01), synthetic_curve(8, 1.0, ps, 0.01)});
  REQUIRE(cross.pairs.size() == 1);
  REQUIRE(cross.pairs[0].found);
  CHECK(cross.pairs[0].p_cross == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(cross.has_estimate);
  CHECK(cross.p_c == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(cross.pairs[0].large_size_flag);  // involves the largest size
}

TEST_CASE("parallel curves report no crossing") {
  const std::vector<double> ps{0.06, 0.08, 0.1};
  auto a = synthetic_curve(4, 1.0, ps, 0.01);
  auto b = a;
  b.L = 8;
  for (auto& pt : b.points) pt.value += 0.2;  // shifted, same slope
  const auto cross = find_crossings({a, b});
  REQUIRE(cross.pairs.size() == 1);
  CHECK(!cross.pairs[0].found);
  CHECK(!cross.has_estimate);
  CHECK_THROWS(find_crossings({a}));
}

TEST_CASE("noisy synthetic crossings recover the truth within error") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> eps(0.0, 0.004);
  std::vector<double> ps;
  for (double p = 0.06; p <= 0.135; p += 0.01) ps.push_back(p);
  std::vector<RatioCurve> curves;
  for (std::size_t L : {4, 6, 8}) {
    auto c = synthetic_curve(L, 1.2, ps, 0.004);
    for (auto& pt : c.points) {
      // shift the common crossing to 0.095
      pt.value = 0.5 - double(L) * 1.2 * (pt.p - 0.095) + eps(gen);
    }
    curves.push_back(std::move(c));
  }
  const auto cross = find_crossings(curves);
  REQUIRE(cross.has_estimate);
  CHECK(std::abs(cross.p_c - 0.095) < 4.0 * cross.error + 0.003);
}

TEST_CASE("collapse objective is near 1 at truth and larger away from it") {
  const auto sets = master_curve_data(0.095, 1.5, 0.0, 0.01);
  const double at_truth = collapse_objective(sets, 0.095, 1.5);
  CHECK(at_truth < 2.0);
  CHECK(collapse_objective(sets, 0.12, 1.5) > 5.0 * at_truth);
  CHECK(collapse_objective(sets, 0.095, 0.5) > 5.0 * at_truth);
}

TEST_CASE("collapse objective symmetry and error normalization") {
  auto sets = master_curve_data(0.095, 1.5, 0.0, 0.02);
  const double q = collapse_objective(sets, 0.09, 1.2);
  std::swap(sets[0], sets[3]);
  std::swap(sets[1], sets[2]);
  CHECK(collapse_objective(sets, 0.09, 1.2) == doctest::Approx(q));
  // Scaling every error by c divides the objective by c^2 (documented
  // normalization: squared deviations in units of combined errors).
  for (auto& ds : sets)
    for (auto& pt : ds.points) pt.error *= 2.0;
  CHECK(collapse_objective(sets, 0.09, 1.2) == doctest::Approx(q / 4.0));
}

TEST_CASE("collapse objective input validation") {
  auto sets = master_curve_data(0.095, 1.5, 0.0, 0.01);
  CHECK_THROWS(collapse_objective({sets[0]}, 0.095, 1.5));
  CHECK_THROWS(collapse_objective(sets, 0.095, -1.0));
  // Two datasets with disjoint rescaled ranges: nothing brackets anything.
  std::vector<CollapseDataset> far{sets[0], sets[1]};
  for (auto& pt : far[1].points) pt.p += 100.0;
  CHECK_THROWS_WITH_AS(collapse_objective(far, 0.095, 1.5),
                       doctest::Contains("L="), std::invalid_argument);
}

TEST_CASE("fit_collapse recovers (p_c, nu) from synthetic data") {
  const auto sets = master_curve_data(0.095, 1.5, 0.0, 0.01);
  CollapseGrid grid{0.06, 0.13, 15, 0.8, 2.5, 18};
  const auto res = fit_collapse(sets, grid, CollapseMode::pc_nu);
  REQUIRE(!res.degenerate);
  CHECK(std::abs(res.p_c - 0.095) < 0.005);
  CHECK(std::abs(res.nu - 1.5) / 1.5 < 0.10);
  CHECK(res.landscape.size() == 15);
  CHECK(res.landscape[0].size() == 18);
  CHECK(res.a_lo <= res.p_c);
  CHECK(res.a_hi >= res.p_c);
}

TEST_CASE("fit_collapse recovers (theta_c, nu) at fixed p_c") {
  const auto sets = master_curve_data(0.095, 1.5, 1.3, 0.01);
  CollapseGrid grid{0.5, 2.5, 21, 0.8, 2.5, 18};
  const auto res =
      fit_collapse(sets, grid, CollapseMode::thetac_nu, 0.095);
  REQUIRE(!res.degenerate);
  CHECK(std::abs(res.theta_c - 1.3) / 1.3 < 0.10);
  CHECK(std::abs(res.nu - 1.5) / 1.5 < 0.10);
}

TEST_CASE("fit_collapse rejects an empty grid") {
  const auto sets = master_curve_data(0.095, 1.5, 0.0, 0.01);
  CHECK_THROWS(fit_collapse(sets, CollapseGrid{0, 1, 0, 1, 2, 5},
                            CollapseMode::pc_nu));
}

TEST_CASE("degenerate collapse: single shared point per size") {
  std::vector<CollapseDataset> sets(2);
  sets[0].L = 4;
  sets[0].t = 8;
  sets[0].points = {{0.1, 0.5, 0.1}, {0.2, 0.6, 0.1}};
  sets[1].L = 8;
  sets[1].t = 16;
  sets[1].points = {{0.1, 0.5, 0.1}, {0.2, 0.6, 0.1}};
  // With a huge nu the rescaled grids nearly coincide; objective stays
  // defined. The degenerate path is exercised via fit_collapse on a flat
  // landscape instead: identical values everywhere.
  for (auto& ds : sets)
    for (auto& pt : ds.points) pt.value = 1.0;
  const auto res = fit_collapse(sets, CollapseGrid{0.05, 0.15, 5, 1, 2, 5},
                                CollapseMode::pc_nu);
  CHECK(res.degenerate);
}

TEST_CASE("regime fits recover exact synthetic profiles") {
  std::vector<double> xs, ys_lin, ys_quad, ys_crit;
  for (int x = -6; x <= 6; ++x) {
    if (x == 0) continue;
    xs.push_back(double(x));
    ys_lin.push_back(3.0 * std::abs(double(x)));
    ys_quad.push_back(0.2 * double(x) * double(x));
    ys_crit.push_back(std::pow(std::abs(double(x)), 1.7));
  }
  const auto lin = fit_profile_regime(xs, ys_lin, Regime::smooth);
  CHECK(lin.amplitude == doctest::Approx(3.0));
  CHECK(lin.residual == doctest::Approx(0.0).epsilon(1e-12));

  const auto quad = fit_profile_regime(xs, ys_quad, Regime::rough);
  CHECK(quad.amplitude == doctest::Approx(0.2));
  CHECK(quad.residual == doctest::Approx(0.0).epsilon(1e-12));

  const auto crit = fit_profile_regime(xs, ys_crit, Regime::critical);
  CHECK(crit.exponent == doctest::Approx(1.7).epsilon(1e-3));
  CHECK(crit.theta_c == doctest::Approx(1.3).epsilon(1e-3));
  CHECK(crit.amplitude == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(crit.residual < 1e-6);
}

TEST_CASE("regime fit needs more informative points than parameters") {
  CHECK_THROWS(fit_profile_regime({0.0}, {0.0}, Regime::smooth));
  CHECK_THROWS(fit_profile_regime({0.0, 1.0}, {0.0, 1.0}, Regime::critical));
  CHECK_NOTHROW(fit_profile_regime({1.0, 2.0}, {1.0, 2.0}, Regime::critical));
}

TEST_CASE("reference exponents satisfy hyperscaling arithmetic") {
  CHECK(kThetaCFrgPrediction == doctest::Approx(1.5));
  CHECK(theta_r_hyperscaling(kZetaRoughFrg) == doctest::Approx(1.42));
  CHECK(theta_r_hyperscaling(kZetaRoughFrg) ==
        doctest::Approx(kThetaRoughFrg).epsilon(1e-9));
}

}  // TEST_SUITE
