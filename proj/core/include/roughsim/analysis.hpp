#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roughsim/experiment.hpp"

namespace rough {

struct RatioPoint {
  double p = 0;
  double value = 0;
  double std_error = 0;
  bool valid = false;  // flagged points are excluded from crossings
};

struct RatioCurve {
  std::size_t L = 0;
  std::string name;  // "R12" or "R1d1"
  std::vector<RatioPoint> points;  // p strictly increasing
};

// E[dS1]/E[dS2]; standard error by the delta method using the sample
// covariance of the two step costs.
RatioPoint ratio_r12(const DeltaEnsemble& e);

// E[dS1]/sigma[dS1]; standard error by bootstrap over realizations.
RatioPoint ratio_r1d1(const DeltaEnsemble& e, std::size_t bootstrap_reps = 200,
                      std::uint64_t seed = 7);

// CSV re-analysis path: same ratios from aggregate statistics only (normal
// approximation for the r1d1 error).
RatioPoint ratio_r12_from_stats(double p, const DeltaStats& s, std::size_t n);
RatioPoint ratio_r1d1_from_stats(double p, const DeltaStats& s, std::size_t n);

struct PairCrossing {
  std::size_t L1 = 0, L2 = 0;
  bool found = false;
  double p_cross = 0;
  double error = 0;
  bool large_size_flag = false;  // diagnostics for the noisiest pair
};

struct CrossingResult {
  std::vector<PairCrossing> pairs;
  bool has_estimate = false;
  double p_c = 0;      // error-weighted mean over pairs
  double error = 0;
};

CrossingResult find_crossings(const std::vector<RatioCurve>& curves);

struct CollapsePoint {
  double p, value, error;
};

struct CollapseDataset {
  std::size_t L = 0;
  double t = 0;  // scale variable (the runtime)
  std::vector<CollapsePoint> points;
};

// Master-curve collapse quality: each point is compared, in units of the
// combined errors, against the linear interpolation through the rescaled
// points of the other datasets. Abscissa (p - p_c) t^{1/nu}; ordinate
// rescaled by t^{-theta} when theta is given. ~1 for a perfect collapse.
double collapse_objective(const std::vector<CollapseDataset>& datasets,
                          double p_c, double nu,
                          std::optional<double> theta = std::nullopt);

enum class CollapseMode {
  pc_nu,       // scan (p_c, nu), no ordinate rescaling
  thetac_nu,   // scan (theta_c, nu) at fixed p_c
};

struct CollapseGrid {
  // axis 1 = p_c (pc_nu mode) or theta_c (thetac_nu mode); axis 2 = nu
  double a_min = 0, a_max = 0;
  std::size_t a_steps = 0;
  double nu_min = 0, nu_max = 0;
  std::size_t nu_steps = 0;
};

struct CollapseResult {
  CollapseMode mode = CollapseMode::pc_nu;
  double p_c = 0;
  double nu = 0;
  double theta_c = 0;
  double objective = 0;
  bool degenerate = false;  // flat landscape, no estimate
  // Requested-resolution landscape, landscape[i][j] at (a_values[i], nu_values[j]).
  std::vector<double> a_values;
  std::vector<double> nu_values;
  std::vector<std::vector<double>> landscape;
  // 68%-style interval from the objective-increase-by-1 heuristic
  // (non-rigorous, reported as such).
  double a_lo = 0, a_hi = 0;
  double nu_lo = 0, nu_hi = 0;
};

CollapseResult fit_collapse(const std::vector<CollapseDataset>& datasets,
                            const CollapseGrid& grid, CollapseMode mode,
                            double fixed_p_c = 0.0);

enum class Regime { smooth, rough, critical };

struct RegimeFit {
  Regime regime = Regime::smooth;
  double amplitude = 0;   // a (smooth), b (rough), B_c (critical)
  double exponent = 0;    // 3 - theta_c for the critical regime
  double theta_c = 0;     // critical regime only
  double residual = 0;    // root-mean-square residual
};

// Least-squares fit of dS(x) to a|x| (smooth), b x^2 (rough) or
// B |x|^{3-theta_c} with theta_c free (critical), over |x| <= x_max.
RegimeFit fit_profile_regime(const std::vector<double>& xs,
                             const std::vector<double>& ys, Regime regime);

// Reference constants for reporting only (not used in any fit).
inline constexpr double kThetaCFrgPrediction = 1.5;
inline constexpr double kZetaRoughFrg = 0.21;
inline constexpr double kThetaRoughFrg = 1.42;
inline constexpr double theta_r_hyperscaling(double zeta_r) {
  return 1.0 + 2.0 * zeta_r;
}

}  // namespace rough
