#include "roughsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "roughsim/rng.hpp"

namespace rough {

RatioPoint ratio_r12(const DeltaEnsemble& e) {
  const DeltaStats s = compute_delta_stats(e.ds1, e.ds2);
  return ratio_r12_from_stats(e.p, s, e.ds1.size());
}

RatioPoint ratio_r12_from_stats(double p, const DeltaStats& s, std::size_t n) {
  RatioPoint out;
  out.p = p;
  if (!s.r12_valid || !s.sd_valid || n < 2) return out;
  out.value = s.r12;
  const double m1 = s.mean_d1, m2 = s.mean_d2;
  const double var = (s.sd_d1 * s.sd_d1 / (m2 * m2) +
                      m1 * m1 * s.sd_d2 * s.sd_d2 / (m2 * m2 * m2 * m2) -
                      2.0 * m1 * s.cov_d12 / (m2 * m2 * m2)) /
                     double(n);
  out.std_error = var > 0 ? std::sqrt(var) : 0.0;
  out.valid = true;
  return out;
}

RatioPoint ratio_r1d1(const DeltaEnsemble& e, std::size_t bootstrap_reps,
                      std::uint64_t seed) {
  const DeltaStats s = compute_delta_stats(e.ds1, e.ds2);
  RatioPoint out;
  out.p = e.p;
  const std::size_t n = e.ds1.size();
  if (!s.r1d1_valid || n < 2) return out;
  out.value = s.r1d1;

  Rng rng(seed);
  double sum = 0, sum2 = 0;
  std::size_t reps_used = 0;
  for (std::size_t rep = 0; rep < bootstrap_reps; ++rep) {
    double m = 0, v = 0;
    std::vector<double> draw(n);
    for (std::size_t i = 0; i < n; ++i) draw[i] = e.ds1[rng.below(n)];
    for (double x : draw) m += x;
    m /= double(n);
    for (double x : draw) v += (x - m) * (x - m);
    v /= double(n - 1);
    if (v <= 0) continue;
    const double r = m / std::sqrt(v);
    sum += r;
    sum2 += r * r;
    ++reps_used;
  }
  if (reps_used >= 2) {
    const double mean = sum / double(reps_used);
    const double var = (sum2 - double(reps_used) * mean * mean) / double(reps_used - 1);
    out.std_error = var > 0 ? std::sqrt(var) : 0.0;
  }
  out.valid = true;
  return out;
}

RatioPoint ratio_r1d1_from_stats(double p, const DeltaStats& s, std::size_t n) {
  RatioPoint out;
  out.p = p;
  if (!s.r1d1_valid || n < 2) return out;
  out.value = s.r1d1;
  // Normal approximation: Var(m/sd) ~ (1 + R^2/2)/n.
  out.std_error = std::sqrt((1.0 + 0.5 * s.r1d1 * s.r1d1) / double(n));
  out.valid = true;
  return out;
}

CrossingResult find_crossings(const std::vector<RatioCurve>& curves) {
  if (curves.size() < 2)
    throw std::invalid_argument("find_crossings: need at least two curves");
  CrossingResult out;
  std::size_t largest = 0;
  for (const auto& c : curves) largest = std::max(largest, c.L);

  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      const RatioCurve& ca = curves[a];
      const RatioCurve& cb = curves[b];
      PairCrossing pc;
      pc.L1 = ca.L;
      pc.L2 = cb.L;
      pc.large_size_flag = (ca.L == largest || cb.L == largest);

      // Difference of the two curves on the shared p grid.
      std::vector<double> ps, diff, err;
      for (const auto& pa : ca.points) {
        if (!pa.valid) continue;
        for (const auto& pb : cb.points) {
          if (!pb.valid || pa.p != pb.p) continue;
          ps.push_back(pa.p);
          diff.push_back(pa.value - pb.value);
          err.push_back(std::sqrt(pa.std_error * pa.std_error +
                                  pb.std_error * pb.std_error));
        }
      }
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        const double d1 = diff[i], d2 = diff[i + 1];
        if (d1 == 0.0 && d2 == 0.0) continue;
        if ((d1 <= 0.0 && d2 > 0.0) || (d1 >= 0.0 && d2 < 0.0) || d1 == 0.0) {
          const double slope = (d2 - d1) / (ps[i + 1] - ps[i]);
          pc.found = true;
          pc.p_cross = ps[i] - d1 / slope;
          // Propagate endpoint errors through the interpolation.
          const double w2 = (pc.p_cross - ps[i]) / (ps[i + 1] - ps[i]);
          const double w1 = 1.0 - w2;
          pc.error = std::sqrt(w1 * w1 * err[i] * err[i] +
                               w2 * w2 * err[i + 1] * err[i + 1]) /
                     std::max(std::abs(slope), 1e-300);
          break;
        }
      }
      out.pairs.push_back(pc);
    }
  }

  double wsum = 0, wval = 0;
  for (const auto& pc : out.pairs) {
    if (!pc.found) continue;
    const double w = 1.0 / std::max(pc.error * pc.error, 1e-12);
    wsum += w;
    wval += w * pc.p_cross;
  }
  if (wsum > 0) {
    out.has_estimate = true;
    out.p_c = wval / wsum;
    out.error = std::sqrt(1.0 / wsum);
  }
  return out;
}

namespace {

struct ScaledPoint {
  double u, w, dw;
};

double objective_impl(const std::vector<CollapseDataset>& datasets, double p_c,
                      double nu, std::optional<double> theta, bool* degenerate) {
  if (datasets.size() < 2)
    throw std::invalid_argument("collapse_objective: need at least two datasets");
  if (nu <= 0) throw std::invalid_argument("collapse_objective: nu must be > 0");

  std::vector<std::vector<ScaledPoint>> scaled(datasets.size());
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const double t = datasets[i].t;
    const double yscale = theta ? std::pow(t, -*theta) : 1.0;
    for (const auto& pt : datasets[i].points) {
      scaled[i].push_back({(pt.p - p_c) * std::pow(t, 1.0 / nu),
                           pt.value * yscale, pt.error * yscale});
    }
    std::sort(scaled[i].begin(), scaled[i].end(),
              [](const ScaledPoint& a, const ScaledPoint& b) { return a.u < b.u; });
  }

  double sum = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    // Master curve for dataset i: union of all other datasets' points.
    std::vector<ScaledPoint> master;
    for (std::size_t j = 0; j < datasets.size(); ++j) {
      if (j == i) continue;
      master.insert(master.end(), scaled[j].begin(), scaled[j].end());
    }
    std::sort(master.begin(), master.end(),
              [](const ScaledPoint& a, const ScaledPoint& b) { return a.u < b.u; });
    for (const auto& pt : scaled[i]) {
      auto it = std::lower_bound(
          master.begin(), master.end(), pt.u,
          [](const ScaledPoint& m, double u) { return m.u < u; });
      if (it == master.begin() || it == master.end()) continue;  // not bracketed
      const ScaledPoint& hi = *it;
      const ScaledPoint& lo = *(it - 1);
      const double span = hi.u - lo.u;
      double y, dy2;
      if (span <= 0) {
        y = 0.5 * (lo.w + hi.w);
        dy2 = 0.25 * (lo.dw * lo.dw + hi.dw * hi.dw);
      } else {
        const double f = (pt.u - lo.u) / span;
        y = lo.w + f * (hi.w - lo.w);
        dy2 = (1 - f) * (1 - f) * lo.dw * lo.dw + f * f * hi.dw * hi.dw;
      }
      const double denom = pt.dw * pt.dw + dy2;
      if (denom <= 0) continue;
      sum += (pt.w - y) * (pt.w - y) / denom;
      ++count;
    }
  }
  if (degenerate) *degenerate = (count < 2);
  if (count == 0) {
    std::string sizes;
    for (const auto& d : datasets) sizes += " L=" + std::to_string(d.L);
    throw std::invalid_argument(
        "collapse_objective: no overlap between rescaled datasets:" + sizes);
  }
  return sum / double(count);
}

}  // namespace

double collapse_objective(const std::vector<CollapseDataset>& datasets,
                          double p_c, double nu, std::optional<double> theta) {
  return objective_impl(datasets, p_c, nu, theta, nullptr);
}

CollapseResult fit_collapse(const std::vector<CollapseDataset>& datasets,
                            const CollapseGrid& grid, CollapseMode mode,
                            double fixed_p_c) {
  if (grid.a_steps == 0 || grid.nu_steps == 0)
    throw std::invalid_argument("fit_collapse: empty search grid");

  CollapseResult out;
  out.mode = mode;

  auto eval = [&](double a, double nu) {
    const double p_c = (mode == CollapseMode::pc_nu) ? a : fixed_p_c;
    const std::optional<double> theta =
        (mode == CollapseMode::thetac_nu) ? std::optional<double>(a) : std::nullopt;
    try {
      return objective_impl(datasets, p_c, nu, theta, nullptr);
    } catch (const std::invalid_argument&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  auto linspace = [](double lo, double hi, std::size_t steps) {
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i)
      v[i] = steps == 1 ? lo : lo + (hi - lo) * double(i) / double(steps - 1);
    return v;
  };

  out.a_values = linspace(grid.a_min, grid.a_max, grid.a_steps);
  out.nu_values = linspace(grid.nu_min, grid.nu_max, grid.nu_steps);
  out.landscape.assign(grid.a_steps, std::vector<double>(grid.nu_steps, 0.0));

  double best = std::numeric_limits<double>::infinity();
  double best_a = out.a_values.front(), best_nu = out.nu_values.front();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.a_steps; ++i) {
    for (std::size_t j = 0; j < grid.nu_steps; ++j) {
      const double q = eval(out.a_values[i], out.nu_values[j]);
      out.landscape[i][j] = q;
      if (q < best) {
        best = q;
        best_a = out.a_values[i];
        best_nu = out.nu_values[j];
      }
      if (std::isfinite(q)) worst = std::max(worst, q);
    }
  }
  if (!std::isfinite(best) || worst - best < 1e-12) {
    out.degenerate = true;
    return out;
  }

  // Local refinement: shrink the scan window around the incumbent.
  double a_span = (grid.a_max - grid.a_min) / double(grid.a_steps);
  double nu_span = (grid.nu_max - grid.nu_min) / double(grid.nu_steps);
  for (int level = 0; level < 4; ++level) {
    const auto avs = linspace(best_a - a_span, best_a + a_span, 11);
    const auto nvs = linspace(std::max(1e-3, best_nu - nu_span),
                              best_nu + nu_span, 11);
    for (double a : avs) {
      for (double nu : nvs) {
        const double q = eval(a, nu);
        if (q < best) {
          best = q;
          best_a = a;
          best_nu = nu;
        }
      }
    }
    a_span /= 4;
    nu_span /= 4;
  }

  out.objective = best;
  out.nu = best_nu;
  if (mode == CollapseMode::pc_nu) {
    out.p_c = best_a;
  } else {
    out.theta_c = best_a;
    out.p_c = fixed_p_c;
  }

  // Objective-increase-by-1 heuristic intervals on the coarse landscape.
  out.a_lo = best_a;
  out.a_hi = best_a;
  out.nu_lo = best_nu;
  out.nu_hi = best_nu;
  for (std::size_t i = 0; i < grid.a_steps; ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.nu_steps; ++j)
      row_min = std::min(row_min, out.landscape[i][j]);
    if (row_min <= best + 1.0) {
      out.a_lo = std::min(out.a_lo, out.a_values[i]);
      out.a_hi = std::max(out.a_hi, out.a_values[i]);
    }
  }
  for (std::size_t j = 0; j < grid.nu_steps; ++j) {
    double col_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.a_steps; ++i)
      col_min = std::min(col_min, out.landscape[i][j]);
    if (col_min <= best + 1.0) {
      out.nu_lo = std::min(out.nu_lo, out.nu_values[j]);
      out.nu_hi = std::max(out.nu_hi, out.nu_values[j]);
    }
  }
  return out;
}

RegimeFit fit_profile_regime(const std::vector<double>& xs,
                             const std::vector<double>& ys, Regime regime) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("fit_profile_regime: size mismatch");
  const std::size_t nparams = (regime == Regime::critical) ? 2 : 1;
  std::size_t informative = 0;
  for (double x : xs)
    if (x != 0.0) ++informative;
  if (informative < nparams)
    throw std::invalid_argument("fit_profile_regime: fewer points than parameters");

  RegimeFit out;
  out.regime = regime;

  auto linear_amp = [&](auto basis) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double b = basis(xs[i]);
      num += b * ys[i];
      den += b * b;
    }
    return den > 0 ? num / den : 0.0;
  };
  auto rms = [&](auto model) {
    double s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - model(xs[i]);
      s += r * r;
    }
    return std::sqrt(s / double(xs.size()));
  };

  if (regime == Regime::smooth) {
    out.amplitude = linear_amp([](double x) { return std::abs(x); });
    out.exponent = 1.0;
    out.residual = rms([&](double x) { return out.amplitude * std::abs(x); });
    return out;
  }
  if (regime == Regime::rough) {
    out.amplitude = linear_amp([](double x) { return x * x; });
    out.exponent = 2.0;
    out.residual = rms([&](double x) { return out.amplitude * x * x; });
    return out;
  }

  // Critical regime: B |x|^{3-theta_c}; scan the exponent and refine by
  // golden section.
  auto fit_at = [&](double c, double* amp_out) {
    const double amp =
        linear_amp([&](double x) { return x == 0 ? 0.0 : std::pow(std::abs(x), c); });
    if (amp_out) *amp_out = amp;
    return rms([&](double x) {
      return x == 0 ? 0.0 : amp * std::pow(std::abs(x), c);
    });
  };
  double best_c = 1.0, best_r = std::numeric_limits<double>::infinity();
  for (double c = 0.5; c <= 2.5 + 1e-9; c += 0.01) {
    const double r = fit_at(c, nullptr);
    if (r < best_r) {
      best_r = r;
      best_c = c;
    }
  }
  double lo = best_c - 0.01, hi = best_c + 0.01;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double c1 = hi - gr * (hi - lo);
    const double c2 = lo + gr * (hi - lo);
    if (fit_at(c1, nullptr) < fit_at(c2, nullptr))
      hi = c2;
    else
      lo = c1;
  }
  best_c = 0.5 * (lo + hi);
  out.residual = fit_at(best_c, &out.amplitude);
  out.exponent = best_c;
  out.theta_c = 3.0 - best_c;
  return out;
}

}  // namespace rough
