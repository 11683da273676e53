// rough: batch front-end for the roughening-transition toolkit.
//
// Subcommands: run, analyze, collapse, profile, validate, plot.
// Exit codes: 0 success, 1 validation/analysis failure, 2 configuration error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "roughsim/analysis.hpp"
#include "roughsim/experiment.hpp"
#include "roughsim/io.hpp"
#include "roughsim/svgplot.hpp"
#include "roughsim/validate.hpp"

namespace fs = std::filesystem;
using namespace rough;

namespace {

std::string p_tag(double p) { return format_double(p); }

std::string profile_name(std::size_t L, double p) {
  return "profile_L" + std::to_string(L) + "_p" + p_tag(p) + ".csv";
}
std::string observables_name(std::size_t L, double p) {
  return "observables_L" + std::to_string(L) + "_p" + p_tag(p) + ".csv";
}
std::string raw_dir_name(std::size_t L, double p) {
  return "raw_L" + std::to_string(L) + "_p" + p_tag(p);
}

// ---------------------------------------------------------------------------
// run

// Like run_ensemble, but each realization is persisted to (and resumed from)
// a per-sample file, so an interrupted or extended ensemble only computes the
// missing samples.
EnsembleSummary run_ensemble_resumable(const ProtocolConfig& config,
                                       const fs::path& raw_dir) {
  config.validate();
  fs::create_directories(raw_dir);
  std::vector<EntropyRecord> records(config.samples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.samples) return;
      const fs::path file = raw_dir / ("sample_" + std::to_string(i) + ".csv");
      const std::uint64_t seed = derive_seed(config.master_seed, i);
      if (fs::exists(file)) {
        records[i] = read_record_csv(file.string());
        if (records[i].sample_seed == seed) continue;
        // Stale file from a different master seed: recompute.
      }
      records[i] = run_realization(config, seed);
      write_record_csv(file.string(), records[i], config);
    }
  };
  const std::size_t nw = std::min(config.workers, config.samples);
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return summarize_records(config, records);
}

// Best-effort diagnostic plot; failures are reported but never propagate.
void try_plot_profile(const EnsembleSummary& s, const fs::path& path) {
  try {
    std::vector<svg::Series> series;
    const long half = long(2 * s.config.L);
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      svg::Series ser;
      ser.label = "t=" + std::to_string(s.times[k]);
      for (std::size_t c = 0; c < s.mean_S[k].size(); ++c) {
        ser.x.push_back(double(long(c) - half));
        ser.y.push_back(s.mean_S[k][c]);
        ser.yerr.push_back(s.samples > 1
                               ? s.std_S[k][c] / std::sqrt(double(s.samples))
                               : 0.0);
      }
      series.push_back(std::move(ser));
    }
    svg::PlotOptions opt;
    opt.title = "S(x,t), L=" + std::to_string(s.config.L) +
                ", p=" + p_tag(s.config.p);
    opt.xlabel = "x";
    opt.ylabel = "S (bits)";
    svg::write_line_plot(path.string(), series, opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "warning: plot failed (%s): %s\n",
                 path.string().c_str(), e.what());
  }
}

int cmd_run(const std::string& config_path) {
  RunConfig cfg = parse_run_config(config_path);
  if (const char* w = std::getenv("ROUGHSIM_WORKERS"))
    cfg.base.workers = std::max(1, std::atoi(w));
  fs::path out_dir = cfg.output_dir;
  if (const char* root = std::getenv("ROUGHSIM_OUTPUT_ROOT"))
    out_dir = fs::path(root) / out_dir;
  fs::create_directories(out_dir);

  RunManifest manifest;
  manifest.config = cfg;
  for (std::size_t i = 0; i < cfg.base.samples; ++i)
    manifest.sample_seeds.push_back(derive_seed(cfg.base.master_seed, i));

  const auto t0 = std::chrono::steady_clock::now();
  for (double p : cfg.ps) {
    ProtocolConfig pc = cfg.base;
    pc.p = p;
    const EnsembleSummary summary =
        cfg.save_raw
            ? run_ensemble_resumable(pc, out_dir / raw_dir_name(pc.L, p))
            : run_ensemble(pc);
    const fs::path prof = out_dir / profile_name(pc.L, p);
    const fs::path obs = out_dir / observables_name(pc.L, p);
    write_profile_csv(prof.string(), summary);
    write_observables_csv(obs.string(), summary);
    manifest.outputs.push_back(prof.string());
    manifest.outputs.push_back(obs.string());
    if (pc.samples < 2)
      std::fprintf(stderr,
                   "warning: p=%s has a single sample; std_S columns are 0 "
                   "and not meaningful\n",
                   p_tag(p).c_str());
    try_plot_profile(summary, out_dir / ("profile_L" + std::to_string(pc.L) +
                                         "_p" + p_tag(p) + ".svg"));
    std::printf("p=%s done: %zu samples, wrote %s\n", p_tag(p).c_str(),
                summary.samples, prof.string().c_str());
  }
  manifest.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest((out_dir / "manifest.json").string(), manifest);
  std::printf("manifest: %s\n", (out_dir / "manifest.json").string().c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// shared analysis plumbing

struct GroupedObservables {
  // [L][p] -> window-averaged stats near the final time
  std::map<std::size_t, std::map<double, std::pair<DeltaStats, std::size_t>>>
      by_L;
  std::map<std::size_t, std::size_t> runtime_by_L;  // max recorded t
};

// Averages each (L, p) group's statistics over the late-time window
// [T - window_back, T], where T is the largest recorded time of the group.
GroupedObservables group_observables(const std::vector<std::string>& files,
                                     std::size_t window_back) {
  std::map<std::size_t, std::map<double, std::vector<ObservablesRow>>> rows;
  for (const auto& f : files)
    for (const auto& r : read_observables_csv(f)) rows[r.L][r.p].push_back(r);
  GroupedObservables out;
  for (auto& [L, by_p] : rows) {
    for (auto& [p, group] : by_p) {
      std::size_t T = 0;
      for (const auto& r : group) T = std::max(T, r.t);
      out.runtime_by_L[L] = std::max(out.runtime_by_L[L], T);
      DeltaStats avg;
      avg.sd_valid = avg.r12_valid = avg.r1d1_valid = true;
      std::size_t n = SIZE_MAX, used = 0;
      for (const auto& r : group) {
        if (r.t + window_back < T) continue;
        avg.mean_d1 += r.stats.mean_d1;
        avg.mean_d2 += r.stats.mean_d2;
        avg.sd_d1 += r.stats.sd_d1;
        avg.sd_d2 += r.stats.sd_d2;
        avg.cov_d12 += r.stats.cov_d12;
        avg.sd_valid = avg.sd_valid && r.stats.sd_valid;
        avg.r12_valid = avg.r12_valid && r.stats.r12_valid;
        avg.r1d1_valid = avg.r1d1_valid && r.stats.r1d1_valid;
        n = std::min(n, r.n_samples);
        ++used;
      }
      if (used == 0) continue;
      const double k = double(used);
      avg.mean_d1 /= k;
      avg.mean_d2 /= k;
      avg.sd_d1 /= k;
      avg.sd_d2 /= k;
      avg.cov_d12 /= k;
      out.by_L[L][p] = {avg, n};
    }
  }
  return out;
}

std::vector<RatioCurve> ratio_curves(const GroupedObservables& g,
                                     const std::string& observable) {
  std::vector<RatioCurve> curves;
  for (const auto& [L, by_p] : g.by_L) {
    RatioCurve c;
    c.L = L;
    c.name = observable;
    for (const auto& [p, stats_n] : by_p) {
      c.points.push_back(observable == "r12"
                             ? ratio_r12_from_stats(p, stats_n.first,
                                                    stats_n.second)
                             : ratio_r1d1_from_stats(p, stats_n.first,
                                                     stats_n.second));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void write_ratio_csv(const fs::path& path,
                     const std::vector<RatioCurve>& curves) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << "name,L,p,value,std_error,valid\n";
  for (const auto& c : curves)
    for (const auto& pt : c.points)
      out << c.name << "," << c.L << "," << format_double(pt.p) << ","
          << format_double(pt.value) << "," << format_double(pt.std_error)
          << "," << (pt.valid ? 1 : 0) << "\n";
}

std::vector<CollapseDataset> collapse_datasets(const GroupedObservables& g,
                                               const std::string& observable) {
  std::vector<CollapseDataset> sets;
  for (const auto& c : ratio_curves(g, observable)) {
    CollapseDataset ds;
    ds.L = c.L;
    ds.t = double(g.runtime_by_L.at(c.L));
    for (const auto& pt : c.points)
      if (pt.valid) ds.points.push_back({pt.p, pt.value, pt.std_error});
    if (ds.points.size() >= 2) sets.push_back(std::move(ds));
  }
  return sets;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const std::vector<std::string>& observables_files,
                const std::vector<std::string>& profile_files,
                const std::string& observable, const std::string& out_dir_s,
                std::size_t window_back, const std::string& regime_s,
                double regime_p, long regime_t, double regime_xmax) {
  const fs::path out_dir = out_dir_s;
  fs::create_directories(out_dir);
  nlohmann::json report;

  if (!observables_files.empty()) {
    const GroupedObservables grouped =
        group_observables(observables_files, window_back);
    std::vector<RatioCurve> curves = ratio_curves(grouped, "r12");
    auto curves2 = ratio_curves(grouped, "r1d1");
    std::vector<RatioCurve> all = curves;
    all.insert(all.end(), curves2.begin(), curves2.end());
    write_ratio_csv(out_dir / "ratios.csv", all);

    const auto& cross_input = observable == "r1d1" ? curves2 : curves;
    const CrossingResult cross = find_crossings(cross_input);
    std::ofstream cf(out_dir / "crossings.csv");
    cf << "L1,L2,found,p_cross,error,large_size_flag\n";
    for (const auto& pr : cross.pairs)
      cf << pr.L1 << "," << pr.L2 << "," << (pr.found ? 1 : 0) << ","
         << format_double(pr.p_cross) << "," << format_double(pr.error) << ","
         << (pr.large_size_flag ? 1 : 0) << "\n";
    cf.close();
    report["crossings"]["observable"] = observable;
    report["crossings"]["has_estimate"] = cross.has_estimate;
    if (cross.has_estimate) {
      report["crossings"]["p_c"] = cross.p_c;
      report["crossings"]["error"] = cross.error;
      std::printf("p_c estimate (%s crossings): %s +- %s\n",
                  observable.c_str(), format_double(cross.p_c).c_str(),
                  format_double(cross.error).c_str());
    } else {
      std::printf("no pairwise crossings found for %s\n", observable.c_str());
    }
  }

  if (!profile_files.empty()) {
    std::vector<ProfileRow> rows;
    for (const auto& f : profile_files)
      for (const auto& r : read_profile_csv(f)) rows.push_back(r);
    long t_sel = regime_t;
    if (t_sel < 0)
      for (const auto& r : rows) t_sel = std::max(t_sel, long(r.t));
    std::vector<double> ps_present;
    for (const auto& r : rows)
      if (std::find(ps_present.begin(), ps_present.end(), r.p) ==
          ps_present.end())
        ps_present.push_back(r.p);
    if (std::isnan(regime_p)) {
      if (ps_present.size() != 1)
        throw SchemaError("profile files contain several p values; pass --p");
      regime_p = ps_present.front();
    }
    const double xmax = regime_xmax > 0 ? regime_xmax : double(t_sel) / 4.0;
    double s0 = NAN;
    for (const auto& r : rows)
      if (long(r.t) == t_sel && r.p == regime_p && r.x == 0) s0 = r.mean_S;
    if (std::isnan(s0))
      throw SchemaError("no x=0 profile row at the requested (p, t)");
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
      if (long(r.t) != t_sel || r.p != regime_p) continue;
      if (r.x == 0 || std::abs(double(r.x)) > xmax) continue;
      xs.push_back(double(r.x));
      ys.push_back(r.mean_S - s0);
    }
    const std::map<std::string, Regime> regimes = {
        {"smooth", Regime::smooth},
        {"rough", Regime::rough},
        {"critical", Regime::critical}};
    auto fit_one = [&](const std::string& name) {
      const RegimeFit fit = fit_profile_regime(xs, ys, regimes.at(name));
      nlohmann::json j;
      j["amplitude"] = fit.amplitude;
      j["residual_rms"] = fit.residual;
      if (name == "critical") {
        j["exponent"] = fit.exponent;
        j["theta_c"] = fit.theta_c;
      }
      return j;
    };
    report["regime_fit"]["p"] = regime_p;
    report["regime_fit"]["t"] = t_sel;
    report["regime_fit"]["x_max"] = xmax;
    if (regime_s == "all") {
      for (const auto& [name, _] : regimes)
        report["regime_fit"][name] = fit_one(name);
    } else {
      report["regime_fit"][regime_s] = fit_one(regime_s);
    }
    report["reference"]["theta_c_frg"] = kThetaCFrgPrediction;
    report["reference"]["zeta_r_frg"] = kZetaRoughFrg;
    report["reference"]["theta_r_frg"] = kThetaRoughFrg;
    report["reference"]["theta_r_hyperscaling"] =
        theta_r_hyperscaling(kZetaRoughFrg);
  }

  std::ofstream rf(out_dir / "analysis.json");
  rf << report.dump(2) << "\n";
  std::printf("analysis report: %s\n",
              (out_dir / "analysis.json").string().c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// collapse

int cmd_collapse(const std::vector<std::string>& observables_files,
                 const std::string& observable, const std::string& mode_s,
                 double fixed_pc, const CollapseGrid& grid,
                 std::size_t window_back, const std::string& out_dir_s) {
  const fs::path out_dir = out_dir_s;
  fs::create_directories(out_dir);
  const GroupedObservables grouped =
      group_observables(observables_files, window_back);
  const auto datasets = collapse_datasets(grouped, observable);
  if (datasets.size() < 2)
    throw SchemaError("collapse needs ratio curves for at least two sizes");

  const CollapseMode mode =
      mode_s == "thetac_nu" ? CollapseMode::thetac_nu : CollapseMode::pc_nu;
  const CollapseResult res = fit_collapse(datasets, grid, mode, fixed_pc);

  std::ofstream lf(out_dir / "landscape.csv");
  lf << (mode == CollapseMode::pc_nu ? "p_c" : "theta_c") << ",nu,objective\n";
  for (std::size_t i = 0; i < res.a_values.size(); ++i)
    for (std::size_t j = 0; j < res.nu_values.size(); ++j)
      lf << format_double(res.a_values[i]) << ","
         << format_double(res.nu_values[j]) << ","
         << format_double(res.landscape[i][j]) << "\n";
  lf.close();

  nlohmann::json j;
  j["observable"] = observable;
  j["mode"] = mode_s;
  j["degenerate"] = res.degenerate;
  j["objective"] = res.objective;
  j["nu"] = res.nu;
  j["nu_interval"] = {res.nu_lo, res.nu_hi};
  if (mode == CollapseMode::pc_nu) {
    j["p_c"] = res.p_c;
    j["p_c_interval"] = {res.a_lo, res.a_hi};
  } else {
    j["p_c"] = fixed_pc;
    j["theta_c"] = res.theta_c;
    j["theta_c_interval"] = {res.a_lo, res.a_hi};
  }
  j["interval_note"] =
      "objective-increase-by-1 heuristic, not a rigorous confidence region";
  std::ofstream jf(out_dir / "collapse.json");
  jf << j.dump(2) << "\n";

  try {
    svg::PlotOptions opt;
    opt.title = "collapse objective (" + observable + ")";
    opt.xlabel = "nu";
    opt.ylabel = mode == CollapseMode::pc_nu ? "p_c" : "theta_c";
    svg::write_heatmap((out_dir / "landscape.svg").string(), res.nu_values,
                       res.a_values, res.landscape, opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "warning: landscape plot failed: %s\n", e.what());
  }

  if (res.degenerate) {
    std::fprintf(stderr, "collapse landscape is flat: no estimate\n");
    return 1;
  }
  if (mode == CollapseMode::pc_nu)
    std::printf("p_c = %s  nu = %s  (objective %s)\n",
                format_double(res.p_c).c_str(), format_double(res.nu).c_str(),
                format_double(res.objective).c_str());
  else
    std::printf("theta_c = %s  nu = %s  (objective %s)\n",
                format_double(res.theta_c).c_str(),
                format_double(res.nu).c_str(),
                format_double(res.objective).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// profile / validate / plot

int cmd_profile(const std::string& config_path, std::size_t sample,
                std::string out_file) {
  RunConfig cfg = parse_run_config(config_path);
  ProtocolConfig pc = cfg.base;
  pc.p = cfg.ps.front();
  pc.time_window.clear();  // full time resolution for the dump
  const std::uint64_t seed = derive_seed(pc.master_seed, sample);
  const EntropyRecord rec = run_realization(pc, seed);
  if (out_file.empty())
    out_file = (fs::path(cfg.output_dir) /
                ("realization_sample" + std::to_string(sample) + ".csv"))
                   .string();
  fs::create_directories(fs::path(out_file).parent_path().empty()
                             ? "."
                             : fs::path(out_file).parent_path());
  write_record_csv(out_file, rec, pc);
  std::printf("wrote %s (seed %llu)\n", out_file.c_str(),
              (unsigned long long)seed);
  return 0;
}

int cmd_validate(std::size_t max_qubits, std::size_t trials,
                 std::uint64_t seed) {
  const auto results = run_all_suites(max_qubits, trials, seed);
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%s %s: %s\n", r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.passed()) {
      std::printf("     reproduce with trial seed %llu\n",
                  (unsigned long long)r.repro_seed);
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

int cmd_plot(const std::string& profile_file, const std::string& ratios_file,
             const std::string& landscape_file, const std::string& out_file) {
  svg::PlotOptions opt;
  if (!profile_file.empty()) {
    const auto rows = read_profile_csv(profile_file);
    if (rows.empty()) throw SchemaError("empty profile CSV");
    std::size_t t_max = 0;
    for (const auto& r : rows) t_max = std::max(t_max, r.t);
    std::map<double, svg::Series> by_p;
    for (const auto& r : rows) {
      if (r.t != t_max) continue;
      auto& s = by_p[r.p];
      if (s.label.empty()) s.label = "p=" + p_tag(r.p);
      s.x.push_back(double(r.x));
      s.y.push_back(r.mean_S);
      s.yerr.push_back(r.n_samples > 1
                           ? r.std_S / std::sqrt(double(r.n_samples))
                           : 0.0);
    }
    std::vector<svg::Series> series;
    for (auto& [_, s] : by_p) series.push_back(std::move(s));
    opt.title = "S(x) at t=" + std::to_string(t_max);
    opt.xlabel = "x";
    opt.ylabel = "S (bits)";
    svg::write_line_plot(out_file, series, opt);
  } else if (!ratios_file.empty()) {
    std::ifstream in(ratios_file);
    if (!in) throw SchemaError("cannot open: " + ratios_file);
    std::string line;
    std::getline(in, line);
    if (line != "name,L,p,value,std_error,valid")
      throw SchemaError("unexpected ratio CSV header");
    std::map<std::string, svg::Series> by_curve;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string name, Ls, ps, vs, es, flag;
      std::getline(ss, name, ',');
      std::getline(ss, Ls, ',');
      std::getline(ss, ps, ',');
      std::getline(ss, vs, ',');
      std::getline(ss, es, ',');
      std::getline(ss, flag, ',');
      if (flag == "0") continue;
      auto& s = by_curve[name + " L=" + Ls];
      if (s.label.empty()) s.label = name + " L=" + Ls;
      s.x.push_back(std::stod(ps));
      s.y.push_back(std::stod(vs));
      s.yerr.push_back(std::stod(es));
    }
    std::vector<svg::Series> series;
    for (auto& [_, s] : by_curve) series.push_back(std::move(s));
    opt.title = "ratio curves";
    opt.xlabel = "p";
    opt.ylabel = "ratio";
    svg::write_line_plot(out_file, series, opt);
  } else if (!landscape_file.empty()) {
    std::ifstream in(landscape_file);
    if (!in) throw SchemaError("cannot open: " + landscape_file);
    std::string line;
    std::getline(in, line);  // header: <a>,nu,objective
    std::vector<double> as, nus;
    std::map<std::pair<double, double>, double> cells;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string a, nu, v;
      std::getline(ss, a, ',');
      std::getline(ss, nu, ',');
      std::getline(ss, v, ',');
      const double av = std::stod(a), nv = std::stod(nu);
      if (std::find(as.begin(), as.end(), av) == as.end()) as.push_back(av);
      if (std::find(nus.begin(), nus.end(), nv) == nus.end())
        nus.push_back(nv);
      cells[{av, nv}] = std::stod(v);
    }
    std::sort(as.begin(), as.end());
    std::sort(nus.begin(), nus.end());
    std::vector<std::vector<double>> grid(as.size(),
                                          std::vector<double>(nus.size(), NAN));
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = 0; j < nus.size(); ++j) {
        auto it = cells.find({as[i], nus[j]});
        if (it != cells.end()) grid[i][j] = it->second;
      }
    opt.title = "collapse objective";
    opt.xlabel = "nu";
    opt.ylabel = "p_c / theta_c";
    svg::write_heatmap(out_file, nus, as, grid, opt);
  } else {
    throw ConfigError("plot: pass one of --profile, --ratios, --landscape");
  }
  std::printf("wrote %s\n", out_file.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roughening-transition circuit toolkit"};
  app.require_subcommand(1);

  // run
  std::string run_config;
  auto* run = app.add_subcommand("run", "execute an ensemble from a config file");
  run->add_option("config", run_config, "config file path")->required();

  // analyze
  std::vector<std::string> an_obs, an_prof;
  std::string an_observable = "r12", an_out = ".", an_regime = "all";
  std::size_t an_window = 4;
  double an_p = NAN, an_xmax = 0;
  long an_t = -1;
  auto* an = app.add_subcommand("analyze",
                                "ratio curves, crossings, and regime fits");
  an->add_option("--observables", an_obs, "observables CSV files");
  an->add_option("--profiles", an_prof, "profile CSV files (regime fit)");
  an->add_option("--observable", an_observable, "r12 or r1d1")
      ->check(CLI::IsMember({"r12", "r1d1"}));
  an->add_option("--out", an_out, "output directory");
  an->add_option("--window", an_window,
                 "late-time window length (t in [T-window, T])");
  an->add_option("--regime", an_regime, "smooth, rough, critical, or all")
      ->check(CLI::IsMember({"smooth", "rough", "critical", "all"}));
  an->add_option("--p", an_p, "disorder rate for the regime fit");
  an->add_option("--t", an_t, "time slice for the regime fit (default: max)");
  an->add_option("--xmax", an_xmax, "regime-fit |x| cutoff (default t/4)");

  // collapse
  std::vector<std::string> co_obs;
  std::string co_observable = "r12", co_mode = "pc_nu", co_out = ".";
  std::size_t co_window = 4;
  double co_pc = 0.095;
  CollapseGrid grid{0.05, 0.14, 19, 0.5, 3.0, 26};
  auto* co = app.add_subcommand("collapse", "finite-size scaling collapse");
  co->add_option("--observables", co_obs, "observables CSV files")->required();
  co->add_option("--observable", co_observable, "r12 or r1d1")
      ->check(CLI::IsMember({"r12", "r1d1"}));
  co->add_option("--mode", co_mode, "pc_nu or thetac_nu")
      ->check(CLI::IsMember({"pc_nu", "thetac_nu"}));
  co->add_option("--pc", co_pc, "fixed p_c for thetac_nu mode");
  co->add_option("--a-min", grid.a_min, "first-axis minimum");
  co->add_option("--a-max", grid.a_max, "first-axis maximum");
  co->add_option("--a-steps", grid.a_steps, "first-axis grid points");
  co->add_option("--nu-min", grid.nu_min, "nu minimum");
  co->add_option("--nu-max", grid.nu_max, "nu maximum");
  co->add_option("--nu-steps", grid.nu_steps, "nu grid points");
  co->add_option("--window", co_window, "late-time window length");
  co->add_option("--out", co_out, "output directory");

  // profile
  std::string pr_config, pr_out;
  std::size_t pr_sample = 0;
  auto* pr = app.add_subcommand("profile", "dump one realization's S(x,t)");
  pr->add_option("config", pr_config, "config file path")->required();
  pr->add_option("--sample", pr_sample, "sample index");
  pr->add_option("--out", pr_out, "output CSV path");

  // validate
  std::size_t va_maxq = 8, va_trials = 200;
  std::uint64_t va_seed = 1;
  auto* va = app.add_subcommand("validate", "run the brute-force oracle suites");
  va->add_option("--max-qubits", va_maxq, "oracle circuit size cap (<= 12)");
  va->add_option("--trials", va_trials, "trials per suite");
  va->add_option("--seed", va_seed, "suite seed");

  // plot
  std::string pl_profile, pl_ratios, pl_landscape, pl_out = "plot.svg";
  auto* pl = app.add_subcommand("plot", "render a CSV as an SVG image");
  pl->add_option("--profile", pl_profile, "profile CSV");
  pl->add_option("--ratios", pl_ratios, "ratio CSV from analyze");
  pl->add_option("--landscape", pl_landscape, "landscape CSV from collapse");
  pl->add_option("--out", pl_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (an->parsed())
      return cmd_analyze(an_obs, an_prof, an_observable, an_out, an_window,
                         an_regime, an_p, an_t, an_xmax);
    if (co->parsed())
      return cmd_collapse(co_obs, co_observable, co_mode, co_pc, grid,
                          co_window, co_out);
    if (pr->parsed()) return cmd_profile(pr_config, pr_sample, pr_out);
    if (va->parsed()) return cmd_validate(va_maxq, va_trials, va_seed);
    if (pl->parsed()) return cmd_plot(pl_profile, pl_ratios, pl_landscape, pl_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
