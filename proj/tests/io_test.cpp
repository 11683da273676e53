#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "roughsim/experiment.hpp"
#include "roughsim/io.hpp"

using namespace rough;
namespace fs = std::filesystem;

namespace {

const char* kGoodConfig =
    "# toy run\n"
    "d = 2\n"
    "L = 2\n"
    "p = 0.0, 0.1\n"
    "runtime_factor = 2\n"
    "samples = 3\n"
    "master_seed = 9\n"
    "workers = 2\n"
    "output_dir = out\n"
    "outcome_mode = forced\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "roughsim_io_test";
  fs::create_directories(dir);
  return dir;
}

EnsembleSummary tiny_summary() {
  ProtocolConfig c;
  c.d = 2;
  c.L = 2;
  c.p = 0.1;
  c.samples = 3;
  c.master_seed = 4;
  return run_ensemble(c);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config parsing happy path") {
  const RunConfig cfg = parse_run_config_text(kGoodConfig);
  CHECK(cfg.base.d == 2);
  CHECK(cfg.base.L == 2);
  CHECK(cfg.ps == std::vector<double>{0.0, 0.1});
  CHECK(cfg.base.samples == 3);
  CHECK(cfg.base.master_seed == 9);
  CHECK(cfg.base.workers == 2);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.base.outcome_mode == OutcomeMode::forced);
  CHECK(!cfg.save_raw);
  CHECK(cfg.base.time_window.empty());
}

TEST_CASE("config parsing: p-list alias and optional keys") {
  const RunConfig cfg = parse_run_config_text(
      "d=1\nL=4\np-list=0.05\nsamples=1\nmaster_seed=1\n"
      "time_window = 6, 8\nsave_raw = true\noutcome_mode = sampled\n");
  CHECK(cfg.ps == std::vector<double>{0.05});
  CHECK(cfg.base.time_window == std::vector<std::size_t>{6, 8});
  CHECK(cfg.save_raw);
  CHECK(cfg.base.outcome_mode == OutcomeMode::sampled);
  CHECK(cfg.base.runtime_factor == 2);  // default
  CHECK(cfg.base.workers == 1);         // default
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_run_config_text("d=2\nL=2\n"), ConfigError);  // missing keys
  CHECK_THROWS_AS(
      parse_run_config_text("d=2\nL=3\np=0.1\nsamples=1\nmaster_seed=1\n"),
      ConfigError);  // odd L
  CHECK_THROWS_AS(
      parse_run_config_text("d=2\nL=2\np=1.5\nsamples=1\nmaster_seed=1\n"),
      ConfigError);  // p out of range
  CHECK_THROWS_AS(
      parse_run_config_text("d=2\nL=2\np=0.1\nsamples=1\nmaster_seed=1\n"
                            "outcome_mode=maybe\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_run_config_text("d=2\nL=2\np=0.1\nsamples=x\nmaster_seed=1\n"),
      ConfigError);
  CHECK_THROWS_AS(parse_run_config_text("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("/nonexistent/config.txt"), ConfigError);
}

TEST_CASE("profile CSV round trip, byte identical on rewrite") {
  const auto dir = temp_dir();
  const auto s = tiny_summary();
  const auto path = dir / "profile.csv";
  write_profile_csv(path.string(), s);
  const std::string body = slurp(path);
  CHECK(body.rfind("L,d,p,t,x,mean_S,std_S,n_samples\n", 0) == 0);
  write_profile_csv(path.string(), s);
  CHECK(slurp(path) == body);

  const auto rows = read_profile_csv(path.string());
  REQUIRE(rows.size() == s.times.size() * s.mean_S.front().size());
  CHECK(rows.front().L == 2);
  CHECK(rows.front().x == -4);
  CHECK(rows.front().t == 0);
  CHECK(rows.back().x == 4);
  for (const auto& r : rows) CHECK(r.n_samples == 3);
}

TEST_CASE("observables CSV round trip preserves the statistics") {
  const auto dir = temp_dir();
  const auto s = tiny_summary();
  const auto path = dir / "observables.csv";
  write_observables_csv(path.string(), s);
  const auto rows = read_observables_csv(path.string());
  REQUIRE(rows.size() == s.times.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].t == s.times[k]);
    CHECK(rows[k].stats.mean_d1 ==
          doctest::Approx(s.delta[k].mean_d1).epsilon(1e-9));
    CHECK(rows[k].stats.sd_d1 ==
          doctest::Approx(s.delta[k].sd_d1).epsilon(1e-9));
    CHECK(rows[k].stats.cov_d12 ==
          doctest::Approx(s.delta[k].cov_d12).epsilon(1e-9));
    CHECK(rows[k].stats.r12_valid == s.delta[k].r12_valid);
  }
}

TEST_CASE("schema violations are named errors") {
  const auto dir = temp_dir();
  const auto bad = dir / "bad.csv";
  std::ofstream(bad) << "L,d,p,t,x,mean_S\n1,2,3,4,5,6\n";
  CHECK_THROWS_AS(read_profile_csv(bad.string()), SchemaError);
  CHECK_THROWS_AS(read_observables_csv(bad.string()), SchemaError);
  CHECK_THROWS_AS(read_profile_csv((dir / "missing.csv").string()), SchemaError);
}

TEST_CASE("raw record round trip") {
  const auto dir = temp_dir();
  ProtocolConfig c;
  c.d = 2;
  c.L = 2;
  c.p = 0.1;
  const EntropyRecord rec = run_realization(c, 77);
  const auto path = dir / "record.csv";
  write_record_csv(path.string(), rec, c);
  const EntropyRecord back = read_record_csv(path.string());
  CHECK(back.sample_seed == 77);
  CHECK(back.times == rec.times);
  CHECK(back.profiles == rec.profiles);
}

TEST_CASE("manifest round trip") {
  const auto dir = temp_dir();
  RunManifest m;
  m.config = parse_run_config_text(kGoodConfig);
  m.config.save_raw = true;
  m.sample_seeds = {1, 2, 3};
  m.outputs = {"a.csv", "b.csv"};
  m.wall_time_s = 1.25;
  const auto path = dir / "manifest.json";
  write_manifest(path.string(), m);
  const RunManifest back = read_manifest(path.string());
  CHECK(back.config.base.L == 2);
  CHECK(back.config.ps == m.config.ps);
  CHECK(back.config.save_raw);
  CHECK(back.sample_seeds == m.sample_seeds);
  CHECK(back.outputs == m.outputs);
  CHECK(back.wall_time_s == doctest::Approx(1.25));
  CHECK(back.version == kVersion);
}

TEST_CASE("format_double is compact and stable") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333");
}

}  // TEST_SUITE
