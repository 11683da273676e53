#include "roughsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace rough {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("invalid integer for key '" + key + "': " + s);
  }
}

double parse_f64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("invalid number for key '" + key + "': " + s);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << body;
}

}  // namespace

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

RunConfig parse_run_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("malformed config line: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  RunConfig cfg;
  auto take = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string("missing key: ") + key);
    return it->second;
  };
  auto take_opt = [&](const char* key, const std::string& dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  };

  cfg.base.d = parse_u64(take("d"), "d");
  cfg.base.L = parse_u64(take("L"), "L");
  // "p" and "p-list" are interchangeable spellings of the same key.
  if (kv.count("p") && kv.count("p-list"))
    throw ConfigError("both 'p' and 'p-list' given");
  for (const auto& tok : split(take(kv.count("p-list") ? "p-list" : "p"), ','))
    cfg.ps.push_back(parse_f64(tok, "p"));
  if (cfg.ps.empty()) throw ConfigError("key 'p' has no values");
  cfg.base.runtime_factor = parse_u64(take_opt("runtime_factor", "2"), "runtime_factor");
  cfg.base.samples = parse_u64(take("samples"), "samples");
  cfg.base.master_seed = parse_u64(take("master_seed"), "master_seed");
  cfg.base.workers = parse_u64(take_opt("workers", "1"), "workers");
  cfg.output_dir = take_opt("output_dir", ".");
  const std::string mode = take_opt("outcome_mode", "forced");
  if (mode == "forced")
    cfg.base.outcome_mode = OutcomeMode::forced;
  else if (mode == "sampled")
    cfg.base.outcome_mode = OutcomeMode::sampled;
  else
    throw ConfigError("outcome_mode must be 'forced' or 'sampled', got: " + mode);
  const std::string window = take_opt("time_window", "");
  if (!window.empty())
    for (const auto& tok : split(window, ','))
      cfg.base.time_window.push_back(parse_u64(tok, "time_window"));
  const std::string raw = take_opt("save_raw", "false");
  if (raw == "true" || raw == "1")
    cfg.save_raw = true;
  else if (raw == "false" || raw == "0")
    cfg.save_raw = false;
  else
    throw ConfigError("save_raw must be true/false, got: " + raw);

  // Surface protocol-level violations (odd L, bad p, ...) as config errors.
  ProtocolConfig probe = cfg.base;
  for (double p : cfg.ps) {
    probe.p = p;
    try {
      probe.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return cfg;
}

RunConfig parse_run_config(const std::string& path) {
  return parse_run_config_text(read_file(path));
}

void write_profile_csv(const std::string& path, const EnsembleSummary& s) {
  std::string body = "L,d,p,t,x,mean_S,std_S,n_samples\n";
  const long half = long(2 * s.config.L);
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    for (std::size_t c = 0; c < s.mean_S[k].size(); ++c) {
      body += std::to_string(s.config.L) + "," + std::to_string(s.config.d) + "," +
              format_double(s.config.p) + "," + std::to_string(s.times[k]) + "," +
              std::to_string(long(c) - half) + "," + format_double(s.mean_S[k][c]) +
              "," + format_double(s.std_S[k][c]) + "," + std::to_string(s.samples) +
              "\n";
    }
  }
  write_file(path, body);
}

namespace {

std::vector<std::vector<std::string>> read_csv_table(
    const std::string& path, const std::vector<std::string>& expected_header) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty CSV: " + path);
  const auto header = split(trim(line), ',');
  for (const auto& col : expected_header) {
    if (std::find(header.begin(), header.end(), col) == header.end())
      throw SchemaError("missing column '" + col + "' in " + path);
  }
  if (header != expected_header)
    throw SchemaError("unexpected column layout in " + path);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != expected_header.size())
      throw SchemaError("bad row width in " + path + ": " + line);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

std::vector<ProfileRow> read_profile_csv(const std::string& path) {
  const auto rows = read_csv_table(
      path, {"L", "d", "p", "t", "x", "mean_S", "std_S", "n_samples"});
  std::vector<ProfileRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    ProfileRow row;
    row.L = parse_u64(r[0], "L");
    row.d = parse_u64(r[1], "d");
    row.p = parse_f64(r[2], "p");
    row.t = parse_u64(r[3], "t");
    row.x = std::stol(r[4]);
    row.mean_S = parse_f64(r[5], "mean_S");
    row.std_S = parse_f64(r[6], "std_S");
    row.n_samples = parse_u64(r[7], "n_samples");
    out.push_back(row);
  }
  return out;
}

void write_observables_csv(const std::string& path, const EnsembleSummary& s) {
  std::string body =
      "L,d,p,t,mean_dS1,std_dS1,mean_dS2,std_dS2,cov_dS12,r12,r1d1,n_samples\n";
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const DeltaStats& d = s.delta[k];
    body += std::to_string(s.config.L) + "," + std::to_string(s.config.d) + "," +
            format_double(s.config.p) + "," + std::to_string(s.times[k]) + "," +
            format_double(d.mean_d1) + "," + format_double(d.sd_d1) + "," +
            format_double(d.mean_d2) + "," + format_double(d.sd_d2) + "," +
            format_double(d.cov_d12) + "," +
            (d.r12_valid ? format_double(d.r12) : "nan") + "," +
            (d.r1d1_valid ? format_double(d.r1d1) : "nan") + "," +
            std::to_string(s.samples) + "\n";
  }
  write_file(path, body);
}

std::vector<ObservablesRow> read_observables_csv(const std::string& path) {
  const auto rows = read_csv_table(
      path, {"L", "d", "p", "t", "mean_dS1", "std_dS1", "mean_dS2", "std_dS2",
             "cov_dS12", "r12", "r1d1", "n_samples"});
  std::vector<ObservablesRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    ObservablesRow row;
    row.L = parse_u64(r[0], "L");
    row.d = parse_u64(r[1], "d");
    row.p = parse_f64(r[2], "p");
    row.t = parse_u64(r[3], "t");
    row.stats.mean_d1 = parse_f64(r[4], "mean_dS1");
    row.stats.sd_d1 = parse_f64(r[5], "std_dS1");
    row.stats.mean_d2 = parse_f64(r[6], "mean_dS2");
    row.stats.sd_d2 = parse_f64(r[7], "std_dS2");
    row.stats.cov_d12 = parse_f64(r[8], "cov_dS12");
    row.n_samples = parse_u64(r[11], "n_samples");
    row.stats.sd_valid = row.n_samples >= 2;
    if (r[9] != "nan") {
      row.stats.r12 = parse_f64(r[9], "r12");
      row.stats.r12_valid = true;
    }
    if (r[10] != "nan") {
      row.stats.r1d1 = parse_f64(r[10], "r1d1");
      row.stats.r1d1_valid = true;
    }
    out.push_back(row);
  }
  return out;
}

void write_record_csv(const std::string& path, const EntropyRecord& r,
                      const ProtocolConfig& config) {
  std::string body = "# seed " + std::to_string(r.sample_seed) + "\nt,x,S\n";
  const long half = long(2 * config.L);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    for (std::size_t c = 0; c < r.profiles[k].size(); ++c) {
      body += std::to_string(r.times[k]) + "," + std::to_string(long(c) - half) +
              "," + std::to_string(r.profiles[k][c]) + "\n";
    }
  }
  write_file(path, body);
}

EntropyRecord read_record_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open: " + path);
  std::string line;
  EntropyRecord rec;
  if (!std::getline(in, line) || line.rfind("# seed ", 0) != 0)
    throw SchemaError("missing seed header in " + path);
  rec.sample_seed = parse_u64(trim(line.substr(7)), "seed");
  if (!std::getline(in, line) || trim(line) != "t,x,S")
    throw SchemaError("missing column header in " + path);
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 3) throw SchemaError("bad row in " + path + ": " + line);
    const std::size_t t = parse_u64(cells[0], "t");
    const std::size_t s = parse_u64(cells[2], "S");
    if (rec.times.empty() || rec.times.back() != t) {
      rec.times.push_back(t);
      rec.profiles.emplace_back();
    }
    rec.profiles.back().push_back(s);
  }
  return rec;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["version"] = m.version;
  j["wall_time_s"] = m.wall_time_s;
  j["config"]["d"] = m.config.base.d;
  j["config"]["L"] = m.config.base.L;
  j["config"]["p"] = m.config.ps;
  j["config"]["runtime_factor"] = m.config.base.runtime_factor;
  j["config"]["samples"] = m.config.base.samples;
  j["config"]["master_seed"] = m.config.base.master_seed;
  j["config"]["workers"] = m.config.base.workers;
  j["config"]["output_dir"] = m.config.output_dir;
  j["config"]["outcome_mode"] =
      m.config.base.outcome_mode == OutcomeMode::forced ? "forced" : "sampled";
  j["config"]["time_window"] = m.config.base.time_window;
  j["config"]["save_raw"] = m.config.save_raw;
  j["sample_seeds"] = m.sample_seeds;
  j["outputs"] = m.outputs;
  write_file(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  RunManifest m;
  m.version = j.at("version").get<std::string>();
  m.wall_time_s = j.at("wall_time_s").get<double>();
  const auto& c = j.at("config");
  m.config.base.d = c.at("d").get<std::size_t>();
  m.config.base.L = c.at("L").get<std::size_t>();
  m.config.ps = c.at("p").get<std::vector<double>>();
  m.config.base.runtime_factor = c.at("runtime_factor").get<std::size_t>();
  m.config.base.samples = c.at("samples").get<std::size_t>();
  m.config.base.master_seed = c.at("master_seed").get<std::uint64_t>();
  m.config.base.workers = c.at("workers").get<std::size_t>();
  m.config.output_dir = c.at("output_dir").get<std::string>();
  m.config.base.outcome_mode = c.at("outcome_mode").get<std::string>() == "sampled"
                                   ? OutcomeMode::sampled
                                   : OutcomeMode::forced;
  m.config.base.time_window = c.at("time_window").get<std::vector<std::size_t>>();
  m.config.save_raw = c.at("save_raw").get<bool>();
  m.sample_seeds = j.at("sample_seeds").get<std::vector<std::uint64_t>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  return m;
}

}  // namespace rough
