// Copyright 2026 The latchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "latchsim/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "latchsim/common.hpp"

namespace latchsim {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"waveform", {"kind", "delta_hz", "omega_hz", "phase_rad", "ramp_s"}},
      {"qubit", {"omega0_hz", "g_hz", "gamma1_hz", "gamma_phi_hz", "gamma2_hz", "t_bath_k"}},
      {"transmon",
       {"e_c_hz", "e_j_sum_hz", "asym", "flux_dc", "flux_sq", "omega_r_hz", "g0_hz", "n_r", "n_g", "n_levels",
        "amplitude_convention"}},
      {"sweep", {"layer", "nu_min_hz", "nu_max_hz", "nu_points", "y_axis", "y_min_hz", "y_max_hz", "y_points",
                 "threads"}},
      {"resonances", {"families", "indices", "omega_min_hz", "omega_max_hz", "omega_points"}},
      {"sidebands", {"m", "average_pm", "layers", "omega_min_hz", "omega_max_hz", "omega_points"}},
      {"sudden", {"t_ramp_s", "side", "nu_min_hz", "nu_max_hz", "nu_points"}},
      {"fit", {"data", "cutoff", "max_iterations"}},
      {"output", {"dir", "prefix"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

// Wraps the property tree with the line numbers of every key so that value
// errors can point at the offending line.
class Reader {
 public:
  Reader(const std::string& text, std::string source) : source_(std::move(source)) {
    // the INI parser only knows ';' comments
    std::string cleaned;
    std::istringstream lines(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      std::string t = trim(line);
      if (!t.empty() && t[0] == '#') line = ";" + line;
      cleaned += line + "\n";
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = trim(std::string_view(t).substr(1, t.size() - 2));
        if (!known_keys().count(section)) fail(lineno, "unknown section [" + section + "]");
        section_lines_[section] = lineno;
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) continue;  // reported by the parser
      const std::string key = trim(std::string_view(t).substr(0, eq));
      if (section.empty()) fail(lineno, "key '" + key + "' outside a section");
      if (!known_keys().at(section).count(key)) fail(lineno, "unknown field [" + section + "] " + key);
      lines_[section + "." + key] = lineno;
    }
    std::istringstream in(cleaned);
    try {
      pt::read_ini(in, tree_);
    } catch (const pt::ini_parser_error& e) {
      fail(static_cast<int>(e.line()), e.message());
    }
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    std::string where = source_;
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + msg);
  }

  [[noreturn]] void fail_field(const std::string& section, const std::string& key, const std::string& msg) const {
    auto it = lines_.find(section + "." + key);
    fail(it == lines_.end() ? 0 : it->second, "[" + section + "] " + key + ": " + msg);
  }

  [[noreturn]] void fail_section(const std::string& section, const std::string& msg) const {
    auto it = section_lines_.find(section);
    fail(it == section_lines_.end() ? 0 : it->second, "[" + section + "]: " + msg);
  }

  bool has_section(const std::string& section) const { return section_lines_.count(section) != 0; }
  bool has(const std::string& section, const std::string& key) const {
    return lines_.count(section + "." + key) != 0;
  }

  std::string raw(const std::string& section, const std::string& key) const {
    return trim(tree_.get<std::string>(pt::ptree::path_type(section + "." + key, '.')));
  }

  std::string text(const std::string& section, const std::string& key, const std::string& def) const {
    return has(section, key) ? raw(section, key) : def;
  }

  double number(const std::string& section, const std::string& key) const {
    if (!has(section, key)) fail_section(section, "missing required field '" + key + "'");
    return number(section, key, 0.0);
  }

  double number(const std::string& section, const std::string& key, double def) const {
    if (!has(section, key)) return def;
    double v = 0.0;
    const std::string s = raw(section, key);
    if (!parse_double(s, v) || !std::isfinite(v)) fail_field(section, key, "expected a finite number, got '" + s + "'");
    return v;
  }

  long integer(const std::string& section, const std::string& key, long def) const {
    if (!has(section, key)) return def;
    const std::string s = raw(section, key);
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail_field(section, key, "expected an integer, got '" + s + "'");
    return v;
  }

  bool boolean(const std::string& section, const std::string& key, bool def) const {
    if (!has(section, key)) return def;
    const std::string s = raw(section, key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail_field(section, key, "expected true or false, got '" + s + "'");
  }

  // Runs `fn` and re-raises library argument errors against the field.
  template <class Fn>
  auto guarded(const std::string& section, const std::string& key, Fn&& fn) const {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& e) {
      fail_field(section, key, e.what());
    }
  }

  AxisSpec axis(const std::string& section, const std::string& stem, AxisSpec def, bool allow_empty = false) const {
    AxisSpec a;
    a.min_hz = number(section, stem + "_min_hz", def.min_hz);
    a.max_hz = number(section, stem + "_max_hz", def.max_hz);
    const long points = integer(section, stem + "_points", static_cast<long>(def.points));
    if (points < (allow_empty ? 0 : 1)) fail_field(section, stem + "_points", allow_empty ? "must be >= 0" : "must be >= 1");
    a.points = static_cast<std::size_t>(points);
    if (a.points > 1 && !(a.max_hz > a.min_hz)) {
      fail_field(section, stem + "_max_hz", "must exceed " + stem + "_min_hz when " + stem + "_points > 1");
    }
    return a;
  }

 private:
  std::string source_;
  pt::ptree tree_;
  std::map<std::string, int> lines_;
  std::map<std::string, int> section_lines_;
};

std::vector<int> parse_indices(const Reader& r, const std::string& s) {
  std::vector<int> out;
  for (const std::string& item : split_list(s)) {
    const auto dots = item.find("..");
    auto to_int = [&](const std::string& t) {
      int v = 0;
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || p != t.data() + t.size()) {
        r.fail_field("resonances", "indices", "bad index '" + t + "'");
      }
      return v;
    };
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      const int lo = to_int(trim(item.substr(0, dots)));
      const int hi = to_int(trim(item.substr(dots + 2)));
      if (hi < lo) r.fail_field("resonances", "indices", "empty range '" + item + "'");
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    }
  }
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<double> AxisSpec::angular() const {
  std::vector<double> v = hz();
  for (double& x : v) x = hz_to_angular(x);
  return v;
}

Config parse_config(const std::string& text, const std::string& source) {
  const Reader r(text, source);
  Config cfg;
  cfg.source = source;

  if (r.has_section("transmon")) {
    TransmonParams tp;
    tp.e_c = hz_to_angular(r.number("transmon", "e_c_hz"));
    tp.e_j_sum = hz_to_angular(r.number("transmon", "e_j_sum_hz"));
    tp.asym = r.number("transmon", "asym", 0.0);
    tp.flux_dc = r.number("transmon", "flux_dc", 0.0);
    tp.flux_sq = r.number("transmon", "flux_sq", 0.0);
    tp.omega_r = hz_to_angular(r.number("transmon", "omega_r_hz", 0.0));
    tp.g0 = hz_to_angular(r.number("transmon", "g0_hz", 0.0));
    tp.n_r = r.number("transmon", "n_r", 0.0);
    tp.n_g = r.number("transmon", "n_g", 0.0);
    tp.n_levels = static_cast<int>(r.integer("transmon", "n_levels", 5));
    const std::string conv = r.text("transmon", "amplitude_convention", "halved");
    if (conv == "halved") {
      cfg.convention = AmplitudeConvention::Halved;
    } else if (conv == "full") {
      cfg.convention = AmplitudeConvention::Full;
    } else {
      r.fail_field("transmon", "amplitude_convention", "expected halved or full, got '" + conv + "'");
    }
    r.guarded("transmon", "e_c_hz", [&] { tp.validate(); });
    cfg.transmon = tp;
  }

  // waveform
  if (!r.has_section("waveform")) r.fail(0, "missing section [waveform]");
  ModulationWaveform& w = cfg.waveform;
  w.kind = r.guarded("waveform", "kind", [&] { return parse_waveform_kind(r.text("waveform", "kind", "square")); });
  if (r.has("waveform", "delta_hz")) {
    w.delta = hz_to_angular(r.number("waveform", "delta_hz"));
  } else if (cfg.transmon) {
    w.delta = r.guarded("transmon", "flux_sq", [&] { return latching_amplitude(*cfg.transmon, cfg.convention).magnitude; });
  } else {
    r.fail_section("waveform", "missing delta_hz (or a [transmon] section to derive it from)");
  }
  w.omega = hz_to_angular(r.number("waveform", "omega_hz", 50e6));
  w.phase = r.number("waveform", "phase_rad", 0.0);
  w.ramp = r.number("waveform", "ramp_s", 0.0);
  r.guarded("waveform", "kind", [&] { w.validate(); });

  // qubit
  if (!r.has_section("qubit")) r.fail(0, "missing section [qubit]");
  QubitParams& q = cfg.qubit;
  if (r.has("qubit", "omega0_hz")) {
    q.omega0 = hz_to_angular(r.number("qubit", "omega0_hz"));
  } else if (cfg.transmon) {
    q.omega0 = r.guarded("transmon", "flux_dc", [&] { return qubit_frequency(*cfg.transmon); });
  } else {
    r.fail_section("qubit", "missing omega0_hz (or a [transmon] section to derive it from)");
  }
  if (r.has("qubit", "g_hz")) {
    q.g = hz_to_angular(r.number("qubit", "g_hz"));
  } else if (cfg.transmon) {
    q.g = drive_coupling(*cfg.transmon);
  } else {
    r.fail_section("qubit", "missing g_hz (or a [transmon] section to derive it from)");
  }
  q.gamma1 = hz_to_angular(r.number("qubit", "gamma1_hz", 0.0));
  if (r.has("qubit", "gamma_phi_hz") && r.has("qubit", "gamma2_hz")) {
    r.fail_field("qubit", "gamma2_hz", "give either gamma_phi_hz or gamma2_hz, not both");
  }
  if (r.has("qubit", "gamma2_hz")) {
    q.gamma_phi = hz_to_angular(r.number("qubit", "gamma2_hz")) - 0.5 * q.gamma1;
    if (q.gamma_phi < 0.0) r.fail_field("qubit", "gamma2_hz", "must be >= gamma1_hz / 2");
  } else {
    q.gamma_phi = hz_to_angular(r.number("qubit", "gamma_phi_hz", 0.0));
  }
  q.t_bath = r.number("qubit", "t_bath_k", 0.0);
  r.guarded("qubit", "g_hz", [&] { q.validate(); });

  // sweep
  SweepConfig& s = cfg.sweep;
  s.layer = r.guarded("sweep", "layer", [&] { return parse_layer(r.text("sweep", "layer", "adiabatic")); });
  s.nu = r.axis("sweep", "nu", {-300e6, 300e6, 41});
  s.y_kind = r.guarded("sweep", "y_axis", [&] { return parse_y_axis(r.text("sweep", "y_axis", "omega")); });
  s.y = r.axis("sweep", "y", {10e6, 120e6, 41});
  const long threads = r.integer("sweep", "threads", 0);
  if (threads < 0) r.fail_field("sweep", "threads", "must be >= 0");
  s.threads = static_cast<unsigned>(threads);

  // resonances
  ResonanceConfig& rc = cfg.resonances;
  for (const std::string& f : split_list(r.text("resonances", "families", "diff,sum"))) {
    rc.families.push_back(r.guarded("resonances", "families", [&] { return parse_resonance_family(f); }));
  }
  rc.indices = parse_indices(r, r.text("resonances", "indices", "1..4"));
  rc.omega = r.axis("resonances", "omega", {10e6, 120e6, 221}, true);

  // sidebands
  SidebandConfig& sb = cfg.sidebands;
  sb.m = static_cast<int>(r.integer("sidebands", "m", 2));
  sb.average_pm = r.boolean("sidebands", "average_pm", false);
  for (const std::string& l : split_list(r.text("sidebands", "layers", "rwa,lindblad2"))) {
    sb.layers.push_back(r.guarded("sidebands", "layers", [&] { return parse_layer(l); }));
  }
  sb.omega = r.axis("sidebands", "omega", {2e6, 120e6, 119});

  // sudden
  SuddenConfig& sc = cfg.sudden;
  for (const std::string& t : split_list(r.text("sudden", "t_ramp_s", "1e-9,2e-9"))) {
    double v = 0.0;
    if (!parse_double(t, v) || !(v >= 0.0)) r.fail_field("sudden", "t_ramp_s", "bad ramp time '" + t + "'");
    sc.t_ramp.push_back(v);
  }
  const std::string side = r.text("sudden", "side", "right");
  if (side == "right") {
    sc.side = RampSide::RightStart;
  } else if (side == "left") {
    sc.side = RampSide::LeftStart;
  } else {
    r.fail_field("sudden", "side", "expected right or left, got '" + side + "'");
  }
  sc.nu = r.axis("sudden", "nu", {-300e6, 300e6, 121});

  // fit
  cfg.fit.data = r.text("fit", "data", "");
  if (!cfg.fit.data.empty() && source.front() != '<') {
    const std::filesystem::path p(cfg.fit.data);
    if (p.is_relative()) cfg.fit.data = (std::filesystem::path(source).parent_path() / p).string();
  }
  cfg.fit.cutoff = static_cast<int>(r.integer("fit", "cutoff", 20));
  cfg.fit.max_iterations = static_cast<int>(r.integer("fit", "max_iterations", 2000));

  cfg.output.dir = r.text("output", "dir", ".");
  cfg.output.prefix = r.text("output", "prefix", "latchsim");
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

nlohmann::json config_record(const Config& cfg) {
  nlohmann::json j;
  const ModulationWaveform& w = cfg.waveform;
  j["waveform"] = {{"kind", std::string(to_string(w.kind))},
                   {"delta_hz", angular_to_hz(w.delta)},
                   {"omega_hz", angular_to_hz(w.omega)},
                   {"phase_rad", w.phase},
                   {"ramp_s", w.ramp}};
  const QubitParams& q = cfg.qubit;
  j["qubit"] = {{"omega0_hz", angular_to_hz(q.omega0)},  {"g_hz", angular_to_hz(q.g)},
                {"gamma1_hz", angular_to_hz(q.gamma1)},  {"gamma_phi_hz", angular_to_hz(q.gamma_phi)},
                {"gamma2_hz", angular_to_hz(q.gamma2())}, {"t_bath_k", q.t_bath}};
  if (cfg.transmon) {
    const TransmonParams& t = *cfg.transmon;
    j["transmon"] = {{"e_c_hz", angular_to_hz(t.e_c)},
                     {"e_j_sum_hz", angular_to_hz(t.e_j_sum)},
                     {"asym", t.asym},
                     {"flux_dc", t.flux_dc},
                     {"flux_sq", t.flux_sq},
                     {"omega_r_hz", angular_to_hz(t.omega_r)},
                     {"g0_hz", angular_to_hz(t.g0)},
                     {"n_r", t.n_r},
                     {"n_g", t.n_g},
                     {"n_levels", t.n_levels},
                     {"amplitude_convention", cfg.convention == AmplitudeConvention::Halved ? "halved" : "full"}};
  }
  j["version"] = std::string(version());
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const nlohmann::json& meta, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& [key, value] : meta.items()) {
    out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

void write_grid_csv(const std::filesystem::path& path, const SpectrumGrid& grid) {
  const std::string y_name = grid.y_kind == YAxis::ModulationFrequency ? "Omega_Hz" : "delta_Hz";
  const std::string v_name = grid.observable == Observable::Population ? "population" : "dispersive_shift_Hz";
  nlohmann::json meta = grid.meta;
  meta["layer"] = std::string(to_string(grid.layer));
  meta["observable"] = std::string(to_string(grid.observable));
  meta["nan_cells"] = grid.nan_count();
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.values.size());
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) rows.push_back({grid.x_axis[c], grid.y_axis[r], grid.at(r, c)});
  }
  write_csv(path, meta, {"nu_Hz", y_name, v_name}, rows);
}

nlohmann::json grid_to_json(const SpectrumGrid& grid) {
  nlohmann::json j;
  j["format"] = "latchsim-grid";
  j["generated"] = utc_now();
  j["layer"] = std::string(to_string(grid.layer));
  j["observable"] = std::string(to_string(grid.observable));
  j["y_axis_kind"] = std::string(to_string(grid.y_kind));
  j["x_axis_hz"] = grid.x_axis;
  j["y_axis_hz"] = grid.y_axis;
  nlohmann::json values = nlohmann::json::array();
  for (double v : grid.values) {
    if (std::isnan(v)) {
      values.push_back(nullptr);
    } else {
      values.push_back(v);
    }
  }
  j["values"] = std::move(values);
  j["meta"] = grid.meta;
  j["meta"]["nan_cells"] = grid.nan_count();
  return j;
}

SpectrumGrid grid_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "latchsim-grid") throw InvalidArgument("grid json: unknown format");
    SpectrumGrid g;
    g.layer = parse_layer(j.at("layer").get<std::string>());
    g.observable = parse_observable(j.at("observable").get<std::string>());
    g.y_kind = parse_y_axis(j.at("y_axis_kind").get<std::string>());
    g.x_axis = j.at("x_axis_hz").get<std::vector<double>>();
    g.y_axis = j.at("y_axis_hz").get<std::vector<double>>();
    for (const auto& v : j.at("values")) {
      g.values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
    }
    g.meta = j.value("meta", nlohmann::json::object());
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("grid json: ") + e.what());
  }
}

void write_grid_json(const std::filesystem::path& path, const SpectrumGrid& grid) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << grid_to_json(grid).dump(1) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

SpectrumGrid read_grid_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return grid_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

std::vector<FluxPoint> read_flux_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<FluxPoint> out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split_list(t);
    double flux = 0.0, freq = 0.0;
    if (cells.size() != 2 || !parse_double(cells[0], flux) || !parse_double(cells[1], freq)) {
      if (!header_seen && out.empty()) {
        header_seen = true;
        continue;
      }
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected 'flux,frequency_Hz'");
    }
    out.push_back({flux, hz_to_angular(freq)});
  }
  if (out.empty()) throw InvalidArgument(path.string() + ": no data rows");
  return out;
}

}  // namespace latchsim
