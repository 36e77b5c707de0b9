// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rmtlab/error.hpp"

namespace rmt {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    fail(ErrorCode::kConfig, "bad number for " + std::string(key) + ": '" + t + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    fail(ErrorCode::kConfig, "bad integer for " + std::string(key) + ": '" + t + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view key) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  fail(ErrorCode::kConfig, "bad boolean for " + std::string(key) + ": '" + t + "'");
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + ":" + fmt(z.imag());
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string t = trim(text);
  // Accept "re", "re:im", "re,im" or "a+bi" / "a-bi".
  for (char sep : {':', ','}) {
    const auto pos = t.find(sep);
    if (pos != std::string::npos) {
      return {parse_real(t.substr(0, pos), "complex"), parse_real(t.substr(pos + 1), "complex")};
    }
  }
  if (!t.empty() && t.back() == 'i') {
    const std::string body = t.substr(0, t.size() - 1);
    const auto pos = body.find_last_of("+-");
    if (pos == std::string::npos || pos == 0) {
      const std::string im = body.empty() || body == "+" ? "1" : (body == "-" ? "-1" : body);
      return {0.0, parse_real(im, "complex")};
    }
    std::string im = body.substr(pos);
    if (im == "+" || im == "-") im += "1";
    if (im.front() == '+') im.erase(0, 1);
    return {parse_real(body.substr(0, pos), "complex"), parse_real(im, "complex")};
  }
  return {parse_real(t, "complex"), 0.0};
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part, "list"));
  return out;
}

GridSpec parse_grid(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 5) fail(ErrorCode::kConfig, "grid expects xmin,xmax,ymin,ymax,steps");
  GridSpec g;
  g.x_min = parse_real(parts[0], "grid");
  g.x_max = parse_real(parts[1], "grid");
  g.y_min = parse_real(parts[2], "grid");
  g.y_max = parse_real(parts[3], "grid");
  g.steps = static_cast<int>(parse_integer(parts[4], "grid"));
  try {
    g.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kConfig, e.what());
  }
  return g;
}

MatrixSpec MatrixSpec::parse(std::string_view text) {
  const std::string t = trim(text);
  if (t == "identity" || t == "I") return identity();
  if (t == "zero" || t == "0") return zero();
  if (t.rfind("scalar:", 0) == 0) return scalar(parse_complex(t.substr(7)));
  if (t.rfind("diag:", 0) == 0) {
    MatrixSpec spec;
    spec.pattern.clear();
    for (const auto& part : split(t.substr(5), ',')) spec.pattern.push_back(parse_complex(part));
    if (spec.pattern.empty()) fail(ErrorCode::kConfig, "empty diag pattern");
    return spec;
  }
  fail(ErrorCode::kConfig, "unknown matrix spec: " + t);
}

std::vector<Complex> MatrixSpec::diagonal(int n) const {
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = pattern[static_cast<std::size_t>(i) % pattern.size()];
  return out;
}

ComplexMatrix MatrixSpec::build(int n) const {
  const auto d = diagonal(n);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = d[i];
  return out;
}

bool MatrixSpec::is_scalar() const {
  return std::all_of(pattern.begin(), pattern.end(),
                     [&](Complex c) { return c == pattern.front(); });
}

bool MatrixSpec::is_zero() const {
  return std::all_of(pattern.begin(), pattern.end(),
                     [](Complex c) { return c == Complex(0.0, 0.0); });
}

std::string MatrixSpec::text() const {
  if (is_scalar()) {
    if (pattern.front() == Complex(1.0, 0.0)) return "identity";
    if (pattern.front() == Complex(0.0, 0.0)) return "zero";
    return "scalar:" + fmt(pattern.front());
  }
  std::string out = "diag:";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) out += ",";
    out += fmt(pattern[i]);
  }
  return out;
}

void ExperimentConfig::validate() const {
  const bool small_ok = experiment == "spherical-exact" || experiment == "ds-solve";
  if (n < (small_ok ? 1 : 8)) {
    fail(ErrorCode::kConfig, "n must be >= " + std::string(small_ok ? "1" : "8"));
  }
  if (trials < 1) fail(ErrorCode::kConfig, "trials must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) fail(ErrorCode::kConfig, "gamma must lie in (0, 1)");
  if (format != "csv" && format != "json") fail(ErrorCode::kConfig, "format must be csv or json");
  if (!std::isfinite(noise) || noise < 0.0) fail(ErrorCode::kConfig, "noise must be >= 0");
  if (experiment == "theorem4" && noise == 0.0) fail(ErrorCode::kConfig, "theorem4 needs noise > 0");
  if (smooth_passes < 0) fail(ErrorCode::kConfig, "smooth must be >= 0");
  if (grid_steps < 3) fail(ErrorCode::kConfig, "grid-steps must be >= 3");
  if (grid) grid->validate();
  try {
    ds.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kConfig, e.what());
  }
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "spherical", "spherical-exact", "universality", "singular-diag",
      "replacement", "girko", "theorem4", "ds-solve"};
  return names;
}

ExperimentConfig default_config(std::string_view experiment) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end()) {
    fail(ErrorCode::kConfig, "unknown experiment: " + std::string(experiment));
  }
  ExperimentConfig c;
  c.experiment = std::string(experiment);
  if (experiment == "spherical") {
    c.reference = "spherical";
  } else if (experiment == "spherical-exact") {
    c.n = 64;
    c.trials = 200;
    c.reference = "spherical";
  } else if (experiment == "universality") {
    c.atoms2 = AtomLaw::rademacher();
    c.reference = "spherical";
  } else if (experiment == "singular-diag") {
    c.n = 400;
    c.trials = 20;
    c.reference = "quarter_circle";
  } else if (experiment == "replacement") {
    c.n = 256;
    c.trials = 8;
    c.atoms2 = AtomLaw::rademacher();
    c.grid = GridSpec{-1.0, 1.0, -1.0, 1.0, 3};
  } else if (experiment == "girko") {
    c.n = 256;
    c.trials = 16;
    c.grid = GridSpec{};
    c.smooth_passes = 2;
    c.reference = "circular";
  } else if (experiment == "theorem4") {
    c.mat_m = MatrixSpec::identity();
    c.reference = "circular";
  } else if (experiment == "ds-solve") {
    c.n = 1;
  }
  return c;
}

namespace {

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  auto real = [](double ExperimentConfig::*field) -> Setter {
    return [field](ExperimentConfig& c, std::string_view k, std::string_view v) {
      c.*field = parse_real(v, k);
    };
  };
  auto threshold = [](double Thresholds::*field) -> Setter {
    return [field](ExperimentConfig& c, std::string_view k, std::string_view v) {
      c.thresholds.*field = parse_real(v, k);
    };
  };
  auto matrix = [](MatrixSpec ExperimentConfig::*field) -> Setter {
    return [field](ExperimentConfig& c, std::string_view, std::string_view v) {
      c.*field = MatrixSpec::parse(v);
    };
  };
  static const std::map<std::string, Setter, std::less<>> table{
      {"n", [](auto& c, auto k, auto v) { c.n = static_cast<int>(parse_integer(v, k)); }},
      {"trials", [](auto& c, auto k, auto v) { c.trials = static_cast<int>(parse_integer(v, k)); }},
      {"seed", [](auto& c, auto k, auto v) {
         const auto s = parse_integer(v, k);
         if (s < 0) fail(ErrorCode::kConfig, "seed must be >= 0");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"atoms", [](auto& c, auto, auto v) { c.atoms = AtomLaw::parse(trim(v)); }},
      {"atoms2", [](auto& c, auto, auto v) { c.atoms2 = AtomLaw::parse(trim(v)); }},
      {"grid", [](auto& c, auto, auto v) { c.grid = parse_grid(v); }},
      {"grid-steps",
       [](auto& c, auto k, auto v) { c.grid_steps = static_cast<int>(parse_integer(v, k)); }},
      {"reference", [](auto& c, auto, auto v) {
         c.reference = trim(v);
         if (c.reference == "none") c.reference.clear();
       }},
      {"out", [](auto& c, auto, auto v) { c.out_dir = trim(v); }},
      {"format", [](auto& c, auto, auto v) { c.format = trim(v); }},
      {"workers", [](auto& c, auto k, auto v) {
         const auto w = parse_integer(v, k);
         if (w < 0) fail(ErrorCode::kConfig, "workers must be >= 0");
         c.workers = static_cast<unsigned>(w);
       }},
      {"mat-m", matrix(&ExperimentConfig::mat_m)},
      {"mat-m2", [](auto& c, auto, auto v) { c.mat_m2 = MatrixSpec::parse(v); }},
      {"mat-k", matrix(&ExperimentConfig::mat_k)},
      {"mat-l", matrix(&ExperimentConfig::mat_l)},
      {"noise", real(&ExperimentConfig::noise)},
      {"smooth", [](auto& c, auto k, auto v) { c.smooth_passes = static_cast<int>(parse_integer(v, k)); }},
      {"shared-seed", [](auto& c, auto k, auto v) { c.shared_seed = parse_bool(v, k); }},
      {"gamma", real(&ExperimentConfig::gamma)},
      {"c0", real(&ExperimentConfig::c0)},
      {"c1", real(&ExperimentConfig::c1)},
      {"alpha", real(&ExperimentConfig::alpha)},
      {"betas", [](auto& c, auto, auto v) { c.betas = parse_real_list(v); }},
      {"ds-tol", [](auto& c, auto k, auto v) { c.ds.tol = parse_real(v, k); }},
      {"ds-damping", [](auto& c, auto k, auto v) { c.ds.damping = parse_real(v, k); }},
      {"ds-max-iter", [](auto& c, auto k, auto v) { c.ds.max_iter = static_cast<int>(parse_integer(v, k)); }},
      {"ds-epsilon", [](auto& c, auto k, auto v) { c.ds.epsilon = parse_real(v, k); }},
      {"ds-floor", [](auto& c, auto k, auto v) { c.ds.floor = parse_real(v, k); }},
      {"ds-form", [](auto& c, auto, auto v) { c.ds.form = parse_ds_form(trim(v)); }},
      {"nu", [](auto& c, auto, auto v) { c.nu = parse_real_list(v); }},
      {"w", [](auto& c, auto, auto v) { c.w = parse_complex(v); }},
      {"ks-threshold", threshold(&Thresholds::ks)},
      {"exact-ks-threshold", threshold(&Thresholds::exact_ks)},
      {"distance-threshold", threshold(&Thresholds::distance)},
      {"pipeline-distance-threshold", threshold(&Thresholds::pipeline_distance)},
      {"circular-ks-threshold", threshold(&Thresholds::circular_ks)},
      {"quarter-ks-threshold", threshold(&Thresholds::quarter_ks)},
      {"ui-t", threshold(&Thresholds::ui_t)},
      {"ui-threshold", threshold(&Thresholds::ui_max)},
      {"gap-threshold", threshold(&Thresholds::gap)},
      {"density-threshold", threshold(&Thresholds::density_linf)},
      {"density-radius", threshold(&Thresholds::density_radius)},
      {"mass-radius", threshold(&Thresholds::mass_radius)},
      {"mass-tolerance", threshold(&Thresholds::mass_tolerance)},
      {"hypothesis-max", threshold(&Thresholds::hypothesis_max)},
      {"min-pooled", [](auto& c, auto k, auto v) {
         c.thresholds.min_pooled = static_cast<std::size_t>(parse_integer(v, k));
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(trim(key));
  if (it == table.end()) fail(ErrorCode::kConfig, "unknown config key: " + std::string(key));
  try {
    it->second(config, it->first, value);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail(ErrorCode::kConfig, std::string(key) + ": " + e.what());
  }
}

void load_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kConfig, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment", c.experiment);
  out.emplace_back("n", std::to_string(c.n));
  out.emplace_back("trials", std::to_string(c.trials));
  out.emplace_back("seed", std::to_string(c.seed));
  out.emplace_back("atoms", c.atoms.name());
  if (c.atoms2) out.emplace_back("atoms2", c.atoms2->name());
  if (c.grid) {
    const auto& g = *c.grid;
    out.emplace_back("grid", fmt(g.x_min) + "," + fmt(g.x_max) + "," + fmt(g.y_min) + "," +
                                 fmt(g.y_max) + "," + std::to_string(g.steps));
  }
  out.emplace_back("grid-steps", std::to_string(c.grid_steps));
  if (!c.reference.empty()) out.emplace_back("reference", c.reference);
  out.emplace_back("mat-m", c.mat_m.text());
  if (c.mat_m2) out.emplace_back("mat-m2", c.mat_m2->text());
  out.emplace_back("mat-k", c.mat_k.text());
  out.emplace_back("mat-l", c.mat_l.text());
  out.emplace_back("noise", fmt(c.noise));
  out.emplace_back("smooth", std::to_string(c.smooth_passes));
  out.emplace_back("shared-seed", c.shared_seed ? "true" : "false");
  out.emplace_back("gamma", fmt(c.gamma));
  out.emplace_back("c0", fmt(c.c0));
  out.emplace_back("c1", fmt(c.c1));
  out.emplace_back("alpha", fmt(c.alpha));
  out.emplace_back("ds-tol", fmt(c.ds.tol));
  out.emplace_back("ds-damping", fmt(c.ds.damping));
  out.emplace_back("ds-max-iter", std::to_string(c.ds.max_iter));
  out.emplace_back("ds-epsilon", fmt(c.ds.epsilon));
  out.emplace_back("ds-floor", fmt(c.ds.floor));
  out.emplace_back("ds-form", to_string(c.ds.form));
  if (c.experiment == "ds-solve") {
    std::string nu;
    for (std::size_t i = 0; i < c.nu.size(); ++i) nu += (i ? "," : "") + fmt(c.nu[i]);
    out.emplace_back("nu", nu);
    out.emplace_back("w", fmt(c.w.real()) + "," + fmt(c.w.imag()));
  }
  return out;
}

}  // namespace rmt
