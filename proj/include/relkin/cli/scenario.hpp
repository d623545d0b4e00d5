// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "relkin/errors.hpp"
#include "relkin/tolerances.hpp"
#include "relkin/worldline.hpp"

/// Scenario files: INI text with sections [motion], [material], [grid],
/// [mode] and an optional [tolerances]. Keys are documented in README.md.
namespace relkin::cli {

namespace detail {

inline std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Locale-independent, whole-string double parse.
inline double parse_double(std::string_view text, const std::string& where) {
  const std::string s = trimmed(text);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last) throw ParseError(where + ": '" + s + "' is not a number");
  return v;
}

inline long parse_integer(std::string_view text, const std::string& where) {
  const std::string s = trimmed(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(where + ": '" + s + "' is not an integer");
  return v;
}

class Section {
 public:
  Section(std::string name, const boost::property_tree::ptree* tree, std::set<std::string> allowed)
      : name_(std::move(name)), tree_(tree) {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!allowed.count(key)) throw ValidationError("[" + name_ + "] " + key + ": unknown key");
    }
  }

  bool present() const { return tree_ != nullptr; }

  std::optional<std::string> text(const std::string& key) const {
    if (!tree_) return std::nullopt;
    const auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return trimmed(it->second.data());
  }

  double number(const std::string& key, double fallback) const {
    const auto t = text(key);
    return t ? parse_double(*t, where(key)) : fallback;
  }

  double required_number(const std::string& key) const {
    const auto t = text(key);
    if (!t) throw ValidationError(where(key) + ": required key is missing");
    return parse_double(*t, where(key));
  }

  long integer(const std::string& key, long fallback) const {
    const auto t = text(key);
    return t ? parse_integer(*t, where(key)) : fallback;
  }

  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

 private:
  std::string name_;
  const boost::property_tree::ptree* tree_;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace detail

/// Applies "key=value,key=value" overrides (keys as in [tolerances]).
inline Tolerances apply_tolerance_overrides(Tolerances tol, std::string_view overrides, const std::string& origin) {
  std::string_view rest = overrides;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string item = detail::trimmed(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError(origin + ": '" + item + "' is not key=value");
    const std::string key = detail::trimmed(item.substr(0, eq));
    const std::string value = item.substr(eq + 1);
    const std::string where = origin + " " + key;
    if (key == "alg") tol.alg = detail::parse_double(value, where);
    else if (key == "newton") tol.newton = detail::parse_double(value, where);
    else if (key == "cons") tol.cons = detail::parse_double(value, where);
    else if (key == "div") tol.div = detail::parse_double(value, where);
    else if (key == "beta_max") tol.beta_max = detail::parse_double(value, where);
    else if (key == "max_iter") tol.max_iter = static_cast<int>(detail::parse_integer(value, where));
    else if (key == "fd_step") tol.fd_step = detail::parse_double(value, where);
    else throw ValidationError(where + ": unknown tolerance");
  }
  return tol;
}

inline void validate_tolerances(const Tolerances& t) {
  using detail::require;
  require(t.alg > 0, "[tolerances] alg must be > 0");
  require(t.newton > 0, "[tolerances] newton must be > 0");
  require(t.cons > 0, "[tolerances] cons must be > 0");
  require(t.div > 0, "[tolerances] div must be > 0");
  require(t.beta_max > 0 && t.beta_max < 1, "[tolerances] beta_max must lie in (0, 1)");
  require(t.max_iter > 0, "[tolerances] max_iter must be > 0");
  require(t.fd_step > 0, "[tolerances] fd_step must be > 0");
}

/// Overrides from the RELKIN_TOL_OVERRIDE environment variable, if set.
inline Tolerances environment_tolerances(Tolerances tol) {
  if (const char* env = std::getenv("RELKIN_TOL_OVERRIDE")) {
    tol = apply_tolerance_overrides(tol, env, "RELKIN_TOL_OVERRIDE");
    validate_tolerances(tol);
  }
  return tol;
}

inline worldline::Preset parse_preset(const std::string& name) {
  for (const auto& p : worldline::kPresets)
    if (p.name == name) return p.preset;
  std::string known;
  for (const auto& p : worldline::kPresets) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw ValidationError("[motion] preset: unknown preset '" + name + "' (known: " + known + ")");
}

/// Parses and validates scenario text. `origin` names the source in
/// diagnostics.
inline worldline::BarScenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>") {
  namespace pt = boost::property_tree;
  pt::ptree root;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  static const std::map<std::string, std::set<std::string>> schema{
      {"motion", {"preset", "beta", "strain_rate", "c", "beta_scale"}},
      {"material", {"m0", "c1", "t0", "H", "weights"}},
      {"grid", {"L0", "X_count", "X_min", "X_max", "t_start", "t_end", "dt"}},
      {"mode", {"kind"}},
      {"tolerances", {"alg", "newton", "cons", "div", "beta_max", "max_iter", "fd_step"}},
  };
  for (const auto& [name, child] : root) {
    if (!schema.count(name)) {
      throw ValidationError(child.empty() ? "key '" + name + "' outside of any section"
                                          : "[" + name + "]: unknown section");
    }
  }
  auto section = [&](const std::string& name) {
    const auto it = root.find(name);
    return detail::Section(name, it == root.not_found() ? nullptr : &it->second, schema.at(name));
  };
  const auto motion = section("motion");
  const auto material = section("material");
  const auto grid = section("grid");
  const auto mode = section("mode");
  const auto tolerances = section("tolerances");

  using detail::require;
  require(motion.present(), "[motion]: section is required");
  require(material.present(), "[material]: section is required");

  Tolerances tol;
  if (tolerances.present()) {
    std::string joined;
    for (const auto& key : schema.at("tolerances"))
      if (const auto v = tolerances.text(key)) joined += key + "=" + *v + ",";
    tol = apply_tolerance_overrides(tol, joined, "[tolerances]");
  }
  tol = environment_tolerances(tol);
  validate_tolerances(tol);

  worldline::BarScenario sc;

  // mode
  const std::string kind = mode.text("kind").value_or("relativistic");
  if (kind == "relativistic") sc.mode = worldline::Mode::Relativistic;
  else if (kind == "nonrelativistic") sc.mode = worldline::Mode::Nonrelativistic;
  else throw ValidationError("[mode] kind: expected relativistic or nonrelativistic, got '" + kind + "'");

  // motion
  const auto preset_name = motion.text("preset");
  require(preset_name.has_value(), "[motion] preset: required key is missing");
  const worldline::Preset preset = parse_preset(*preset_name);
  const double c = motion.number("c", 1.0);
  require(c > 0, "[motion] c must be > 0");
  const double beta = motion.number("beta", 0.0);
  const double rate = motion.number("strain_rate", 0.0);
  if (preset == worldline::Preset::RigidBoost) {
    require(!motion.text("strain_rate"), "[motion] strain_rate: not a parameter of rigid_boost");
  }
  if (preset == worldline::Preset::UniformStretch) {
    require(!motion.text("beta"), "[motion] beta: not a parameter of uniform_stretch");
  }
  if (sc.mode == worldline::Mode::Relativistic && std::abs(beta) >= tol.beta_max) {
    std::ostringstream os;
    os.precision(17);
    os << "[motion] beta = " << beta << ": |beta| must be below beta_max = " << tol.beta_max;
    throw ValidationError(os.str());
  }
  sc.motion = worldline::MotionSpec(preset, beta * c, rate, c);
  sc.beta_scale = motion.number("beta_scale", 1.0);
  require(sc.beta_scale > 0, "[motion] beta_scale must be > 0");

  // material
  sc.material.m0 = material.required_number("m0");
  sc.material.c1 = material.required_number("c1");
  sc.material.t0 = material.required_number("t0");
  sc.material.hardening = material.number("H", 0.0);
  const std::string weights = material.text("weights").value_or("paper_example");
  require(weights == "paper_example", "[material] weights: only 'paper_example' is supported, got '" + weights + "'");
  sc.material.tol = tol;

  // grid
  sc.L0 = grid.number("L0", 1.0);
  require(sc.L0 > 0, "[grid] L0 must be > 0");
  const long count = grid.integer("X_count", 1);
  require(count >= 1, "[grid] X_count must be >= 1");
  const double x_min = grid.number("X_min", 0.0);
  const double x_max = grid.number("X_max", sc.L0);
  require(x_max >= x_min, "[grid] X_max must be >= X_min");
  sc.labels.clear();
  for (long i = 0; i < count; ++i) {
    sc.labels.push_back(count == 1 ? x_min : x_min + (x_max - x_min) * static_cast<double>(i) / (count - 1));
  }
  sc.t_start = grid.number("t_start", 0.0);
  sc.t_end = grid.number("t_end", 1.0);
  sc.dt = grid.number("dt", 0.01);

  sc.validate();
  return sc;
}

inline worldline::BarScenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace relkin::cli
