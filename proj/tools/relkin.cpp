// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "relkin/cli/csv.hpp"
#include "relkin/cli/scenario.hpp"
#include "relkin/cli/verify.hpp"
#include "relkin/errors.hpp"
#include "relkin/worldline.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kRuntime = 2, kInput = 3 };

int run(const std::string& scenario_path, const std::string& out_path) {
  const auto sc = relkin::cli::load_scenario(scenario_path);
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  const auto records = relkin::worldline::simulate(sc, threads);
  {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw relkin::ParseError(out_path + ": cannot open for writing");
    relkin::cli::write_csv(out, records);
    if (!out) throw relkin::Error(out_path + ": write failed");
  }
  const auto s = relkin::cli::summarize(records);
  std::printf("rows=%zu plastic_rows=%zu final_Gamma_p=%.17g max_xi=%.17g max_consistency_residual=%.17g\n", s.rows,
              s.plastic_rows, s.final_gamma_p, s.max_xi, s.max_consistency);
  return kOk;
}

int verify(const std::string& suite, std::uint64_t seed, int trials) {
  relkin::cli::VerifyOptions o;
  o.tol = relkin::cli::environment_tolerances(o.tol);
  o.seed = seed;
  o.trials = trials;
  const auto report = relkin::cli::verify(suite, o);
  std::cout << "suite=" << suite << " seed=" << seed << " trials=" << trials << '\n' << report.text();
  return report.passed() ? kOk : kVerifyFailed;
}

int presets() {
  for (const auto& p : relkin::worldline::kPresets) {
    std::cout << p.name << "\t" << p.motion << "\t" << p.parameters << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relkin: relativistic inelastic deformation of a bar"};
  app.require_subcommand(1);

  std::string scenario, out;
  auto* run_cmd = app.add_subcommand("run", "simulate a scenario file and write CSV");
  run_cmd->add_option("scenario", scenario, "scenario file")->required();
  run_cmd->add_option("--out", out, "output CSV path")->required();

  std::string suite = "all";
  std::uint64_t seed = 42;
  int trials = 1000;
  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_option("--suite", suite, "algebra, kinematics, constitutive, limit or all")
      ->check(CLI::IsMember({"algebra", "kinematics", "constitutive", "limit", "all"}));
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--trials", trials, "random trials per check")->check(CLI::PositiveNumber);

  auto* presets_cmd = app.add_subcommand("presets", "list motion presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    relkin::cli::environment_tolerances({});
    if (*run_cmd) return run(scenario, out);
    if (*verify_cmd) return verify(suite, seed, trials);
    if (*presets_cmd) return presets();
  } catch (const relkin::ParseError& e) {
    std::cerr << "relkin: input error: " << e.what() << '\n';
    return kInput;
  } catch (const relkin::ValidationError& e) {
    std::cerr << "relkin: input error: " << e.what() << '\n';
    return kInput;
  } catch (const relkin::Error& e) {
    std::cerr << "relkin: error: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "relkin: error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
