// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "relkin/worldline.hpp"

namespace relkin::cli {

inline constexpr const char* kCsvHeader =
    "t,X,beta,C_hat,j,L,L_prime,T,lambda_e,lambda_p,Gamma_p,sigma_bar,t_y,xi,loading";

/// Shortest round-trip is not used on purpose: every value gets exactly
/// 17 significant digits so files from different builds compare equal.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

inline void write_csv_row(std::ostream& out, const worldline::TimeSeriesRecord& r) {
  const double values[] = {r.t,      r.X,          r.beta,        r.c_hat,    r.j,        r.length,
                           r.rest_length, r.time_extent, r.lambda_e, r.lambda_p, r.gamma_p, r.sigma_bar,
                           r.t_y,    r.xi};
  std::string line;
  for (double v : values) {
    line += format_number(v);
    line += ',';
  }
  line += constitutive::to_string(r.loading);
  line += '\n';
  out << line;
}

inline void write_csv(std::ostream& out, const std::vector<worldline::TimeSeriesRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) write_csv_row(out, r);
}

struct RunSummary {
  double final_gamma_p = 0;  ///< largest final Gamma_p over the particles
  double max_xi = 0;
  double max_consistency = 0;  ///< max |f - t_y| on plastic records
  std::size_t rows = 0;
  std::size_t plastic_rows = 0;
};

inline RunSummary summarize(const std::vector<worldline::TimeSeriesRecord>& records) {
  RunSummary s;
  s.rows = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const bool last_of_particle = i + 1 == records.size() || records[i + 1].X != r.X;
    if (last_of_particle) s.final_gamma_p = std::max(s.final_gamma_p, r.gamma_p);
    s.max_xi = std::max(s.max_xi, r.xi);
    if (r.loading == constitutive::Loading::Plastic) {
      ++s.plastic_rows;
      s.max_consistency = std::max(s.max_consistency, std::abs(r.sigma_bar - r.t_y));
    }
  }
  return s;
}

}  // namespace relkin::cli
