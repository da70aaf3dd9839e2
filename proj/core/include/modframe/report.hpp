// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0
//
// Run reports: the stable JSON interface every CLI subcommand emits, plus
// a human-oriented (non-contractual) text rendering. JSON reports are
// deterministic byte for byte given identical inputs, flags and seeds;
// wall time is only included when explicitly requested.

#ifndef MODFRAME_REPORT_HPP
#define MODFRAME_REPORT_HPP

#include <map>
#include <optional>
#include <string>

#include "modframe/serialization.hpp"

namespace modframe {

struct RunReport {
  std::string command;
  std::string input_digest;
  double tol = kDefaultClassifyTol;
  std::uint64_t seed = 0;
  bool pass = true;
  std::map<std::string, double> residuals;
  std::map<std::string, bool> verdicts;
  std::map<std::string, std::string> labels;
  Json payload = Json::object();
  std::optional<double> wall_time_ms;
};

Json report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

/// Writes the report to `path`, or to stdout when path is empty.
void save_report(const RunReport& report, const std::string& path,
                 const std::string& format);

/// FNV-1a 64-bit digest (hex) of a byte string; used to fingerprint inputs.
std::string fnv1a64_hex(const std::string& bytes);

/// Digest of a file's raw bytes.
std::string digest_file(const std::string& path);

}  // namespace modframe

#endif  // MODFRAME_REPORT_HPP
