// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include "modframe/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace modframe {

Json report_to_json(const RunReport& report) {
  Json j{{"command", report.command},
         {"digest", report.input_digest},
         {"tol", report.tol},
         {"seed", report.seed},
         {"pass", report.pass},
         {"residuals", report.residuals},
         {"verdicts", report.verdicts},
         {"labels", report.labels},
         {"payload", report.payload}};
  if (report.wall_time_ms) j["wall_time_ms"] = *report.wall_time_ms;
  return j;
}

std::string report_to_text(const RunReport& report) {
  std::ostringstream out;
  out << "command: " << report.command << "\n";
  out << "digest:  " << report.input_digest << "\n";
  out << "tol:     " << report.tol << "\n";
  out << "seed:    " << report.seed << "\n";
  if (!report.labels.empty()) {
    out << "labels:\n";
    for (const auto& [k, v] : report.labels) out << "  " << k << ": " << v << "\n";
  }
  if (!report.residuals.empty()) {
    out << "residuals:\n";
    for (const auto& [k, v] : report.residuals) {
      out << "  " << k << ": " << v << "\n";
    }
  }
  if (!report.verdicts.empty()) {
    out << "verdicts:\n";
    for (const auto& [k, v] : report.verdicts) {
      out << "  " << k << ": " << (v ? "pass" : "FAIL") << "\n";
    }
  }
  if (report.wall_time_ms) out << "wall_time_ms: " << *report.wall_time_ms << "\n";
  out << (report.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

void save_report(const RunReport& report, const std::string& path,
                 const std::string& format) {
  const std::string body = format == "text"
                               ? report_to_text(report)
                               : report_to_json(report).dump(2) + "\n";
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << body;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

}  // namespace modframe
