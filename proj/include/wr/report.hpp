#pragma once

#include <map>
#include <optional>
#include <string>

#include "wr/bounds.hpp"
#include "wr/fuller.hpp"

namespace wr {

/// Everything a CLI invocation reports: echoed command, input digest,
/// results, timings. Serializes to JSON and back losslessly.
struct RunReport {
  std::string command;
  std::string inputs;
  std::string tool_version = "writhe 1.0.0";
  std::map<std::string, double> results;
  std::map<std::string, std::string> notes;
  std::optional<ErrorCertificate> certificate;
  double elapsed_seconds = 0.0;

  std::string to_json() const;
  static RunReport from_json(const std::string& text);

  /// Human-readable rendering (6 significant digits for table values,
  /// full precision lives in the JSON form).
  std::string to_text() const;
};

std::string certificate_to_text(const ErrorCertificate& cert);
std::string hypothesis_report_to_text(const HypothesisReport& rep);

}  // namespace wr
