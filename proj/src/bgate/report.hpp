#pragma once

// Report documents, schema `boltzmann-gate/1`. JSON is the machine format;
// identical inputs and configuration produce byte-identical documents.
// Markdown is a human rendering of the same content.

#include <cstdint>
#include <optional>
#include <string>

#include "bgate/axioms.hpp"
#include "bgate/convexity.hpp"

namespace bgate {

inline constexpr const char* kReportFormat = "boltzmann-gate/1";

struct ReportConfig {
  ToleranceConfig tolerances;
  bool jeffreys = false;
  std::optional<std::uint64_t> seed;  // set when the data was generated in-process
};

std::string check_report_json(const AxiomSuiteResult& result, const ReportConfig& config);
std::string recover_report_json(const RecoveryResult& recovery, const ReportConfig& config);
std::string convexity_report_json(const ConvexityVerdict& mixture,
                                  const ConvexityVerdict& midpoint,
                                  const ConvexitySampler& sampler, double k);

// Markdown summary of any boltzmann-gate/1 document.
std::string report_markdown(const std::string& report_json);

}  // namespace bgate
