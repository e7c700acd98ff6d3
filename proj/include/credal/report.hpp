#pragma once

// Machine-readable reports. Every report opens with a metadata block holding
// the tool version, the full config echo and the unit conventions (entropies
// in bits, NLL in nats). Floats are written with 17 significant digits and
// fields always appear in the same order, so identical runs give identical
// bytes.

#include <string>
#include <vector>

#include "credal/pipeline.hpp"
#include "json.hpp"

namespace credal::report {

inline constexpr const char* kToolName = "credal";
inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Serializes with %.17g floats; non-finite floats become null.
std::string dump(const Json& value);

/// 17-significant-digit text for one double.
std::string format_double(double v);

Json config_json(const RunConfig& config, const std::vector<std::string>& inputs);
Json metadata(const std::string& command, const RunConfig& config,
              const std::vector<std::string>& inputs);

std::string uq_report(const std::vector<InstanceResult>& results, const RunConfig& config,
                      const std::vector<std::string>& inputs);
std::string ood_report(const OodResult& result, const RunConfig& config,
                       const std::vector<std::string>& inputs);
std::string calibration_report(const CalibrationComparison& result, const RunConfig& config,
                               const std::vector<std::string>& inputs);

void write_report(const std::string& text, const std::string& path);

}  // namespace credal::report
