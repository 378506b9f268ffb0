#pragma once

#include <string>

#include "rmlattice/algorithms.hpp"

namespace rmlattice {

inline constexpr int kFormatVersion = 1;

/// Instance file:
///   {"order": {"D", "conductor"}, "omega_action": 4x4, "gram": 4x4, "format_version": 1}
/// Integers below 2^53 in magnitude are JSON numbers, larger ones decimal strings.
/// Output is two-space indented with a trailing newline.
std::string serialize_instance(const PolarizedRMSurface& s);

/// Parses an instance without validating it. Throws FormatError.
PolarizedRMSurface parse_instance(const std::string& text);

/// Certificate file:
///   {"seed", "steps": [{"kind", "prime", "kernel_overlattice", "alpha",
///    "degree_before", "degree_after", "t", "branch"}], "final": instance}
/// Kernel entries are reduced "p/q" strings.
std::string serialize_certificate(const PipelineReport& report);

/// Parses a certificate. Only `seed`, `steps` and `output` are filled.
/// Throws FormatError.
PipelineReport parse_certificate(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace rmlattice
