#pragma once

#include <string>
#include <vector>

#include "nonunitary/entanglement.hpp"
#include "nonunitary/fidelity.hpp"
#include "nonunitary/model.hpp"
#include "nonunitary/scaling.hpp"

namespace nonunitary {

inline constexpr const char* kToolVersion = "0.1.0";

/// Locale-independent float formatting, 17 significant digits.
std::string format_double(double v);

/// FNV-1a hash (hex) of the canonical JSON encoding of the spec.
std::string spec_hash(const ChainSpec& spec);

/// '#'-prefixed metadata lines: spec hash, tool version, tolerances.
std::string metadata_header(const ChainSpec& spec);

std::string entropy_csv(const ChainSpec& spec, const EntropyCurve& curve);
std::string energy_csv(const ChainSpec& spec, const std::vector<EnergyPoint>& points);
std::string fidelity_csv(const ChainSpec& spec, const FidelityCurve& curve);
std::string spectrum_csv(const ChainSpec& spec, const BiorthSystem& sys);

nlohmann::json fit_to_json(const FitResult& fit);
nlohmann::json entropy_to_json(const ChainSpec& spec, const EntropyCurve& curve);

void write_file(const std::string& path, const std::string& contents);

} // namespace nonunitary
