#pragma once

#include <string>

#include <json.hpp>

#include "fracprop/exponent_algebra.hpp"
#include "fracprop/identification.hpp"
#include "fracprop/multiplier.hpp"
#include "fracprop/semistability.hpp"
#include "fracprop/spectral_core.hpp"

namespace fracprop {

using Json = nlohmann::ordered_json;

/// Signal file: header `x,re,im`, one row per grid point.  The grid is
/// inferred from the rows: n must be a power of two >= 8, x strictly
/// increasing with uniform spacing (1e-9 relative) and x_0 = -n dx / 2.
/// Any violation, including an unreadable file, is InvalidInput.
SampledSignal read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const SampledSignal& f);

/// Symbol file: header `r,re,im`, r log-uniform, |re + i im| within 1e-9 of 1.
Tabulated read_symbol_csv(const std::string& path);
void write_symbol_csv(const std::string& path, const Tabulated& profile);

/// Writes through a sibling temporary file and rename(), so a failure never
/// leaves a truncated target behind.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Compact JSON with every float printed as %.17g; NaN and infinities become null.
std::string dump_json(const Json& value);

Json to_json(const IdentificationResult& r);
Json to_json(const SemistabilityReport& r);
Json to_json(const ProductVerdict& v);
Json to_json(const BranchIntegers& b);

}  // namespace fracprop
