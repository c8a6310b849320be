#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kzmc/blowup.hpp"
#include "kzmc/kz_system.hpp"
#include "kzmc/midconv.hpp"

namespace kzmc {

using Json = nlohmann::ordered_json;

// Parses text into JSON, mapping syntax errors to parse_error with a
// 1-based line and column.
Json parse_json(std::string_view text);

Json to_json(const Rational& value);
Json to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j, Index rows, Index cols, const std::string& where);

// {"n":..,"rank":..,"residues":{"i,j":[[..],..],..}}; zero residues are omitted.
Json to_json(const KzSystem& system);
// Accepts the system object itself or any object carrying it under "system".
// Schema errors are parse_errors located at the offending key when it can be
// found in the text.
KzSystem parse_system(std::string_view text, Validation validation = Validation::checked);
KzSystem system_from_json(const Json& j, std::string_view text = {}, Validation validation = Validation::checked);

Json to_json(const RationalSpectrum& spectrum);
Json to_json(const SpectraReport& report);
Json to_json(const std::vector<FamilyVerification>& report);
Json to_json(const BlowupChart& chart, const KzSystem* system = nullptr);
Json to_json(const std::vector<IntegrabilityViolation>& violations);

// A_{0,1,2} style name of a generalized residue.
std::string residue_name(LabelSet set);

// Plain text and TeX presentations.
std::string spectra_text(const SpectraReport& report);
std::string spectra_tex(const SpectraReport& report);
std::string blowup_tex(const BlowupChart& chart);
std::string system_tex(const KzSystem& system);

}  // namespace kzmc
