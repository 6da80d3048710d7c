#pragma once

// CSV and JSON serialization of QSeries.
//
// CSV: header `exponent,coefficient`, one row per coefficient, LF endings.
// JSON: {"modulus", "offset", "length", "coeffs": [...]}.

#include "lacuna/fpseries.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lacuna {

enum class CsvRows { nonzero, all };

std::string to_csv(const QSeries& f, CsvRows rows = CsvRows::nonzero);

// Reads a CSV written with CsvRows::all; the window is [first, last + 1).
QSeries from_csv(std::string_view text, std::uint32_t modulus);
// Reads either flavour with the window given explicitly; missing rows are zero.
QSeries from_csv(std::string_view text, std::uint32_t modulus, std::int64_t offset, std::size_t length);

nlohmann::json to_json(const QSeries& f);
QSeries series_from_json(const nlohmann::json& j);

}  // namespace lacuna
