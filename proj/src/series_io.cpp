#include "lacuna/series_io.hpp"

#include <charconv>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lacuna {

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> parse_rows(std::string_view text) {
    std::vector<std::pair<std::int64_t, std::int64_t>> rows;
    bool header = true;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (header) {
            if (line != "exponent,coefficient") throw std::invalid_argument("CSV header must be exponent,coefficient");
            header = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) throw std::invalid_argument("CSV row without comma");
        std::int64_t e = 0;
        std::int64_t c = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, e);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), c);
        if (r1.ec != std::errc{} || r1.ptr != line.data() + comma || r2.ec != std::errc{} ||
            r2.ptr != line.data() + line.size()) {
            throw std::invalid_argument("malformed CSV row: " + std::string(line));
        }
        if (!rows.empty() && e <= rows.back().first) throw std::invalid_argument("CSV exponents must ascend");
        rows.emplace_back(e, c);
    }
    if (header) throw std::invalid_argument("CSV is missing its header");
    return rows;
}

}  // namespace

std::string to_csv(const QSeries& f, CsvRows rows) {
    std::string out = "exponent,coefficient\n";
    for (std::size_t i = 0; i < f.length(); ++i) {
        const auto c = f.at(i);
        if (c == 0 && rows == CsvRows::nonzero) continue;
        out += std::to_string(f.offset() + static_cast<std::int64_t>(i));
        out += ',';
        out += std::to_string(c);
        out += '\n';
    }
    return out;
}

QSeries from_csv(std::string_view text, std::uint32_t modulus) {
    const auto rows = parse_rows(text);
    if (rows.empty()) return QSeries::zero(modulus, 0, 0);
    return QSeries::from_terms(modulus, rows.front().first, rows.back().first + 1, rows);
}

QSeries from_csv(std::string_view text, std::uint32_t modulus, std::int64_t offset, std::size_t length) {
    const auto rows = parse_rows(text);
    return QSeries::from_terms(modulus, offset, offset + static_cast<std::int64_t>(length), rows);
}

nlohmann::json to_json(const QSeries& f) {
    return {{"modulus", f.modulus()},
            {"offset", f.offset()},
            {"length", f.length()},
            {"coeffs", f.coefficients()}};
}

QSeries series_from_json(const nlohmann::json& j) {
    const auto modulus = j.at("modulus").get<std::uint32_t>();
    const auto offset = j.at("offset").get<std::int64_t>();
    const auto length = j.at("length").get<std::size_t>();
    const auto coeffs = j.at("coeffs").get<std::vector<std::uint32_t>>();
    if (coeffs.size() != length) throw std::invalid_argument("JSON series: length does not match coeffs");
    return QSeries(modulus, offset, coeffs);
}

}  // namespace lacuna
