#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cesaro/estimation.hpp"
#include "cesaro/extremal.hpp"
#include "cesaro/inequalities.hpp"

namespace cesaro {

/// 17 significant digits: every double round-trips bit exactly through its
/// printed form.
std::string format_double(double v);

std::string csv_header(const CheckReport&);
std::string csv_header(const ExtremalReport&);
std::string csv_header(const NormEstimate&);

std::string to_csv_row(const CheckReport& r);
std::string to_csv_row(const ExtremalReport& r);
std::string to_csv_row(const NormEstimate& r);  ///< trace omitted, see to_json

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const ExtremalReport& r);
nlohmann::json to_json(const NormEstimate& r);
nlohmann::json to_json(const InterpolationReport& r);

/// Minimal CSV reader for the library's own output: comma separated cells,
/// LF line endings, no quoting.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace cesaro
