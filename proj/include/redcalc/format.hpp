#pragma once

// Text rendering shared by the command-line tools: fixed-point numbers,
// delimited tables and a JSON printer that keeps the fixed-point form.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace redcalc {

enum class FormatKind { tsv, csv, json };

FormatKind parse_format(std::string_view text);

struct OutputFormat {
  FormatKind kind = FormatKind::tsv;
  int precision = 6;  // decimal places, 1..15
};

// Fixed-point, never scientific; "-0.000" is rendered as "0.000".
std::string format_fixed(double value, int precision);

// Header row plus data rows, tab- or comma-separated. CSV fields containing
// commas, quotes or newlines are quoted.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, FormatKind kind);

// Two-space indented JSON. Floating-point numbers are printed with
// format_fixed, so parsing the output and rendering it again reproduces it
// byte for byte. Non-finite numbers become null.
std::string render_json(const nlohmann::ordered_json& doc, int precision);

}  // namespace redcalc
