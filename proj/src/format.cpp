#include "redcalc/format.hpp"

#include <cmath>
#include <cstdio>

#include "redcalc/error.hpp"

namespace redcalc {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool is_scalar(const nlohmann::ordered_json& j) { return !j.is_object() && !j.is_array(); }

void emit(const nlohmann::ordered_json& j, int precision, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += nlohmann::ordered_json(it.key()).dump();
        out += ": ";
        emit(it.value(), precision, depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && is_scalar(e);
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], precision, depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        emit(j[i], precision, depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_fixed(v, precision) : "null";
      return;
    }
    default:
      out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
      return;
  }
}

}  // namespace

FormatKind parse_format(std::string_view text) {
  if (text == "tsv") return FormatKind::tsv;
  if (text == "csv") return FormatKind::csv;
  if (text == "json") return FormatKind::json;
  throw Error(ErrorCode::InvalidSpec, "unknown output format '" + std::string(text) + "'");
}

std::string format_fixed(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, FormatKind kind) {
  const char sep = kind == FormatKind::csv ? ',' : '\t';
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(sep);
      out += kind == FormatKind::csv ? csv_field(cells[i]) : cells[i];
    }
    out.push_back('\n');
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string render_json(const nlohmann::ordered_json& doc, int precision) {
  std::string out;
  emit(doc, precision, 0, out);
  out.push_back('\n');
  return out;
}

}  // namespace redcalc
