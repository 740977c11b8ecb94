#include "chshsim/report.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include <json.hpp>

namespace chshsim {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), end);
}

namespace {

std::string cell_text(const Field& field) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
  };
  return std::visit(Visitor{}, field);
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

nlohmann::ordered_json to_json(const Record& record) {
  auto object = nlohmann::ordered_json::object();
  for (const auto& [key, field] : record) {
    std::visit(
        [&, &key = key](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            object[key] = nullptr;
          } else {
            object[key] = v;
          }
        },
        field);
  }
  return object;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Record>& records) {
  if (records.empty()) return;
  const auto& first = records.front();
  for (std::size_t c = 0; c < first.size(); ++c) {
    out << (c ? "," : "") << csv_escape(first[c].first);
  }
  out << '\n';
  for (const auto& record : records) {
    for (std::size_t c = 0; c < record.size(); ++c) {
      out << (c ? "," : "") << csv_escape(cell_text(record[c].second));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<Record>& records) {
  out << "[";
  for (std::size_t r = 0; r < records.size(); ++r) {
    out << (r ? ",\n " : "\n ") << to_json(records[r]).dump();
  }
  out << (records.empty() ? "]\n" : "\n]\n");
}

void write_records(std::ostream& out, const std::vector<Record>& records, OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_csv(out, records);
  } else {
    write_json(out, records);
  }
}

}  // namespace chshsim
