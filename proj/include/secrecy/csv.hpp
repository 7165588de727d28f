#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace secrecy {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit hash; used to stamp outputs with the configuration they
/// came from.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Numeric formatting for CSV cells: 12 significant digits, dot decimal
/// separator, no locale dependence.
inline std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

using CsvCell = std::variant<double, std::uint64_t, std::string>;

/// Minimal CSV emitter. Comments ("# key=value") precede the header row;
/// every write is deterministic so identical inputs produce identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void provenance(std::uint64_t config_hash, std::uint64_t seed) {
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(config_hash));
    comment(std::string("tool_version=") + kToolVersion);
    comment(std::string("config_hash=") + hex);
    comment("seed=" + std::to_string(seed));
  }

  void header(const std::vector<std::string>& columns) { write_row(columns); }

  void row(const std::vector<CsvCell>& cells) {
    std::vector<std::string> rendered;
    rendered.reserve(cells.size());
    for (const auto& c : cells) {
      if (const auto* d = std::get_if<double>(&c)) rendered.push_back(format_sig(*d));
      else if (const auto* u = std::get_if<std::uint64_t>(&c)) rendered.push_back(std::to_string(*u));
      else rendered.push_back(std::get<std::string>(c));
    }
    write_row(rendered);
  }

 private:
  void write_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ",";
      out_ << escape(fields[i]);
    }
    out_ << "\n";
  }

  static std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }

  std::ostream& out_;
};

}  // namespace secrecy
