// Deterministic structured output for the command-line tool: ordered
// key-value sections rendered either as aligned text or as flat `key=value`
// lines.  Rendering is byte-deterministic: insertion order is preserved and
// no environment-dependent formatting is used.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hopfcert {

enum class ReportFormat { Text, Kv };

struct ReportSection {
  std::string title;  // may be empty for the preamble section
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
  }
};

class Report {
 public:
  // Appends to the most recent section, creating an untitled one if needed.
  void add(std::string key, std::string value);
  ReportSection& section(std::string title);

  // Text: "title:" header lines, "  key: value" entries.  Kv: "key=value"
  // lines with section titles dot-prefixed onto keys; keys are
  // lowercased with spaces replaced by '-'.
  std::string render(ReportFormat fmt) const;

  const std::vector<ReportSection>& sections() const { return sections_; }

 private:
  std::vector<ReportSection> sections_;
};

// "text" / "kv" parse; anything else reports false.
bool parse_report_format(const std::string& token, ReportFormat& out);

}  // namespace hopfcert
