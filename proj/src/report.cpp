#include "hopfcert/report.hpp"

#include <cctype>
#include <sstream>

namespace hopfcert {

void Report::add(std::string key, std::string value) {
  if (sections_.empty()) sections_.push_back(ReportSection{});
  sections_.back().add(std::move(key), std::move(value));
}

ReportSection& Report::section(std::string title) {
  sections_.push_back(ReportSection{std::move(title), {}});
  return sections_.back();
}

namespace {

std::string kv_key(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ') out.push_back('-');
    else out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Multi-line values keep their newlines in text mode; kv mode flattens them
// so every line stays machine-splittable on the first '='.
std::string kv_value(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(c == '\n' ? ';' : c);
  while (!out.empty() && out.back() == ';') out.pop_back();
  return out;
}

}  // namespace

std::string Report::render(ReportFormat fmt) const {
  std::ostringstream os;
  for (const auto& sec : sections_) {
    if (fmt == ReportFormat::Text) {
      if (!sec.title.empty()) os << sec.title << ":\n";
      for (const auto& [k, v] : sec.entries) {
        const std::string indent = sec.title.empty() ? "" : "  ";
        if (v.find('\n') == std::string::npos) {
          os << indent << k << ": " << v << "\n";
        } else {
          os << indent << k << ":\n";
          std::istringstream lines(v);
          std::string line;
          while (std::getline(lines, line)) os << indent << "  " << line << "\n";
        }
      }
    } else {
      const std::string prefix = sec.title.empty() ? "" : kv_key(sec.title) + ".";
      for (const auto& [k, v] : sec.entries)
        os << prefix << kv_key(k) << "=" << kv_value(v) << "\n";
    }
  }
  return os.str();
}

bool parse_report_format(const std::string& token, ReportFormat& out) {
  if (token == "text") {
    out = ReportFormat::Text;
    return true;
  }
  if (token == "kv") {
    out = ReportFormat::Kv;
    return true;
  }
  return false;
}

}  // namespace hopfcert
