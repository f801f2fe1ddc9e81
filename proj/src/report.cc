#include "wmdelay/report.hh"

#include <sstream>

#include <json.hpp>

namespace wmdelay {

void RunReport::param(const std::string& key, const std::string& value) {
  params_.emplace_back(key, value);
}

void RunReport::param(const std::string& key, long long value) {
  params_.emplace_back(key, std::to_string(value));
}

void RunReport::columns(std::vector<std::string> names) { columns_ = std::move(names); }

void RunReport::row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

void RunReport::verdict(const std::string& text) { verdicts_.push_back(text); }

std::string RunReport::to_markdown() const {
  std::ostringstream out;
  out << "# " << command_ << "\n";
  if (!params_.empty()) {
    for (const auto& [k, v] : params_) out << "- " << k << ": " << v << "\n";
  }
  if (!columns_.empty()) {
    out << "\n|";
    for (const auto& c : columns_) out << " " << c << " |";
    out << "\n|";
    for (size_t i = 0; i < columns_.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& r : rows_) {
      out << "|";
      for (const auto& c : r) out << " " << c << " |";
      out << "\n";
    }
  }
  for (const auto& v : verdicts_) out << "\n" << "verdict: " << v << "\n";
  out << "\ntiming_ms: " << millis_ << "\n";
  return out.str();
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : params_) params[k] = v;
  j["params"] = params;
  j["columns"] = columns_;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) rows.push_back(r);
  j["rows"] = rows;
  j["verdicts"] = verdicts_;
  j["timing_ms"] = millis_;
  return j.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  auto esc = [](const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    q += '"';
    return q;
  };
  for (size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << esc(columns_[i]);
  out << "\n";
  for (const auto& r : rows_) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << esc(r[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace wmdelay
