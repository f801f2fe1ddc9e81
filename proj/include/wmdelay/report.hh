#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wmdelay {

/// Run report carrying one command's parameters and results. The markdown,
/// JSON, and CSV renderings are all derived from the same rows, so they carry
/// identical data by construction.
class RunReport {
 public:
  RunReport(std::string command) : command_(std::move(command)) {}

  void param(const std::string& key, const std::string& value);
  void param(const std::string& key, long long value);
  void columns(std::vector<std::string> names);
  void row(std::vector<std::string> cells);
  void verdict(const std::string& text);
  void timing_ms(double ms) { millis_ = ms; }

  std::string to_markdown() const;
  std::string to_json() const;
  std::string to_csv() const;

  const std::string& command() const { return command_; }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> verdicts_;
  double millis_ = 0.0;
};

}  // namespace wmdelay
