#pragma once

#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "opstrict/core.hpp"

namespace opstrict {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::size_t arity_cap = 4;
  std::size_t tree_size_cap = 4;
  std::size_t term_size_cap = 5;
  std::size_t uniqueness_bound = 1000000;
  bool json = false;
  bool timing = false;

  /// Throws Error unless every cap is at least 1.
  void validate() const;
};

/// One checked operation. `name` is the library operation the item covers.
struct ReportItem {
  std::string name;
  CheckReport checks;
  // True when the verdict only covers the capped instance range in `scope`.
  bool cap_limited = false;
  std::string scope;
  ordered_json details = ordered_json::object();

  bool passed() const { return checks.passed(); }
};

struct ReportInput {
  std::string path;
  std::string hash;  // fnv1a-64 of the content, hex
};

enum class ExitCode : int { Pass = 0, Failure = 1, ParseError = 2, CapExceeded = 3 };

struct Report {
  std::string command;
  std::vector<ReportInput> inputs;
  RunConfig config;
  std::deque<ReportItem> items;  // add() keeps references valid
  // Set when the command stopped on an exception.
  std::optional<std::string> error_kind;
  std::optional<std::string> error_message;
  std::optional<double> wall_seconds;

  bool passed() const;
  ExitCode exit_code() const;
  ReportItem& add(std::string name);
  void add_input(std::string path, std::string_view content);
  /// Records an exception thrown while running the command.
  void record(const std::exception& e);
};

std::string fnv1a_hex(std::string_view data);

/// At most this many failures per item are rendered; the count is always
/// reported.
inline constexpr std::size_t kRenderedFailures = 50;

ordered_json to_json(const Report& r);
std::string render_json(const Report& r);
std::string render_text(const Report& r);
inline std::string render(const Report& r) {
  return r.config.json ? render_json(r) : render_text(r);
}

}  // namespace opstrict
