#include "opstrict/report.hpp"

#include <cstdio>
#include <sstream>

namespace opstrict {

void RunConfig::validate() const {
  if (arity_cap < 1 || tree_size_cap < 1 || term_size_cap < 1 || uniqueness_bound < 1)
    throw Error("caps must be at least 1");
}

bool Report::passed() const {
  if (error_kind) return false;
  for (const auto& item : items)
    if (!item.passed()) return false;
  return true;
}

ExitCode Report::exit_code() const {
  if (error_kind == "ParseError") return ExitCode::ParseError;
  if (error_kind == "CapExceeded") return ExitCode::CapExceeded;
  return passed() ? ExitCode::Pass : ExitCode::Failure;
}

ReportItem& Report::add(std::string name) {
  items.push_back(ReportItem{});
  items.back().name = std::move(name);
  return items.back();
}

void Report::add_input(std::string path, std::string_view content) {
  inputs.push_back({std::move(path), fnv1a_hex(content)});
}

void Report::record(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e))
    error_kind = "ParseError";
  else if (dynamic_cast<const CapExceeded*>(&e))
    error_kind = "CapExceeded";
  else if (dynamic_cast<const ArityMismatch*>(&e))
    error_kind = "ArityMismatch";
  else if (dynamic_cast<const NotInvertible*>(&e))
    error_kind = "NotInvertible";
  else if (dynamic_cast<const ShapeMismatch*>(&e))
    error_kind = "ShapeMismatch";
  else if (dynamic_cast<const NoTwoCell*>(&e))
    error_kind = "NoTwoCell";
  else if (dynamic_cast<const NotStronglyRegular*>(&e))
    error_kind = "NotStronglyRegular";
  else if (dynamic_cast<const UndefinedEntry*>(&e))
    error_kind = "UndefinedEntry";
  else if (dynamic_cast<const SearchBoundExceeded*>(&e))
    error_kind = "SearchBoundExceeded";
  else
    error_kind = "Error";
  error_message = e.what();
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["command"] = r.command;
  j["inputs"] = ordered_json::array();
  for (const auto& in : r.inputs) j["inputs"].push_back({{"path", in.path}, {"fnv1a", in.hash}});
  j["config"] = {{"arity_cap", r.config.arity_cap},
                 {"tree_size_cap", r.config.tree_size_cap},
                 {"term_size_cap", r.config.term_size_cap},
                 {"uniqueness_bound", r.config.uniqueness_bound}};
  j["passed"] = r.passed();
  j["exit_code"] = static_cast<int>(r.exit_code());
  if (r.error_kind)
    j["error"] = {{"kind", *r.error_kind}, {"message", *r.error_message}};
  else
    j["error"] = nullptr;
  j["items"] = ordered_json::array();
  for (const auto& item : r.items) {
    ordered_json ji;
    ji["name"] = item.name;
    ji["passed"] = item.passed();
    ji["instances"] = item.checks.instances;
    ji["cap_limited"] = item.cap_limited;
    ji["scope"] = item.scope;
    ji["failure_count"] = item.checks.failures.size();
    ji["failures"] = ordered_json::array();
    for (std::size_t i = 0; i < item.checks.failures.size() && i < kRenderedFailures; ++i) {
      const auto& f = item.checks.failures[i];
      ji["failures"].push_back({{"check", f.check},
                                {"instance", f.instance},
                                {"expected", f.expected},
                                {"actual", f.actual}});
    }
    ji["details"] = item.details;
    j["items"].push_back(std::move(ji));
  }
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace {

void render_details(std::ostringstream& out, const ordered_json& d, const std::string& indent) {
  for (const auto& [key, value] : d.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render_details(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& v : value) {
        std::ostringstream sub;
        render_details(sub, v, indent + "    ");
        auto text = sub.str();
        out << indent << "  - " << text.substr(indent.size() + 4);
      }
    } else if (value.is_array()) {
      out << indent << key << ":";
      for (const auto& v : value) out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
      out << "\n";
    } else if (value.is_string()) {
      const auto& s = value.get_ref<const std::string&>();
      if (s.find('\n') == std::string::npos) {
        out << indent << key << ": " << s << "\n";
      } else {
        out << indent << key << ": |\n";
        std::istringstream lines(s);
        for (std::string line; std::getline(lines, line);) out << indent << "  " << line << "\n";
      }
    } else {
      out << indent << key << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  for (const auto& in : r.inputs) out << "input: " << in.path << " fnv1a:" << in.hash << "\n";
  out << "config: arity_cap=" << r.config.arity_cap << " tree_size_cap=" << r.config.tree_size_cap
      << " term_size_cap=" << r.config.term_size_cap
      << " uniqueness_bound=" << r.config.uniqueness_bound << "\n";
  for (const auto& item : r.items) {
    out << (item.passed() ? "[PASS] " : "[FAIL] ") << item.name << " (" << item.checks.instances
        << " instances";
    if (!item.scope.empty()) out << "; " << item.scope;
    if (item.cap_limited) out << "; cap-limited";
    out << ")\n";
    for (std::size_t i = 0; i < item.checks.failures.size() && i < kRenderedFailures; ++i) {
      const auto& f = item.checks.failures[i];
      out << "  fail " << f.check << " at " << f.instance;
      if (!f.expected.empty() || !f.actual.empty())
        out << ": expected " << f.expected << ", got " << f.actual;
      out << "\n";
    }
    if (item.checks.failures.size() > kRenderedFailures)
      out << "  ... " << item.checks.failures.size() - kRenderedFailures << " more failures\n";
    render_details(out, item.details, "  ");
  }
  if (r.error_kind) out << "error: " << *r.error_kind << ": " << *r.error_message << "\n";
  if (r.wall_seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.wall_seconds);
    out << "wall_seconds: " << buf << "\n";
  }
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << " (exit "
      << static_cast<int>(r.exit_code()) << ")\n";
  return out.str();
}

}  // namespace opstrict
