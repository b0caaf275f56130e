#pragma once

#include <optional>
#include <string>

#include "opstrict/report.hpp"

namespace opstrict {

/// A command's report plus the artifact it produces (an `.operad` file, a
/// `.wpc` file or a tree listing), if any.
struct CommandResult {
  Report report;
  std::optional<std::string> artifact;
};

/// check_strong_regularity, then compile_operad with the configured caps.
CommandResult cmd_compile_theory(const std::string& theory_path, const RunConfig& config);
/// validate_weak_p_category.
CommandResult cmd_validate(const std::string& wpc_path, const RunConfig& config);
/// strictify, check_strict, build_F and check_equivalence; the artifact is
/// st A in `.wpc` form.
CommandResult cmd_strictify(const std::string& wpc_path, const RunConfig& config);
/// build_unit and factorize with the uniqueness search.
CommandResult cmd_factorize(const std::string& source_wpc, const std::string& target_wpc,
                            const std::string& functor_wfun, const RunConfig& config);
/// enumerate_trees and the has_two_cell partition.
CommandResult cmd_enumerate(const std::string& operad_path, std::size_t arity,
                            const RunConfig& config);

}  // namespace opstrict
