#pragma once

#include <string>

#include "rtcheck/model.hpp"

namespace rtcheck {

struct LoadOptions {
    CompletionPolicy completion = CompletionPolicy::ToTrap;
};

// Parses the requirement-file text format and returns a validated set: SUP
// entries compiled, explicit automata completed under the policy, clock names
// made disjoint across requirements. Syntax problems raise ParseError with a
// position; validation problems raise StructuralError listing every violation.
RequirementSet parse_requirements_text(const std::string& text, const LoadOptions& opts = {});
RequirementSet parse_requirements(const std::string& path, const LoadOptions& opts = {});

}  // namespace rtcheck
