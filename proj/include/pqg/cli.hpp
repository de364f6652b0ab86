#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "pqg/partial_hopf.hpp"
#include "pqg/tannaka.hpp"
#include "pqg/walks.hpp"

namespace pqg {

inline constexpr const char* toolkit_version = "0.1.0";

// Typed input read from a JSON file; a command envelope is unwrapped to its result.
using SpecInput = std::variant<PartialHopfData, FiberData, ReciprocalWalk>;
SpecInput parse_spec_json(const json& j);
SpecInput parse_spec(const std::string& path);
// Canonical JSON of a typed input, the inverse of parse_spec_json.
json spec_to_json(const SpecInput& s);

// Envelope {tool, version, command, result, report, summary}; timing only when requested.
json envelope(const json& command, const json& result, const Report& report);
std::string emit(const json& env, const std::string& format);

// Full command line: returns the process exit status (0 iff no failed check, 1 on failures,
// 2 on usage or input errors) and writes the output once at the end.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pqg
