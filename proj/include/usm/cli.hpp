#pragma once

#include "usm/io.hpp"

#include <string>
#include <vector>

namespace usm::cli {

enum class Status { Ok, Infeasible, ResourceLimit, InvalidInput };

std::string to_string(Status status);
/// 0 ok, 1 negative decision or infeasible, 2 invalid input, 3 resource limit.
int exit_code(Status status);

struct CommandResult {
    Status status = Status::Ok;
    io::Json payload = io::Json::object();
    std::vector<std::string> diagnostics;
    bool pretty = false;
    /// Set for --help; rendered verbatim instead of JSON.
    std::string usage;
};

/// Parses and executes one invocation; `args` excludes the program name.
/// Never throws on bad input.
CommandResult run(const std::vector<std::string>& args);

/// {"status", "payload", "diagnostics"} as one JSON document.
std::string render(const CommandResult& result);

} // namespace usm::cli
