#pragma once

// Command dispatch behind the pdl executable.

#include <optional>
#include <string>
#include <vector>

#include "pdl/parse.hpp"
#include "pdl/report.hpp"

namespace pdl {

struct RunOptions {
    /// "catalog NAME" or "file PATH"; echoed in the report.
    std::string source;
    std::optional<SessionInput> session;
    std::optional<unsigned> k;
    unsigned max_degree = 2;
    /// Polynomials for bracket, as text in the session frame.
    std::optional<std::string> f;
    std::optional<std::string> g;
    /// Names of a session ideal or field; the first ideal and the canonical
    /// module are used when unset.
    std::optional<std::string> ideal;
    std::optional<std::string> field;
    /// Parameters for chern and secant.
    std::optional<long> n;
    std::optional<long> t;
    std::optional<long> r;
    std::optional<long> d;
};

const std::vector<std::string>& command_names();

/// Catches library errors and maps them to the report status.
Report run(const std::string& command, const RunOptions& options);

/// Reads and parses a session file; throws ParseError or DomainError.
SessionInput load_session_file(const std::string& path);

} // namespace pdl
