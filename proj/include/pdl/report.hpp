#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pdl/certificate.hpp"

namespace pdl {

enum class ExitStatus { pass = 0, fail = 1, input_error = 2, budget_exhausted = 3 };

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<Certificate> certificates;
    /// Empty unless the command prints residue or modular-field signs.
    std::string signs_note;
    /// Set when the command stopped with an error instead of certificates.
    std::string error;
    ExitStatus status = ExitStatus::pass;
    double seconds = 0;
};

/// Deterministic text body; timing is not included.
std::string render_text(const Report& report);
/// Deterministic JSON: {command, inputs, certificates, signs_note}, plus
/// error when set.
std::string render_structured(const Report& report);
/// "elapsed: 12.345 ms".
std::string render_trailer(const Report& report);

} // namespace pdl
