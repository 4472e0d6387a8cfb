#include "pdl/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace pdl {

namespace {

const char* verdict_word(bool v)
{
    return v ? "PASS" : "FAIL";
}

} // namespace

std::string render_text(const Report& report)
{
    std::string out = "command: " + report.command + "\n";
    for (const auto& [key, value] : report.inputs)
        out += "input " + key + ": " + value + "\n";
    for (const auto& cert : report.certificates) {
        out += std::string("[") + verdict_word(cert.verdict) + "] " + cert.claim + "\n";
        out += "    claim: " + cert.anchor + "\n";
        for (const auto& [label, value] : cert.witnesses)
            out += "    " + label + ": " + value + "\n";
    }
    if (!report.error.empty())
        out += "error: " + report.error + "\n";
    if (!report.signs_note.empty())
        out += "signs: " + report.signs_note + "\n";
    return out;
}

std::string render_structured(const Report& report)
{
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.inputs)
        inputs[key] = value;
    doc["inputs"] = inputs;
    nlohmann::ordered_json certs = nlohmann::ordered_json::array();
    for (const auto& cert : report.certificates) {
        nlohmann::ordered_json witness = nlohmann::ordered_json::object();
        for (const auto& [label, value] : cert.witnesses)
            witness[label] = value;
        certs.push_back({{"claim", cert.claim},
                         {"anchor", cert.anchor},
                         {"verdict", verdict_word(cert.verdict)},
                         {"witness", witness}});
    }
    doc["certificates"] = certs;
    doc["signs_note"] = report.signs_note;
    if (!report.error.empty())
        doc["error"] = report.error;
    return doc.dump(2) + "\n";
}

std::string render_trailer(const Report& report)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "elapsed: %.3f ms", report.seconds * 1000.0);
    return buf;
}

} // namespace pdl
