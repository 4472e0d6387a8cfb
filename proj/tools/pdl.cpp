#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pdl/catalog.hpp"
#include "pdl/cli.hpp"
#include "pdl/error.hpp"
#include "pdl/groebner.hpp"

namespace {

template <typename T>
void copy_if_set(const CLI::Option* opt, const T& value, std::optional<T>& target)
{
    if (opt->count() > 0)
        target = value;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Poisson structures, degeneracy loci and line modules"};
    std::string command;
    std::string catalog, file, format = "text";
    unsigned k = 0, max_degree = 2;
    std::uint64_t budget = 0;
    std::string f, g, ideal, field;
    long n = 0, t = 0, r = 0, d = 0;

    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(pdl::command_names()));
    auto* catalog_opt = app.add_option("--catalog", catalog, "Built-in example, e.g. cone or pencil:x3*x4");
    auto* file_opt = app.add_option("--file", file, "Session file")->check(CLI::ExistingFile);
    catalog_opt->excludes(file_opt);
    auto* k_opt = app.add_option("--k", k, "Degeneracy index");
    app.add_option("--max-degree", max_degree, "Coefficient degree bound for Poisson fields");
    auto* budget_opt = app.add_option("--budget", budget, "Reduction-step budget for Groebner bases");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    auto* f_opt = app.add_option("--f", f, "First polynomial for bracket");
    auto* g_opt = app.add_option("--g", g, "Second polynomial for bracket");
    auto* ideal_opt = app.add_option("--ideal", ideal, "Name of a session ideal");
    auto* field_opt = app.add_option("--field", field, "Name of a session vector field");
    auto* n_opt = app.add_option("--n", n, "Projective dimension for chern");
    auto* t_opt = app.add_option("--t", t, "Determinant size for chern");
    auto* r_opt = app.add_option("--r", r, "Rank for the expected codimension in chern");
    auto* d_opt = app.add_option("--d", d, "Degree of the elliptic normal curve for secant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(pdl::ExitStatus::input_error);
    }

    if (const char* env = std::getenv("PDL_BUDGET")) {
        try {
            pdl::set_default_step_budget(std::stoull(env));
        } catch (const std::exception&) {
            std::cerr << "PDL_BUDGET must be a positive integer\n";
            return static_cast<int>(pdl::ExitStatus::input_error);
        }
    }
    if (budget_opt->count() > 0)
        pdl::set_default_step_budget(budget);

    pdl::RunOptions options;
    options.max_degree = max_degree;
    copy_if_set<unsigned>(k_opt, k, options.k);
    copy_if_set<std::string>(f_opt, f, options.f);
    copy_if_set<std::string>(g_opt, g, options.g);
    copy_if_set<std::string>(ideal_opt, ideal, options.ideal);
    copy_if_set<std::string>(field_opt, field, options.field);
    copy_if_set<long>(n_opt, n, options.n);
    copy_if_set<long>(t_opt, t, options.t);
    copy_if_set<long>(r_opt, r, options.r);
    copy_if_set<long>(d_opt, d, options.d);

    pdl::Report report;
    try {
        if (catalog_opt->count() > 0) {
            options.source = "catalog " + catalog;
            options.session = pdl::load_catalog(catalog).session;
        } else if (file_opt->count() > 0) {
            options.source = "file " + file;
            options.session = pdl::load_session_file(file);
        }
    } catch (const pdl::Error& e) {
        report.command = command;
        report.error = e.what();
        report.status = pdl::ExitStatus::input_error;
    }
    if (report.error.empty())
        report = pdl::run(command, options);
    if (options.session)
        for (const auto& w : options.session->warnings)
            std::cerr << "warning: " << w.line << ":" << w.column << ": " << w.message << "\n";

    if (format == "structured") {
        std::cout << pdl::render_structured(report);
        std::cerr << pdl::render_trailer(report) << "\n";
    } else {
        std::cout << pdl::render_text(report) << "-- " << pdl::render_trailer(report) << "\n";
    }
    return static_cast<int>(report.status);
}
