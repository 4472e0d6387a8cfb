#include "pdl/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pdl/catalog.hpp"
#include "pdl/chern.hpp"
#include "pdl/error.hpp"
#include "pdl/modules.hpp"

namespace pdl {

namespace {

const char* kSignsNote =
    "modular fields solve i_Z mu = -d(i_sigma mu) with <d/dx_I, dx_I> = +1; in this orientation x*d/dx^d/dy "
    "has modular field -d/dy, so residues agree with examples written in the opposite orientation up to one "
    "global sign";

struct Context {
    const RunOptions& options;
    Report& report;

    const SessionInput& session() const
    {
        if (!options.session)
            throw DomainError("this command needs --catalog or --file");
        return *options.session;
    }

    const Frame& frame() const
    {
        if (!session().frame)
            throw DomainError("the session declares no frame");
        return *session().frame;
    }

    PoissonStructure structure() const
    {
        if (!session().sigma)
            throw DomainError("the session defines no sigma");
        return PoissonStructure(*session().sigma);
    }

    unsigned k() const { return options.k.value_or(0); }

    Ideal ideal() const
    {
        const auto& ideals = session().ideals;
        if (ideals.empty())
            throw DomainError("the session defines no ideal");
        if (!options.ideal)
            return ideals.front().second;
        for (const auto& [name, I] : ideals)
            if (name == *options.ideal)
                return I;
        throw DomainError("no ideal named " + *options.ideal);
    }

    std::optional<std::pair<std::string, PolyVector>> named_field() const
    {
        if (!options.field)
            return std::nullopt;
        for (const auto& [name, Z] : session().fields)
            if (name == *options.field)
                return std::make_pair(name, Z);
        throw DomainError("no field named " + *options.field);
    }

    TrivializedModule module() const
    {
        PoissonStructure P = structure();
        if (auto named = named_field()) {
            report.inputs.emplace_back("field", named->first + " = " + named->second.to_string());
            return make_module(P, named->second);
        }
        report.inputs.emplace_back("field", "modular");
        return canonical_module(P);
    }

    long required(const std::optional<long>& value, const char* flag) const
    {
        if (!value)
            throw DomainError(std::string("this command needs --") + flag);
        return *value;
    }

    void add_k() const { report.inputs.emplace_back("k", std::to_string(k())); }
};

std::string basis_string(const Ideal& I)
{
    return Ideal(I.frame(), I.basis().elements()).to_string();
}

Certificate computed(std::string claim, std::string anchor)
{
    return Certificate{std::move(claim), std::move(anchor), true, {}};
}

void cmd_check_jacobi(Context& c)
{
    const auto& s = c.session();
    if (!s.sigma)
        throw DomainError("the session defines no sigma");
    JacobiResult res = jacobi_check(*s.sigma);
    Certificate cert{"jacobi", "[sigma, sigma] = 0", res.ok(), {}};
    cert.add("sigma", s.sigma->to_string());
    cert.add("[sigma, sigma]", res.witness.is_zero() ? "0" : res.witness.to_string());
    c.report.certificates.push_back(std::move(cert));
}

void cmd_bracket(Context& c)
{
    PoissonStructure P = c.structure();
    const Frame& frame = P.frame();
    Certificate cert = computed("bracket", "{f, g} = sigma(df ^ dg)");
    if (c.options.f || c.options.g) {
        if (!c.options.f || !c.options.g)
            throw DomainError("bracket needs both --f and --g");
        Polynomial f = parse_polynomial(frame, *c.options.f);
        Polynomial g = parse_polynomial(frame, *c.options.g);
        c.report.inputs.emplace_back("f", f.to_string());
        c.report.inputs.emplace_back("g", g.to_string());
        cert.add("{f, g}", bracket(P, f, g).to_string());
    } else {
        for (std::size_t i = 0; i < frame.dimension(); ++i)
            for (std::size_t j = i + 1; j < frame.dimension(); ++j)
                cert.add("{" + frame.name(i) + ", " + frame.name(j) + "}",
                         P.entry(i, j).to_string());
    }
    c.report.certificates.push_back(std::move(cert));
}

void cmd_degeneracy(Context& c)
{
    PoissonStructure P = c.structure();
    c.add_k();
    DegeneracyIdeal D = degeneracy_ideal(P, c.k());
    Certificate ideal = computed("degeneracy-ideal", "I(D_2k) is generated by the components of sigma^(k+1)");
    ideal.add("ideal", D.ideal.to_string());
    ideal.add("reduced basis", basis_string(D.ideal));
    Certificate pf{"pfaffian-cross-check", "the (2k+2)-Pfaffians of [sigma_ij] generate I(D_2k)", D.certified, {}};
    pf.add("pfaffian ideal", D.pfaffian_ideal.to_string());
    c.report.certificates.push_back(std::move(ideal));
    c.report.certificates.push_back(std::move(pf));
}

void cmd_tower(Context& c)
{
    PoissonStructure P = c.structure();
    DegeneracyTower T = degeneracy_tower(P);
    Certificate levels = computed("degeneracy-tower", "I(D_2k) for every 2k below the generic rank");
    levels.add("generic rank", std::to_string(T.generic_rank));
    bool pf = true;
    for (const auto& level : T.levels) {
        levels.add("I(D_" + std::to_string(2 * level.k) + ")", basis_string(level.ideal));
        pf = pf && level.certified;
    }
    c.report.certificates.push_back(std::move(levels));
    c.report.certificates.push_back(
        Certificate{"pfaffian-cross-check", "Pfaffian and power generators agree at every level", pf, {}});
    c.report.certificates.push_back(
        Certificate{"descending-chain", "I(D_2k) contains I(D_2k+2)", T.chain_verified, {}});
}

void add_witnesses(Certificate& cert, const SubschemeReport& rep)
{
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i) {
        const auto& w = rep.witnesses[i];
        cert.add("witness " + std::to_string(i + 1),
                 w.operation + " with g = " + w.generator.to_string() + " reduces to " + w.remainder.to_string());
    }
}

void cmd_subscheme(Context& c)
{
    PoissonStructure P = c.structure();
    Ideal I = c.ideal();
    c.report.inputs.emplace_back("ideal", I.to_string());
    SubschemeReport rep = subscheme_check(P, I);
    Certificate cert{"poisson-subscheme", "{I, O} lies in I", rep.is_poisson, {}};
    add_witnesses(cert, rep);
    c.report.certificates.push_back(std::move(cert));
}

void cmd_strong_subscheme(Context& c)
{
    PoissonStructure P = c.structure();
    Ideal I = c.ideal();
    c.report.inputs.emplace_back("ideal", I.to_string());
    std::vector<PolyVector> fields;
    std::string label;
    if (auto named = c.named_field()) {
        fields.push_back(named->second);
        label = named->first;
    } else if (!c.session().fields.empty()) {
        for (const auto& [name, Z] : c.session().fields) {
            fields.push_back(Z);
            label += (label.empty() ? "" : ", ") + name;
        }
    } else {
        fields = poisson_fields_up_to_degree(P, c.options.max_degree);
        label = "Poisson fields of degree <= " + std::to_string(c.options.max_degree);
    }
    c.report.inputs.emplace_back("fields", label);
    SubschemeReport rep = strong_subscheme_check(P, I, fields, label);
    Certificate weak{"poisson-subscheme", "{I, O} lies in I", rep.is_poisson, {}};
    Certificate strong{"strong-subscheme", "Z(I) lies in I for every supplied Poisson field", rep.is_strong.value_or(false),
                       {}};
    add_witnesses(strong, rep);
    c.report.certificates.push_back(std::move(weak));
    c.report.certificates.push_back(std::move(strong));
}

void cmd_poisson_fields(Context& c)
{
    PoissonStructure P = c.structure();
    c.report.inputs.emplace_back("max degree", std::to_string(c.options.max_degree));
    auto fields = poisson_fields_up_to_degree(P, c.options.max_degree);
    Certificate cert = computed("poisson-fields", "basis of {Z : L_Z sigma = 0} with coefficients of bounded degree");
    cert.add("dimension", std::to_string(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i)
        cert.add("Z" + std::to_string(i + 1), fields[i].to_string());
    c.report.certificates.push_back(std::move(cert));
}

void cmd_modular(Context& c)
{
    PoissonStructure P = c.structure();
    TrivializedModule M = make_module(P, modular_field(P));
    Certificate cert{"modular-field", "i_Z mu = -d(i_sigma mu) defines a Poisson vector field", M.flat, {}};
    cert.add("Z", M.Z.is_zero() ? "0" : M.Z.to_string());
    cert.add("L_Z sigma", M.flatness_witness.is_zero() ? "0" : M.flatness_witness.to_string());
    c.report.certificates.push_back(std::move(cert));
    c.report.signs_note = kSignsNote;
}

void cmd_residue(Context& c)
{
    TrivializedModule M = c.module();
    c.add_k();
    ResidueClass res = residue(M, c.k());
    Certificate cert = computed("residue", "the class of Z ^ sigma^k modulo I(D_2k)");
    cert.add("representative", res.representative.is_zero() ? "0" : res.representative.to_string());
    cert.add("modulus", basis_string(res.modulus));
    cert.add("class", res.reduced.is_zero() ? "0" : res.reduced.to_string());
    cert.add("vanishes", res.is_zero() ? "yes" : "no");
    c.report.certificates.push_back(std::move(cert));
    c.report.signs_note = kSignsNote;
}

void cmd_module_degeneracy(Context& c)
{
    TrivializedModule M = c.module();
    c.add_k();
    ModuleDegeneracyIdeal A = module_degeneracy_ideal(M, c.k());
    Certificate ideal = computed("module-degeneracy-ideal", "I(AD_2k) = I(D_2k) + components of Z ^ sigma^k");
    ideal.add("ideal", basis_string(A.ideal));
    Certificate pf{"pfaffian-cross-check", "the (2k+2)-Pfaffians of the extended skew matrix generate I(AD_2k)",
                   A.pfaffian_certified, {}};
    pf.add("pfaffian ideal", A.pfaffian_ideal.to_string());
    Certificate chain{"inclusion-chain", "I(D_2k) in I(AD_2k) in I(D_2k-2)", A.chain_certified, {}};
    chain.add("I(D_2k)", basis_string(A.lower));
    chain.add("I(D_2k-2)", basis_string(A.upper));
    c.report.certificates.push_back(std::move(ideal));
    c.report.certificates.push_back(std::move(pf));
    c.report.certificates.push_back(std::move(chain));
}

void cmd_residue_formula(Context& c)
{
    PoissonStructure P = c.structure();
    c.add_k();
    c.report.certificates.push_back(modular_residue_formula_check(P, c.k()));
    c.report.signs_note = kSignsNote;
}

void cmd_singular_locus(Context& c)
{
    c.report.certificates.push_back(singular_equals_module_locus_check(c.structure()));
}

void cmd_be_complex(Context& c)
{
    c.report.certificates.push_back(be_complex_check(c.module()));
}

void cmd_higgs(Context& c)
{
    TrivializedModule M = c.module();
    HiggsReport rep = higgs_report(M);
    Certificate cert{"adapted", "Z is tangent to the symplectic leaves on every stratum", rep.adapted, {}};
    cert.add("top-rank obstruction", basis_string(rep.top_rank));
    for (const auto& s : rep.strata)
        cert.add("stratum D_" + std::to_string(2 * s.k),
                 s.adapted ? "adapted" : "residue " + s.reduced.to_string());
    c.report.certificates.push_back(std::move(cert));
    c.report.signs_note = kSignsNote;
}

void cmd_chern(Context& c)
{
    long n = c.required(c.options.n, "n");
    if (n < 1)
        throw DomainError("--n must be at least 1");
    c.report.inputs.emplace_back("n", std::to_string(n));
    auto classes = chern_of_projective_space(static_cast<unsigned>(n));
    Certificate cert = computed("chern-classes", "c(P^n) = (1 + H)^(n+1)");
    for (std::size_t j = 1; j < classes.size(); ++j)
        cert.add("c" + std::to_string(j), classes[j].to_string());
    c.report.certificates.push_back(std::move(cert));
    if (c.options.t) {
        long t = *c.options.t;
        if (t < 1)
            throw DomainError("--t must be at least 1");
        c.report.inputs.emplace_back("t", std::to_string(t));
        Certificate det = computed("degeneracy-class", "det [c_(t - 2(i-1) + (j-1))]");
        det.add("class", degeneracy_class(classes, static_cast<unsigned>(t)).to_string());
        c.report.certificates.push_back(std::move(det));
    }
    if (c.options.r) {
        long r = *c.options.r;
        long k = c.k();
        c.report.inputs.emplace_back("r", std::to_string(r));
        c.add_k();
        Certificate codim = computed("expected-codimension", "codim D_2k = C(r - 2k, 2) for a generic rank r bracket");
        codim.add("codimension", expected_codim(r, k).get_str());
        c.report.certificates.push_back(std::move(codim));
    }
    if (n >= 4 && n % 2 == 0) {
        Certificate sing{"singular-class-degree", "2 C(n+2, 3) = deg(c1 c2 - c3) on P^n", true, {}};
        sing.add("degree", sing_class_degree(static_cast<unsigned>(n / 2)).get_str());
        c.report.certificates.push_back(std::move(sing));
    }
}

void cmd_secant(Context& c)
{
    long d = c.required(c.options.d, "d");
    long k = c.k();
    c.report.inputs.emplace_back("d", std::to_string(d));
    c.add_k();
    Certificate cert = computed("secant", "Sec_k of an elliptic normal curve of degree d");
    cert.add("dimension", std::to_string(secant_dimension(d, k)));
    cert.add("degree", secant_degree(d, k).get_str());
    c.report.certificates.push_back(std::move(cert));
}

void cmd_hilbert(Context& c)
{
    Ideal I = c.ideal();
    c.report.inputs.emplace_back("ideal", I.to_string());
    HilbertData h = hilbert(I);
    Certificate cert = computed("hilbert", "Hilbert series N(t) / (1 - t)^n of the quotient ring");
    std::string num;
    for (std::size_t i = 0; i < h.numerator.size(); ++i)
        num += (i ? ", " : "") + h.numerator[i].get_str();
    cert.add("numerator", "[" + num + "]");
    cert.add("affine dimension", std::to_string(h.affine_dimension));
    cert.add("projective dimension", std::to_string(h.dimension));
    cert.add("degree", h.degree.get_str());
    c.report.certificates.push_back(std::move(cert));
}

void cmd_catalog(Context& c)
{
    if (!c.options.session) {
        Certificate cert = computed("catalog", "built-in example structures");
        auto names = catalog_names();
        for (std::size_t i = 0; i < names.size(); ++i)
            cert.add("entry " + std::to_string(i + 1), names[i]);
        c.report.certificates.push_back(std::move(cert));
        return;
    }
    const auto& s = c.session();
    if (!s.sigma)
        throw DomainError("the session defines no sigma");
    JacobiResult res = jacobi_check(*s.sigma);
    Certificate cert{"jacobi", "[sigma, sigma] = 0", res.ok(), {}};
    cert.add("frame", c.frame().to_string());
    cert.add("sigma", s.sigma->to_string());
    if (res.ok())
        cert.add("generic rank", std::to_string(res.structure->generic_rank()));
    for (const auto& [name, I] : c.session().ideals)
        cert.add("ideal " + name, I.to_string());
    for (const auto& [name, Z] : c.session().fields)
        cert.add("field " + name, Z.to_string());
    c.report.certificates.push_back(std::move(cert));
}

const std::map<std::string, std::function<void(Context&)>>& dispatch()
{
    static const std::map<std::string, std::function<void(Context&)>> table{
        {"check-jacobi", cmd_check_jacobi},
        {"bracket", cmd_bracket},
        {"degeneracy", cmd_degeneracy},
        {"tower", cmd_tower},
        {"subscheme", cmd_subscheme},
        {"strong-subscheme", cmd_strong_subscheme},
        {"poisson-fields", cmd_poisson_fields},
        {"modular", cmd_modular},
        {"residue", cmd_residue},
        {"module-degeneracy", cmd_module_degeneracy},
        {"residue-formula", cmd_residue_formula},
        {"singular-locus", cmd_singular_locus},
        {"be-complex", cmd_be_complex},
        {"higgs", cmd_higgs},
        {"chern", cmd_chern},
        {"secant", cmd_secant},
        {"hilbert", cmd_hilbert},
        {"catalog", cmd_catalog},
    };
    return table;
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : dispatch())
            out.push_back(name);
        return out;
    }();
    return names;
}

Report run(const std::string& command, const RunOptions& options)
{
    Report report;
    report.command = command;
    if (!options.source.empty())
        report.inputs.emplace_back("source", options.source);
    auto start = std::chrono::steady_clock::now();
    Context context{options, report};
    try {
        auto it = dispatch().find(command);
        if (it == dispatch().end())
            throw DomainError("unknown command " + command);
        it->second(context);
        report.status = ExitStatus::pass;
        for (const auto& cert : report.certificates)
            if (!cert.verdict)
                report.status = ExitStatus::fail;
    } catch (const ResourceExhausted& e) {
        report.error = e.what();
        report.status = ExitStatus::budget_exhausted;
    } catch (const ConsistencyError& e) {
        report.error = e.what();
        report.status = ExitStatus::fail;
    } catch (const Error& e) {
        report.error = e.what();
        report.status = ExitStatus::input_error;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SessionInput load_session_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_session(text.str());
}

} // namespace pdl
