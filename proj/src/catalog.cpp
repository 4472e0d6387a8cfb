#include "pdl/catalog.hpp"

namespace pdl {

namespace {

std::string sl3_source()
{
    Frame frame = sl3_frame();
    StructureConstants C = sl3_constants();
    std::string out = "frame";
    for (std::size_t i = 0; i < frame.dimension(); ++i)
        out += (i ? ", " : " ") + frame.name(i);
    out += "\n";
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j) {
            Polynomial rhs(frame);
            for (std::size_t k = 0; k < 8; ++k)
                if (sgn(C(i, j, k)) != 0)
                    rhs += C(i, j, k) * Polynomial::variable(frame, k);
            if (!rhs.is_zero())
                out += "[" + frame.name(i) + "," + frame.name(j) + "] = " + rhs.to_string() + "\n";
        }
    return out;
}

std::string pencil_source(std::string_view f_text)
{
    Frame frame{"x1", "x2", "x3", "x4"};
    Polynomial f = parse_polynomial(frame, f_text);
    if (f.depends_on(0) || f.depends_on(1))
        throw DomainError("pencil parameter must be a polynomial in x3 and x4");
    return "frame x1, x2, x3, x4\nsigma = d/dx1^d/dx2 + (" + f.to_string() + ")*d/dx3^d/dx4\n";
}

std::string jacobian3_source(std::string_view f_text)
{
    Frame frame{"x", "y", "z"};
    Polynomial f = parse_polynomial(frame, f_text);
    // {x_i, x_j} = eps_ijk df/dx_k
    PolyVector sigma = PolyVector::basis(frame, {0, 1}, diff(f, 2)) + PolyVector::basis(frame, {1, 2}, diff(f, 0)) +
                       PolyVector::basis(frame, {2, 0}, diff(f, 1));
    std::string s = sigma.is_zero() ? "0" : sigma.to_string();
    return "frame x, y, z\nsigma = " + s + "\npoly f = " + f.to_string() + "\n";
}

std::string source_for(std::string_view name)
{
    if (name == "cone")
        return "frame u, v, w\n"
               "sigma = 2*u*d/du^d/dv + 4*v*d/du^d/dw + 2*w*d/dv^d/dw\n"
               "ideal X = u*w - v^2\n";
    if (name == "log-line")
        return "frame x, y\n"
               "sigma = x*d/dx^d/dy\n"
               "ideal Y = x\n";
    if (name == "constant-A3")
        return "frame x, y, z\n"
               "sigma = d/dx^d/dy\n"
               "field Z = d/dz\n"
               "ideal W = z\n";
    if (name == "euler-planes")
        return "frame x, y, z\n"
               "sigma = (x*d/dx + y*d/dy)^d/dz\n"
               "field Z = x*d/dx\n"
               "ideal A = x, y\n";
    if (name == "kks:sl2")
        return "frame h, e, f\n"
               "[h,e] = 2*e\n"
               "[h,f] = -2*f\n"
               "[e,f] = h\n";
    if (name == "kks:sl3")
        return sl3_source();
    if (name.starts_with("pencil:"))
        return pencil_source(name.substr(7));
    if (name.starts_with("jacobian3:"))
        return jacobian3_source(name.substr(10));
    throw DomainError("unknown catalog entry '" + std::string(name) + "'");
}

} // namespace

CatalogEntry load_catalog(std::string_view name)
{
    std::string source = source_for(name);
    SessionInput session = parse_session(source);
    JacobiResult jr = jacobi_check(*session.sigma);
    if (!jr.ok())
        throw DomainError("catalog entry '" + std::string(name) + "' fails the Jacobi identity: [sigma, sigma] = " +
                          jr.witness.to_string());
    return CatalogEntry{std::string(name), std::move(source), std::move(session), std::move(*jr.structure)};
}

std::vector<std::string> catalog_names()
{
    return {"cone", "log-line", "constant-A3", "euler-planes", "kks:sl2", "kks:sl3", "pencil:x3*x4", "jacobian3:x*y*z"};
}

} // namespace pdl
