#pragma once

// Built-in example structures, stored as session text.

#include <string>
#include <string_view>
#include <vector>

#include "pdl/parse.hpp"
#include "pdl/poisson.hpp"

namespace pdl {

struct CatalogEntry {
    std::string name;
    /// Session text the entry was parsed from.
    std::string source;
    SessionInput session;
    PoissonStructure structure;
};

/// cone, log-line, constant-A3, euler-planes, kks:sl2, kks:sl3, pencil:<f>
/// (f in x3, x4) and jacobian3:<f> (f in x, y, z). Throws DomainError for an
/// unknown name and when the loaded bivector fails the Jacobi check.
CatalogEntry load_catalog(std::string_view name);

/// Names of the fixed entries followed by the two families with a sample parameter.
std::vector<std::string> catalog_names();

} // namespace pdl
