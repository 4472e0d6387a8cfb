#pragma once

// Text input: polynomials, polyvectors, forms and session files.
//
//   session    = { statement } ;
//   statement  = ( frame | sigma | ideal | field | form | poly | bracket ) end ;
//   end        = ";" | newline ;
//   frame      = "frame" ident { "," ident } ;
//   sigma      = "sigma" "=" expr ;
//   ideal      = "ideal" ident "=" expr { "," expr } ;
//   field      = "field" ident "=" expr ;
//   form       = "form" ident "=" expr ;
//   poly       = "poly" ident "=" expr ;
//   bracket    = "[" ident "," ident "]" "=" expr ;      (Lie structure constants)
//   expr       = [ "+" | "-" ] product { ( "+" | "-" ) product } ;
//   product    = wedge { ( "*" | "/" ) wedge } ;
//   wedge      = atom { "^" atom } ;
//   atom       = integer | ident | "d/d" ident | "d" ident | "(" expr ")" ;
//
// "^" is a power when its left operand is a function and its right operand an
// integer literal, and a wedge product otherwise. A line ending in an operator
// or a comma continues on the next line; "#" starts a comment.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdl/groebner.hpp"
#include "pdl/poisson.hpp"

namespace pdl {

struct ParseWarning {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

Polynomial parse_polynomial(const Frame& frame, std::string_view text);
PolyVector parse_polyvector(const Frame& frame, std::string_view text);
DiffForm parse_form(const Frame& frame, std::string_view text);

struct SessionInput {
    std::optional<Frame> frame;
    std::optional<PolyVector> sigma;
    /// Set when the session defines sigma through "[i,j] = ..." lines.
    std::optional<StructureConstants> constants;
    std::vector<std::pair<std::string, Ideal>> ideals;
    std::vector<std::pair<std::string, PolyVector>> fields;
    std::vector<std::pair<std::string, DiffForm>> forms;
    std::vector<std::pair<std::string, Polynomial>> polys;
    std::vector<ParseWarning> warnings;
};

/// Throws ParseError with the position of the first problem.
SessionInput parse_session(std::string_view source);

} // namespace pdl
