#pragma once

#include <string>
#include <string_view>

#include "quadring/quadint.hpp"

namespace quadring {

/// Canonical text form: "a+b*sqrt(m)" when both coordinates are even,
/// "(u+v*sqrt(m))/2" otherwise. Zero parts are omitted, coefficients are
/// always explicit ("39-1*sqrt(14)").
std::string render(const QuadInt& x);

std::string render(const XiForm& xi);

/// Accepts everything render() emits, plus optional whitespace and a bare
/// "sqrt(m)" without coefficient. The radicand must match the field.
QuadInt parse_quadint(std::string_view text, const FieldParams& field);

} // namespace quadring
