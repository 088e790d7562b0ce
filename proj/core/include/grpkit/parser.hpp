#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpkit/germ.hpp"
#include "grpkit/polynomial.hpp"

namespace grpkit {

/// Parses an expression over `space`.
///
/// Grammar (explicit multiplication only):
///   expr     := term (("+" | "-") term)*
///   term     := factor ("*" factor)*
///   factor   := base ("^" nat)?
///   base     := rational | name | "(" expr ")" | "-" factor
///   rational := int ("/" nat)?
///
/// Errors carry the 1-based line and column of the offending token; `line`
/// and `column_offset` position the text inside a larger document.
Polynomial parse_polynomial(std::string_view text, const VarSpace& space, int line = 1, int column_offset = 0);

/// Raw key/value content of a germ document.
struct GermDocument {
    int n = 0;
    std::vector<std::string> vars;
    std::string f1_text;
    std::string f2_text;
    std::optional<std::string> label;

    struct Location {
        int line = 1;
        int column_offset = 0;
    };
    Location f1_at{3, 5};
    Location f2_at{4, 5};
};

/// Reads the "key = value" lines of a germ document. Blank lines and lines
/// starting with '#' are ignored.
GermDocument parse_document(std::string_view text);

/// Builds the germ, parsing f1 and f2 over the declared variables.
MapGerm to_germ(const GermDocument& doc);

MapGerm parse_germ(std::string_view text);

std::string serialize(const Polynomial& p);
std::string serialize(const MapGerm& germ);

}  // namespace grpkit
