#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "packedsem/term.hpp"

namespace packedsem {

struct TermParseError : std::runtime_error {
    TermParseError(std::string message, std::size_t position)
        : std::runtime_error(std::move(message)), position(position) {}
    std::size_t position;
};

/// Reads the textual term syntax: lowercase-led symbols are functors and
/// constants, uppercase- or underscore-led symbols are variables, and
/// [a,b|T] is sugar for ./2 and []/0 list cells. Variable names map to
/// identifiers from the supplied VarSupply; the same name within one
/// reader denotes the same variable.
class TermReader {
public:
    explicit TermReader(VarSupply& supply) : supply_(&supply) {}

    Term read(std::string_view text);

    /// Parse a term starting at pos; advances pos past it. Used by the
    /// constraint reader.
    Term read_prefix(std::string_view text, std::size_t& pos);

    VarId var(const std::string& name);
    std::optional<VarId> var_named(const std::string& name) const;
    const std::map<std::string, VarId>& var_names() const { return vars_; }

    static bool is_variable_name(std::string_view name);

private:
    VarSupply* supply_;
    std::map<std::string, VarId> vars_;
};

/// Prints a term in the same syntax the reader accepts; variables render
/// as V<id>, list cells with the [a,b|T] sugar.
std::string to_string(const Term& t);

std::string to_string(const Substitution& s);

}  // namespace packedsem
