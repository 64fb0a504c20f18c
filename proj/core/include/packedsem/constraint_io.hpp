#pragma once

#include <string>
#include <string_view>

#include "packedsem/constraint.hpp"
#include "packedsem/term_io.hpp"

namespace packedsem {

/// Textual constraint syntax: `&` conjunction (binds tighter), `|`
/// disjunction, `lhs = rhs` equations, `true`, bare uppercase identifiers
/// as name uses, parentheses for grouping. Environments are one
/// definition per line, `NAME := ( constraint )`, in definition order.
class ConstraintReader {
public:
    explicit ConstraintReader(TermReader& terms) : terms_(&terms) {}

    Constraint read(std::string_view text);
    Env read_env(std::string_view text);

    Name name(const std::string& ident);
    const std::map<std::string, Name>& names() const { return names_; }

private:
    Constraint read_disj(std::string_view text, std::size_t& pos);
    Constraint read_conj(std::string_view text, std::size_t& pos);
    Constraint read_atom(std::string_view text, std::size_t& pos);

    TermReader* terms_;
    NameSupply name_supply_;
    std::map<std::string, Name> names_;
};

std::string to_string(const Constraint& c);
std::string to_string(const SolvedForm& s);
std::string to_string(const Env& env);

}  // namespace packedsem
