#include "packedsem/constraint_io.hpp"

#include <cctype>
#include <sstream>

namespace packedsem {

namespace {

void skip_space(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string peek_ident(std::string_view text, std::size_t pos) {
    std::size_t end = pos;
    while (end < text.size() && ident_char(text[end])) ++end;
    return std::string(text.substr(pos, end - pos));
}

char lookahead_after(std::string_view text, std::size_t pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    return pos < text.size() ? text[pos] : '\0';
}

}  // namespace

Name ConstraintReader::name(const std::string& ident) {
    auto it = names_.find(ident);
    if (it != names_.end()) return it->second;
    Name n = name_supply_.fresh();
    names_.emplace(ident, n);
    return n;
}

Constraint ConstraintReader::read_atom(std::string_view text, std::size_t& pos) {
    skip_space(text, pos);
    if (pos >= text.size()) {
        throw TermParseError("unexpected end of constraint", pos);
    }
    if (text[pos] == '(') {
        ++pos;
        Constraint c = read_disj(text, pos);
        skip_space(text, pos);
        if (pos >= text.size() || text[pos] != ')') {
            throw TermParseError("expected ')' in constraint", pos);
        }
        ++pos;
        return c;
    }
    std::string ident = peek_ident(text, pos);
    if (!ident.empty()) {
        char next = lookahead_after(text, pos + ident.size());
        if (ident == "true" && next != '=' && next != '(') {
            pos += ident.size();
            return Constraint::truth();
        }
        if (TermReader::is_variable_name(ident) && next != '=' && next != '(') {
            pos += ident.size();
            return Constraint::use(name(ident));
        }
    }
    Term lhs = terms_->read_prefix(text, pos);
    skip_space(text, pos);
    if (pos >= text.size() || text[pos] != '=') {
        throw TermParseError("expected '=' after equation left-hand side", pos);
    }
    ++pos;
    Term rhs = terms_->read_prefix(text, pos);
    return Constraint::eq(std::move(lhs), std::move(rhs));
}

Constraint ConstraintReader::read_conj(std::string_view text, std::size_t& pos) {
    std::vector<Constraint> parts;
    parts.push_back(read_atom(text, pos));
    skip_space(text, pos);
    while (pos < text.size() && text[pos] == '&') {
        ++pos;
        parts.push_back(read_atom(text, pos));
        skip_space(text, pos);
    }
    return conjoin(std::move(parts));
}

Constraint ConstraintReader::read_disj(std::string_view text, std::size_t& pos) {
    std::vector<Constraint> parts;
    parts.push_back(read_conj(text, pos));
    skip_space(text, pos);
    while (pos < text.size() && text[pos] == '|') {
        ++pos;
        parts.push_back(read_conj(text, pos));
        skip_space(text, pos);
    }
    return disjoin(std::move(parts));
}

Constraint ConstraintReader::read(std::string_view text) {
    std::size_t pos = 0;
    Constraint c = read_disj(text, pos);
    skip_space(text, pos);
    if (pos != text.size()) {
        throw TermParseError("trailing input after constraint", pos);
    }
    return c;
}

Env ConstraintReader::read_env(std::string_view text) {
    Env env;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        std::size_t pos = 0;
        skip_space(line, pos);
        if (pos < line.size() && line[pos] != '#') {
            std::string ident = peek_ident(line, pos);
            if (ident.empty()) {
                throw TermParseError("expected name at start of definition", pos);
            }
            pos += ident.size();
            skip_space(line, pos);
            if (pos + 1 >= line.size() || line[pos] != ':' || line[pos + 1] != '=') {
                throw TermParseError("expected ':=' in definition", pos);
            }
            pos += 2;
            Constraint body = read_disj(line, pos);
            skip_space(line, pos);
            if (pos != line.size()) {
                throw TermParseError("trailing input after definition", pos);
            }
            env.define(name(ident), std::move(body));
        }
        if (line_end == text.size()) break;
        line_start = line_end + 1;
    }
    return env;
}

namespace {

void print_constraint(const Constraint& c, std::ostream& os, bool parenthesize_disj) {
    switch (c.kind()) {
        case Constraint::Kind::True:
            os << "true";
            return;
        case Constraint::Kind::Eq:
            os << to_string(c.equation().lhs) << " = " << to_string(c.equation().rhs);
            return;
        case Constraint::Kind::Use:
            os << 'N' << c.name().value;
            return;
        case Constraint::Kind::Conj: {
            bool first = true;
            for (const Constraint& p : c.parts()) {
                if (!first) os << " & ";
                first = false;
                print_constraint(p, os, true);
            }
            return;
        }
        case Constraint::Kind::Disj: {
            if (parenthesize_disj) os << '(';
            bool first = true;
            for (const Constraint& p : c.parts()) {
                if (!first) os << " | ";
                first = false;
                print_constraint(p, os, false);
            }
            if (parenthesize_disj) os << ')';
            return;
        }
    }
}

}  // namespace

std::string to_string(const Constraint& c) {
    std::ostringstream os;
    print_constraint(c, os, false);
    return os.str();
}

std::string to_string(const SolvedForm& s) {
    if (s.unconstrained()) return "true";
    std::ostringstream os;
    bool first = true;
    for (const Equation& eq : s.equations()) {
        if (!first) os << " & ";
        first = false;
        os << to_string(eq.lhs) << " = " << to_string(eq.rhs);
    }
    return os.str();
}

std::string to_string(const Env& env) {
    std::ostringstream os;
    for (const auto& [n, body] : env.definitions()) {
        os << 'N' << n.value << " := (" << to_string(body) << ")\n";
    }
    return os.str();
}

}  // namespace packedsem
