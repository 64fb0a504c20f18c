#include "packedsem/term_io.hpp"

#include <cctype>
#include <sstream>

namespace packedsem {

namespace {

void skip_space(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
}

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           std::isdigit(static_cast<unsigned char>(c));
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_ident(std::string_view text, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
}

}  // namespace

bool TermReader::is_variable_name(std::string_view name) {
    if (name.empty()) return false;
    char c = name.front();
    return c == '_' || std::isupper(static_cast<unsigned char>(c));
}

VarId TermReader::var(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    VarId id = supply_->fresh();
    vars_.emplace(name, id);
    return id;
}

std::optional<VarId> TermReader::var_named(const std::string& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) return std::nullopt;
    return it->second;
}

Term TermReader::read_prefix(std::string_view text, std::size_t& pos) {
    skip_space(text, pos);
    if (pos >= text.size()) {
        throw TermParseError("unexpected end of input, expected a term", pos);
    }
    char c = text[pos];
    if (c == '[') {
        ++pos;
        skip_space(text, pos);
        if (pos < text.size() && text[pos] == ']') {
            ++pos;
            return Term::nil();
        }
        std::vector<Term> items;
        items.push_back(read_prefix(text, pos));
        skip_space(text, pos);
        while (pos < text.size() && text[pos] == ',') {
            ++pos;
            items.push_back(read_prefix(text, pos));
            skip_space(text, pos);
        }
        Term tail = Term::nil();
        if (pos < text.size() && text[pos] == '|') {
            ++pos;
            tail = read_prefix(text, pos);
            skip_space(text, pos);
        }
        if (pos >= text.size() || text[pos] != ']') {
            throw TermParseError("expected ']' in list", pos);
        }
        ++pos;
        return Term::list(std::move(items), std::move(tail));
    }
    if (!ident_start(c)) {
        throw TermParseError(std::string("unexpected character '") + c + "'", pos);
    }
    std::string name = read_ident(text, pos);
    if (is_variable_name(name)) {
        return Term::var(var(name));
    }
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == '(') {
        ++pos;
        std::vector<Term> args;
        args.push_back(read_prefix(text, pos));
        skip_space(text, pos);
        while (pos < text.size() && text[pos] == ',') {
            ++pos;
            args.push_back(read_prefix(text, pos));
            skip_space(text, pos);
        }
        if (pos >= text.size() || text[pos] != ')') {
            throw TermParseError("expected ')' in argument list", pos);
        }
        ++pos;
        return Term::app(std::move(name), std::move(args));
    }
    return Term::constant(std::move(name));
}

Term TermReader::read(std::string_view text) {
    std::size_t pos = 0;
    Term t = read_prefix(text, pos);
    skip_space(text, pos);
    if (pos != text.size()) {
        throw TermParseError("trailing input after term", pos);
    }
    return t;
}

namespace {

bool is_cons(const Term& t) {
    return t.is_app() && t.functor() == "." && t.arity() == 2;
}

bool is_nil(const Term& t) {
    return t.is_app() && t.functor() == "[]" && t.arity() == 0;
}

void print_term(const Term& t, std::ostream& os) {
    if (t.is_var()) {
        os << 'V' << t.var_id();
        return;
    }
    if (is_cons(t)) {
        os << '[';
        print_term(t.args()[0], os);
        Term tail = t.args()[1];
        while (is_cons(tail)) {
            os << ',';
            print_term(tail.args()[0], os);
            tail = tail.args()[1];
        }
        if (!is_nil(tail)) {
            os << '|';
            print_term(tail, os);
        }
        os << ']';
        return;
    }
    os << t.functor();
    if (!t.args().empty()) {
        os << '(';
        bool first = true;
        for (const Term& a : t.args()) {
            if (!first) os << ',';
            first = false;
            print_term(a, os);
        }
        os << ')';
    }
}

}  // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print_term(t, os);
    return os.str();
}

std::string to_string(const Substitution& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first) os << ", ";
        first = false;
        os << 'V' << v << " -> ";
        print_term(t, os);
    }
    os << '}';
    return os.str();
}

}  // namespace packedsem
