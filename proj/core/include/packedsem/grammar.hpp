#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "packedsem/term.hpp"

namespace packedsem {

using RuleId = std::uint32_t;
using LexemeId = std::uint32_t;

struct Rule {
    RuleId id;
    std::string lhs;
    std::vector<std::string> rhs;  // one or two categories
    std::string display() const;
};

struct LexEntry {
    LexemeId id;
    std::string token;
    std::string category;
};

/// Context-free backbone: rules with right-hand sides of length one or
/// two, a lexicon mapping tokens to categories, and a start category.
class BackboneGrammar {
public:
    const std::vector<Rule>& rules() const { return rules_; }
    const Rule& rule(RuleId id) const;
    const std::string& start() const { return start_; }

    const std::vector<LexEntry>& entries() const { return entries_; }
    const LexEntry& entry(LexemeId id) const;
    std::vector<const LexEntry*> lookup_token(const std::string& token) const;
    const LexEntry* lookup(const std::string& token, const std::string& category) const;

    /// Categories that are unreachable from the start symbol or cannot
    /// derive any token sequence.
    std::vector<std::string> warnings() const;

private:
    friend class GrammarBuilder;
    std::vector<Rule> rules_;
    std::vector<LexEntry> entries_;
    std::map<std::string, std::vector<LexemeId>> by_token_;
    std::string start_;
};

/// Constant classes generated at leaf instantiation: discourse referents
/// (x1, x2, ...), event referents (e1, ...) and labels (l1, ...).
enum class GenClass { Referent, Event, Label };

/// Per-rule constraint template: a pattern for the mother's semantic
/// value and one pattern per child. Patterns share template-local
/// variables; every instantiation renames them fresh.
struct RuleTemplate {
    RuleId rule;
    Term mother;
    std::vector<Term> children;
};

/// Per-lexeme value pattern. Template variables listed in generators are
/// bound to numbered constants of their class when the leaf is
/// instantiated; all others are renamed fresh.
struct LeafTemplate {
    LexemeId lexeme;
    Term pattern;
    std::vector<std::pair<VarId, GenClass>> generators;
};

struct GrammarError : std::runtime_error {
    GrammarError(std::string message, std::size_t line)
        : std::runtime_error(std::move(message)), line(line) {}
    std::size_t line;
};

/// Backbone plus semantic constraint templates, as loaded from a grammar
/// file. Immutable after load; safe to share.
class SemGrammar {
public:
    const BackboneGrammar& backbone() const { return backbone_; }
    const RuleTemplate& rule_template(RuleId id) const;
    const LeafTemplate& leaf_template(LexemeId id) const;

private:
    friend class GrammarBuilder;
    BackboneGrammar backbone_;
    std::vector<RuleTemplate> rule_templates_;   // indexed by rule id
    std::vector<LeafTemplate> leaf_templates_;   // indexed by lexeme id
};

/// Grammar file format, one declaration per line:
///
///   start S
///   S -> NP VP : <mother pattern>, <child pattern>, <child pattern>
///   lex saw : V : <value pattern>
///
/// Patterns are terms in the textual syntax with [a,b|T] list sugar.
/// In lex patterns, variables named NewX*, NewE* and NewL* become
/// numbered referent/event/label constants at instantiation. Lines
/// starting with '#' are comments.
SemGrammar load_grammar(std::string_view text);
SemGrammar load_grammar_file(const std::string& path);

/// The bundled PP-attachment demo grammar with UDRS-style semantics.
std::string_view demo_grammar_text();

}  // namespace packedsem
