#include "packedsem/grammar.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "packedsem/term_io.hpp"

namespace packedsem {

std::string Rule::display() const {
    std::string out = lhs + " ->";
    for (const std::string& c : rhs) {
        out += ' ';
        out += c;
    }
    return out;
}

const Rule& BackboneGrammar::rule(RuleId id) const {
    if (id >= rules_.size()) throw std::out_of_range("unknown rule id");
    return rules_[id];
}

const LexEntry& BackboneGrammar::entry(LexemeId id) const {
    if (id >= entries_.size()) throw std::out_of_range("unknown lexeme id");
    return entries_[id];
}

std::vector<const LexEntry*> BackboneGrammar::lookup_token(const std::string& token) const {
    std::vector<const LexEntry*> out;
    auto it = by_token_.find(token);
    if (it == by_token_.end()) return out;
    out.reserve(it->second.size());
    for (LexemeId id : it->second) out.push_back(&entries_[id]);
    return out;
}

const LexEntry* BackboneGrammar::lookup(const std::string& token,
                                        const std::string& category) const {
    for (const LexEntry* e : lookup_token(token)) {
        if (e->category == category) return e;
    }
    return nullptr;
}

std::vector<std::string> BackboneGrammar::warnings() const {
    std::set<std::string> categories;
    for (const Rule& r : rules_) {
        categories.insert(r.lhs);
        categories.insert(r.rhs.begin(), r.rhs.end());
    }
    for (const LexEntry& e : entries_) categories.insert(e.category);

    std::set<std::string> productive;
    for (const LexEntry& e : entries_) productive.insert(e.category);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Rule& r : rules_) {
            if (productive.count(r.lhs)) continue;
            bool all = true;
            for (const std::string& c : r.rhs) all = all && productive.count(c) != 0;
            if (all) {
                productive.insert(r.lhs);
                grew = true;
            }
        }
    }

    std::set<std::string> reachable{start_};
    grew = true;
    while (grew) {
        grew = false;
        for (const Rule& r : rules_) {
            if (!reachable.count(r.lhs)) continue;
            for (const std::string& c : r.rhs) {
                if (reachable.insert(c).second) grew = true;
            }
        }
    }

    std::vector<std::string> out;
    for (const std::string& c : categories) {
        if (!reachable.count(c)) out.push_back("category " + c + " unreachable from start");
        if (!productive.count(c)) out.push_back("category " + c + " is not productive");
    }
    return out;
}

const RuleTemplate& SemGrammar::rule_template(RuleId id) const {
    if (id >= rule_templates_.size()) throw std::out_of_range("unknown rule id");
    return rule_templates_[id];
}

const LeafTemplate& SemGrammar::leaf_template(LexemeId id) const {
    if (id >= leaf_templates_.size()) throw std::out_of_range("unknown lexeme id");
    return leaf_templates_[id];
}

class GrammarBuilder {
public:
    SemGrammar build(std::string_view text) {
        SemGrammar g;
        std::size_t line_no = 0;
        std::size_t start_pos = 0;
        while (start_pos <= text.size()) {
            std::size_t end = text.find('\n', start_pos);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(start_pos, end - start_pos));
            ++line_no;
            parse_line(g, line, line_no);
            if (end == text.size()) break;
            start_pos = end + 1;
        }
        if (g.backbone_.start_.empty()) {
            if (g.backbone_.rules_.empty()) {
                throw GrammarError("grammar has no rules", line_no);
            }
            g.backbone_.start_ = g.backbone_.rules_.front().lhs;
        }
        check_unary_cycles(g.backbone_, line_no);
        return g;
    }

private:
    static std::string trim(const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static std::vector<std::string> split_words(const std::string& s) {
        std::vector<std::string> out;
        std::istringstream is(s);
        std::string w;
        while (is >> w) out.push_back(w);
        return out;
    }

    /// Split on top-level commas (not inside parentheses or brackets).
    static std::vector<std::string> split_patterns(const std::string& s,
                                                   std::size_t line_no) {
        std::vector<std::string> out;
        int depth = 0;
        std::string cur;
        for (char c : s) {
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (c == ',' && depth == 0) {
                out.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (depth != 0) throw GrammarError("unbalanced brackets in templates", line_no);
        out.push_back(trim(cur));
        return out;
    }

    static std::optional<GenClass> generator_class(const std::string& var_name) {
        if (var_name.rfind("NewX", 0) == 0) return GenClass::Referent;
        if (var_name.rfind("NewE", 0) == 0) return GenClass::Event;
        if (var_name.rfind("NewL", 0) == 0) return GenClass::Label;
        return std::nullopt;
    }

    void parse_line(SemGrammar& g, const std::string& raw, std::size_t line_no) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') return;
        if (line.rfind("start ", 0) == 0) {
            std::string cat = trim(line.substr(6));
            if (cat.empty()) throw GrammarError("empty start category", line_no);
            g.backbone_.start_ = cat;
            return;
        }
        if (line.rfind("lex ", 0) == 0) {
            parse_lex(g, line.substr(4), line_no);
            return;
        }
        parse_rule(g, line, line_no);
    }

    void parse_lex(SemGrammar& g, const std::string& body, std::size_t line_no) {
        std::size_t c1 = body.find(':');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                 : body.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw GrammarError("lex line needs 'lex token : CAT : pattern'", line_no);
        }
        std::string token = trim(body.substr(0, c1));
        std::string category = trim(body.substr(c1 + 1, c2 - c1 - 1));
        std::string pattern_text = trim(body.substr(c2 + 1));
        if (token.empty() || category.empty() || pattern_text.empty()) {
            throw GrammarError("incomplete lex line", line_no);
        }
        if (g.backbone_.lookup(token, category)) {
            throw GrammarError("duplicate lexicon entry for '" + token + "'", line_no);
        }

        VarSupply locals;
        TermReader reader(locals);
        const LexemeId lexeme = static_cast<LexemeId>(g.backbone_.entries_.size());
        std::optional<Term> pattern;
        try {
            pattern = reader.read(pattern_text);
        } catch (const TermParseError& e) {
            throw GrammarError(std::string("bad lex pattern: ") + e.what(), line_no);
        }
        std::vector<std::pair<VarId, GenClass>> generators;
        for (const auto& [name, id] : reader.var_names()) {
            if (auto cls = generator_class(name)) {
                generators.emplace_back(id, *cls);
            }
        }

        g.backbone_.entries_.push_back(LexEntry{lexeme, token, category});
        g.backbone_.by_token_[token].push_back(lexeme);
        g.leaf_templates_.push_back(
            LeafTemplate{lexeme, std::move(*pattern), std::move(generators)});
    }

    void parse_rule(SemGrammar& g, const std::string& line, std::size_t line_no) {
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw GrammarError("rule line needs ': <templates>'", line_no);
        }
        std::string head = trim(line.substr(0, colon));
        std::string templates = trim(line.substr(colon + 1));

        std::size_t arrow = head.find("->");
        if (arrow == std::string::npos) {
            throw GrammarError("rule line needs '->'", line_no);
        }
        std::string lhs = trim(head.substr(0, arrow));
        std::vector<std::string> rhs = split_words(trim(head.substr(arrow + 2)));
        if (lhs.empty() || rhs.empty()) {
            throw GrammarError("rule needs a left-hand side and right-hand side", line_no);
        }
        if (rhs.size() > 2) {
            throw GrammarError("right-hand sides longer than 2 are not supported; "
                               "binarize the rule",
                               line_no);
        }

        VarSupply locals;
        TermReader reader(locals);
        std::vector<std::string> pattern_texts = split_patterns(templates, line_no);
        if (pattern_texts.size() != rhs.size() + 1) {
            throw GrammarError("rule needs one mother pattern plus one per child "
                               "(got " + std::to_string(pattern_texts.size()) + ")",
                               line_no);
        }
        const RuleId rule_id = static_cast<RuleId>(g.backbone_.rules_.size());
        std::vector<Term> patterns;
        try {
            for (const std::string& p : pattern_texts) {
                patterns.push_back(reader.read(p));
            }
        } catch (const TermParseError& e) {
            throw GrammarError(std::string("bad rule pattern: ") + e.what(), line_no);
        }
        for (const auto& [name, id] : reader.var_names()) {
            if (generator_class(name)) {
                throw GrammarError("generated constants are only available in lex "
                                   "patterns",
                                   line_no);
            }
            (void)id;
        }
        std::vector<Term> children(patterns.begin() + 1, patterns.end());
        g.backbone_.rules_.push_back(Rule{rule_id, lhs, rhs});
        g.rule_templates_.push_back(
            RuleTemplate{rule_id, std::move(patterns.front()), std::move(children)});
    }

    void check_unary_cycles(const BackboneGrammar& b, std::size_t line_no) {
        std::map<std::string, std::vector<std::string>> unary;
        for (const Rule& r : b.rules()) {
            if (r.rhs.size() == 1) unary[r.lhs].push_back(r.rhs[0]);
        }
        for (const auto& [start, unused] : unary) {
            std::set<std::string> seen{start};
            std::vector<std::string> frontier{start};
            while (!frontier.empty()) {
                std::string cat = frontier.back();
                frontier.pop_back();
                auto it = unary.find(cat);
                if (it == unary.end()) continue;
                for (const std::string& next : it->second) {
                    if (next == start) {
                        throw GrammarError("unary rule cycle through " + start, line_no);
                    }
                    if (seen.insert(next).second) frontier.push_back(next);
                }
            }
        }
    }
};

SemGrammar load_grammar(std::string_view text) { return GrammarBuilder().build(text); }

SemGrammar load_grammar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GrammarError("cannot open grammar file " + path, 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_grammar(buffer.str());
}

std::string_view demo_grammar_text() {
    static const std::string_view text = R"(# PP-attachment demo grammar with UDRS-style semantics.
#
# Every category's semantic value is a triple [Roles, DrsIn, DrsOut]: a
# role list and a difference pair threading the flat UDRS constraint
# list left to right through the leaves. Role lists:
#   S:  [Event, VerbLabel, DomLabel, TopLabel]
#   NP: [Referent, AttachLabel, DomLabel, TopLabel]
#   VP: [Event, SubjectRef, VerbLabel, DomLabel, TopLabel]
#   PP: [HostRef, HostLabel, DomLabel, TopLabel]
#   V:  [Event, SubjectRef, ObjectRef, VerbLabel, DomLabel, TopLabel]
#   P:  [HostRef, HostLabel, InnerRef, InnerLabel, DomLabel, TopLabel]
# UDRS items: lt(L1,L2) subordination, cond(L,Pred) condition, ref(L,X)
# referent introduction.
start S
S -> NP VP : [[E,VL,DL,TL],Di,Do], [[X,VL,DL,TL],Di,D1], [[E,X,VL,DL,TL],D1,Do]
VP -> V NP : [[E,S,VL,DL,TL],Di,Do], [[E,S,O,VL,DL,TL],Di,D1], [[O,OL,DL,TL],D1,Do]
VP -> VP PP : [[E,S,VL,DL,TL],Di,Do], [[E,S,VL,DL,TL],Di,D1], [[E,VL,DL,TL],D1,Do]
NP -> PN : [[X,AL,DL,TL],Di,Do], [[X,AL,DL,TL],Di,Do]
NP -> Det N : [[X,AL,DL,TL],Di,Do], [[X,AL,DL,TL],Di,D1], [[X,AL,DL,TL],D1,Do]
NP -> NP PP : [[X,AL,DL,TL],Di,Do], [[X,AL,DL,TL],Di,D1], [[X,AL,DL,TL],D1,Do]
PP -> P NP : [[HX,HL,DL,TL],Di,Do], [[HX,HL,IX,IL,DL,TL],Di,D1], [[IX,IL,DL,TL],D1,Do]
lex i : PN : [[NewX,AL,DL,TL],Di,[cond(AL,i(NewX)),ref(AL,NewX)|Di]]
lex saw : V : [[NewE,S,O,NewL,DL,TL],Di,[cond(NewL,saw(NewE,S,O)),ref(NewL,NewE),lt(NewL,TL)|Di]]
lex a : Det : [[X,AL,DL,TL],Di,[lt(AL,DL)|Di]]
lex man : N : [[NewX,NewL,DL,TL],Di,[cond(NewL,man(NewX)),ref(NewL,NewX)|Di]]
lex hill : N : [[NewX,NewL,DL,TL],Di,[cond(NewL,hill(NewX)),ref(NewL,NewX)|Di]]
lex on : P : [[HX,HL,IX,IL,DL,TL],Di,[cond(HL,on(HX,IX)),lt(IL,HL)|Di]]
)";
    return text;
}

}  // namespace packedsem
