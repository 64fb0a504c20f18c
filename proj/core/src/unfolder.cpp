#include "packedsem/unfolder.hpp"

#include <algorithm>

namespace packedsem {

namespace {

class SolutionSearch {
public:
    SolutionSearch(const Env& env, VarId root, const EnumOptions& options)
        : env_(env), root_(root), options_(options) {}

    std::vector<Solution> run(const Substitution& seed, const Constraint& goal) {
        std::vector<Constraint> agenda{goal};
        go(std::move(agenda), seed, {});
        return std::move(out_);
    }

private:
    void go(std::vector<Constraint> agenda, Substitution subst,
            std::map<Name, std::size_t> choices) {
        while (out_.size() < options_.cap) {
            if (agenda.empty()) {
                out_.push_back(Solution{SolvedForm(root_, std::move(subst)),
                                        std::move(choices)});
                return;
            }
            Constraint c = std::move(agenda.back());
            agenda.pop_back();
            switch (c.kind()) {
                case Constraint::Kind::True:
                    break;
                case Constraint::Kind::Eq: {
                    auto next = unify(c.equation().lhs, c.equation().rhs, subst);
                    if (!next) return;  // prune unsatisfiable branch
                    subst = std::move(*next);
                    break;
                }
                case Constraint::Kind::Conj: {
                    const auto& parts = c.parts();
                    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
                        agenda.push_back(*it);
                    }
                    break;
                }
                case Constraint::Kind::Use: {
                    const Constraint* def = env_.lookup(c.name());
                    if (!def) {
                        throw UndefinedNameError(c.name(),
                                                 "packed result uses undefined name N" +
                                                     std::to_string(c.name().value));
                    }
                    if (def->kind() == Constraint::Kind::Disj) {
                        if (options_.memoize_choices) {
                            auto chosen = choices.find(c.name());
                            if (chosen != choices.end()) {
                                agenda.push_back(def->parts()[chosen->second]);
                                break;
                            }
                        }
                        branch(*def, c.name(), agenda, subst, choices);
                        return;
                    }
                    agenda.push_back(*def);
                    break;
                }
                case Constraint::Kind::Disj: {
                    for (std::size_t i = 0; i < c.parts().size(); ++i) {
                        if (out_.size() >= options_.cap) return;
                        std::vector<Constraint> next = agenda;
                        next.push_back(c.parts()[i]);
                        go(std::move(next), subst, choices);
                    }
                    return;
                }
            }
        }
    }

    void branch(const Constraint& disj, Name name, const std::vector<Constraint>& agenda,
                const Substitution& subst, const std::map<Name, std::size_t>& choices) {
        for (std::size_t i = 0; i < disj.parts().size(); ++i) {
            if (out_.size() >= options_.cap) return;
            std::vector<Constraint> next = agenda;
            next.push_back(disj.parts()[i]);
            std::map<Name, std::size_t> chosen = choices;
            chosen[name] = i;
            go(std::move(next), subst, chosen);
        }
    }

    const Env& env_;
    VarId root_;
    EnumOptions options_;
    std::vector<Solution> out_;
};

}  // namespace

std::vector<Solution> enumerate_solutions(const SolvedForm& sem, const Constraint& goal,
                                          const Env& env, EnumOptions options) {
    SolutionSearch search(env, sem.root(), options);
    return search.run(sem.binding(), goal);
}

std::vector<Solution> enumerate_solutions(const PackedResult& p, EnumOptions options) {
    return enumerate_solutions(p.sem_root, p.d_root, p.env, options);
}

namespace {

void collect_constraint_vars(const Constraint& c, std::set<VarId>& out) {
    switch (c.kind()) {
        case Constraint::Kind::True:
        case Constraint::Kind::Use:
            return;
        case Constraint::Kind::Eq: {
            for (VarId v : variables_of(c.equation().lhs)) out.insert(v);
            for (VarId v : variables_of(c.equation().rhs)) out.insert(v);
            return;
        }
        case Constraint::Kind::Conj:
        case Constraint::Kind::Disj:
            for (const Constraint& p : c.parts()) collect_constraint_vars(p, out);
            return;
    }
}

std::set<VarId> known_variables(const PackedResult& p) {
    std::set<VarId> known;
    for (const auto& [v, t] : p.sem_root.binding().bindings()) {
        known.insert(v);
        for (VarId w : variables_of(t)) known.insert(w);
    }
    known.insert(p.sem_root.root());
    collect_constraint_vars(p.d_root, known);
    for (const auto& [name, body] : p.env.definitions()) {
        collect_constraint_vars(body, known);
    }
    return known;
}

}  // namespace

std::vector<std::vector<Term>> query_bindings(const PackedResult& p,
                                              std::span<const VarId> vars) {
    std::set<VarId> known = known_variables(p);
    for (VarId v : vars) {
        if (!known.count(v)) {
            throw std::invalid_argument("variable V" + std::to_string(v) +
                                        " does not occur in the packed result");
        }
    }
    std::set<Term> tuples;
    for (const Solution& s : enumerate_solutions(p)) {
        std::vector<Term> projected;
        projected.reserve(vars.size());
        for (VarId v : vars) {
            projected.push_back(s.binding.binding().apply(Term::var(v)));
        }
        tuples.insert(canonical_form(Term::app("tuple", std::move(projected))));
    }
    std::vector<std::vector<Term>> out;
    out.reserve(tuples.size());
    for (const Term& t : tuples) {
        out.push_back(t.args());
    }
    return out;
}

std::set<Term> oracle_forms(const Forest& f, NodeId from, const SemInstantiation& inst,
                            std::uint64_t max_readings) {
    BigInt count = readings_count(f, from);
    if (count > max_readings) {
        throw OracleBoundExceeded("subforest at node " + std::to_string(from) + " has " +
                                  count.str() + " readings, above the oracle bound of " +
                                  std::to_string(max_readings));
    }
    std::set<Term> forms;
    for (const Reading& reading : enumerate_readings(f, from, max_readings + 1)) {
        std::vector<Equation> eqs;
        for (NodeId id : reading_nodes(f, reading, from)) {
            const Node& n = f.node(id);
            if (n.kind == Node::Kind::Leaf) {
                auto leaf_eqs = inst.leaf_sem[id]->equations();
                eqs.insert(eqs.end(), leaf_eqs.begin(), leaf_eqs.end());
            } else if (n.kind == Node::Kind::And) {
                eqs.insert(eqs.end(), inst.rule_eqs[id].begin(), inst.rule_eqs[id].end());
            }
        }
        auto solved = solve(eqs, SolvedForm(inst.vars.of(from)));
        if (!solved) {
            throw std::runtime_error(
                "semantic constraints of a single tree are unsatisfiable at node " +
                std::to_string(from) + "; the grammar breaks the failure-free "
                "construction contract");
        }
        forms.insert(canonical_form(solved->root_binding()));
    }
    return forms;
}

std::set<Term> oracle_per_tree(const Forest& f, const SemGrammar& grammar,
                               OracleOptions options) {
    BigInt count = readings_count(f);
    if (count > options.max_readings) {
        throw OracleBoundExceeded("forest has " + count.str() +
                                  " readings, above the oracle bound of " +
                                  std::to_string(options.max_readings) +
                                  "; refusing to enumerate");
    }
    VarSupply fresh;
    SemInstantiation inst = instantiate(f, grammar, fresh);
    return oracle_forms(f, f.root(), inst, options.max_readings);
}

EquivReport equiv_check(const PackedResult& p, const std::set<Term>& oracle,
                        EnumOptions options) {
    std::set<Term> packed;
    for (const Solution& s : enumerate_solutions(p, options)) {
        packed.insert(canonical_form(s.binding.root_binding()));
    }
    EquivReport report;
    std::set_difference(oracle.begin(), oracle.end(), packed.begin(), packed.end(),
                        std::back_inserter(report.missing));
    std::set_difference(packed.begin(), packed.end(), oracle.begin(), oracle.end(),
                        std::back_inserter(report.extra));
    report.equal = report.missing.empty() && report.extra.empty();
    return report;
}

}  // namespace packedsem
