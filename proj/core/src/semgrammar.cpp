#include "packedsem/semgrammar.hpp"

#include <algorithm>
#include <numeric>

namespace packedsem {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

NodeVarMap assign_vars(const Forest& f, VarSupply& fresh) {
    UnionFind classes(f.size());
    for (NodeId id = 0; id < f.size(); ++id) {
        const Node& n = f.node(id);
        if (n.kind != Node::Kind::Or) continue;
        for (NodeId c : n.children) classes.unite(c, id);
    }
    NodeVarMap out;
    out.var.resize(f.size());
    std::map<std::size_t, VarId> assigned;
    for (NodeId id = 0; id < f.size(); ++id) {
        std::size_t rep = classes.find(id);
        auto it = assigned.find(rep);
        if (it == assigned.end()) {
            it = assigned.emplace(rep, fresh.fresh()).first;
        }
        out.var[id] = it->second;
    }
    return out;
}

Term GenCounters::next(GenClass cls) {
    switch (cls) {
        case GenClass::Referent:
            return Term::constant("x" + std::to_string(++referents));
        case GenClass::Event:
            return Term::constant("e" + std::to_string(++events));
        case GenClass::Label:
            return Term::constant("l" + std::to_string(++labels));
    }
    throw std::logic_error("unreachable generator class");
}

namespace {

/// Fresh renaming of a template term: generator variables become
/// numbered constants, everything else a fresh variable. Allocation
/// follows first occurrence in the pattern so identifiers are
/// deterministic.
Substitution instantiation_renaming(const Term& pattern,
                                    const std::vector<std::pair<VarId, GenClass>>& gens,
                                    VarSupply& fresh, GenCounters* counters) {
    std::map<VarId, GenClass> gen_class;
    for (const auto& [v, cls] : gens) gen_class.emplace(v, cls);
    std::map<VarId, Term> renaming;
    for (VarId v : variables_of(pattern)) {
        auto it = gen_class.find(v);
        if (it != gen_class.end() && counters) {
            renaming.emplace(v, counters->next(it->second));
        } else {
            renaming.emplace(v, Term::var(fresh.fresh()));
        }
    }
    return Substitution::from_idempotent(std::move(renaming));
}

}  // namespace

SolvedForm leaf_constraint(const Forest& f, NodeId leaf, const NodeVarMap& vars,
                           const SemGrammar& grammar, VarSupply& fresh,
                           GenCounters& counters) {
    const Node& n = f.node(leaf);
    if (n.kind != Node::Kind::Leaf) {
        throw std::invalid_argument("leaf_constraint on a non-leaf node");
    }
    const LexEntry* entry = grammar.backbone().lookup(n.token, n.category);
    if (!entry) {
        throw MissingLexemeError("no lexicon entry for '" + n.token + "' as " +
                                 n.category);
    }
    const LeafTemplate& tmpl = grammar.leaf_template(entry->id);
    Substitution renaming =
        instantiation_renaming(tmpl.pattern, tmpl.generators, fresh, &counters);
    Term value = renaming.apply(tmpl.pattern);
    std::map<VarId, Term> binding;
    binding.emplace(vars.of(leaf), std::move(value));
    return SolvedForm(vars.of(leaf), Substitution::from_idempotent(std::move(binding)));
}

std::vector<Equation> rule_constraint(const Forest& f, NodeId and_node,
                                      const NodeVarMap& vars, const SemGrammar& grammar,
                                      VarSupply& fresh) {
    const Node& n = f.node(and_node);
    if (n.kind != Node::Kind::And) {
        throw std::invalid_argument("rule_constraint on a non-AND node");
    }
    const RuleTemplate& tmpl = grammar.rule_template(n.rule);
    if (tmpl.children.size() != n.children.size()) {
        throw std::invalid_argument("rule arity does not match node " +
                                    std::to_string(and_node));
    }
    // One shared renaming across mother and child patterns.
    std::vector<Term> all_vars_source{tmpl.mother};
    all_vars_source.insert(all_vars_source.end(), tmpl.children.begin(),
                           tmpl.children.end());
    Substitution renaming = instantiation_renaming(
        Term::app("patterns", std::move(all_vars_source)), {}, fresh, nullptr);

    std::vector<Equation> eqs;
    eqs.reserve(1 + n.children.size());
    eqs.push_back(Equation{Term::var(vars.of(and_node)), renaming.apply(tmpl.mother)});
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        eqs.push_back(Equation{Term::var(vars.of(n.children[i])),
                               renaming.apply(tmpl.children[i])});
    }
    return eqs;
}

SemInstantiation instantiate(const Forest& f, const SemGrammar& grammar,
                             VarSupply& fresh) {
    SemInstantiation inst;
    inst.vars = assign_vars(f, fresh);
    inst.leaf_sem.resize(f.size());
    inst.rule_eqs.resize(f.size());

    std::vector<NodeId> leaves;
    for (NodeId id = 0; id < f.size(); ++id) {
        if (f.node(id).kind == Node::Kind::Leaf) leaves.push_back(id);
    }
    std::sort(leaves.begin(), leaves.end(), [&](NodeId a, NodeId b) {
        const Span& sa = f.node(a).span;
        const Span& sb = f.node(b).span;
        if (sa.begin != sb.begin) return sa.begin < sb.begin;
        if (sa.end != sb.end) return sa.end < sb.end;
        return a < b;
    });
    GenCounters counters;
    for (NodeId leaf : leaves) {
        inst.leaf_sem[leaf] = leaf_constraint(f, leaf, inst.vars, grammar, fresh, counters);
    }
    for (NodeId id = 0; id < f.size(); ++id) {
        if (f.node(id).kind == Node::Kind::And) {
            inst.rule_eqs[id] = rule_constraint(f, id, inst.vars, grammar, fresh);
        }
    }
    return inst;
}

namespace udrs {

Term lt(Term lower, Term upper) {
    return Term::app("lt", {std::move(lower), std::move(upper)});
}

Term cond(Term label, Term predicate) {
    return Term::app("cond", {std::move(label), std::move(predicate)});
}

Term ref(Term label, Term referent) {
    return Term::app("ref", {std::move(label), std::move(referent)});
}

Term gen_quant(Term label, Term referent, Term restrictor, Term scope) {
    return Term::app("genQuant", {std::move(label), std::move(referent),
                                  std::move(restrictor), std::move(scope)});
}

}  // namespace udrs

}  // namespace packedsem
