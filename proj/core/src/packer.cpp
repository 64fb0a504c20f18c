#include "packedsem/packer.hpp"

#include <algorithm>

#include "packedsem/constraint_io.hpp"
#include "packedsem/term_io.hpp"
#include "packedsem/unfolder.hpp"

namespace packedsem {

namespace {

/// Merge the children's solved forms into one seed substitution. Child
/// subtrees bind disjoint variables in a well-formed forest; any overlap
/// (identical bindings flowing in through shared structure) is re-posted
/// as an equation and resolved by unification.
SolvedForm merge_children(VarId root, const PackWork& work,
                          const std::vector<NodeId>& children,
                          std::vector<Equation>& extra_eqs) {
    std::map<VarId, Term> merged;
    for (NodeId c : children) {
        for (const auto& [v, t] : work.sem[c]->binding().bindings()) {
            auto [it, inserted] = merged.emplace(v, t);
            if (!inserted && !(it->second == t)) {
                extra_eqs.push_back(Equation{Term::var(v), t});
            }
        }
    }
    return SolvedForm(root, Substitution::from_bindings(merged));
}

Constraint d_conjunction(const Constraint& left, const Constraint& right, Env& env,
                         NameSupply& names) {
    if (left.is_true()) return right;
    if (right.is_true()) return left;
    Name n = names.fresh();
    env.define(n, conjoin({left, right}));
    return Constraint::use(n);
}

}  // namespace

PackedResult pack(const Forest& f, const SemGrammar& grammar, PackOptions options) {
    VarSupply fresh;
    NameSupply names;
    SemInstantiation inst = instantiate(f, grammar, fresh);

    PackWork work;
    work.sem.resize(f.size());
    work.d.resize(f.size());
    Env env;

    for (NodeId id : bottom_up_order(f)) {
        const Node& n = f.node(id);
        switch (n.kind) {
            case Node::Kind::Leaf: {
                work.sem[id] = *inst.leaf_sem[id];
                work.d[id] = Constraint::truth();
                break;
            }
            case Node::Kind::And: {
                std::vector<Equation> eqs;
                SolvedForm seed = merge_children(inst.vars.of(id), work, n.children, eqs);
                eqs.insert(eqs.end(), inst.rule_eqs[id].begin(), inst.rule_eqs[id].end());
                auto solved = solve(eqs, seed);
                if (!solved) {
                    throw PackFailure(
                        "constraint solving failed at node " + std::to_string(id) +
                            " (rule " + grammar.backbone().rule(n.rule).display() +
                            "): packing assumes monotone semantic construction "
                            "where rules never fail",
                        id, n.rule);
                }
                work.sem[id] = std::move(*solved);

                Constraint d = Constraint::truth();
                for (NodeId c : n.children) {
                    d = d_conjunction(d, *work.d[c], env, names);
                }
                work.d[id] = std::move(d);
                break;
            }
            case Node::Kind::Or: {
                std::vector<SolvedForm> alt_sems;
                alt_sems.reserve(n.children.size());
                for (NodeId c : n.children) alt_sems.push_back(*work.sem[c]);

                if (options.or_mode == OrMode::NaryGeneralise || n.children.size() == 2) {
                    GeneralisationN gen = generalise_n(alt_sems, fresh);
                    std::vector<Constraint> alts;
                    alts.reserve(n.children.size());
                    for (std::size_t i = 0; i < n.children.size(); ++i) {
                        alts.push_back(
                            conjoin({gen.remainders[i], *work.d[n.children[i]]}));
                    }
                    Name name = names.fresh();
                    env.define(name, disjoin(std::move(alts)));
                    work.sem[id] = std::move(gen.common);
                    work.d[id] = Constraint::use(name);
                } else {
                    SolvedForm acc = alt_sems.front();
                    Constraint d_acc = *work.d[n.children.front()];
                    for (std::size_t i = 1; i < alt_sems.size(); ++i) {
                        Generalisation gen = generalise(acc, alt_sems[i], fresh);
                        Name name = names.fresh();
                        env.define(name,
                                   disjoin({conjoin({gen.remainder_left, d_acc}),
                                            conjoin({gen.remainder_right,
                                                     *work.d[n.children[i]]})}));
                        acc = std::move(gen.common);
                        d_acc = Constraint::use(name);
                    }
                    work.sem[id] = std::move(acc);
                    work.d[id] = std::move(d_acc);
                }
                break;
            }
        }
    }

    NodeId root = f.root();
    return PackedResult{*work.sem[root], *work.d[root], std::move(env), std::move(inst),
                        std::move(work)};
}

namespace {

void collect_uses(const Constraint& c, std::vector<Name>& out) {
    switch (c.kind()) {
        case Constraint::Kind::True:
        case Constraint::Kind::Eq:
            return;
        case Constraint::Kind::Use:
            out.push_back(c.name());
            return;
        case Constraint::Kind::Conj:
        case Constraint::Kind::Disj:
            for (const Constraint& p : c.parts()) collect_uses(p, out);
            return;
    }
}

}  // namespace

InvariantReport check_invariants(const PackedResult& p, const Forest& f,
                                 const SemGrammar& grammar,
                                 std::uint64_t reading_bound) {
    InvariantReport report;
    auto violation = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    // Invariant 1: unique, stack-disciplined definitions; every use
    // defined.
    {
        std::set<std::uint64_t> defined;
        for (const auto& [name, body] : p.env.definitions()) {
            if (!defined.insert(name.value).second) {
                violation("name N" + std::to_string(name.value) + " defined twice");
            }
            std::vector<Name> uses;
            collect_uses(body, uses);
            for (Name u : uses) {
                if (!defined.count(u.value)) {
                    violation("definition of N" + std::to_string(name.value) +
                              " uses N" + std::to_string(u.value) +
                              " before its definition");
                }
            }
        }
        std::vector<Name> root_uses;
        collect_uses(p.d_root, root_uses);
        for (Name u : root_uses) {
            if (!defined.count(u.value)) {
                violation("goal uses undefined name N" + std::to_string(u.value));
            }
        }
        if (!p.d_root.is_true() && p.d_root.kind() != Constraint::Kind::Use) {
            violation("goal must be true or a single name use");
        }
    }

    // Invariants 2 and 3, per node, gated by the subforest's reading
    // count.
    for (NodeId id : bottom_up_order(f)) {
        if (!p.work.sem[id] || !p.work.d[id]) {
            violation("node " + std::to_string(id) + " was not packed");
            continue;
        }
        BigInt count = readings_count(f, id);
        if (count > reading_bound) continue;
        ++report.nodes_checked;

        std::set<Term> tree_forms;
        try {
            tree_forms = oracle_forms(f, id, p.inst, reading_bound);
        } catch (const std::exception& e) {
            violation("node " + std::to_string(id) +
                      ": per-tree semantics failed: " + e.what());
            continue;
        }

        std::set<Term> packed_forms;
        EnumOptions opts;
        opts.cap = reading_bound + 1;
        for (const Solution& s :
             enumerate_solutions(*p.work.sem[id], *p.work.d[id], p.env, opts)) {
            packed_forms.insert(canonical_form(s.binding.root_binding()));
        }

        if (packed_forms != tree_forms) {
            violation("node " + std::to_string(id) +
                      ": packed solutions differ from per-tree semantics (" +
                      std::to_string(packed_forms.size()) + " vs " +
                      std::to_string(tree_forms.size()) + " forms)");
        }

        std::size_t packed_size = term_size(p.work.sem[id]->root_binding());
        std::size_t min_tree = 0;
        bool first = true;
        for (const Term& t : tree_forms) {
            std::size_t sz = term_size(t);
            if (first || sz < min_tree) min_tree = sz;
            first = false;
        }
        if (!first && packed_size > min_tree) {
            violation("node " + std::to_string(id) + ": packed core has size " +
                      std::to_string(packed_size) +
                      ", larger than the smallest single-tree form (" +
                      std::to_string(min_tree) + ")");
        }
    }
    return report;
}

}  // namespace packedsem
