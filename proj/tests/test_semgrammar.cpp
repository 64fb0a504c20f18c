#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "packedsem/parser.hpp"
#include "packedsem/semgrammar.hpp"
#include "support.hpp"

using namespace packedsem;
using testsupport::closed_udrs_items;
using testsupport::list_parts;
using testsupport::Terms;

namespace {

SemGrammar demo() { return load_grammar(demo_grammar_text()); }

Forest pp_forest(const SemGrammar& g, std::size_t n) {
    auto f = parse(pp_sentence(n), g.backbone());
    REQUIRE(f.has_value());
    return *f;
}

NodeId find_leaf(const Forest& f, const std::string& token) {
    for (NodeId id = 0; id < f.size(); ++id) {
        if (f.node(id).kind == Node::Kind::Leaf && f.node(id).token == token) return id;
    }
    FAIL("leaf not found");
    return 0;
}

std::multiset<Term> item_multiset(const std::vector<Term>& items) {
    return {items.begin(), items.end()};
}

}  // namespace

TEST_CASE("assign_vars shares one variable across an OR node and its children") {
    Forest f;
    NodeId a = f.add(Node::leaf("A", "x", {0, 1}));
    NodeId b = f.add(Node::leaf("A", "x", {0, 1}));
    NodeId o = f.add(Node::or_node({a, b}, {0, 1}));
    f.set_root(o);
    VarSupply fresh;
    NodeVarMap vars = assign_vars(f, fresh);
    CHECK(vars.of(o) == vars.of(a));
    CHECK(vars.of(o) == vars.of(b));

    Forest g;
    NodeId l1 = g.add(Node::leaf("A", "x", {0, 1}));
    NodeId l2 = g.add(Node::leaf("B", "y", {1, 2}));
    NodeId s = g.add(Node::and_node("S", 0, {l1, l2}, {0, 2}));
    g.set_root(s);
    VarSupply fresh2;
    NodeVarMap and_vars = assign_vars(g, fresh2);
    CHECK(and_vars.of(s) != and_vars.of(l1));
    CHECK(and_vars.of(s) != and_vars.of(l2));
    CHECK(and_vars.of(l1) != and_vars.of(l2));
}

TEST_CASE("leaf constraints instantiate the lexicon with numbered constants") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 0);
    VarSupply fresh;
    SemInstantiation inst = instantiate(f, g, fresh);

    NodeId man = find_leaf(f, "man");
    const SolvedForm& sem = *inst.leaf_sem[man];
    CHECK(sem.root() == inst.vars.of(man));

    // Leaves run left to right: i gets x1, saw e1/l1, man x2/l2.
    auto triple = testsupport::udrs_value(sem.root_binding());
    auto roles = list_parts(triple.roles);
    REQUIRE(roles.items.size() == 4);
    CHECK(roles.items[0] == Term::constant("x2"));
    CHECK(roles.items[1] == Term::constant("l2"));

    auto contributed = list_parts(triple.drs_out);
    REQUIRE(contributed.items.size() >= 2);
    Terms expected;
    CHECK(contributed.items[0] == expected("cond(l2,man(x2))"));
    CHECK(contributed.items[1] == expected("ref(l2,x2)"));
    CHECK(contributed.tail == triple.drs_in);
}

TEST_CASE("instantiations of one lexeme share no local variables") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 2);  // two 'hill' leaves, three 'a' leaves
    VarSupply fresh;
    SemInstantiation inst = instantiate(f, g, fresh);

    std::map<VarId, int> owners;
    for (NodeId id = 0; id < f.size(); ++id) {
        if (!inst.leaf_sem[id]) continue;
        for (VarId v : variables_of(inst.leaf_sem[id]->root_binding())) {
            owners[v] += 1;
            CHECK(owners[v] == 1);
        }
    }
}

TEST_CASE("missing lexemes are reported") {
    SemGrammar g = demo();
    Forest f;
    NodeId bad = f.add(Node::leaf("N", "unicorn", {0, 1}));
    f.set_root(bad);
    VarSupply fresh;
    NodeVarMap vars = assign_vars(f, fresh);
    GenCounters counters;
    CHECK_THROWS_AS(leaf_constraint(f, bad, vars, g, fresh, counters),
                    MissingLexemeError);
}

TEST_CASE("the clause rule relates mother and children through shared locals") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 0);
    VarSupply fresh;
    SemInstantiation inst = instantiate(f, g, fresh);

    NodeId root = f.root();
    REQUIRE(f.node(root).kind == Node::Kind::And);
    REQUIRE(f.category_of(root) == "S");
    const auto& eqs = inst.rule_eqs[root];
    REQUIRE(eqs.size() == 3);  // mother plus two children

    // Shape of the S -> NP VP constraint: S and VP share the event, NP
    // and VP share the subject referent, the verb/domain/top labels
    // thread through all three, and the difference pair chains
    // S.in -> NP -> VP -> S.out.
    auto s_val = testsupport::udrs_value(eqs[0].rhs);
    auto np_val = testsupport::udrs_value(eqs[1].rhs);
    auto vp_val = testsupport::udrs_value(eqs[2].rhs);
    auto s_roles = list_parts(s_val.roles).items;
    auto np_roles = list_parts(np_val.roles).items;
    auto vp_roles = list_parts(vp_val.roles).items;
    REQUIRE(s_roles.size() == 4);
    REQUIRE(np_roles.size() == 4);
    REQUIRE(vp_roles.size() == 5);

    CHECK(s_roles[0] == vp_roles[0]);   // event
    CHECK(np_roles[0] == vp_roles[1]);  // subject referent
    for (int i = 1; i <= 3; ++i) {
        CHECK(s_roles[i] == np_roles[i]);
        CHECK(s_roles[i] == vp_roles[i + 1]);
    }
    CHECK(s_val.drs_in == np_val.drs_in);
    CHECK(np_val.drs_out == vp_val.drs_in);
    CHECK(vp_val.drs_out == s_val.drs_out);
}

TEST_CASE("rule instantiations at different nodes are disjoint") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 2);
    VarSupply fresh;
    SemInstantiation inst = instantiate(f, g, fresh);

    std::map<VarId, NodeId> seen;
    for (NodeId id = 0; id < f.size(); ++id) {
        for (const Equation& eq : inst.rule_eqs[id]) {
            for (VarId v : variables_of(eq.rhs)) {
                bool is_node_var = false;
                for (VarId nv : inst.vars.var) is_node_var = is_node_var || nv == v;
                if (is_node_var) continue;
                auto [it, inserted] = seen.emplace(v, id);
                if (!inserted) CHECK(it->second == id);
            }
        }
    }
}

TEST_CASE("single-tree semantics solve and close for every small sentence") {
    SemGrammar g = demo();
    for (unsigned n = 0; n <= 4; ++n) {
        Forest f = pp_forest(g, n);
        VarSupply fresh;
        SemInstantiation inst = instantiate(f, g, fresh);
        for (const Reading& r : enumerate_readings(f, 100)) {
            std::vector<Equation> eqs;
            for (NodeId id : reading_nodes(f, r, f.root())) {
                if (inst.leaf_sem[id]) {
                    auto leaf_eqs = inst.leaf_sem[id]->equations();
                    eqs.insert(eqs.end(), leaf_eqs.begin(), leaf_eqs.end());
                }
                eqs.insert(eqs.end(), inst.rule_eqs[id].begin(), inst.rule_eqs[id].end());
            }
            auto solved = solve(eqs, SolvedForm(inst.vars.of(f.root())));
            REQUIRE(solved.has_value());
            auto items = closed_udrs_items(solved->root_binding());
            CHECK(items.size() >= 4 + 2 * n);
        }
    }
}

TEST_CASE("the two attachment readings differ exactly in the attachment items") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 1);
    VarSupply fresh;
    SemInstantiation inst = instantiate(f, g, fresh);

    std::vector<std::multiset<Term>> reading_items;
    for (const Reading& r : enumerate_readings(f, 10)) {
        std::vector<Equation> eqs;
        for (NodeId id : reading_nodes(f, r, f.root())) {
            if (inst.leaf_sem[id]) {
                auto leaf_eqs = inst.leaf_sem[id]->equations();
                eqs.insert(eqs.end(), leaf_eqs.begin(), leaf_eqs.end());
            }
            eqs.insert(eqs.end(), inst.rule_eqs[id].begin(), inst.rule_eqs[id].end());
        }
        auto solved = solve(eqs, SolvedForm(inst.vars.of(f.root())));
        REQUIRE(solved.has_value());
        reading_items.push_back(item_multiset(closed_udrs_items(solved->root_binding())));
    }
    REQUIRE(reading_items.size() == 2);

    Terms t;
    std::multiset<Term> only_first, only_second;
    std::set_difference(reading_items[0].begin(), reading_items[0].end(),
                        reading_items[1].begin(), reading_items[1].end(),
                        std::inserter(only_first, only_first.begin()));
    std::set_difference(reading_items[1].begin(), reading_items[1].end(),
                        reading_items[0].begin(), reading_items[0].end(),
                        std::inserter(only_second, only_second.begin()));

    // One reading attaches to the man (x2 at l2), the other to the
    // seeing event (e1 at l1); everything else is shared.
    std::multiset<Term> attach_man{t("cond(l2,on(x2,x3))"), t("lt(l3,l2)")};
    std::multiset<Term> attach_event{t("cond(l1,on(e1,x3))"), t("lt(l3,l1)")};
    bool first_is_man = only_first == attach_man;
    if (first_is_man) {
        CHECK(only_second == attach_event);
    } else {
        CHECK(only_first == attach_event);
        CHECK(only_second == attach_man);
    }
}

TEST_CASE("udrs constructors build the vocabulary terms") {
    Terms t;
    CHECK(udrs::lt(t("l1"), t("l2")) == t("lt(l1,l2)"));
    CHECK(udrs::cond(t("l1"), t("man(x1)")) == t("cond(l1,man(x1))"));
    CHECK(udrs::ref(t("l1"), t("x1")) == t("ref(l1,x1)"));
    CHECK(udrs::gen_quant(t("l0"), t("x1"), t("l1"), t("l2")) ==
          t("genQuant(l0,x1,l1,l2)"));
}
