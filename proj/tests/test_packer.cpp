#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "packedsem/packer.hpp"
#include "packedsem/packer_io.hpp"
#include "packedsem/parser.hpp"
#include "packedsem/unfolder.hpp"
#include "support.hpp"

using namespace packedsem;
using testsupport::attachment_slots;
using testsupport::closed_udrs_items;
using testsupport::Terms;

namespace {

SemGrammar demo() { return load_grammar(demo_grammar_text()); }

Forest pp_forest(const SemGrammar& g, std::size_t n) {
    auto f = parse(pp_sentence(n), g.backbone());
    REQUIRE(f.has_value());
    return *f;
}

std::set<Term> solution_forms(const PackedResult& p) {
    std::set<Term> out;
    for (const Solution& s : enumerate_solutions(p)) {
        out.insert(canonical_form(s.binding.root_binding()));
    }
    return out;
}

}  // namespace

TEST_CASE("a single leaf packs to its lexical constraint") {
    SemGrammar g = load_grammar("start A\nlex x : A : val(NewX)\n");
    Forest f;
    f.set_root(f.add(Node::leaf("A", "x", {0, 1})));
    PackedResult p = pack(f, g);
    CHECK(p.d_root.is_true());
    CHECK(p.env.empty());
    CHECK(canonical_form(p.sem_root.root_binding()) ==
          canonical_form(Term::app("val", {Term::constant("x1")})));
}

TEST_CASE("single-tree forests pack with an empty environment") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 0);
    PackedResult p = pack(f, g);
    CHECK(p.d_root.is_true());
    CHECK(p.env.empty());

    auto oracle = oracle_per_tree(f, g);
    REQUIRE(oracle.size() == 1);
    CHECK(canonical_form(p.sem_root.root_binding()) == *oracle.begin());
    // With one tree the packed core is the tree's own solved form.
    CHECK(term_size(p.sem_root.root_binding()) == term_size(*oracle.begin()));
}

TEST_CASE("the five attachment readings pack into two slots and an environment") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 2);
    PackedResult p = pack(f, g);

    auto solutions = enumerate_solutions(p);
    CHECK(solutions.size() == 5);

    auto items = closed_udrs_items(p.sem_root.root_binding());
    auto slots = attachment_slots(items);
    CHECK(slots.size() == 2);

    // The slot variables are free in the core and bound through the
    // environment.
    for (const auto& [label, host] : slots) {
        CHECK_FALSE(p.sem_root.binding().contains(label));
        CHECK_FALSE(p.sem_root.binding().contains(host));
    }
    for (const Solution& s : solutions) {
        for (const auto& [label, host] : slots) {
            CHECK(s.binding.binding().apply(Term::var(host)).is_app());
        }
    }
}

TEST_CASE("packing is deterministic") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 3);
    PackedResult a = pack(f, g);
    PackedResult b = pack(f, g);
    CHECK(dump_packed(a) == dump_packed(b));
}

TEST_CASE("name economy: definitions stay within OR and AND needs") {
    SemGrammar g = demo();
    for (unsigned n = 1; n <= 4; ++n) {
        Forest f = pp_forest(g, n);
        PackedResult p = pack(f, g);
        NodeCounts counts = node_counts(f);
        std::size_t and_with_two_goals = 0;
        for (NodeId id = 0; id < f.size(); ++id) {
            const Node& node = f.node(id);
            if (node.kind != Node::Kind::And || node.children.size() != 2) continue;
            bool left = !p.work.d[node.children[0]]->is_true();
            bool right = !p.work.d[node.children[1]]->is_true();
            if (left && right) ++and_with_two_goals;
        }
        CHECK(p.env.size() <= counts.or_nodes + and_with_two_goals);
    }
}

TEST_CASE("binary fold spends one definition per extra alternative") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 2);  // contains one ternary OR node
    PackedResult nary = pack(f, g, PackOptions{OrMode::NaryGeneralise});
    PackedResult fold = pack(f, g, PackOptions{OrMode::BinaryFold});

    std::size_t or_arity_excess = 0;
    for (NodeId id = 0; id < f.size(); ++id) {
        if (f.node(id).kind == Node::Kind::Or) {
            or_arity_excess += f.node(id).children.size() - 2;
        }
    }
    CHECK(or_arity_excess > 0);
    CHECK(fold.env.size() == nary.env.size() + or_arity_excess);
}

TEST_CASE("both OR modes produce the same solution sets") {
    SemGrammar g = demo();
    for (unsigned n = 1; n <= 4; ++n) {
        Forest f = pp_forest(g, n);
        PackedResult nary = pack(f, g, PackOptions{OrMode::NaryGeneralise});
        PackedResult fold = pack(f, g, PackOptions{OrMode::BinaryFold});
        CHECK(solution_forms(nary) == solution_forms(fold));
    }
}

TEST_CASE("a failing grammar is reported with node and rule") {
    SemGrammar g = load_grammar(
        "start S\n"
        "S -> A B : s(U,U), p1(U), p2(U)\n"
        "lex x : A : p1(a)\n"
        "lex y : B : p2(b)\n");
    auto f = parse(std::vector<std::string>{"x", "y"}, g.backbone());
    REQUIRE(f.has_value());
    try {
        pack(*f, g);
        FAIL("expected PackFailure");
    } catch (const PackFailure& e) {
        CHECK(f->node(e.node).kind == Node::Kind::And);
        CHECK(g.backbone().rule(e.rule).lhs == "S");
        CHECK(std::string(e.what()).find("never fail") != std::string::npos);
    }
}

TEST_CASE("check_invariants passes on packed attachment forests") {
    SemGrammar g = demo();
    for (unsigned n = 0; n <= 3; ++n) {
        Forest f = pp_forest(g, n);
        PackedResult p = pack(f, g);
        InvariantReport report = check_invariants(p, f, g);
        for (const std::string& v : report.violations) {
            CAPTURE(v);
        }
        CHECK(report.ok());
        CHECK(report.nodes_checked == f.size());
    }
}

TEST_CASE("check_invariants reports dangling name uses") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 1);
    PackedResult p = pack(f, g);
    PackedResult broken{p.sem_root, Constraint::use(Name{999}), p.env, p.inst, p.work};
    InvariantReport report = check_invariants(broken, f, g);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const std::string& v : report.violations) {
        found = found || v.find("undefined name N999") != std::string::npos;
    }
    CHECK(found);
}

TEST_CASE("check_invariants skips nodes beyond the reading bound") {
    SemGrammar g = demo();
    Forest f = pp_forest(g, 3);
    PackedResult p = pack(f, g);
    InvariantReport tight = check_invariants(p, f, g, 1);
    CHECK(tight.nodes_checked < f.size());
    CHECK(tight.ok());
}
