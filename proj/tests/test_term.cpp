#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "packedsem/term.hpp"
#include "packedsem/term_io.hpp"
#include "support.hpp"

using namespace packedsem;
using testsupport::Terms;

TEST_CASE("textual syntax round-trips structurally") {
    Terms t;
    Term a = t("lt(L1,L2)");
    CHECK(a.functor() == "lt");
    CHECK(a.arity() == 2);
    CHECK(a.args()[0].is_var());

    Term b = t("drs(in(I),out(O))");
    CHECK(to_string(canonical_form(b)) == "drs(in(V0),out(V1))");

    Term list = t("[a,b|T]");
    CHECK(list.functor() == ".");
    CHECK(to_string(list) == to_string(t("[a,b|T]")));

    Terms other;
    Term reparsed = other(to_string(b));
    CHECK(canonical_form(reparsed) == canonical_form(b));

    CHECK_THROWS_AS(t("f(a"), TermParseError);
    CHECK_THROWS_AS(t("f(a) garbage"), TermParseError);
    CHECK(t("[]") == Term::nil());
}

TEST_CASE("unify computes textbook mgus") {
    Terms t;
    auto s = unify(t("f(X,b)"), t("f(a,Y)"));
    REQUIRE(s.has_value());
    CHECK(s->apply(t("X")) == t("a"));
    CHECK(s->apply(t("Y")) == t("b"));

    CHECK_FALSE(unify(t("X"), t("f(X)")).has_value());  // occurs check
    CHECK(unify(t("g(a,h(b))"), t("g(a,h(b))"))->empty());
    CHECK_FALSE(unify(t("f(a)"), t("g(a)")).has_value());
    CHECK_FALSE(unify(t("f(a)"), t("f(a,b)")).has_value());  // arity is identity
}

TEST_CASE("unify extends a seed substitution") {
    Terms t;
    auto seed = unify(t("X"), t("a"));
    REQUIRE(seed.has_value());
    auto s = unify(t("f(X,Y)"), t("f(Z,b)"), *seed);
    REQUIRE(s.has_value());
    CHECK(s->apply(t("Z")) == t("a"));
    CHECK_FALSE(unify(t("X"), t("b"), *seed).has_value());
}

TEST_CASE("substitutions are idempotent") {
    Terms t;
    auto s = unify(t("f(X,Y,Z)"), t("f(g(Y),g(Z),a)"));
    REQUIRE(s.has_value());
    for (const auto& [v, range] : s->bindings()) {
        for (VarId w : variables_of(range)) {
            CHECK_FALSE(s->contains(w));
        }
    }
    Term once = s->apply(t("f(X,Y,Z)"));
    CHECK(s->apply(once) == once);
}

TEST_CASE("apply basics") {
    Terms t;
    auto s = unify(t("X"), t("a"));
    REQUIRE(s.has_value());
    CHECK(s->apply(t("f(X,X)")) == t("f(a,a)"));
    CHECK(Substitution{}.apply(t("f(X)")) == t("f(X)"));
    CHECK(s->apply(t("b")) == t("b"));
}

TEST_CASE("anti_unify identity and forced generalizations") {
    Terms t;
    VarSupply& fresh = t.supply;

    Term shared = t("f(a,g(b),X)");
    auto identity = anti_unify(shared, shared, fresh);
    CHECK(identity.general == shared);
    CHECK(identity.left.empty());
    CHECK(identity.right.empty());

    auto gen = anti_unify(t("f(a,g(b))"), t("f(a,g(c))"), fresh);
    CHECK(canonical_form(gen.general) == canonical_form(t("f(a,g(Z))")));
    CHECK(gen.left.size() == 1);
    CHECK(gen.right.size() == 1);

    // Pair-table reuse: the same disagreement maps to one variable.
    auto twice = anti_unify(t("f(a,a)"), t("f(b,b)"), fresh);
    CHECK(canonical_form(twice.general) == canonical_form(t("f(Z,Z)")));
    CHECK(twice.left.size() == 1);
}

TEST_CASE("anti_unify_n basics") {
    Terms t;
    auto single = anti_unify_n(std::vector<Term>{t("f(a,X)")}, t.supply);
    CHECK(single.general == t("f(a,X)"));
    REQUIRE(single.witnesses.size() == 1);
    CHECK(single.witnesses[0].empty());

    std::vector<Term> three{t("f(a)"), t("f(b)"), t("f(c)")};
    auto gen = anti_unify_n(three, t.supply);
    CHECK(canonical_form(gen.general) == canonical_form(t("f(Z)")));
    REQUIRE(gen.witnesses.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(gen.witnesses[i].apply(gen.general) == three[i]);
    }
}

TEST_CASE("canonical_form renames in first-occurrence order") {
    Terms t;
    CHECK(to_string(canonical_form(t("f(Y,X,Y)"))) == "f(V0,V1,V0)");
    Term once = canonical_form(t("h(P,g(Q,P))"));
    CHECK(canonical_form(once) == once);
    CHECK(canonical_form(t("f(A,B)")) == canonical_form(t("f(P,Q)")));
}

TEST_CASE("term_size counts nodes") {
    Terms t;
    CHECK(term_size(t("a")) == 1);
    CHECK(term_size(t("f(a,X)")) == 3);
    CHECK(term_size(t("[a]")) == 3);  // cons cell, item, nil
}

TEST_CASE("mgu soundness and generality over random instances") {
    VarSupply supply;
    testsupport::TermGen gen(1234, supply);
    int unifiable = 0;
    for (int round = 0; round < 400; ++round) {
        Term pattern = gen.term();
        Substitution s1 = gen.substitution();
        Substitution s2 = gen.substitution();
        Term t1 = s1.apply(pattern);
        Term t2 = s2.apply(pattern);
        auto mgu = unify(t1, t2);
        // Both are instances of one pattern over disjoint-ish bindings;
        // unification may still fail on clashes, but when it succeeds it
        // must be sound.
        if (!mgu) continue;
        ++unifiable;
        CHECK(mgu->apply(t1) == mgu->apply(t2));

        // Generality: any common instance factors through the mgu.
        Substitution chained = gen.substitution();
        Term common = chained.apply(mgu->apply(t1));
        auto refit = unify(mgu->apply(t1), common);
        REQUIRE(refit.has_value());
        CHECK(refit->apply(mgu->apply(t1)) == common);
    }
    CHECK(unifiable > 50);
}

TEST_CASE("anti-unification laws hold over random pairs") {
    VarSupply supply;
    testsupport::TermGen gen(99, supply);
    for (int round = 0; round < 1200; ++round) {
        Term t1 = gen.term();
        Term t2 = gen.coin() ? gen.term() : gen.substitution().apply(t1);
        auto g = anti_unify(t1, t2, supply);

        // Soundness: the witnesses map the generalization onto the inputs.
        CHECK(g.left.apply(g.general) == t1);
        CHECK(g.right.apply(g.general) == t2);

        // Simplifying: never larger than either input.
        CHECK(term_size(g.general) <= std::min(term_size(t1), term_size(t2)));

        // Commutativity up to renaming.
        auto swapped = anti_unify(t2, t1, supply);
        CHECK(canonical_form(g.general) == canonical_form(swapped.general));

        // Instances are absorbed.
        Term instance = gen.substitution().apply(t1);
        auto absorbed = anti_unify(t1, instance, supply);
        if (instance == t1) {
            CHECK(canonical_form(absorbed.general) == canonical_form(t1));
        }
    }
}

TEST_CASE("n-ary anti-unification equals the binary fold up to renaming") {
    VarSupply supply;
    testsupport::TermGen gen(7, supply);
    for (int round = 0; round < 400; ++round) {
        std::vector<Term> terms{gen.term(3), gen.term(3), gen.term(3)};
        auto nary = anti_unify_n(terms, supply);
        Term folded = anti_unify(anti_unify(terms[0], terms[1], supply).general,
                                 terms[2], supply)
                          .general;
        CHECK(canonical_form(nary.general) == canonical_form(folded));
        for (std::size_t i = 0; i < terms.size(); ++i) {
            CHECK(nary.witnesses[i].apply(nary.general) == terms[i]);
        }
    }
}

TEST_CASE("instances are never smaller than the generalization") {
    VarSupply supply;
    testsupport::TermGen gen(55, supply);
    for (int round = 0; round < 200; ++round) {
        Term t1 = gen.term();
        Term t2 = gen.term();
        auto g = anti_unify(t1, t2, supply);
        CHECK(term_size(g.left.apply(g.general)) >= term_size(g.general));
        CHECK(term_size(g.right.apply(g.general)) >= term_size(g.general));
    }
}
