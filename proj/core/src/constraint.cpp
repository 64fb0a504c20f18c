#include "packedsem/constraint.hpp"

#include <stdexcept>
#include <string>

namespace packedsem {

struct Constraint::Rep {
    Kind kind;
    std::optional<Equation> eq;
    std::vector<Constraint> parts;
    Name name;
};

namespace {

void flatten_conj(std::vector<Constraint>&& in, std::vector<Constraint>& out) {
    for (Constraint& c : in) {
        if (c.is_true()) continue;
        if (c.kind() == Constraint::Kind::Conj) {
            auto parts = c.parts();
            flatten_conj(std::move(parts), out);
        } else {
            out.push_back(std::move(c));
        }
    }
}

void flatten_disj(std::vector<Constraint>&& in, std::vector<Constraint>& out) {
    for (Constraint& c : in) {
        if (c.kind() == Constraint::Kind::Disj) {
            auto parts = c.parts();
            flatten_disj(std::move(parts), out);
        } else {
            out.push_back(std::move(c));
        }
    }
}

}  // namespace

Constraint Constraint::truth() {
    static const Constraint t{std::make_shared<const Rep>(Rep{Kind::True, {}, {}, {}})};
    return t;
}

Constraint Constraint::eq(Term lhs, Term rhs) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Eq;
    rep->eq = Equation{std::move(lhs), std::move(rhs)};
    return Constraint(std::move(rep));
}

Constraint Constraint::conj(std::vector<Constraint> parts) {
    std::vector<Constraint> flat;
    flatten_conj(std::move(parts), flat);
    if (flat.empty()) return truth();
    if (flat.size() == 1) return flat.front();
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Conj;
    rep->parts = std::move(flat);
    return Constraint(std::move(rep));
}

Constraint Constraint::disj(std::vector<Constraint> alternatives) {
    std::vector<Constraint> flat;
    flatten_disj(std::move(alternatives), flat);
    if (flat.empty()) {
        throw std::invalid_argument("empty disjunction is not representable");
    }
    if (flat.size() == 1) return flat.front();
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Disj;
    rep->parts = std::move(flat);
    return Constraint(std::move(rep));
}

Constraint Constraint::use(Name n) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Use;
    rep->name = n;
    return Constraint(std::move(rep));
}

Constraint::Kind Constraint::kind() const { return rep_->kind; }

const Equation& Constraint::equation() const {
    if (rep_->kind != Kind::Eq) throw std::logic_error("equation() on non-equation");
    return *rep_->eq;
}

const std::vector<Constraint>& Constraint::parts() const {
    if (rep_->kind != Kind::Conj && rep_->kind != Kind::Disj) {
        throw std::logic_error("parts() on non-connective constraint");
    }
    return rep_->parts;
}

Name Constraint::name() const {
    if (rep_->kind != Kind::Use) throw std::logic_error("name() on non-use constraint");
    return rep_->name;
}

bool Constraint::operator==(const Constraint& other) const {
    if (rep_ == other.rep_) return true;
    if (rep_->kind != other.rep_->kind) return false;
    switch (rep_->kind) {
        case Kind::True:
            return true;
        case Kind::Eq:
            return *rep_->eq == *other.rep_->eq;
        case Kind::Use:
            return rep_->name == other.rep_->name;
        case Kind::Conj:
        case Kind::Disj:
            return rep_->parts == other.rep_->parts;
    }
    return false;
}

Constraint conjoin(std::vector<Constraint> parts) {
    return Constraint::conj(std::move(parts));
}

Constraint disjoin(std::vector<Constraint> alternatives) {
    return Constraint::disj(std::move(alternatives));
}

namespace {

void check_uses_defined(const Constraint& c, const Env& env) {
    switch (c.kind()) {
        case Constraint::Kind::True:
        case Constraint::Kind::Eq:
            return;
        case Constraint::Kind::Use:
            if (!env.defines(c.name())) {
                throw UndefinedNameError(
                    c.name(), "definition uses undefined name N" +
                                  std::to_string(c.name().value));
            }
            return;
        case Constraint::Kind::Conj:
        case Constraint::Kind::Disj:
            for (const Constraint& p : c.parts()) check_uses_defined(p, env);
            return;
    }
}

}  // namespace

void Env::define(Name n, Constraint body) {
    if (defines(n)) {
        throw std::invalid_argument("name N" + std::to_string(n.value) +
                                    " already defined");
    }
    check_uses_defined(body, *this);
    index_.emplace(n.value, defs_.size());
    defs_.emplace_back(n, std::move(body));
}

const Constraint* Env::lookup(Name n) const {
    auto it = index_.find(n.value);
    return it == index_.end() ? nullptr : &defs_[it->second].second;
}

Term SolvedForm::root_binding() const {
    const Term* bound = binding_.lookup(root_);
    return bound ? *bound : Term::var(root_);
}

std::vector<Equation> SolvedForm::equations() const {
    std::vector<Equation> out;
    out.reserve(binding_.size());
    for (const auto& [v, t] : binding_.bindings()) {
        out.push_back(Equation{Term::var(v), t});
    }
    return out;
}

std::optional<SolvedForm> solve(std::span<const Equation> eqs, const SolvedForm& seed) {
    Substitution subst = seed.binding();
    for (const Equation& eq : eqs) {
        auto next = unify(eq.lhs, eq.rhs, subst);
        if (!next) return std::nullopt;
        subst = std::move(*next);
    }
    return SolvedForm(seed.root(), std::move(subst));
}

namespace {

Constraint remainder_constraint(const Substitution& witness) {
    std::vector<Constraint> eqs;
    eqs.reserve(witness.size());
    for (const auto& [v, t] : witness.bindings()) {
        eqs.push_back(Constraint::eq(Term::var(v), t));
    }
    return conjoin(std::move(eqs));
}

}  // namespace

Generalisation generalise(const SolvedForm& a, const SolvedForm& b, VarSupply& fresh) {
    if (a.root() != b.root()) {
        throw std::invalid_argument("generalise requires solved forms on one root");
    }
    AntiUnification au = anti_unify(a.root_binding(), b.root_binding(), fresh);
    std::map<VarId, Term> binding;
    if (!au.general.is_var() || au.general.var_id() != a.root()) {
        binding.emplace(a.root(), au.general);
    }
    return Generalisation{
        SolvedForm(a.root(), Substitution::from_idempotent(std::move(binding))),
        remainder_constraint(au.left), remainder_constraint(au.right)};
}

GeneralisationN generalise_n(std::span<const SolvedForm> forms, VarSupply& fresh) {
    if (forms.empty()) {
        throw std::invalid_argument("generalise_n requires at least one form");
    }
    const VarId root = forms.front().root();
    std::vector<Term> bindings;
    bindings.reserve(forms.size());
    for (const SolvedForm& f : forms) {
        if (f.root() != root) {
            throw std::invalid_argument("generalise_n requires solved forms on one root");
        }
        bindings.push_back(f.root_binding());
    }
    AntiUnificationN au = anti_unify_n(bindings, fresh);
    std::map<VarId, Term> binding;
    if (!au.general.is_var() || au.general.var_id() != root) {
        binding.emplace(root, au.general);
    }
    GeneralisationN out{
        SolvedForm(root, Substitution::from_idempotent(std::move(binding))), {}};
    out.remainders.reserve(forms.size());
    for (const Substitution& w : au.witnesses) {
        out.remainders.push_back(remainder_constraint(w));
    }
    return out;
}

Constraint expand(const Constraint& c, const Env& env) {
    switch (c.kind()) {
        case Constraint::Kind::True:
        case Constraint::Kind::Eq:
            return c;
        case Constraint::Kind::Use: {
            const Constraint* def = env.lookup(c.name());
            if (!def) {
                throw UndefinedNameError(c.name(),
                                         "use of undefined name N" +
                                             std::to_string(c.name().value));
            }
            return expand(*def, env);
        }
        case Constraint::Kind::Conj: {
            std::vector<Constraint> parts;
            parts.reserve(c.parts().size());
            for (const Constraint& p : c.parts()) parts.push_back(expand(p, env));
            return conjoin(std::move(parts));
        }
        case Constraint::Kind::Disj: {
            std::vector<Constraint> parts;
            parts.reserve(c.parts().size());
            for (const Constraint& p : c.parts()) parts.push_back(expand(p, env));
            return disjoin(std::move(parts));
        }
    }
    throw std::logic_error("unreachable constraint kind");
}

}  // namespace packedsem
