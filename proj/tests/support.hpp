#pragma once

#include <random>
#include <string_view>

#include "packedsem/term.hpp"
#include "packedsem/term_io.hpp"

namespace testsupport {

/// Shared reader so fixture terms written as text reuse variable names.
struct Terms {
    packedsem::VarSupply supply;
    packedsem::TermReader reader{supply};

    packedsem::Term operator()(std::string_view text) { return reader.read(text); }
    packedsem::VarId var(const std::string& name) { return reader.var(name); }
};

/// Random acyclic terms over a small signature and variable pool.
class TermGen {
public:
    TermGen(std::uint32_t seed, packedsem::VarSupply& supply) : rng_(seed) {
        for (int i = 0; i < 6; ++i) var_pool_.push_back(supply.fresh());
    }

    packedsem::Term term(int max_depth = 4) {
        std::uniform_int_distribution<int> pick(0, 99);
        int roll = pick(rng_);
        if (max_depth <= 0 || roll < 20) {
            if (roll % 2 == 0) return packedsem::Term::var(pool_var());
            return packedsem::Term::constant(constants_[roll % constants_.size()]);
        }
        if (roll < 45) return packedsem::Term::constant(constants_[roll % constants_.size()]);
        std::uniform_int_distribution<int> arity(1, 3);
        int k = arity(rng_);
        std::vector<packedsem::Term> args;
        args.reserve(k);
        for (int i = 0; i < k; ++i) args.push_back(term(max_depth - 1));
        return packedsem::Term::app(functors_[k - 1], std::move(args));
    }

    packedsem::VarId pool_var() {
        std::uniform_int_distribution<std::size_t> pick(0, var_pool_.size() - 1);
        return var_pool_[pick(rng_)];
    }

    /// A substitution binding a random subset of the pool to random
    /// ground-leaning terms.
    packedsem::Substitution substitution(int max_depth = 3) {
        std::map<packedsem::VarId, packedsem::Term> raw;
        for (packedsem::VarId v : var_pool_) {
            if (coin()) continue;
            packedsem::Term t = term(max_depth);
            auto vars = packedsem::variables_of(t);
            bool hits_domain = false;
            for (packedsem::VarId w : vars) hits_domain = hits_domain || w == v;
            if (!hits_domain) raw.emplace(v, std::move(t));
        }
        std::map<packedsem::VarId, packedsem::Term> idempotent;
        for (const auto& [v, t] : raw) {
            bool clean = true;
            for (packedsem::VarId w : packedsem::variables_of(t)) {
                clean = clean && raw.find(w) == raw.end();
            }
            if (clean) idempotent.emplace(v, t);
        }
        return packedsem::Substitution::from_idempotent(std::move(idempotent));
    }

    bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
    std::vector<packedsem::VarId> var_pool_;
    std::vector<std::string> functors_{"f", "g", "h"};
    std::vector<std::string> constants_{"a", "b", "c", "d"};
};

/// Spine of a ./2 list: the items plus whatever the final tail is
/// (nil for proper lists, a variable for open difference lists).
struct ListParts {
    std::vector<packedsem::Term> items;
    packedsem::Term tail;
};

inline ListParts list_parts(packedsem::Term t) {
    ListParts out{{}, t};
    while (out.tail.is_app() && out.tail.functor() == "." && out.tail.arity() == 2) {
        out.items.push_back(out.tail.args()[0]);
        out.tail = out.tail.args()[1];
    }
    return out;
}

/// A semantic value [Roles, DrsIn, DrsOut] as produced by the demo
/// grammar.
struct UdrsValue {
    packedsem::Term roles;
    packedsem::Term drs_in;
    packedsem::Term drs_out;
};

inline UdrsValue udrs_value(const packedsem::Term& root_binding) {
    ListParts triple = list_parts(root_binding);
    if (triple.items.size() != 3) {
        throw std::runtime_error("semantic value is not a [roles, in, out] triple: " +
                                 packedsem::to_string(root_binding));
    }
    return UdrsValue{triple.items[0], triple.items[1], triple.items[2]};
}

/// Close the difference pair (DrsIn := []) and return the UDRS items.
inline std::vector<packedsem::Term> closed_udrs_items(const packedsem::Term& root_binding) {
    UdrsValue value = udrs_value(root_binding);
    if (!value.drs_in.is_var()) {
        throw std::runtime_error("difference-list input is not a variable");
    }
    auto closing = packedsem::unify(value.drs_in, packedsem::Term::nil());
    if (!closing) throw std::runtime_error("cannot close the difference list");
    ListParts items = list_parts(closing->apply(value.drs_out));
    if (!(items.tail == packedsem::Term::nil())) {
        throw std::runtime_error("difference list does not close into a proper list");
    }
    return items.items;
}

/// The underspecified attachment slots of a packed UDRS: items of the
/// form cond(Label, on(Host, _)) where label and host are still
/// variables, in list order.
inline std::vector<std::pair<packedsem::VarId, packedsem::VarId>> attachment_slots(
    const std::vector<packedsem::Term>& items) {
    std::vector<std::pair<packedsem::VarId, packedsem::VarId>> out;
    for (const packedsem::Term& item : items) {
        if (!item.is_app() || item.functor() != "cond" || item.arity() != 2) continue;
        const packedsem::Term& label = item.args()[0];
        const packedsem::Term& pred = item.args()[1];
        if (!label.is_var() || !pred.is_app() || pred.functor() != "on" ||
            pred.arity() != 2) {
            continue;
        }
        if (pred.args()[0].is_var()) {
            out.emplace_back(label.var_id(), pred.args()[0].var_id());
        }
    }
    return out;
}

}  // namespace testsupport
