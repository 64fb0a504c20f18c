#include "packedsem/parser.hpp"

#include <map>
#include <set>

namespace packedsem {

namespace {

struct CellKey {
    std::string category;
    std::uint32_t begin;
    std::uint32_t end;
    auto operator<=>(const CellKey&) const = default;
};

struct Deriv {
    bool lexical = false;
    RuleId rule = 0;
    std::vector<CellKey> children;  // empty for lexical derivations
    auto operator<=>(const Deriv&) const = default;
};

struct Cell {
    std::vector<Deriv> derivs;
    std::set<Deriv> known;

    void add(Deriv d) {
        if (known.insert(d).second) derivs.push_back(std::move(d));
    }
};

using Chart = std::map<CellKey, Cell>;

void close_unary(Chart& chart, const BackboneGrammar& g, std::uint32_t begin,
                 std::uint32_t end) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Rule& r : g.rules()) {
            if (r.rhs.size() != 1) continue;
            CellKey child{r.rhs[0], begin, end};
            if (!chart.count(child)) continue;
            CellKey key{r.lhs, begin, end};
            Deriv d{false, r.id, {child}};
            auto& cell = chart[key];
            std::size_t before = cell.derivs.size();
            cell.add(std::move(d));
            grew = grew || cell.derivs.size() != before;
        }
    }
}

class ForestExtractor {
public:
    ForestExtractor(const Chart& chart, const std::vector<std::string>& tokens)
        : chart_(chart), tokens_(tokens) {}

    NodeId extract(Forest& f, const CellKey& key) {
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        const Cell& cell = chart_.at(key);
        std::vector<NodeId> parts;
        parts.reserve(cell.derivs.size());
        for (const Deriv& d : cell.derivs) {
            parts.push_back(extract_deriv(f, key, d));
        }
        NodeId id = parts.size() == 1
                        ? parts.front()
                        : f.add(Node::or_node(std::move(parts),
                                              Span{key.begin, key.end}));
        memo_.emplace(key, id);
        return id;
    }

private:
    NodeId extract_deriv(Forest& f, const CellKey& key, const Deriv& d) {
        if (d.lexical) {
            return f.add(Node::leaf(key.category, tokens_[key.begin],
                                    Span{key.begin, key.end}));
        }
        std::vector<NodeId> children;
        children.reserve(d.children.size());
        for (const CellKey& c : d.children) {
            children.push_back(extract(f, c));
        }
        return f.add(Node::and_node(key.category, d.rule, std::move(children),
                                    Span{key.begin, key.end}));
    }

    const Chart& chart_;
    const std::vector<std::string>& tokens_;
    std::map<CellKey, NodeId> memo_;
};

}  // namespace

std::optional<Forest> parse(std::span<const std::string> tokens,
                            const BackboneGrammar& grammar) {
    const auto n = static_cast<std::uint32_t>(tokens.size());
    std::vector<std::string> token_vec(tokens.begin(), tokens.end());
    Chart chart;

    for (std::uint32_t i = 0; i < n; ++i) {
        auto entries = grammar.lookup_token(token_vec[i]);
        if (entries.empty()) {
            throw UnknownTokenError(token_vec[i], i);
        }
        for (const LexEntry* e : entries) {
            chart[CellKey{e->category, i, i + 1}].add(Deriv{true, 0, {}});
        }
        close_unary(chart, grammar, i, i + 1);
    }

    for (std::uint32_t length = 2; length <= n; ++length) {
        for (std::uint32_t begin = 0; begin + length <= n; ++begin) {
            std::uint32_t end = begin + length;
            for (const Rule& r : grammar.rules()) {
                if (r.rhs.size() != 2) continue;
                for (std::uint32_t mid = begin + 1; mid < end; ++mid) {
                    CellKey left{r.rhs[0], begin, mid};
                    CellKey right{r.rhs[1], mid, end};
                    if (!chart.count(left) || !chart.count(right)) continue;
                    chart[CellKey{r.lhs, begin, end}].add(
                        Deriv{false, r.id, {left, right}});
                }
            }
            close_unary(chart, grammar, begin, end);
        }
    }

    CellKey goal{grammar.start(), 0, n};
    if (n == 0 || !chart.count(goal)) return std::nullopt;

    Forest f;
    ForestExtractor extractor(chart, token_vec);
    f.set_root(extractor.extract(f, goal));
    return f;
}

std::vector<std::string> pp_sentence(std::size_t n) {
    std::vector<std::string> tokens{"i", "saw", "a", "man"};
    tokens.reserve(4 + 3 * n);
    for (std::size_t k = 0; k < n; ++k) {
        tokens.insert(tokens.end(), {"on", "a", "hill"});
    }
    return tokens;
}

}  // namespace packedsem
