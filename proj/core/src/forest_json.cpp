#include "packedsem/forest_json.hpp"

#include <sstream>

#include <json.hpp>

namespace packedsem {

using nlohmann::json;

std::string forest_to_json(const Forest& f) {
    json nodes = json::array();
    for (NodeId id = 0; id < f.size(); ++id) {
        const Node& n = f.node(id);
        json entry;
        entry["id"] = id;
        entry["span"] = {n.span.begin, n.span.end};
        switch (n.kind) {
            case Node::Kind::Leaf:
                entry["kind"] = "leaf";
                entry["cat"] = n.category;
                entry["token"] = n.token;
                break;
            case Node::Kind::And:
                entry["kind"] = "and";
                entry["cat"] = n.category;
                entry["rule"] = n.rule;
                entry["children"] = n.children;
                break;
            case Node::Kind::Or:
                entry["kind"] = "or";
                entry["children"] = n.children;
                break;
        }
        nodes.push_back(std::move(entry));
    }
    json doc;
    doc["root"] = f.root();
    doc["nodes"] = std::move(nodes);
    return doc.dump(2);
}

Forest forest_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ForestFormatError(std::string("not valid JSON: ") + e.what());
    }

    std::vector<std::string> problems;
    auto complain = [&](const std::string& msg) { problems.push_back(msg); };

    if (!doc.is_object() || !doc.contains("root") || !doc.contains("nodes") ||
        !doc["nodes"].is_array()) {
        throw ForestFormatError("forest file needs an object with 'root' and 'nodes'");
    }

    const json& nodes = doc["nodes"];
    Forest f;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const json& entry = nodes[i];
        std::string at = "nodes[" + std::to_string(i) + "]: ";
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("kind")) {
            complain(at + "needs 'id' and 'kind'");
            continue;
        }
        if (entry["id"].get<std::size_t>() != i) {
            complain(at + "ids must be dense and in order");
        }
        Span span;
        if (entry.contains("span") && entry["span"].is_array() &&
            entry["span"].size() == 2) {
            span.begin = entry["span"][0].get<std::uint32_t>();
            span.end = entry["span"][1].get<std::uint32_t>();
            if (span.end < span.begin) complain(at + "span end before begin");
        } else {
            complain(at + "needs 'span': [begin, end]");
        }
        std::string kind = entry["kind"].get<std::string>();
        std::vector<NodeId> children;
        if (entry.contains("children")) {
            for (const json& c : entry["children"]) {
                children.push_back(c.get<NodeId>());
            }
        }
        if (kind == "leaf") {
            if (!entry.contains("cat") || !entry.contains("token")) {
                complain(at + "leaf needs 'cat' and 'token'");
                continue;
            }
            f.add(Node::leaf(entry["cat"].get<std::string>(),
                             entry["token"].get<std::string>(), span));
        } else if (kind == "and") {
            if (!entry.contains("cat") || !entry.contains("rule") || children.empty()) {
                complain(at + "and needs 'cat', 'rule' and 'children'");
                continue;
            }
            f.add(Node::and_node(entry["cat"].get<std::string>(),
                                 entry["rule"].get<RuleId>(), std::move(children), span));
        } else if (kind == "or") {
            if (children.size() < 2) {
                complain(at + "or needs at least two children");
                continue;
            }
            f.add(Node::or_node(std::move(children), span));
        } else {
            complain(at + "unknown kind '" + kind + "'");
        }
    }

    NodeId root = doc["root"].get<NodeId>();
    if (root >= f.size()) {
        complain("root id out of range");
    } else {
        f.set_root(root);
    }
    for (NodeId id = 0; id < f.size(); ++id) {
        for (NodeId c : f.node(id).children) {
            if (c >= f.size()) {
                complain("node " + std::to_string(id) + ": child id out of range");
            }
        }
    }

    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "invalid forest file:";
        for (const std::string& p : problems) msg << "\n  " << p;
        throw ForestFormatError(msg.str());
    }
    return f;
}

std::string forest_to_dot(const Forest& f) {
    std::ostringstream os;
    os << "digraph forest {\n  node [fontname=\"Helvetica\"];\n";
    for (NodeId id = 0; id < f.size(); ++id) {
        const Node& n = f.node(id);
        os << "  n" << id;
        switch (n.kind) {
            case Node::Kind::Leaf:
                os << " [shape=none,label=\"" << n.category << ":" << n.token << "\"];\n";
                break;
            case Node::Kind::And:
                os << " [shape=ellipse,label=\"" << n.category << " #" << id << "\"];\n";
                break;
            case Node::Kind::Or:
                os << " [shape=box,label=\"OR " << f.category_of(id) << "\"];\n";
                break;
        }
        for (NodeId c : n.children) {
            os << "  n" << id << " -> n" << c << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace packedsem
