#include "packedsem/packer_io.hpp"

#include <map>
#include <sstream>

#include "packedsem/constraint_io.hpp"
#include "packedsem/term_io.hpp"

namespace packedsem {

std::string dump_packed(const PackedResult& p) {
    std::ostringstream os;
    os << "SEM:\n";
    os << "  V" << p.sem_root.root() << " = " << to_string(p.sem_root.root_binding())
       << "\n";
    os << "D:\n";
    os << "  " << to_string(p.d_root) << "\n";
    os << "ENV:\n";
    for (const auto& [name, body] : p.env.definitions()) {
        os << "  N" << name.value << " := (" << to_string(body) << ")\n";
    }
    return os.str();
}

namespace {

class TermGraphWriter {
public:
    explicit TermGraphWriter(std::ostream& os) : os_(os) {}

    std::size_t write(const Term& t) {
        auto hit = ids_.find(t.node_ptr());
        if (hit != ids_.end()) return hit->second;
        std::size_t id = ids_.size();
        ids_.emplace(t.node_ptr(), id);
        if (t.is_var()) {
            os_ << "  t" << id << " [shape=circle,label=\"V" << t.var_id() << "\"];\n";
            return id;
        }
        os_ << "  t" << id << " [shape=record,label=\"" << escape(t.functor());
        if (!t.args().empty()) os_ << "/" << t.arity();
        os_ << "\"];\n";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            std::size_t child = write(t.args()[i]);
            os_ << "  t" << id << " -> t" << child << " [label=\"" << i + 1 << "\"];\n";
        }
        return id;
    }

private:
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\' || c == '|' || c == '{' || c == '}') out += '\\';
            out += c;
        }
        return out;
    }

    std::ostream& os_;
    std::map<const void*, std::size_t> ids_;
};

}  // namespace

std::string packed_sem_to_dot(const PackedResult& p) {
    std::ostringstream os;
    os << "digraph sem {\n  node [fontname=\"Helvetica\"];\n";
    TermGraphWriter writer(os);
    std::size_t root = writer.write(p.sem_root.root_binding());
    os << "  root [shape=plaintext,label=\"V" << p.sem_root.root() << "\"];\n";
    os << "  root -> t" << root << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace packedsem
