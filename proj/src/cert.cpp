#include "conecheck/cert.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "conecheck/rules.hpp"

namespace conecheck {

Cert make_cert(std::string rule, std::string statement) {
    Cert c;
    c.rule = std::move(rule);
    c.statement = std::move(statement);
    return c;
}

void put(Cert& c, std::string key, i64 value) { c.data.emplace_back(std::move(key), value); }

std::optional<i64> find_data(const Cert& c, std::string_view key) {
    for (const auto& [k, v] : c.data)
        if (k == key) return v;
    return std::nullopt;
}

i64 get_data(const Cert& c, std::string_view key) {
    if (auto v = find_data(c, key)) return *v;
    throw EngineError("certificate node '" + c.rule + "' lacks data key '" + std::string(key) + "'");
}

Cert ineq_cert(const LinForm& f, int rel, i64 bound, const std::string& what) {
    static const char* relname[] = {">=", ">", "<=", "<", "=="};
    std::ostringstream st;
    st << what << ": " << to_string(f) << " " << relname[rel] << " " << bound << " for all n >= " << f.guard;
    Cert c = make_cert(rules::kIneqAlways, st.str());
    put(c, "slope", f.slope);
    put(c, "offset", f.offset);
    put(c, "guard", f.guard);
    put(c, "rel", rel);
    put(c, "bound", bound);
    put(c, "value", 1);
    return c;
}

static void collect_assumptions_into(const Cert& c, std::set<std::string>& out) {
    for (const auto& a : c.assumptions) out.insert(a);
    for (const Cert& p : c.premises) collect_assumptions_into(p, out);
}

std::vector<std::string> collect_assumptions(const Cert& c) {
    std::set<std::string> s;
    collect_assumptions_into(c, s);
    return {s.begin(), s.end()};
}

static void render_into(const Cert& c, int depth, std::ostringstream& os) {
    for (int i = 0; i < depth; ++i) os << "  ";
    os << "[" << c.rule << "] " << c.statement;
    if (!c.data.empty()) {
        os << "  {";
        bool first = true;
        for (const auto& [k, v] : c.data) {
            if (!first) os << ", ";
            first = false;
            os << k << "=" << v;
        }
        os << "}";
    }
    os << "\n";
    for (const auto& a : c.assumptions) {
        for (int i = 0; i < depth + 1; ++i) os << "  ";
        os << "(assumes: " << a << ")\n";
    }
    for (const Cert& p : c.premises) render_into(p, depth + 1, os);
}

std::string render_cert(const Cert& c) {
    std::ostringstream os;
    render_into(c, 0, os);
    return os.str();
}

Hval known_hval(i64 v, Cert c) { return Hval{v, std::move(c)}; }
Hval unknown_hval(Cert c) { return Hval{std::nullopt, std::move(c)}; }

}  // namespace conecheck
