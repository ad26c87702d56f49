#pragma once
// Derivation certificates. Every value the engine produces (dimension, decision,
// verdict) carries a Cert: a tree whose nodes name the rule applied, record the
// integers the rule consumed, and point at the sub-derivations they rest on.
//
// replay() re-executes the arithmetic of each rule bottom-up from the recorded
// integers, independently of the engine code path that built the tree. Declared
// model facts and lattice-membership results are trusted leaves; every other
// node must reproduce its recorded value exactly.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecheck/linform.hpp"

namespace conecheck {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Cert {
    std::string rule;
    std::string statement;
    std::vector<std::pair<std::string, i64>> data;  // ordered, for deterministic output
    std::vector<std::string> assumptions;
    std::vector<Cert> premises;
};

Cert make_cert(std::string rule, std::string statement);
void put(Cert& c, std::string key, i64 value);
std::optional<i64> find_data(const Cert& c, std::string_view key);
i64 get_data(const Cert& c, std::string_view key);  // throws EngineError when absent

// Ineq leaf: records that `slope*n + offset REL bound` holds for every n >= guard.
// rel codes: 0 '>=', 1 '>', 2 '<=', 3 '<', 4 '=='.
Cert ineq_cert(const LinForm& f, int rel, i64 bound, const std::string& what);

// All assumptions in the tree, deduplicated, sorted.
std::vector<std::string> collect_assumptions(const Cert& c);

// Indented plain-text rendering of the tree.
std::string render_cert(const Cert& c);

// Recompute this node's value from its recorded data and replayed premises.
// nullopt when the node carries no value (e.g. structural records).
std::optional<i64> replay_value(const Cert& c);

// Recursively verify the whole tree: every value-carrying node must replay to
// its recorded value and every rule must be known to the interpreter.
bool replay_ok(const Cert& c, std::string* why = nullptr);

// Three-valued results with a derivation attached.
enum class Tri { False = 0, True = 1, Unknown = 2 };

struct Decision {
    Tri state = Tri::Unknown;
    Cert cert;
    bool is_true() const { return state == Tri::True; }
    bool is_false() const { return state == Tri::False; }
};

// A cohomology dimension: a known integer or Unknown, plus its derivation.
struct Hval {
    std::optional<i64> value;
    Cert cert;
    bool known() const { return value.has_value(); }
    i64 v() const {
        if (!value) throw EngineError("value is unknown");
        return *value;
    }
};

Hval known_hval(i64 v, Cert c);
Hval unknown_hval(Cert c);

}  // namespace conecheck
