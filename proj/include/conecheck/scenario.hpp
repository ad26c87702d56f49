#pragma once
// Line-oriented scenario files. A file is a sequence of named blocks -
// curve/surface/product/hypersurface models, `class` definitions and one
// pipeline block - each terminated by `end`; `#` starts a comment. Loading
// validates the whole model graph (unique names, resolvable references,
// degree-zero relations) and reports every problem with line and column.
// dump_scenario renders a normalized form whose reload is a fixed point.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conecheck/expr.hpp"

namespace conecheck {

struct NamedClass {
    enum class Kind { Curve, Surface, Product };
    Kind kind = Kind::Curve;
    std::optional<DivisorClass> curve;
    std::optional<SurfaceClass> surface;
    std::optional<ProductClass> product;
};

// Fact lines of a curve block, kept as declared so the serializer can write
// them back without guessing which table entries they installed.
struct FactDecl {
    enum class Kind { ThetaEven, H0, Noneffective, Bpf };
    Kind kind = Kind::H0;
    Vec cls;        // generator coordinates
    i64 value = 0;  // H0 only
};

// Expected value of a check or expectation line: an exact integer or a
// tri-state keyword.
struct ExpectedLiteral {
    bool is_tri = false;
    i64 num = 0;
    Tri tri = Tri::Unknown;
    std::string render() const;
};

struct CheckDecl {
    std::string name;
    ExprPtr expr;
    ExpectedLiteral expected;
    int line = 0;
};

// `table <name> <expr> for <var> in <lo>..<hi>`: the expression is evaluated
// once per integer value of the loop variable.
struct TableDecl {
    std::string name;
    ExprPtr expr;
    std::string var;
    i64 lo = 0, hi = 0;
    int line = 0;
};

struct VerdictDecl {
    std::string hypersurface;
    std::string polarization;             // named product class
    std::optional<std::string> boundary;  // named product class
    int line = 0;
};

struct Expectation {
    // db_pair | db_space | cartier_index | connected | smooth | boundary_smooth
    std::string key;
    ExpectedLiteral value;
    int line = 0;
};

struct Pipeline {
    i64 sweep = 8;
    std::vector<CheckDecl> checks;
    std::vector<TableDecl> tables;
    std::optional<VerdictDecl> verdict;
    std::vector<Expectation> expectations;
};

struct Scenario {
    std::string name;  // basename of the source

    // Model storage with stable addresses (classes point into these).
    std::deque<CurveModel> curves;
    std::deque<RuledSurfaceModel> surfaces;
    std::deque<ProductModel> products;
    std::deque<HypersurfaceModel> hypersurfaces;

    // Declaration order of model blocks and class definitions, as (kind, name)
    // pairs - the serializer follows it. The pipeline always dumps last.
    enum class ItemKind { Curve, Surface, Product, Hypersurface, Class };
    std::vector<std::pair<ItemKind, std::string>> item_order;

    std::map<std::string, std::vector<FactDecl>> curve_facts;  // by curve name
    std::map<std::string, std::string> hypersurface_class_names;  // model name -> class name

    // Every nameable class: user definitions, generators, and the derived
    // names K_<model>, E, Einf, f (the latter three when the surface is
    // unique).
    std::map<std::string, NamedClass> classes;
    std::map<std::string, ExprPtr> class_exprs;  // definitions behind `class` lines

    Pipeline pipeline;
    bool has_pipeline = false;

    const CurveModel* find_curve(std::string_view n) const;
    const RuledSurfaceModel* find_surface(std::string_view n) const;
    const ProductModel* find_product(std::string_view n) const;
    const HypersurfaceModel* find_hypersurface(std::string_view n) const;
    const NamedClass* find_class(std::string_view n) const;
};

// Both throw ParseError on syntax, reference and validation problems; the file
// loader reports an unreadable path the same way (line 0).
Scenario load_scenario_text(const std::string& text, std::string name);
Scenario load_scenario_file(const std::string& path);

// Canonical rendering: load(dump(load(text))) == load(text) and dumping again
// reproduces the same bytes.
std::string dump_scenario(const Scenario& sc);

}  // namespace conecheck
