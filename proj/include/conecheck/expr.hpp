#pragma once
// Query expressions over a loaded scenario: integer-linear divisor-class
// arithmetic plus the engine functions h0/h1/h2/h3, chi, deg, intersect, bpf,
// bs, restrict and the product(...) constructor. Parsing is total - every
// input either yields a tree or a positioned diagnostic - and rendering is
// canonical: parse(render(e)) reproduces e.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conecheck/cone.hpp"

namespace conecheck {

struct Scenario;

// Positioned diagnostic shared by the scenario loader and the expression
// parser/evaluator. what() carries the rendered "line L, column C: message".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column);
    const std::string& message() const { return message_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string message_;
    int line_;
    int column_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Integer, Name, Neg, Add, Sub, Mul, Call };
    Kind kind = Kind::Integer;
    i64 value = 0;              // Integer
    std::string name;           // Name, Call
    std::vector<ExprPtr> args;  // Call arguments; operands of Neg/Add/Sub/Mul
    int line = 0, column = 0;
};

// Throws ParseError. The whole text must parse as one expression; line and
// column seed the reported positions, since expressions usually sit inside a
// scenario line.
ExprPtr parse_expression(std::string_view text, int line = 1, int column = 1);

std::string render_expr(const Expr& e);

// One evaluated expression: an integer-like result (exact, interval or
// unknown), a tri-state, or a class - with the derivation certificate whenever
// an engine produced one.
struct EvalValue {
    enum class Kind { Integer, Tristate, CurveClass, SurfaceClass, ProductClass, Restricted };
    Kind kind = Kind::Integer;
    std::optional<i64> num;                     // exact integer
    std::optional<std::pair<i64, i64>> range;   // interval answer when not exact
    Tri tri = Tri::Unknown;
    std::optional<DivisorClass> curve_cls;
    std::optional<SurfaceClass> surface_cls;
    std::optional<ProductClass> product_cls;
    std::optional<RestrictedClass> restricted;
    std::optional<Cert> cert;
    std::string display;  // normalized rendering of the value

    bool is_class() const {
        return kind == Kind::CurveClass || kind == Kind::SurfaceClass ||
               kind == Kind::ProductClass || kind == Kind::Restricted;
    }
};

// Evaluate over the scenario's model and class names; `vars` binds loop
// variables such as a table's k. Name and type errors throw ParseError at the
// offending node's position.
EvalValue eval_expression(const Scenario& sc, const Expr& e,
                          const std::map<std::string, i64>& vars = {});
EvalValue eval_expression(const Scenario& sc, std::string_view text);

}  // namespace conecheck
