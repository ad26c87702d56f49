#include "conecheck/expr.hpp"

#include <cctype>
#include <utility>

#include "conecheck/scenario.hpp"

namespace conecheck {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer and parser.
// ---------------------------------------------------------------------------

enum class Tok { Integer, Ident, Plus, Minus, Star, LParen, RParen, Comma, End };

struct Token {
    Tok kind = Tok::End;
    i64 value = 0;
    std::string text;
    int column = 0;
};

struct Lexer {
    std::string_view src;
    int line;
    int col_offset;  // column of src[0] within the host line
    std::size_t pos = 0;

    Token next() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
        Token t;
        t.column = col_offset + static_cast<int>(pos);
        if (pos >= src.size()) return t;
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Integer;
            std::size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            t.text = std::string(src.substr(start, pos - start));
            t.value = std::stoll(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::Ident;
            std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            t.text = std::string(src.substr(start, pos - start));
            return t;
        }
        ++pos;
        switch (c) {
            case '+': t.kind = Tok::Plus; return t;
            case '-': t.kind = Tok::Minus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case ',': t.kind = Tok::Comma; return t;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "'", line, t.column);
        }
    }
};

struct Parser {
    Lexer lex;
    Token cur;

    explicit Parser(std::string_view src, int line, int col) : lex{src, line, col} { advance(); }

    void advance() { cur = lex.next(); }

    [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, lex.line, cur.column); }

    ExprPtr node(Expr::Kind k, int column) const {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->line = lex.line;
        e->column = column;
        return e;
    }

    ExprPtr parse() {
        ExprPtr e = sum();
        if (cur.kind != Tok::End) fail("unexpected trailing input");
        return e;
    }

    ExprPtr sum() {
        ExprPtr a = term();
        while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
            Expr::Kind k = cur.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
            int col = cur.column;
            advance();
            ExprPtr b = term();
            auto e = node(k, col);
            const_cast<Expr&>(*e).args = {a, b};
            a = e;
        }
        return a;
    }

    ExprPtr term() {
        ExprPtr a = unary();
        while (cur.kind == Tok::Star) {
            int col = cur.column;
            advance();
            ExprPtr b = unary();
            auto e = node(Expr::Kind::Mul, col);
            const_cast<Expr&>(*e).args = {a, b};
            a = e;
        }
        return a;
    }

    ExprPtr unary() {
        if (cur.kind == Tok::Minus) {
            int col = cur.column;
            advance();
            auto e = node(Expr::Kind::Neg, col);
            const_cast<Expr&>(*e).args = {unary()};
            return e;
        }
        if (cur.kind == Tok::Plus) {
            advance();
            return unary();
        }
        return primary();
    }

    ExprPtr primary() {
        if (cur.kind == Tok::Integer) {
            auto e = node(Expr::Kind::Integer, cur.column);
            const_cast<Expr&>(*e).value = cur.value;
            advance();
            return e;
        }
        if (cur.kind == Tok::LParen) {
            advance();
            ExprPtr e = sum();
            if (cur.kind != Tok::RParen) fail("expected ')'");
            advance();
            return e;
        }
        if (cur.kind == Tok::Ident) {
            std::string name = cur.text;
            int col = cur.column;
            advance();
            if (cur.kind != Tok::LParen) {
                auto e = node(Expr::Kind::Name, col);
                const_cast<Expr&>(*e).name = name;
                return e;
            }
            advance();
            auto e = node(Expr::Kind::Call, col);
            Expr& call = const_cast<Expr&>(*e);
            call.name = name;
            if (cur.kind != Tok::RParen) {
                call.args.push_back(sum());
                while (cur.kind == Tok::Comma) {
                    advance();
                    call.args.push_back(sum());
                }
            }
            if (cur.kind != Tok::RParen) fail("expected ')' after the arguments of " + name);
            advance();
            return e;
        }
        fail("expected an expression");
    }
};

int prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul: return 2;
        case Expr::Kind::Neg: return 3;
        default: return 4;
    }
}

std::string wrapped(const Expr& e, int min_prec) {
    std::string s = render_expr(e);
    return prec(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expression(std::string_view text, int line, int column) {
    return Parser(text, line, column).parse();
}

std::string render_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Integer: return std::to_string(e.value);
        case Expr::Kind::Name: return e.name;
        case Expr::Kind::Neg: return "-" + wrapped(*e.args[0], 3);
        case Expr::Kind::Add: return wrapped(*e.args[0], 1) + " + " + wrapped(*e.args[1], 2);
        case Expr::Kind::Sub: return wrapped(*e.args[0], 1) + " - " + wrapped(*e.args[1], 2);
        case Expr::Kind::Mul: return wrapped(*e.args[0], 2) + "*" + wrapped(*e.args[1], 3);
        case Expr::Kind::Call: {
            std::string s = e.name + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += ", ";
                s += render_expr(*e.args[i]);
            }
            return s + ")";
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace {

std::string tri_text(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        default: return "unknown";
    }
}

EvalValue int_value(std::optional<i64> v) {
    EvalValue out;
    out.num = v;
    out.display = v ? std::to_string(*v) : "unknown";
    return out;
}

EvalValue from_hval(Hval h) {
    EvalValue out = int_value(h.value);
    out.cert = std::move(h.cert);
    return out;
}

EvalValue from_les(LesValue v) {
    EvalValue out;
    switch (v.kind) {
        case LesValue::Kind::Exact:
            out.num = v.value;
            out.display = std::to_string(v.value);
            break;
        case LesValue::Kind::Interval:
            out.range = {{v.lo, v.hi}};
            out.display = "[" + std::to_string(v.lo) + ", " + std::to_string(v.hi) + "]";
            break;
        case LesValue::Kind::Unknown: out.display = "unknown"; break;
    }
    out.cert = std::move(v.cert);
    return out;
}

struct Evaluator {
    const Scenario& sc;
    const std::map<std::string, i64>& vars;

    [[noreturn]] static void fail(const Expr& e, const std::string& m) {
        throw ParseError(m, e.line, e.column);
    }

    static EvalValue class_value(const NamedClass& nc) {
        EvalValue out;
        switch (nc.kind) {
            case NamedClass::Kind::Curve:
                out.kind = EvalValue::Kind::CurveClass;
                out.curve_cls = nc.curve;
                out.display = class_to_string(*nc.curve);
                break;
            case NamedClass::Kind::Surface:
                out.kind = EvalValue::Kind::SurfaceClass;
                out.surface_cls = nc.surface;
                out.display = surface_class_to_string(*nc.surface);
                break;
            case NamedClass::Kind::Product:
                out.kind = EvalValue::Kind::ProductClass;
                out.product_cls = nc.product;
                out.display = product_class_to_string(*nc.product);
                break;
        }
        return out;
    }

    static EvalValue curve_value(DivisorClass d) {
        EvalValue out;
        out.kind = EvalValue::Kind::CurveClass;
        out.display = class_to_string(d);
        out.curve_cls = std::move(d);
        return out;
    }

    static EvalValue surface_value(SurfaceClass s) {
        EvalValue out;
        out.kind = EvalValue::Kind::SurfaceClass;
        out.display = surface_class_to_string(s);
        out.surface_cls = std::move(s);
        return out;
    }

    static EvalValue product_value(ProductClass p) {
        EvalValue out;
        out.kind = EvalValue::Kind::ProductClass;
        out.display = product_class_to_string(p);
        out.product_cls = std::move(p);
        return out;
    }

    // A curve class on the base of `s` may stand for its pullback.
    static std::optional<SurfaceClass> as_surface(const EvalValue& v, const RuledSurfaceModel* s) {
        if (v.kind == EvalValue::Kind::SurfaceClass && v.surface_cls->surface == s)
            return *v.surface_cls;
        if (v.kind == EvalValue::Kind::CurveClass && v.curve_cls->curve == s->base)
            return pullback_class(*s, *v.curve_cls);
        return std::nullopt;
    }

    EvalValue eval(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::Integer: return int_value(e.value);
            case Expr::Kind::Name: {
                auto vi = vars.find(e.name);
                if (vi != vars.end()) return int_value(vi->second);
                const NamedClass* nc = sc.find_class(e.name);
                if (!nc) fail(e, "unknown name '" + e.name + "'");
                return class_value(*nc);
            }
            case Expr::Kind::Neg: {
                EvalValue v = eval(*e.args[0]);
                switch (v.kind) {
                    case EvalValue::Kind::Integer:
                        if (v.range) return int_value(std::nullopt);
                        return int_value(v.num ? std::optional<i64>(-*v.num) : std::nullopt);
                    case EvalValue::Kind::CurveClass: return curve_value(-*v.curve_cls);
                    case EvalValue::Kind::SurfaceClass: return surface_value(-*v.surface_cls);
                    case EvalValue::Kind::ProductClass: return product_value(-*v.product_cls);
                    default: fail(e, "cannot negate this value");
                }
            }
            case Expr::Kind::Add:
            case Expr::Kind::Sub: return add_sub(e, e.kind == Expr::Kind::Add);
            case Expr::Kind::Mul: return mul(e);
            case Expr::Kind::Call: return call(e);
        }
        fail(e, "unexpected expression");
    }

    EvalValue add_sub(const Expr& e, bool add) {
        EvalValue a = eval(*e.args[0]);
        EvalValue b = eval(*e.args[1]);
        if (a.kind == EvalValue::Kind::Integer && b.kind == EvalValue::Kind::Integer) {
            if (!a.num || !b.num) return int_value(std::nullopt);
            return int_value(add ? *a.num + *b.num : *a.num - *b.num);
        }
        // pull curve classes up to the surface when mixed with surface classes
        if (a.kind == EvalValue::Kind::SurfaceClass || b.kind == EvalValue::Kind::SurfaceClass) {
            const RuledSurfaceModel* s = a.kind == EvalValue::Kind::SurfaceClass
                                             ? a.surface_cls->surface
                                             : b.surface_cls->surface;
            auto sa = as_surface(a, s), sb = as_surface(b, s);
            if (!sa || !sb) fail(e, "cannot combine these classes: incompatible models");
            return surface_value(add ? *sa + *sb : *sa - *sb);
        }
        if (a.kind == EvalValue::Kind::CurveClass && b.kind == EvalValue::Kind::CurveClass) {
            if (a.curve_cls->curve != b.curve_cls->curve)
                fail(e, "classes live on different curves");
            return curve_value(add ? *a.curve_cls + *b.curve_cls : *a.curve_cls - *b.curve_cls);
        }
        if (a.kind == EvalValue::Kind::ProductClass && b.kind == EvalValue::Kind::ProductClass) {
            if (a.product_cls->product != b.product_cls->product)
                fail(e, "classes live on different products");
            return product_value(add ? *a.product_cls + *b.product_cls
                                     : *a.product_cls - *b.product_cls);
        }
        fail(e, "cannot combine these values with + or -");
    }

    EvalValue mul(const Expr& e) {
        EvalValue a = eval(*e.args[0]);
        EvalValue b = eval(*e.args[1]);
        if (a.kind == EvalValue::Kind::Integer && b.kind == EvalValue::Kind::Integer) {
            if (!a.num || !b.num) return int_value(std::nullopt);
            return int_value(*a.num * *b.num);
        }
        const EvalValue* k = nullptr;
        const EvalValue* c = nullptr;
        if (a.kind == EvalValue::Kind::Integer) k = &a, c = &b;
        if (b.kind == EvalValue::Kind::Integer) k = &b, c = &a;
        if (!k || !c->is_class()) fail(e, "cannot multiply these values; use intersect for products of classes");
        if (!k->num) fail(e, "a scale factor must be a known integer");
        switch (c->kind) {
            case EvalValue::Kind::CurveClass: return curve_value(*k->num * *c->curve_cls);
            case EvalValue::Kind::SurfaceClass: return surface_value(*k->num * *c->surface_cls);
            case EvalValue::Kind::ProductClass: return product_value(*k->num * *c->product_cls);
            default: fail(e, "restricted classes do not support arithmetic");
        }
    }

    // --- function calls ---------------------------------------------------

    struct ModelRef {
        const CurveModel* curve = nullptr;
        const RuledSurfaceModel* surface = nullptr;
        const ProductModel* product = nullptr;
        const HypersurfaceModel* hyp = nullptr;
    };

    ModelRef model_arg(const Expr& call) const {
        const Expr& e = *call.args[0];
        if (e.kind != Expr::Kind::Name)
            fail(e, call.name + " expects a model name as its first argument");
        ModelRef m;
        m.curve = sc.find_curve(e.name);
        m.surface = sc.find_surface(e.name);
        m.product = sc.find_product(e.name);
        m.hyp = sc.find_hypersurface(e.name);
        if (!m.curve && !m.surface && !m.product && !m.hyp)
            fail(e, "unknown model '" + e.name + "'");
        return m;
    }

    void need_args(const Expr& e, std::size_t n) const {
        if (e.args.size() != n)
            fail(e, e.name + " expects " + std::to_string(n) + " arguments, got " +
                        std::to_string(e.args.size()));
    }

    DivisorClass curve_arg(const Expr& host, const Expr& e, const CurveModel* c) {
        EvalValue v = eval(e);
        if (v.kind != EvalValue::Kind::CurveClass || v.curve_cls->curve != c)
            fail(host, "expected a class on curve " + c->name);
        return *v.curve_cls;
    }

    EvalValue call(const Expr& e) {
        const std::string& fn = e.name;
        if (fn == "h0" || fn == "h1" || fn == "h2" || fn == "h3") return h_call(e, fn[1] - '0');
        if (fn == "chi") return chi_call(e);
        if (fn == "deg") return deg_call(e);
        if (fn == "intersect") return intersect_call(e);
        if (fn == "bpf") return bpf_call(e);
        if (fn == "bs") return bs_call(e);
        if (fn == "product") return product_call(e);
        if (fn == "restrict") return restrict_call(e);
        fail(e, "unknown function '" + fn + "'");
    }

    EvalValue h_call(const Expr& e, int i) {
        need_args(e, 2);
        ModelRef m = model_arg(e);
        if (m.curve) return from_hval(curve_h(curve_arg(e, *e.args[1], m.curve), i));
        if (m.surface) {
            EvalValue v = eval(*e.args[1]);
            auto s = as_surface(v, m.surface);
            if (!s) fail(e, "expected a class on surface " + m.surface->name);
            return from_hval(surface_h(*s, i));
        }
        if (m.product) {
            EvalValue v = eval(*e.args[1]);
            if (v.kind != EvalValue::Kind::ProductClass || v.product_cls->product != m.product)
                fail(e, "expected a class on product " + m.product->name);
            return from_hval(kunneth_h(*v.product_cls, i));
        }
        return from_les(les_h(restricted_arg(e, *e.args[1], m.hyp), i));
    }

    RestrictedClass restricted_arg(const Expr& host, const Expr& e, const HypersurfaceModel* t) {
        EvalValue v = eval(e);
        if (v.kind == EvalValue::Kind::Restricted) {
            if (v.restricted->hyp != t) fail(host, "the class is restricted to a different hypersurface");
            return *v.restricted;
        }
        if (v.kind == EvalValue::Kind::ProductClass && v.product_cls->product == t->ambient)
            return restrict_to_hypersurface(*t, *v.product_cls);
        fail(host, "expected an ambient or restricted class for " + t->name);
    }

    EvalValue chi_call(const Expr& e) {
        need_args(e, 2);
        ModelRef m = model_arg(e);
        if (m.curve) return from_hval(curve_chi(curve_arg(e, *e.args[1], m.curve)));
        if (m.surface) {
            EvalValue v = eval(*e.args[1]);
            auto s = as_surface(v, m.surface);
            if (!s) fail(e, "expected a class on surface " + m.surface->name);
            return from_hval(surface_chi(*s));
        }
        if (m.product) {
            EvalValue v = eval(*e.args[1]);
            if (v.kind != EvalValue::Kind::ProductClass || v.product_cls->product != m.product)
                fail(e, "expected a class on product " + m.product->name);
            return from_hval(product_chi(*v.product_cls));
        }
        fail(e, "chi is not defined on a hypersurface restriction");
    }

    EvalValue deg_call(const Expr& e) {
        need_args(e, 1);
        EvalValue v = eval(*e.args[0]);
        if (v.kind != EvalValue::Kind::CurveClass) fail(e, "deg expects a curve class");
        return int_value(degree(*v.curve_cls).as_constant());
    }

    EvalValue intersect_call(const Expr& e) {
        if (e.args.size() == 2) {
            EvalValue a = eval(*e.args[0]);
            EvalValue b = eval(*e.args[1]);
            const RuledSurfaceModel* s = nullptr;
            if (a.kind == EvalValue::Kind::SurfaceClass) s = a.surface_cls->surface;
            else if (b.kind == EvalValue::Kind::SurfaceClass) s = b.surface_cls->surface;
            if (!s) fail(e, "intersect expects two surface classes or three product classes");
            auto sa = as_surface(a, s), sb = as_surface(b, s);
            if (!sa || !sb) fail(e, "cannot intersect classes from different models");
            return from_hval(surface_intersect(*sa, *sb));
        }
        if (e.args.size() == 3) {
            ProductClass p[3];
            for (int j = 0; j < 3; ++j) {
                EvalValue v = eval(*e.args[j]);
                if (v.kind != EvalValue::Kind::ProductClass)
                    fail(e, "the triple form of intersect expects product classes");
                p[j] = *v.product_cls;
            }
            if (p[0].product != p[1].product || p[0].product != p[2].product)
                fail(e, "cannot intersect classes from different models");
            return from_hval(triple_intersect(p[0], p[1], p[2]));
        }
        fail(e, "intersect expects two surface classes or three product classes");
    }

    EvalValue bpf_call(const Expr& e) {
        need_args(e, 2);
        ModelRef m = model_arg(e);
        if (!m.curve) fail(e, "bpf expects a curve model");
        Decision d = is_basepoint_free(curve_arg(e, *e.args[1], m.curve));
        EvalValue out;
        out.kind = EvalValue::Kind::Tristate;
        out.tri = d.state;
        out.display = tri_text(d.state);
        out.cert = std::move(d.cert);
        return out;
    }

    EvalValue bs_call(const Expr& e) {
        need_args(e, 2);
        ModelRef m = model_arg(e);
        if (m.curve) {
            CurveBaseLocus bl = curve_base_locus(curve_arg(e, *e.args[1], m.curve));
            EvalValue out;
            switch (bl.state) {
                case CurveBaseLocus::State::Resolved: {
                    out.num = static_cast<i64>(bl.points.size());
                    if (bl.points.empty()) {
                        out.display = "empty";
                    } else {
                        out.display = "{";
                        for (std::size_t j = 0; j < bl.points.size(); ++j) {
                            if (j) out.display += ", ";
                            out.display += m.curve->generators[bl.points[j]].name;
                        }
                        out.display += "}";
                    }
                    break;
                }
                case CurveBaseLocus::State::WholeCurve:
                    out.num = -1;
                    out.display = "the whole curve";
                    break;
                case CurveBaseLocus::State::Unknown: out.display = "unknown"; break;
            }
            out.cert = std::move(bl.cert);
            return out;
        }
        if (m.surface) {
            EvalValue v = eval(*e.args[1]);
            auto s = as_surface(v, m.surface);
            if (!s) fail(e, "expected a class on surface " + m.surface->name);
            SurfaceBaseLocus bl = surface_base_locus(*s);
            EvalValue out;
            if (bl.state == SurfaceBaseLocus::State::Resolved) {
                out.num = find_data(bl.cert, "value");
                out.display = region_to_string(*m.surface, bl.region);
            } else {
                out.display = "unknown";
            }
            out.cert = std::move(bl.cert);
            return out;
        }
        fail(e, "bs expects a curve or surface model");
    }

    EvalValue product_call(const Expr& e) {
        need_args(e, 2);
        EvalValue a = eval(*e.args[0]);
        EvalValue b = eval(*e.args[1]);
        if (b.kind != EvalValue::Kind::CurveClass)
            fail(e, "the second factor of product must be a curve class");
        for (const ProductModel& x : sc.products) {
            if (x.curve != b.curve_cls->curve) continue;
            auto s = as_surface(a, x.surface);
            if (!s) continue;
            return product_value(make_product_class(x, *s, *b.curve_cls));
        }
        fail(e, "no product model combines these factors");
    }

    EvalValue restrict_call(const Expr& e) {
        need_args(e, 2);
        ModelRef m = model_arg(e);
        if (!m.hyp) fail(e, "restrict expects a hypersurface model");
        EvalValue out;
        out.kind = EvalValue::Kind::Restricted;
        RestrictedClass rc = restricted_arg(e, *e.args[1], m.hyp);
        out.display = product_class_to_string(rc.ambient_class) + " restricted to " + m.hyp->name;
        out.restricted = std::move(rc);
        return out;
    }
};

}  // namespace

EvalValue eval_expression(const Scenario& sc, const Expr& e, const std::map<std::string, i64>& vars) {
    return Evaluator{sc, vars}.eval(e);
}

EvalValue eval_expression(const Scenario& sc, std::string_view text) {
    ExprPtr e = parse_expression(text);
    return eval_expression(sc, *e);
}

}  // namespace conecheck
