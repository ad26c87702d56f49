#include "conecheck/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace conecheck {

namespace {

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// check/table labels additionally allow '-'
bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalnum(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

const std::set<std::string>& reserved_names() {
    static const std::set<std::string> r = {
        "curve",   "surface", "product",   "hypersurface", "pipeline", "class",  "end",
        "genus",   "generator", "relation", "canonical",   "cover",    "fact",   "shifts",
        "base",    "twist",   "ambient",   "assume",       "sweep",    "check",  "table",
        "verdict", "expect",  "polarize",  "boundary",     "for",      "in",     "point",
        "degree",  "h0",      "h1",        "h2",           "h3",       "chi",    "deg",
        "intersect", "bpf",   "bs",        "restrict",     "true",     "false",  "unknown",
    };
    return r;
}

i64 parse_int(const std::string& w, int line, int col) {
    std::size_t idx = 0;
    try {
        i64 v = std::stoll(w, &idx);
        if (idx == w.size()) return v;
    } catch (...) {
    }
    throw ParseError("expected an integer, got '" + w + "'", line, col);
}

ExpectedLiteral parse_literal(const std::string& w, int line, int col) {
    ExpectedLiteral out;
    if (w == "true" || w == "false" || w == "unknown") {
        out.is_tri = true;
        out.tri = w == "true" ? Tri::True : w == "false" ? Tri::False : Tri::Unknown;
        return out;
    }
    out.num = parse_int(w, line, col);
    return out;
}

// Whitespace-token scanner over one logical line.
struct Scan {
    std::string text;
    int line = 0;
    int col_base = 1;  // column of text[0] in the source line
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    int col() {
        skip_ws();
        return col_base + static_cast<int>(pos);
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    [[noreturn]] void fail(const std::string& m) { throw ParseError(m, line, col()); }

    std::pair<std::string, int> word_at(const std::string& what) {
        skip_ws();
        if (pos >= text.size()) fail("expected " + what);
        int c = col_base + static_cast<int>(pos);
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return {text.substr(start, pos - start), c};
    }
    std::string word(const std::string& what) { return word_at(what).first; }
    std::optional<std::string> maybe_word() {
        if (done()) return std::nullopt;
        return word("a word");
    }
    void expect_char(char ch) {
        skip_ws();
        if (pos >= text.size() || text[pos] != ch)
            fail(std::string("expected '") + ch + "'");
        ++pos;
    }
    void expect_end() {
        if (!done()) fail("unexpected trailing input");
    }
    // the untouched remainder, right-trimmed, with its starting column
    std::pair<std::string, int> rest(const std::string& what) {
        skip_ws();
        if (pos >= text.size()) fail("expected " + what);
        int c = col_base + static_cast<int>(pos);
        std::string r = text.substr(pos);
        while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
        pos = text.size();
        return {r, c};
    }
};

// ---------------------------------------------------------------------------
// Linear combinations of curve generators (relation/canonical/twist/fact
// operands): integers may only appear as scale factors.
// ---------------------------------------------------------------------------

struct LinVec {
    Vec v;
    i64 k = 0;  // scalar-only contribution
};

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

LinVec eval_linvec(const CurveModel& c, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Integer: return {Vec(c.ngens(), 0), e.value};
        case Expr::Kind::Name: {
            auto gi = c.generator_index(e.name);
            if (!gi) throw ParseError("unknown generator '" + e.name + "'", e.line, e.column);
            Vec v(c.ngens(), 0);
            v[*gi] = 1;
            return {v, 0};
        }
        case Expr::Kind::Neg: {
            LinVec a = eval_linvec(c, *e.args[0]);
            for (i64& x : a.v) x = -x;
            a.k = -a.k;
            return a;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            LinVec a = eval_linvec(c, *e.args[0]);
            LinVec b = eval_linvec(c, *e.args[1]);
            i64 s = e.kind == Expr::Kind::Add ? 1 : -1;
            for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] += s * b.v[i];
            a.k += s * b.k;
            return a;
        }
        case Expr::Kind::Mul: {
            LinVec a = eval_linvec(c, *e.args[0]);
            LinVec b = eval_linvec(c, *e.args[1]);
            if (vec_is_zero(a.v)) {
                for (i64& x : b.v) x *= a.k;
                b.k *= a.k;
                return b;
            }
            if (vec_is_zero(b.v)) {
                for (i64& x : a.v) x *= b.k;
                a.k *= b.k;
                return a;
            }
            throw ParseError("cannot multiply two classes", e.line, e.column);
        }
        case Expr::Kind::Call:
            throw ParseError("function calls are not allowed here", e.line, e.column);
    }
    throw ParseError("unexpected expression", e.line, e.column);
}

Vec class_vec(const CurveModel& c, const Expr& e) {
    LinVec lv = eval_linvec(c, e);
    if (lv.k != 0)
        throw ParseError("a plain integer cannot appear in a class combination", e.line, e.column);
    return lv.v;
}

Vec parse_class_vec(const CurveModel& c, const std::string& text, int line, int col) {
    return class_vec(c, *parse_expression(text, line, col));
}

i64 vec_degree(const CurveModel& c, const Vec& v) {
    i64 d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * c.generators[i].degree;
    return d;
}

std::string render_vec(const CurveModel& c, const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        i64 k = v[i];
        if (k == 0) continue;
        if (out.empty()) {
            if (k == -1)
                out += "-";
            else if (k != 1)
                out += std::to_string(k) + "*";
        } else {
            out += k < 0 ? " - " : " + ";
            i64 a = k < 0 ? -k : k;
            if (a != 1) out += std::to_string(a) + "*";
        }
        out += c.generators[i].name;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Loader.
// ---------------------------------------------------------------------------

struct RawStmt {
    std::string text;
    int line = 0;
};

struct Loader {
    Scenario sc;

    enum class Block { None, Curve, Surface, Product, Hypersurface, Pipeline };
    Block block = Block::None;
    int block_line = 0;
    std::vector<RawStmt> stmts;

    std::set<std::string> taken;          // every registered name
    std::set<std::string> check_labels;   // check and table names
    bool sections_registered = false;

    void claim(const std::string& name, int line, int col, const std::string& what) {
        if (!valid_ident(name))
            throw ParseError("invalid " + what + " name '" + name + "'", line, col);
        if (reserved_names().count(name))
            throw ParseError("'" + name + "' is a reserved word", line, col);
        if (!taken.insert(name).second)
            throw ParseError("the name '" + name + "' is already in use", line, col);
    }

    void register_class(const std::string& name, NamedClass nc) { sc.classes[name] = std::move(nc); }

    static NamedClass curve_named(DivisorClass d) {
        NamedClass nc;
        nc.kind = NamedClass::Kind::Curve;
        nc.curve = std::move(d);
        return nc;
    }
    static NamedClass surface_named(SurfaceClass s) {
        NamedClass nc;
        nc.kind = NamedClass::Kind::Surface;
        nc.surface = std::move(s);
        return nc;
    }
    static NamedClass product_named(ProductClass p) {
        NamedClass nc;
        nc.kind = NamedClass::Kind::Product;
        nc.product = std::move(p);
        return nc;
    }

    // --- top level ---------------------------------------------------------

    void line_in(const std::string& text, int line) {
        Scan s{text, line};
        auto [kw, kcol] = s.word_at("a directive");
        if (block == Block::None) {
            top_level(s, kw, kcol, line);
            return;
        }
        if (kw == "end") {
            s.expect_end();
            close_block(line);
            return;
        }
        if (block == Block::Pipeline)
            pipeline_line(s, kw, kcol, line);
        else
            stmts.push_back({text, line});
    }

    void top_level(Scan& s, const std::string& kw, int kcol, int line) {
        if (kw == "curve" || kw == "surface" || kw == "product" || kw == "hypersurface") {
            auto [name, ncol] = s.word_at("a model name");
            s.expect_end();
            claim(name, line, ncol, "model");
            block_line = line;
            stmts.clear();
            if (kw == "curve") {
                block = Block::Curve;
                sc.curves.push_back(CurveModel{});
                sc.curves.back().name = name;
                sc.item_order.emplace_back(Scenario::ItemKind::Curve, name);
            } else if (kw == "surface") {
                block = Block::Surface;
                sc.surfaces.push_back(RuledSurfaceModel{});
                sc.surfaces.back().name = name;
                sc.item_order.emplace_back(Scenario::ItemKind::Surface, name);
            } else if (kw == "product") {
                block = Block::Product;
                sc.products.push_back(ProductModel{});
                sc.products.back().name = name;
                sc.item_order.emplace_back(Scenario::ItemKind::Product, name);
            } else {
                block = Block::Hypersurface;
                sc.hypersurfaces.push_back(HypersurfaceModel{});
                sc.hypersurfaces.back().name = name;
                sc.item_order.emplace_back(Scenario::ItemKind::Hypersurface, name);
            }
            return;
        }
        if (kw == "pipeline") {
            s.expect_end();
            if (sc.has_pipeline) throw ParseError("duplicate pipeline block", line, kcol);
            sc.has_pipeline = true;
            block = Block::Pipeline;
            block_line = line;
            return;
        }
        if (kw == "class") {
            auto [name, ncol] = s.word_at("a class name");
            s.expect_char('=');
            auto [body, bcol] = s.rest("an expression");
            claim(name, line, ncol, "class");
            ExprPtr e = parse_expression(body, line, bcol);
            EvalValue v;
            try {
                v = eval_expression(sc, *e);
            } catch (const EngineError& ee) {
                throw ParseError(ee.what(), line, bcol);
            }
            NamedClass nc;
            switch (v.kind) {
                case EvalValue::Kind::CurveClass:
                    if (!is_concrete(*v.curve_cls))
                        throw ParseError("a named class must be concrete", line, bcol);
                    nc = curve_named(*v.curve_cls);
                    break;
                case EvalValue::Kind::SurfaceClass:
                    if (!surface_is_concrete(*v.surface_cls))
                        throw ParseError("a named class must be concrete", line, bcol);
                    nc = surface_named(*v.surface_cls);
                    break;
                case EvalValue::Kind::ProductClass:
                    if (!product_is_concrete(*v.product_cls))
                        throw ParseError("a named class must be concrete", line, bcol);
                    nc = product_named(*v.product_cls);
                    break;
                default:
                    throw ParseError("a class definition must evaluate to a divisor class", line,
                                     bcol);
            }
            register_class(name, std::move(nc));
            sc.class_exprs[name] = e;
            sc.item_order.emplace_back(Scenario::ItemKind::Class, name);
            return;
        }
        if (kw == "end") throw ParseError("'end' outside of a block", line, kcol);
        throw ParseError("unknown directive '" + kw + "'", line, kcol);
    }

    void close_block(int end_line) {
        switch (block) {
            case Block::Curve: close_curve(); break;
            case Block::Surface: close_surface(); break;
            case Block::Product: close_product(); break;
            case Block::Hypersurface: close_hypersurface(); break;
            case Block::Pipeline: break;
            case Block::None: throw ParseError("'end' outside of a block", end_line, 1);
        }
        block = Block::None;
        stmts.clear();
    }

    // --- curve block ---------------------------------------------------------

    void close_curve() {
        CurveModel& c = sc.curves.back();
        bool has_genus = false, has_canonical = false, has_cover = false;
        int canonical_line = block_line;

        // pass 1: genus and generators
        for (const RawStmt& st : stmts) {
            Scan s{st.text, st.line};
            auto [kw, kcol] = s.word_at("a statement");
            if (kw == "genus") {
                if (has_genus) s.fail("duplicate genus");
                auto [w, wcol] = s.word_at("a genus");
                c.genus = parse_int(w, st.line, wcol);
                s.expect_end();
                if (c.genus < 0) throw ParseError("the genus must be nonnegative", st.line, wcol);
                has_genus = true;
            } else if (kw == "generator") {
                auto [name, ncol] = s.word_at("a generator name");
                auto [dkw, dcol] = s.word_at("'degree'");
                if (dkw != "degree") throw ParseError("expected 'degree'", st.line, dcol);
                auto [dw, dwcol] = s.word_at("a degree");
                i64 deg = parse_int(dw, st.line, dwcol);
                bool point = false;
                if (auto w = s.maybe_word()) {
                    if (*w != "point") s.fail("expected 'point' or end of line");
                    point = true;
                    s.expect_end();
                }
                if (point && deg != 1)
                    throw ParseError("a point generator must have degree 1", st.line, dwcol);
                claim(name, st.line, ncol, "generator");
                c.generators.push_back({name, deg, point});
            } else if (kw != "relation" && kw != "canonical" && kw != "cover" && kw != "fact") {
                throw ParseError("unknown statement '" + kw + "' in a curve block", st.line, kcol);
            }
        }
        if (!has_genus) throw ParseError("the curve block must declare a genus", block_line, 1);
        if (c.generators.empty())
            throw ParseError("the curve block must declare at least one generator", block_line, 1);

        // pass 2: structure statements
        for (const RawStmt& st : stmts) {
            Scan s{st.text, st.line};
            auto kw = s.word("a statement");
            if (kw == "relation") {
                auto [body, bcol] = s.rest("a relation");
                Vec v = parse_class_vec(c, body, st.line, bcol);
                if (vec_is_zero(v)) throw ParseError("a relation must not be zero", st.line, bcol);
                if (vec_degree(c, v) != 0)
                    throw ParseError("a relation must have degree zero, got " +
                                         std::to_string(vec_degree(c, v)),
                                     st.line, bcol);
                c.relations.push_back(std::move(v));
            } else if (kw == "canonical") {
                if (has_canonical) s.fail("duplicate canonical");
                auto [body, bcol] = s.rest("the canonical class");
                c.canonical = parse_class_vec(c, body, st.line, bcol);
                has_canonical = true;
                canonical_line = st.line;
            } else if (kw == "cover") {
                if (has_cover) s.fail("duplicate cover");
                auto [gname, gcol] = s.word_at("a generator name");
                auto gi = c.generator_index(gname);
                if (!gi) throw ParseError("unknown generator '" + gname + "'", st.line, gcol);
                auto [skw, scol] = s.word_at("'shifts'");
                if (skw != "shifts") throw ParseError("expected 'shifts'", st.line, scol);
                CurveModel::DoubleCover cov;
                cov.unit = *gi;
                while (auto w = s.maybe_word()) cov.twists.push_back(parse_int(*w, st.line, 1));
                if (cov.twists.empty()) s.fail("expected at least one shift");
                c.cover = std::move(cov);
                has_cover = true;
            }
        }
        if (!has_canonical)
            throw ParseError("the curve block must declare a canonical class", block_line, 1);
        if (vec_degree(c, c.canonical) != 2 * c.genus - 2)
            throw ParseError("the canonical class has degree " +
                                 std::to_string(vec_degree(c, c.canonical)) + ", expected " +
                                 std::to_string(2 * c.genus - 2),
                             canonical_line, 1);

        // pass 3: facts, in declared order
        std::vector<FactDecl>& facts = sc.curve_facts[c.name];
        for (const RawStmt& st : stmts) {
            Scan s{st.text, st.line};
            if (s.word("a statement") != "fact") continue;
            auto [sub, subcol] = s.word_at("a fact kind");
            FactDecl fd;
            if (sub == "theta-even") {
                auto [gname, gcol] = s.word_at("a generator name");
                s.expect_end();
                auto gi = c.generator_index(gname);
                if (!gi) throw ParseError("unknown generator '" + gname + "'", st.line, gcol);
                try {
                    theta_classification(c, *gi);
                } catch (const EngineError& ee) {
                    throw ParseError(ee.what(), st.line, gcol);
                }
                fd.kind = FactDecl::Kind::ThetaEven;
                fd.cls = Vec(c.ngens(), 0);
                fd.cls[*gi] = 1;
            } else if (sub == "h0") {
                auto [body, bcol] = s.rest("a class and a value");
                std::size_t eq = body.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected '=' in an h0 fact", st.line, bcol);
                std::string lhs = body.substr(0, eq);
                while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back())))
                    lhs.pop_back();
                std::string rhs = body.substr(eq + 1);
                int rhs_col = bcol + static_cast<int>(eq) + 1;
                while (!rhs.empty() && std::isspace(static_cast<unsigned char>(rhs.front()))) {
                    rhs.erase(rhs.begin());
                    ++rhs_col;
                }
                fd.kind = FactDecl::Kind::H0;
                fd.cls = parse_class_vec(c, lhs, st.line, bcol);
                fd.value = parse_int(rhs, st.line, rhs_col);
                if (fd.value < 0)
                    throw ParseError("an h0 fact must be nonnegative", st.line, rhs_col);
                c.h0_facts.push_back({fd.cls, fd.value});
            } else if (sub == "noneffective" || sub == "bpf") {
                auto [body, bcol] = s.rest("a class");
                fd.kind = sub == "bpf" ? FactDecl::Kind::Bpf : FactDecl::Kind::Noneffective;
                fd.cls = parse_class_vec(c, body, st.line, bcol);
                (sub == "bpf" ? c.bpf_facts : c.noneffective_facts).push_back(fd.cls);
            } else {
                throw ParseError("unknown fact kind '" + sub + "'", st.line, subcol);
            }
            facts.push_back(std::move(fd));
        }

        // register generator names and the canonical class
        for (std::size_t gi = 0; gi < c.ngens(); ++gi)
            register_class(c.generators[gi].name, curve_named(generator_class(c, gi)));
        std::string kname = "K_" + c.name;
        claim(kname, block_line, 1, "class");
        register_class(kname, curve_named(make_class(c, c.canonical)));
    }

    // --- surface block -------------------------------------------------------

    void close_surface() {
        RuledSurfaceModel& s = sc.surfaces.back();
        bool has_twist = false;
        for (const RawStmt& st : stmts) {  // base first: twist needs it
            Scan sn{st.text, st.line};
            auto [kw, kcol] = sn.word_at("a statement");
            if (kw == "base") {
                if (s.base) sn.fail("duplicate base");
                auto [name, ncol] = sn.word_at("a curve name");
                sn.expect_end();
                s.base = sc.find_curve(name);
                if (!s.base) throw ParseError("unknown curve '" + name + "'", st.line, ncol);
            } else if (kw != "twist") {
                throw ParseError("unknown statement '" + kw + "' in a surface block", st.line, kcol);
            }
        }
        if (!s.base) throw ParseError("the surface block must declare a base curve", block_line, 1);
        for (const RawStmt& st : stmts) {
            Scan sn{st.text, st.line};
            if (sn.word("a statement") != "twist") continue;
            if (has_twist) sn.fail("duplicate twist");
            auto [body, bcol] = sn.rest("the twist class");
            s.twist = parse_class_vec(*s.base, body, st.line, bcol);
            if (vec_degree(*s.base, s.twist) <= 0)
                throw ParseError("the twist class must have positive degree", st.line, bcol);
            has_twist = true;
        }
        if (!has_twist)
            throw ParseError("the surface block must declare a twist class", block_line, 1);

        std::string kname = "K_" + s.name;
        claim(kname, block_line, 1, "class");
        register_class(kname, surface_named(canonical_class(s)));
        if (sc.surfaces.size() == 1) {
            claim("E", block_line, 1, "class");
            claim("Einf", block_line, 1, "class");
            claim("f", block_line, 1, "class");
            register_class("E", surface_named(section_class(s)));
            register_class("Einf",
                           surface_named(section_class(s) + pullback_class(s, s.twist_class())));
            register_class("f", surface_named(fiber_class(s)));
            sections_registered = true;
        } else if (sections_registered) {
            // the section shorthand is only meaningful while the surface is unique
            sc.classes.erase("E");
            sc.classes.erase("Einf");
            sc.classes.erase("f");
            sections_registered = false;
        }
    }

    // --- product block -------------------------------------------------------

    void close_product() {
        ProductModel& x = sc.products.back();
        for (const RawStmt& st : stmts) {
            Scan sn{st.text, st.line};
            auto [kw, kcol] = sn.word_at("a statement");
            auto [name, ncol] = sn.word_at("a model name");
            sn.expect_end();
            if (kw == "surface") {
                if (x.surface) throw ParseError("duplicate surface", st.line, kcol);
                x.surface = sc.find_surface(name);
                if (!x.surface) throw ParseError("unknown surface '" + name + "'", st.line, ncol);
            } else if (kw == "curve") {
                if (x.curve) throw ParseError("duplicate curve", st.line, kcol);
                x.curve = sc.find_curve(name);
                if (!x.curve) throw ParseError("unknown curve '" + name + "'", st.line, ncol);
            } else {
                throw ParseError("unknown statement '" + kw + "' in a product block", st.line, kcol);
            }
        }
        if (!x.surface)
            throw ParseError("the product block must declare a surface factor", block_line, 1);
        if (!x.curve)
            throw ParseError("the product block must declare a curve factor", block_line, 1);

        std::string kname = "K_" + x.name;
        claim(kname, block_line, 1, "class");
        register_class(kname, product_named(canonical_product_class(x)));
    }

    // --- hypersurface block --------------------------------------------------

    void close_hypersurface() {
        HypersurfaceModel& t = sc.hypersurfaces.back();
        bool has_class = false;
        for (const RawStmt& st : stmts) {
            Scan sn{st.text, st.line};
            auto [kw, kcol] = sn.word_at("a statement");
            if (kw == "ambient") {
                if (t.ambient) sn.fail("duplicate ambient");
                auto [name, ncol] = sn.word_at("a product name");
                sn.expect_end();
                t.ambient = sc.find_product(name);
                if (!t.ambient) throw ParseError("unknown product '" + name + "'", st.line, ncol);
            } else if (kw != "class" && kw != "assume") {
                throw ParseError("unknown statement '" + kw + "' in a hypersurface block", st.line,
                                 kcol);
            }
        }
        if (!t.ambient)
            throw ParseError("the hypersurface block must declare an ambient product", block_line, 1);
        for (const RawStmt& st : stmts) {
            Scan sn{st.text, st.line};
            auto kw = sn.word("a statement");
            if (kw == "class") {
                if (has_class) sn.fail("duplicate class");
                auto [name, ncol] = sn.word_at("a class name");
                sn.expect_end();
                const NamedClass* nc = sc.find_class(name);
                if (!nc) throw ParseError("unknown class '" + name + "'", st.line, ncol);
                if (nc->kind != NamedClass::Kind::Product ||
                    nc->product->product != t.ambient)
                    throw ParseError("the class '" + name + "' does not live on product " +
                                         t.ambient->name,
                                     st.line, ncol);
                t.cls = *nc->product;
                sc.hypersurface_class_names[t.name] = name;
                has_class = true;
            } else if (kw == "assume") {
                auto [w, wcol] = sn.word_at("an assumption");
                sn.expect_end();
                (void)wcol;
                t.assumptions.push_back(w);
            }
        }
        if (!has_class)
            throw ParseError("the hypersurface block must declare its class", block_line, 1);
    }

    // --- pipeline ------------------------------------------------------------

    void pipeline_line(Scan& s, const std::string& kw, int kcol, int line) {
        Pipeline& p = sc.pipeline;
        if (kw == "sweep") {
            auto [w, wcol] = s.word_at("a sweep depth");
            s.expect_end();
            p.sweep = parse_int(w, line, wcol);
            if (p.sweep < 1) throw ParseError("the sweep depth must be at least 1", line, wcol);
            return;
        }
        if (kw == "check") {
            CheckDecl cd;
            cd.line = line;
            auto [name, ncol] = s.word_at("a check name");
            if (!valid_label(name))
                throw ParseError("invalid check name '" + name + "'", line, ncol);
            if (!check_labels.insert(name).second)
                throw ParseError("duplicate check name '" + name + "'", line, ncol);
            cd.name = name;
            auto [body, bcol] = s.rest("an expression");
            std::size_t eq = body.find("==");
            if (eq == std::string::npos) throw ParseError("expected '=='", line, bcol);
            std::string lhs = body.substr(0, eq);
            while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back())))
                lhs.pop_back();
            if (lhs.empty()) throw ParseError("expected an expression before '=='", line, bcol);
            std::string rhs = body.substr(eq + 2);
            int rhs_col = bcol + static_cast<int>(eq) + 2;
            while (!rhs.empty() && std::isspace(static_cast<unsigned char>(rhs.front()))) {
                rhs.erase(rhs.begin());
                ++rhs_col;
            }
            cd.expr = parse_expression(lhs, line, bcol);
            cd.expected = parse_literal(rhs, line, rhs_col);
            p.checks.push_back(std::move(cd));
            return;
        }
        if (kw == "table") {
            TableDecl td;
            td.line = line;
            auto [name, ncol] = s.word_at("a table name");
            if (!valid_label(name))
                throw ParseError("invalid table name '" + name + "'", line, ncol);
            if (!check_labels.insert(name).second)
                throw ParseError("duplicate table name '" + name + "'", line, ncol);
            td.name = name;
            auto [body, bcol] = s.rest("an expression");
            std::size_t fp = body.rfind(" for ");
            if (fp == std::string::npos)
                throw ParseError("expected 'for <var> in <lo>..<hi>'", line, bcol);
            std::string lhs = body.substr(0, fp);
            while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back())))
                lhs.pop_back();
            td.expr = parse_expression(lhs, line, bcol);
            Scan tail{body.substr(fp + 5), line, bcol + static_cast<int>(fp) + 5};
            auto [var, vcol] = tail.word_at("a loop variable");
            if (!valid_ident(var) || reserved_names().count(var))
                throw ParseError("invalid loop variable '" + var + "'", line, vcol);
            if (taken.count(var))
                throw ParseError("the loop variable '" + var + "' collides with an existing name",
                                 line, vcol);
            td.var = var;
            auto [inkw, incol] = tail.word_at("'in'");
            if (inkw != "in") throw ParseError("expected 'in'", line, incol);
            auto [range, rcol] = tail.word_at("a range");
            tail.expect_end();
            std::size_t dots = range.find("..");
            if (dots == std::string::npos)
                throw ParseError("expected a range of the form <lo>..<hi>", line, rcol);
            td.lo = parse_int(range.substr(0, dots), line, rcol);
            td.hi = parse_int(range.substr(dots + 2), line, rcol + static_cast<int>(dots) + 2);
            if (td.lo > td.hi) throw ParseError("an empty range", line, rcol);
            p.tables.push_back(std::move(td));
            return;
        }
        if (kw == "verdict") {
            if (p.verdict) throw ParseError("duplicate verdict", line, kcol);
            VerdictDecl vd;
            vd.line = line;
            vd.hypersurface = s.word("a hypersurface name");
            auto [pkw, pcol] = s.word_at("'polarize'");
            if (pkw != "polarize") throw ParseError("expected 'polarize'", line, pcol);
            vd.polarization = s.word("a class name");
            if (auto w = s.maybe_word()) {
                if (*w != "boundary") s.fail("expected 'boundary' or end of line");
                vd.boundary = s.word("a class name");
                s.expect_end();
            }
            p.verdict = std::move(vd);
            return;
        }
        if (kw == "expect") {
            Expectation ex;
            ex.line = line;
            auto [key, keycol] = s.word_at("an expectation key");
            ex.key = key;
            auto [w, wcol] = s.word_at("a value");
            s.expect_end();
            ex.value = parse_literal(w, line, wcol);
            static const std::set<std::string> keys = {"db_pair",   "db_space", "cartier_index",
                                                       "connected", "smooth",   "boundary_smooth"};
            if (!keys.count(ex.key))
                throw ParseError("unknown expectation '" + ex.key + "'", line, keycol);
            bool want_int = ex.key == "cartier_index";
            if (want_int == ex.value.is_tri)
                throw ParseError(want_int ? "cartier_index expects an integer"
                                          : ex.key + " expects true, false or unknown",
                                 line, wcol);
            for (const Expectation& prev : p.expectations)
                if (prev.key == ex.key)
                    throw ParseError("duplicate expectation '" + ex.key + "'", line, keycol);
            p.expectations.push_back(std::move(ex));
            return;
        }
        throw ParseError("unknown statement '" + kw + "' in the pipeline block", line, kcol);
    }

    // --- end of file ---------------------------------------------------------

    const NamedClass* verdict_class(const std::string& name, const HypersurfaceModel* t,
                                    int line) const {
        const NamedClass* nc = sc.find_class(name);
        if (!nc) throw ParseError("unknown class '" + name + "'", line, 1);
        if (nc->kind != NamedClass::Kind::Product || nc->product->product != t->ambient)
            throw ParseError("the class '" + name + "' does not live on product " +
                                 t->ambient->name,
                             line, 1);
        return nc;
    }

    void finish() {
        if (block != Block::None)
            throw ParseError("this block is never closed", block_line, 1);
        if (!sc.has_pipeline) return;
        const Pipeline& p = sc.pipeline;
        if (p.verdict) {
            const HypersurfaceModel* t = sc.find_hypersurface(p.verdict->hypersurface);
            if (!t)
                throw ParseError("unknown hypersurface '" + p.verdict->hypersurface + "'",
                                 p.verdict->line, 1);
            verdict_class(p.verdict->polarization, t, p.verdict->line);
            if (p.verdict->boundary) verdict_class(*p.verdict->boundary, t, p.verdict->line);
        }
        for (const Expectation& ex : p.expectations) {
            if (!p.verdict)
                throw ParseError("an expectation needs a verdict line", ex.line, 1);
            if (ex.key == "boundary_smooth" && !p.verdict->boundary)
                throw ParseError("boundary_smooth needs a verdict with a boundary", ex.line, 1);
        }
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Scenario members and entry points.
// ---------------------------------------------------------------------------

const CurveModel* Scenario::find_curve(std::string_view n) const {
    for (const CurveModel& c : curves)
        if (c.name == n) return &c;
    return nullptr;
}
const RuledSurfaceModel* Scenario::find_surface(std::string_view n) const {
    for (const RuledSurfaceModel& s : surfaces)
        if (s.name == n) return &s;
    return nullptr;
}
const ProductModel* Scenario::find_product(std::string_view n) const {
    for (const ProductModel& x : products)
        if (x.name == n) return &x;
    return nullptr;
}
const HypersurfaceModel* Scenario::find_hypersurface(std::string_view n) const {
    for (const HypersurfaceModel& t : hypersurfaces)
        if (t.name == n) return &t;
    return nullptr;
}
const NamedClass* Scenario::find_class(std::string_view n) const {
    auto it = classes.find(std::string(n));
    return it == classes.end() ? nullptr : &it->second;
}

std::string ExpectedLiteral::render() const {
    if (!is_tri) return std::to_string(num);
    switch (tri) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        default: return "unknown";
    }
}

Scenario load_scenario_text(const std::string& text, std::string name) {
    Loader ld;
    ld.sc.name = std::move(name);
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        bool blank = std::all_of(raw.begin(), raw.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (blank) continue;
        ld.line_in(raw, lineno);
    }
    ld.finish();
    return std::move(ld.sc);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read scenario file '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = path;
    std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos) base.erase(0, slash + 1);
    return load_scenario_text(buf.str(), base);
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

namespace {

void dump_curve(std::ostream& out, const Scenario& sc, const CurveModel& c) {
    out << "curve " << c.name << "\n";
    out << "  genus " << c.genus << "\n";
    for (const CurveGenerator& g : c.generators) {
        out << "  generator " << g.name << " degree " << g.degree;
        if (g.is_point) out << " point";
        out << "\n";
    }
    if (c.cover) {
        out << "  cover " << c.generators[c.cover->unit].name << " shifts";
        for (i64 t : c.cover->twists) out << " " << t;
        out << "\n";
    }
    for (const Vec& r : c.relations) out << "  relation " << render_vec(c, r) << "\n";
    out << "  canonical " << render_vec(c, c.canonical) << "\n";
    auto fit = sc.curve_facts.find(c.name);
    if (fit != sc.curve_facts.end()) {
        for (const FactDecl& fd : fit->second) {
            switch (fd.kind) {
                case FactDecl::Kind::ThetaEven: {
                    std::size_t gi = 0;
                    while (gi < fd.cls.size() && fd.cls[gi] == 0) ++gi;
                    out << "  fact theta-even " << c.generators[gi].name << "\n";
                    break;
                }
                case FactDecl::Kind::H0:
                    out << "  fact h0 " << render_vec(c, fd.cls) << " = " << fd.value << "\n";
                    break;
                case FactDecl::Kind::Noneffective:
                    out << "  fact noneffective " << render_vec(c, fd.cls) << "\n";
                    break;
                case FactDecl::Kind::Bpf:
                    out << "  fact bpf " << render_vec(c, fd.cls) << "\n";
                    break;
            }
        }
    }
    out << "end\n";
}

void dump_pipeline(std::ostream& out, const Pipeline& p) {
    out << "pipeline\n";
    out << "  sweep " << p.sweep << "\n";
    for (const CheckDecl& cd : p.checks)
        out << "  check " << cd.name << " " << render_expr(*cd.expr) << " == "
            << cd.expected.render() << "\n";
    for (const TableDecl& td : p.tables)
        out << "  table " << td.name << " " << render_expr(*td.expr) << " for " << td.var << " in "
            << td.lo << ".." << td.hi << "\n";
    if (p.verdict) {
        out << "  verdict " << p.verdict->hypersurface << " polarize " << p.verdict->polarization;
        if (p.verdict->boundary) out << " boundary " << *p.verdict->boundary;
        out << "\n";
    }
    for (const Expectation& ex : p.expectations)
        out << "  expect " << ex.key << " " << ex.value.render() << "\n";
    out << "end\n";
}

}  // namespace

std::string dump_scenario(const Scenario& sc) {
    std::ostringstream out;
    bool first = true;
    bool prev_class = false;
    for (const auto& [kind, name] : sc.item_order) {
        bool is_class = kind == Scenario::ItemKind::Class;
        if (!first && !(prev_class && is_class)) out << "\n";
        first = false;
        prev_class = is_class;
        switch (kind) {
            case Scenario::ItemKind::Curve: dump_curve(out, sc, *sc.find_curve(name)); break;
            case Scenario::ItemKind::Surface: {
                const RuledSurfaceModel& s = *sc.find_surface(name);
                out << "surface " << s.name << "\n";
                out << "  base " << s.base->name << "\n";
                out << "  twist " << render_vec(*s.base, s.twist) << "\n";
                out << "end\n";
                break;
            }
            case Scenario::ItemKind::Product: {
                const ProductModel& x = *sc.find_product(name);
                out << "product " << x.name << "\n";
                out << "  surface " << x.surface->name << "\n";
                out << "  curve " << x.curve->name << "\n";
                out << "end\n";
                break;
            }
            case Scenario::ItemKind::Hypersurface: {
                const HypersurfaceModel& t = *sc.find_hypersurface(name);
                out << "hypersurface " << t.name << "\n";
                out << "  ambient " << t.ambient->name << "\n";
                out << "  class " << sc.hypersurface_class_names.at(t.name) << "\n";
                for (const std::string& a : t.assumptions) out << "  assume " << a << "\n";
                out << "end\n";
                break;
            }
            case Scenario::ItemKind::Class:
                out << "class " << name << " = " << render_expr(*sc.class_exprs.at(name)) << "\n";
                break;
        }
    }
    if (sc.has_pipeline) {
        if (!first) out << "\n";
        dump_pipeline(out, sc.pipeline);
    }
    return out.str();
}

}  // namespace conecheck
