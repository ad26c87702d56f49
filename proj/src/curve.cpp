#include "conecheck/curve.hpp"

#include <algorithm>
#include <sstream>

#include "conecheck/rules.hpp"

namespace conecheck {

namespace {

// Shared recursion budget for the two mutually recursive rules (R6/R7 of the
// h0 chain call basepoint-freeness, whose drop test calls h0 back). Exhaustion
// yields Unknown and lets the enclosing rule chain fall through.
constexpr int kMaxDepth = 8;

struct Ctx {
    int depth = 0;
    Ctx deeper() const { return Ctx{depth + 1}; }
    bool exhausted() const { return depth >= kMaxDepth; }
};

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
    return r;
}

Vec vec_scale(i64 k, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(k, a[i]);
    return r;
}

Cert member_cert(bool member, const std::string& what) {
    Cert c = make_cert(rules::kLatticeMember, what);
    put(c, "value", member ? 1 : 0);
    return c;
}

Hval h0_impl(const DivisorClass& d, Ctx ctx);
Decision bpf_impl(const DivisorClass& d, Ctx ctx);

}  // namespace

std::optional<std::size_t> CurveModel::generator_index(std::string_view gname) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == gname) return i;
    return std::nullopt;
}

ZLattice CurveModel::relation_lattice() const { return ZLattice(relations, ngens()); }

DivisorClass make_class(const CurveModel& c, Vec coords) {
    if (coords.size() != c.ngens()) throw EngineError("class coordinates do not match generator count");
    DivisorClass d;
    d.curve = &c;
    d.coords.reserve(coords.size());
    for (i64 x : coords) d.coords.push_back(LinForm::constant(x));
    return d;
}

DivisorClass generator_class(const CurveModel& c, std::size_t gi) {
    Vec v(c.ngens(), 0);
    v.at(gi) = 1;
    return make_class(c, v);
}

DivisorClass zero_class(const CurveModel& c) { return make_class(c, Vec(c.ngens(), 0)); }

static void check_same_curve(const DivisorClass& a, const DivisorClass& b) {
    if (a.curve != b.curve) throw EngineError("divisor classes live on different curves");
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    check_same_curve(a, b);
    DivisorClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = r.coords[i] + b.coords[i];
    return r;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    check_same_curve(a, b);
    DivisorClass r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = r.coords[i] - b.coords[i];
    return r;
}

DivisorClass operator-(const DivisorClass& a) {
    DivisorClass r = a;
    for (auto& c : r.coords) c = -c;
    return r;
}

DivisorClass operator*(i64 k, const DivisorClass& a) {
    DivisorClass r = a;
    for (auto& c : r.coords) c = k * c;
    return r;
}

bool is_concrete(const DivisorClass& d) {
    for (const auto& c : d.coords)
        if (!c.is_constant()) return false;
    return true;
}

Vec concrete_coords(const DivisorClass& d) {
    Vec v;
    v.reserve(d.coords.size());
    for (const auto& c : d.coords) v.push_back(c.as_constant());
    return v;
}

DivisorClass at_parameter(const DivisorClass& d, i64 n) {
    DivisorClass r = d;
    for (auto& c : r.coords) c = LinForm::constant(c.is_constant() ? c.offset : c.eval(n));
    return r;
}

DivisorClass with_guard(const DivisorClass& d, i64 guard) {
    DivisorClass r = d;
    for (auto& c : r.coords)
        if (c.guard < guard) c.guard = guard;
    return r;
}

i64 class_guard(const DivisorClass& d) {
    i64 g = 1;
    for (const auto& c : d.coords) g = std::max(g, c.guard);
    return g;
}

std::string class_to_string(const DivisorClass& d) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < d.coords.size(); ++i) {
        const LinForm& c = d.coords[i];
        if (c.slope == 0 && c.offset == 0) continue;
        const std::string& g = d.curve->generators[i].name;
        if (c.is_constant()) {
            i64 v = c.offset;
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            i64 a = v < 0 ? -v : v;
            if (a != 1) os << a << "*";
            os << g;
        } else {
            if (!first) os << " + ";
            os << "(" << c.slope << "n" << (c.offset >= 0 ? "+" : "") << c.offset << ")*" << g;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

LinForm degree(const DivisorClass& d) {
    LinForm t = LinForm::constant(0);
    for (std::size_t i = 0; i < d.coords.size(); ++i) t = t + d.curve->generators[i].degree * d.coords[i];
    return t;
}

DivisorClass serre_dual(const DivisorClass& d) { return make_class(*d.curve, d.curve->canonical) - d; }

bool is_equivalent(const DivisorClass& a, const DivisorClass& b) {
    check_same_curve(a, b);
    DivisorClass diff = a - b;
    ZLattice lat = a.curve->relation_lattice();
    Vec slopes(diff.coords.size()), offsets(diff.coords.size());
    for (std::size_t i = 0; i < diff.coords.size(); ++i) {
        slopes[i] = diff.coords[i].slope;
        offsets[i] = diff.coords[i].offset;
    }
    // For a family, membership at every n >= guard is equivalent to membership
    // of the slope vector and of the offset vector (difference of two
    // consecutive instances is the slope vector).
    return lat.contains(slopes) && lat.contains(offsets);
}

namespace {

std::string hstat(const char* f, const DivisorClass& d, std::optional<i64> v) {
    std::ostringstream os;
    os << f << "(" << d.curve->name << ", " << class_to_string(d) << ")";
    if (v) os << " = " << *v;
    else os << " unknown";
    return os.str();
}

Hval h0_impl(const DivisorClass& d, Ctx ctx) {
    const CurveModel& C = *d.curve;
    Vec v = concrete_coords(d);
    i64 deg = degree(d).as_constant();
    ZLattice lat = C.relation_lattice();

    // R1: negative degree.
    if (deg < 0) {
        Cert c = make_cert(rules::kCurveH0Negative, hstat("h0", d, 0));
        put(c, "deg", deg);
        put(c, "value", 0);
        return known_hval(0, std::move(c));
    }
    // R2: degree zero; h0 is 1 exactly for the trivial class.
    if (deg == 0) {
        bool triv = lat.contains(v);
        Cert c = make_cert(rules::kCurveH0DegreeZero, hstat("h0", d, triv ? 1 : 0));
        put(c, "deg", 0);
        put(c, "trivial", triv ? 1 : 0);
        put(c, "value", triv ? 1 : 0);
        c.premises.push_back(member_cert(triv, class_to_string(d) + (triv ? " ~ 0" : " !~ 0")));
        return known_hval(triv ? 1 : 0, std::move(c));
    }
    // R3: degree beyond the canonical range, h1 = 0 and Riemann-Roch is exact.
    if (deg > 2 * C.genus - 2) {
        i64 val = deg - C.genus + 1;
        Cert c = make_cert(rules::kCurveH0RRRange, hstat("h0", d, val));
        put(c, "deg", deg);
        put(c, "genus", C.genus);
        put(c, "value", val);
        return known_hval(val, std::move(c));
    }
    // R4: declared facts, matched up to linear equivalence.
    for (const H0Fact& f : C.h0_facts) {
        if (!lat.contains(vec_sub(v, f.cls))) continue;
        Cert leaf = make_cert(rules::kFactH0, "declared h0 fact for " + class_to_string(make_class(C, f.cls)));
        put(leaf, "value", f.value);
        Cert c = make_cert(rules::kCurveH0Fact, hstat("h0", d, f.value));
        put(c, "value", f.value);
        c.premises.push_back(member_cert(true, class_to_string(d) + " ~ declared class"));
        c.premises.push_back(std::move(leaf));
        return known_hval(f.value, std::move(c));
    }
    for (const Vec& ne : C.noneffective_facts) {
        if (!lat.contains(vec_sub(v, ne))) continue;
        Cert leaf = make_cert(rules::kFactNoneffective,
                              "declared noneffective: " + class_to_string(make_class(C, ne)));
        put(leaf, "value", 0);
        Cert c = make_cert(rules::kCurveH0Fact, hstat("h0", d, 0));
        put(c, "value", 0);
        c.premises.push_back(member_cert(true, class_to_string(d) + " ~ declared class"));
        c.premises.push_back(std::move(leaf));
        return known_hval(0, std::move(c));
    }
    // A single declared point on a curve of positive genus: the point itself
    // is the only effective divisor in its class (two independent sections of
    // a degree-1 class would exhibit a degree-1 pencil, forcing genus 0).
    if (C.genus >= 1) {
        for (std::size_t pi = 0; pi < C.generators.size(); ++pi) {
            if (!C.generators[pi].is_point) continue;
            Vec pt(C.ngens(), 0);
            pt[pi] = 1;
            if (!lat.contains(vec_sub(v, pt))) continue;
            Cert c = make_cert(rules::kCurveH0Point, hstat("h0", d, 1));
            put(c, "genus", C.genus);
            put(c, "value", 1);
            c.premises.push_back(
                member_cert(true, class_to_string(d) + " ~ " + C.generators[pi].name));
            return known_hval(1, std::move(c));
        }
    }
    // R5: multiples of the declared cover's unit push down to a split bundle
    // on the line, where h0 is a sum of elementary terms.
    if (C.cover) {
        i64 ud = C.generators[C.cover->unit].degree;
        if (ud > 0 && deg % ud == 0) {
            i64 k = deg / ud;
            Vec unit(C.ngens(), 0);
            unit[C.cover->unit] = k;
            if (lat.contains(vec_sub(v, unit))) {
                i64 val = 0;
                for (i64 t : C.cover->twists) val += std::max<i64>(0, k + t + 1);
                Cert c = make_cert(rules::kCurveH0Cover, hstat("h0", d, val));
                put(c, "k", k);
                put(c, "ntwists", static_cast<i64>(C.cover->twists.size()));
                for (std::size_t i = 0; i < C.cover->twists.size(); ++i)
                    put(c, "twist" + std::to_string(i), C.cover->twists[i]);
                put(c, "value", val);
                c.premises.push_back(member_cert(true, class_to_string(d) + " ~ " + std::to_string(k) +
                                                           "*" + C.generators[C.cover->unit].name));
                return known_hval(val, std::move(c));
            }
        }
    }
    if (!ctx.exhausted()) {
        // R6: drop a general point: if |d + P| is free, P imposes one condition.
        for (std::size_t pi = 0; pi < C.ngens(); ++pi) {
            if (!C.generators[pi].is_point) continue;
            DivisorClass e = d + generator_class(C, pi);
            Decision bp = bpf_impl(e, ctx.deeper());
            if (bp.state != Tri::True) continue;
            Hval he = h0_impl(e, ctx.deeper());
            if (!he.known()) continue;
            i64 val = he.v() - 1;
            Cert c = make_cert(rules::kCurveH0BpfSub, hstat("h0", d, val));
            put(c, "value", val);
            c.premises.push_back(bp.cert);
            c.premises.push_back(he.cert);
            return known_hval(val, std::move(c));
        }
        // R7: Riemann-Roch completion through the Serre dual.
        DivisorClass dual = serre_dual(d);
        Hval hd = h0_impl(dual, ctx.deeper());
        if (hd.known()) {
            i64 val = deg - C.genus + 1 + hd.v();
            Cert c = make_cert(rules::kCurveH0Serre, hstat("h0", d, val));
            put(c, "deg", deg);
            put(c, "genus", C.genus);
            put(c, "value", val);
            c.premises.push_back(hd.cert);
            return known_hval(val, std::move(c));
        }
    }
    Cert c = make_cert(rules::kCurveH0Unknown, hstat("h0", d, std::nullopt));
    put(c, "depth", ctx.depth);
    return unknown_hval(std::move(c));
}

Decision bpf_impl(const DivisorClass& d, Ctx ctx) {
    const CurveModel& C = *d.curve;
    Vec v = concrete_coords(d);
    i64 deg = degree(d).as_constant();
    ZLattice lat = C.relation_lattice();
    std::string cls = class_to_string(d);

    // B1: declared basepoint-free, up to equivalence.
    for (const Vec& f : C.bpf_facts) {
        if (!lat.contains(vec_sub(v, f))) continue;
        Cert leaf = make_cert(rules::kFactBpf, "declared basepoint-free: " + class_to_string(make_class(C, f)));
        put(leaf, "value", 1);
        Cert c = make_cert(rules::kCurveBpfDeclared, "|" + cls + "| basepoint-free (declared)");
        put(c, "value", 1);
        c.premises.push_back(member_cert(true, cls + " ~ declared class"));
        c.premises.push_back(std::move(leaf));
        return Decision{Tri::True, std::move(c)};
    }
    // B2: degree at least 2g.
    if (deg >= 2 * C.genus) {
        Cert c = make_cert(rules::kCurveBpfBigDegree, "|" + cls + "| basepoint-free: degree >= 2g");
        put(c, "deg", deg);
        put(c, "genus", C.genus);
        put(c, "value", 1);
        return Decision{Tri::True, std::move(c)};
    }
    // B3: pullback of a free system under the declared cover.
    if (C.cover) {
        i64 ud = C.generators[C.cover->unit].degree;
        if (ud > 0 && deg % ud == 0) {
            i64 k = deg / ud;
            Vec unit(C.ngens(), 0);
            unit[C.cover->unit] = k;
            if (k >= 0 && lat.contains(vec_sub(v, unit))) {
                Cert c = make_cert(rules::kCurveBpfPullback,
                                   "|" + cls + "| basepoint-free: pullback of a free system");
                put(c, "k", k);
                put(c, "value", 1);
                c.premises.push_back(member_cert(true, cls + " ~ " + std::to_string(k) + "*" +
                                                           C.generators[C.cover->unit].name));
                return Decision{Tri::True, std::move(c)};
            }
        }
    }
    // B4: generic-point drop test over the declared points.
    if (ctx.exhausted()) {
        Cert c = make_cert(rules::kCurveBpfUnknown, "|" + cls + "|: recursion budget exhausted");
        put(c, "depth", ctx.depth);
        return Decision{Tri::Unknown, std::move(c)};
    }
    std::vector<std::size_t> points;
    for (std::size_t pi = 0; pi < C.ngens(); ++pi)
        if (C.generators[pi].is_point) points.push_back(pi);
    if (points.empty()) {
        Cert c = make_cert(rules::kCurveBpfUnknown, "|" + cls + "|: no declared points to test against");
        return Decision{Tri::Unknown, std::move(c)};
    }
    Hval hd = h0_impl(d, ctx.deeper());
    if (!hd.known()) {
        Cert c = make_cert(rules::kCurveBpfUnknown, "|" + cls + "|: h0 did not resolve");
        c.premises.push_back(hd.cert);
        return Decision{Tri::Unknown, std::move(c)};
    }
    if (hd.v() == 0) {
        Cert c = make_cert(rules::kCurveBpfEmptySystem, "|" + cls + "| is empty: every point is a base point");
        put(c, "value", 0);
        c.premises.push_back(hd.cert);
        return Decision{Tri::False, std::move(c)};
    }
    std::vector<Cert> drops;
    bool any_unknown = false;
    for (std::size_t pi : points) {
        const std::string& pname = C.generators[pi].name;
        Hval hp = h0_impl(d - generator_class(C, pi), ctx.deeper());
        if (!hp.known()) {
            any_unknown = true;
            continue;
        }
        Cert pair = make_cert(rules::kCurveBpfDropAt, "drop test at " + pname);
        put(pair, "h0", hd.v());
        put(pair, "h0_minus_point", hp.v());
        put(pair, "value", hp.v() == hd.v() - 1 ? 1 : 0);
        pair.premises.push_back(hd.cert);
        pair.premises.push_back(hp.cert);
        if (hp.v() == hd.v()) {
            Cert c = make_cert(rules::kCurveBpfBasePoint, "|" + cls + "| has a base point at " + pname);
            put(c, "value", 0);
            c.premises.push_back(std::move(pair));
            return Decision{Tri::False, std::move(c)};
        }
        if (hp.v() != hd.v() - 1)
            throw EngineError("inconsistent model: h0 dropped by more than one at a point for " + cls);
        drops.push_back(std::move(pair));
    }
    if (any_unknown) {
        Cert c = make_cert(rules::kCurveBpfUnknown, "|" + cls + "|: some drop test did not resolve");
        for (auto& dc : drops) c.premises.push_back(std::move(dc));
        return Decision{Tri::Unknown, std::move(c)};
    }
    Cert c = make_cert(rules::kCurveBpfPointDrop,
                       "|" + cls + "| basepoint-free: every declared point imposes one condition");
    put(c, "npoints", static_cast<i64>(points.size()));
    put(c, "value", 1);
    c.assumptions.push_back("declared-point-generators-behave-generically");
    for (auto& dc : drops) c.premises.push_back(std::move(dc));
    return Decision{Tri::True, std::move(c)};
}

}  // namespace

Hval curve_h0(const DivisorClass& d) { return h0_impl(d, Ctx{}); }

Hval curve_h1(const DivisorClass& d) {
    DivisorClass dual = serre_dual(d);
    Hval inner = h0_impl(dual, Ctx{});
    if (inner.known()) {
        Cert c = make_cert(rules::kCurveH1Dual, hstat("h1", d, inner.v()));
        put(c, "value", inner.v());
        c.premises.push_back(inner.cert);
        return known_hval(inner.v(), std::move(c));
    }
    Cert c = make_cert(rules::kCurveH1Dual, hstat("h1", d, std::nullopt));
    c.premises.push_back(inner.cert);
    return unknown_hval(std::move(c));
}

Hval curve_h(const DivisorClass& d, int i) {
    if (i < 0) throw EngineError("negative cohomological degree");
    if (i == 0) return curve_h0(d);
    if (i == 1) return curve_h1(d);
    Cert c = make_cert(rules::kCurveHTop, "h" + std::to_string(i) + " vanishes on a curve");
    put(c, "i", i);
    put(c, "value", 0);
    return known_hval(0, std::move(c));
}

Hval curve_chi(const DivisorClass& d) {
    i64 deg = degree(d).as_constant();
    i64 g = d.curve->genus;
    Cert c = make_cert(rules::kCurveChi, "chi(" + class_to_string(d) + ") = " +
                                             std::to_string(deg - g + 1) + " by Riemann-Roch");
    put(c, "deg", deg);
    put(c, "genus", g);
    put(c, "value", deg - g + 1);
    return known_hval(deg - g + 1, std::move(c));
}

Decision is_basepoint_free(const DivisorClass& d) { return bpf_impl(d, Ctx{}); }

std::optional<Cert> curve_h_zero_family(const DivisorClass& d, int i) {
    const std::string cls = class_to_string(d);
    if (i >= 2) {
        Cert c = make_cert(rules::kCurveFamilyHTop,
                           "h" + std::to_string(i) + "(" + d.curve->name + ", " + cls + ") = 0: curve");
        put(c, "i", i);
        put(c, "value", 0);
        return c;
    }
    LinForm deg = degree(d);
    deg.guard = std::max(deg.guard, class_guard(d));
    if (i == 0 && always_lt(deg, 0)) {
        Cert c = make_cert(rules::kCurveFamilyH0Zero,
                           "h0(" + d.curve->name + ", " + cls + ") = 0 for all n >= " + std::to_string(deg.guard));
        put(c, "value", 0);
        put(c, "guard", deg.guard);
        c.premises.push_back(ineq_cert(deg, 3, 0, "degree"));
        return c;
    }
    if (i == 1 && always_gt(deg, 2 * d.curve->genus - 2)) {
        Cert c = make_cert(rules::kCurveFamilyH1Zero,
                           "h1(" + d.curve->name + ", " + cls + ") = 0 for all n >= " + std::to_string(deg.guard));
        put(c, "value", 0);
        put(c, "guard", deg.guard);
        c.premises.push_back(ineq_cert(deg, 1, 2 * d.curve->genus - 2, "degree"));
        return c;
    }
    return std::nullopt;
}

CurveBaseLocus curve_base_locus(const DivisorClass& d) {
    const CurveModel& C = *d.curve;
    CurveBaseLocus out;
    Hval h = curve_h0(d);
    if (!h.known()) {
        out.state = CurveBaseLocus::State::Unknown;
        out.cert = make_cert(rules::kCurveBsUnknown, "base locus of |" + class_to_string(d) + "|: h0 unknown");
        out.cert.premises.push_back(h.cert);
        return out;
    }
    if (h.v() == 0) {
        out.state = CurveBaseLocus::State::WholeCurve;
        out.cert = make_cert(rules::kCurveBsWholeCurve,
                             "|" + class_to_string(d) + "| is empty: base locus is the whole curve");
        put(out.cert, "h0", 0);
        out.cert.premises.push_back(h.cert);
        return out;
    }

    std::vector<std::size_t> points;
    for (std::size_t pi = 0; pi < C.ngens(); ++pi)
        if (C.generators[pi].is_point) points.push_back(pi);

    DivisorClass cur = d;
    std::vector<Cert> steps;
    bool assumed_scan = false;
    for (int iter = 0; iter < 64; ++iter) {
        Decision bp = is_basepoint_free(cur);
        if (bp.state == Tri::True) {
            steps.push_back(bp.cert);
            break;
        }
        Hval hc = curve_h0(cur);
        if (!hc.known()) {
            out.state = CurveBaseLocus::State::Unknown;
            out.cert = make_cert(rules::kCurveBsUnknown,
                                 "base locus of |" + class_to_string(d) + "|: movable part did not resolve");
            out.cert.premises.push_back(hc.cert);
            return out;
        }
        bool extracted = false;
        for (std::size_t pi : points) {
            Hval hp = curve_h0(cur - generator_class(C, pi));
            if (!hp.known()) {
                out.state = CurveBaseLocus::State::Unknown;
                out.cert = make_cert(rules::kCurveBsUnknown, "base locus of |" + class_to_string(d) +
                                                                 "|: drop test did not resolve");
                out.cert.premises.push_back(hp.cert);
                return out;
            }
            if (hp.v() == hc.v()) {
                Cert step = make_cert(rules::kCurveBpfDropAt,
                                      "fixed point " + C.generators[pi].name + " in |" + class_to_string(cur) + "|");
                put(step, "h0", hc.v());
                put(step, "h0_minus_point", hp.v());
                put(step, "value", 0);
                step.premises.push_back(hc.cert);
                step.premises.push_back(hp.cert);
                steps.push_back(std::move(step));
                if (std::find(out.points.begin(), out.points.end(), pi) == out.points.end())
                    out.points.push_back(pi);
                cur = cur - generator_class(C, pi);
                extracted = true;
                break;
            }
        }
        if (!extracted) {
            assumed_scan = true;  // every declared point drops; freeness not structural
            break;
        }
    }
    out.state = CurveBaseLocus::State::Resolved;
    out.cert = make_cert(rules::kCurveBsSupport, "base locus support of |" + class_to_string(d) + "|");
    put(out.cert, "value", static_cast<i64>(out.points.size()));
    out.cert.assumptions.push_back("base-locus-supported-on-declared-points");
    if (assumed_scan) out.cert.assumptions.push_back("declared-point-generators-behave-generically");
    for (auto& s : steps) out.cert.premises.push_back(std::move(s));
    return out;
}

ThetaInfo theta_classification(CurveModel& c, std::size_t theta_gen) {
    if (c.genus != 2) throw EngineError("theta classification requires a genus-2 model");
    if (theta_gen >= c.ngens()) throw EngineError("theta generator index out of range");
    Vec theta(c.ngens(), 0);
    theta[theta_gen] = 1;
    ZLattice lat = c.relation_lattice();
    if (!lat.contains(vec_sub(vec_scale(2, theta), c.canonical)))
        throw EngineError("theta classification: 2*" + c.generators[theta_gen].name +
                          " is not the canonical class");
    for (const H0Fact& f : c.h0_facts) {
        if (lat.contains(vec_sub(theta, f.cls)) && f.value >= 1)
            throw EngineError("theta classification rejects an odd characteristic: declared h0(" +
                              c.generators[theta_gen].name + ") = " + std::to_string(f.value));
    }

    bool already = false;
    for (const H0Fact& f : c.h0_facts)
        if (f.cls == theta && f.value == 0) already = true;
    if (!already) {
        c.h0_facts.push_back({theta, 0});
        c.noneffective_facts.push_back(theta);
    }

    ThetaInfo info;
    i64 g = c.genus;
    info.total = i64(1) << (2 * g);
    info.odd = (i64(1) << (g - 1)) * ((i64(1) << g) - 1);
    info.even = (i64(1) << (g - 1)) * ((i64(1) << g) + 1);
    info.cert = make_cert(rules::kCurveTheta, "even theta characteristic on " + c.name +
                                                  ": h0 = 0 installed; counts 16 = 6 odd + 10 even");
    put(info.cert, "genus", g);
    put(info.cert, "total", info.total);
    put(info.cert, "odd", info.odd);
    put(info.cert, "even", info.even);
    put(info.cert, "value", info.even);
    info.cert.premises.push_back(member_cert(true, "2*" + c.generators[theta_gen].name + " ~ canonical"));
    return info;
}

}  // namespace conecheck
