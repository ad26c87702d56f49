#include "conecheck/product.hpp"

#include <algorithm>

#include "conecheck/rules.hpp"

namespace conecheck {

namespace {

void require_same_product(const ProductClass& a, const ProductClass& b) {
    if (a.product != b.product || a.product == nullptr)
        throw EngineError("product class arithmetic across different ambient threefolds");
}

std::string hlabel(const ProductClass& c, int i) {
    return "h" + std::to_string(i) + "(" + c.product->name + ", " + product_class_to_string(c) + ")";
}

}  // namespace

ProductClass make_product_class(const ProductModel& x, SurfaceClass s, DivisorClass b) {
    if (s.surface != x.surface || b.curve != x.curve)
        throw EngineError("product class parts must live on the declared factors");
    return ProductClass{&x, std::move(s), std::move(b)};
}

ProductClass zero_product_class(const ProductModel& x) {
    return make_product_class(x, zero_surface_class(*x.surface), zero_class(*x.curve));
}

ProductClass canonical_product_class(const ProductModel& x) {
    return make_product_class(x, canonical_class(*x.surface), make_class(*x.curve, x.curve->canonical));
}

ProductClass operator+(const ProductClass& a, const ProductClass& b) {
    require_same_product(a, b);
    return ProductClass{a.product, a.s_part + b.s_part, a.b_part + b.b_part};
}

ProductClass operator-(const ProductClass& a, const ProductClass& b) {
    require_same_product(a, b);
    return ProductClass{a.product, a.s_part - b.s_part, a.b_part - b.b_part};
}

ProductClass operator-(const ProductClass& a) { return ProductClass{a.product, -a.s_part, -a.b_part}; }

ProductClass operator*(i64 k, const ProductClass& a) {
    return ProductClass{a.product, k * a.s_part, k * a.b_part};
}

bool product_is_concrete(const ProductClass& c) {
    return surface_is_concrete(c.s_part) && is_concrete(c.b_part);
}

ProductClass product_at_parameter(const ProductClass& c, i64 n) {
    return ProductClass{c.product, surface_at_parameter(c.s_part, n), at_parameter(c.b_part, n)};
}

i64 product_class_guard(const ProductClass& c) {
    return std::max(surface_class_guard(c.s_part), class_guard(c.b_part));
}

std::string product_class_to_string(const ProductClass& c) {
    return "(" + surface_class_to_string(c.s_part) + ", " + class_to_string(c.b_part) + ")";
}

bool product_is_equivalent(const ProductClass& a, const ProductClass& b) {
    require_same_product(a, b);
    return surface_is_equivalent(a.s_part, b.s_part) && is_equivalent(a.b_part, b.b_part);
}

Hval kunneth_h(const ProductClass& c, int i) {
    if (i < 0 || i > 3) {
        Cert cert = make_cert(rules::kProdHTop, hlabel(c, i) + " = 0 beyond the dimension of the threefold");
        put(cert, "i", i);
        put(cert, "value", 0);
        return known_hval(0, std::move(cert));
    }
    Cert cert = make_cert(rules::kProdKunneth, hlabel(c, i) + " by the Kunneth convolution");
    put(cert, "i", i);
    i64 total = 0;
    std::vector<Cert> unresolved;
    for (int p = 0; p <= 2; ++p) {
        int q = i - p;
        if (q < 0 || q > 1) continue;
        Hval hs = surface_h(c.s_part, p);
        Hval hb = curve_h(c.b_part, q);
        // A vanishing factor kills the term even if the other never resolves.
        std::optional<i64> term;
        if (hs.known() && hs.v() == 0)
            term = 0;
        else if (hb.known() && hb.v() == 0)
            term = 0;
        else if (hs.known() && hb.known())
            term = checked_mul(hs.v(), hb.v());
        if (!term) {
            Cert u = make_cert(rules::kProdKunnethUnknown,
                               hlabel(c, i) + ": term (" + std::to_string(p) + "," + std::to_string(q) +
                                   ") did not resolve");
            put(u, "p", p);
            put(u, "q", q);
            u.premises.push_back(hs.cert);
            u.premises.push_back(hb.cert);
            unresolved.push_back(std::move(u));
            continue;
        }
        Cert node = make_cert(rules::kProdKunnethTerm,
                              "term (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")");
        put(node, "p", p);
        put(node, "q", q);
        if (hs.known()) put(node, "h_surface", hs.v());
        if (hb.known()) put(node, "h_curve", hb.v());
        // Attach only the load-bearing factors: a known zero kills the term
        // on its own, and an unresolved other side must not pollute replay.
        if (hs.known()) node.premises.push_back(hs.cert);
        if (hb.known()) node.premises.push_back(hb.cert);
        put(node, "value", *term);
        total = checked_add(total, *term);
        cert.premises.push_back(std::move(node));
    }
    if (!unresolved.empty()) {
        Cert u = make_cert(rules::kProdKunnethUnknown, hlabel(c, i) + " did not resolve");
        u.premises = std::move(unresolved);
        return unknown_hval(std::move(u));
    }
    put(cert, "value", total);
    return known_hval(total, std::move(cert));
}

Hval product_chi(const ProductClass& c) {
    i64 total = 0;
    Cert cert = make_cert(rules::kProdChi, "chi(" + c.product->name + ", " +
                                               product_class_to_string(c) + ") by alternating sum");
    for (int i = 0; i <= 3; ++i) {
        Hval h = kunneth_h(c, i);
        if (!h.known()) {
            Cert u = make_cert(rules::kProdKunnethUnknown, "chi did not resolve in degree " + std::to_string(i));
            u.premises.push_back(h.cert);
            return unknown_hval(std::move(u));
        }
        total = checked_add(total, (i % 2 == 0) ? h.v() : -h.v());
        cert.premises.push_back(h.cert);
    }
    put(cert, "value", total);
    return known_hval(total, std::move(cert));
}

std::optional<Cert> kunneth_zero_family(const ProductClass& c, int i) {
    if (i < 0 || i > 3) {
        Cert cert = make_cert(rules::kProdHTop, hlabel(c, i) + " = 0 beyond the dimension of the threefold");
        put(cert, "i", i);
        put(cert, "guard", product_class_guard(c));
        put(cert, "value", 0);
        return cert;
    }
    Cert cert = make_cert(rules::kProdFamilyKunneth, hlabel(c, i) + " = 0 for the whole family");
    put(cert, "i", i);
    i64 guard = product_class_guard(c);
    for (int p = 0; p <= 2; ++p) {
        int q = i - p;
        if (q < 0 || q > 1) continue;
        std::optional<Cert> kill = surface_h_zero_family(c.s_part, p);
        if (!kill) kill = curve_h_zero_family(c.b_part, q);
        if (!kill) return std::nullopt;
        guard = std::max(guard, get_data(*kill, "guard"));
        Cert node = make_cert(rules::kProdKunnethTerm, "term (p,q)=(" + std::to_string(p) + "," +
                                                           std::to_string(q) + ") vanishes on one factor");
        put(node, "p", p);
        put(node, "q", q);
        put(node, "value", 0);
        node.premises.push_back(std::move(*kill));
        cert.premises.push_back(std::move(node));
    }
    put(cert, "guard", guard);
    put(cert, "value", 0);
    return cert;
}

Hval triple_intersect(const ProductClass& c1, const ProductClass& c2, const ProductClass& c3) {
    require_same_product(c1, c2);
    require_same_product(c1, c3);
    if (!product_is_concrete(c1) || !product_is_concrete(c2) || !product_is_concrete(c3))
        throw EngineError("triple intersection numbers are defined for concrete classes only");
    Hval i12 = surface_intersect(c1.s_part, c2.s_part);
    Hval i13 = surface_intersect(c1.s_part, c3.s_part);
    Hval i23 = surface_intersect(c2.s_part, c3.s_part);
    i64 d1 = degree(c1.b_part).as_constant();
    i64 d2 = degree(c2.b_part).as_constant();
    i64 d3 = degree(c3.b_part).as_constant();
    i64 value = checked_add(checked_add(checked_mul(i12.v(), d3), checked_mul(i13.v(), d2)),
                            checked_mul(i23.v(), d1));
    Cert cert = make_cert(rules::kProdTriple, product_class_to_string(c1) + " . " +
                                                  product_class_to_string(c2) + " . " +
                                                  product_class_to_string(c3) + " = " + std::to_string(value));
    put(cert, "s12", i12.v());
    put(cert, "s13", i13.v());
    put(cert, "s23", i23.v());
    put(cert, "deg_b1", d1);
    put(cert, "deg_b2", d2);
    put(cert, "deg_b3", d3);
    put(cert, "value", value);
    cert.premises = {i12.cert, i13.cert, i23.cert};
    return known_hval(value, std::move(cert));
}

RestrictedClass restrict_to_hypersurface(const HypersurfaceModel& t, ProductClass g) {
    if (g.product != t.ambient)
        throw EngineError("restriction requires a class on the ambient threefold of " + t.name);
    return RestrictedClass{&t, std::move(g)};
}

AdjunctionResult adjunction_canonical(const HypersurfaceModel& t) {
    ProductClass kx = canonical_product_class(*t.ambient);
    ProductClass kt = kx + t.cls;
    AdjunctionResult out{RestrictedClass{&t, kt}, make_cert(rules::kProdAdjunction,
                                                            "K_" + t.name + " = (K_" + t.ambient->name +
                                                                " + " + product_class_to_string(t.cls) +
                                                                ")|_" + t.name + " = " +
                                                                product_class_to_string(kt) + "|_" + t.name)};
    return out;
}

IdealSequence twist_ideal_sequence(const HypersurfaceModel& t, const ProductClass& g) {
    if (g.product != t.ambient)
        throw EngineError("ideal sequence requires a class on the ambient threefold of " + t.name);
    IdealSequence seq{g - t.cls, g,
                      make_cert(rules::kProdSES, "0 -> " + product_class_to_string(g - t.cls) + " -> " +
                                                     product_class_to_string(g) + " -> restriction to " +
                                                     t.name + " -> 0")};
    return seq;
}

LesValue les_h(const RestrictedClass& rc, int i) {
    const HypersurfaceModel& t = *rc.hyp;
    IdealSequence seq = twist_ideal_sequence(t, rc.ambient_class);
    Hval mi = kunneth_h(seq.mid, i);
    Hval li = kunneth_h(seq.left, i);
    Hval mi1 = kunneth_h(seq.mid, i + 1);
    Hval li1 = kunneth_h(seq.left, i + 1);
    std::string label = "h" + std::to_string(i) + "(" + t.name + ", " +
                        product_class_to_string(rc.ambient_class) + "|_" + t.name + ")";
    LesValue out;

    // Pattern 1: the group is squeezed between two vanishing neighbours.
    if (mi.known() && mi.v() == 0 && li1.known() && li1.v() == 0) {
        out.kind = LesValue::Kind::Exact;
        out.value = 0;
        out.lo = out.hi = 0;
        out.cert = make_cert(rules::kProdLesP1, label + " = 0: both neighbouring ambient groups vanish");
        put(out.cert, "i", i);
        put(out.cert, "value", 0);
        out.cert.premises = {seq.cert, mi.cert, li1.cert};
        return out;
    }
    // Pattern 2: the left groups vanish in degrees i and i+1, so restriction
    // is an isomorphism from the middle.
    if (li.known() && li.v() == 0 && li1.known() && li1.v() == 0 && mi.known()) {
        out.kind = LesValue::Kind::Exact;
        out.value = mi.v();
        out.lo = out.hi = mi.v();
        out.cert = make_cert(rules::kProdLesP2, label + " = " + std::to_string(mi.v()) +
                                                    ": restriction from the ambient space is bijective");
        put(out.cert, "i", i);
        put(out.cert, "value", mi.v());
        out.cert.premises = {seq.cert, li.cert, mi.cert, li1.cert};
        return out;
    }
    // Interval from the four neighbours, possibly pinched to a point.
    if (mi.known() && li.known() && mi1.known() && li1.known()) {
        i64 lo = std::max<i64>(0, mi.v() - li.v()) + std::max<i64>(0, li1.v() - mi1.v());
        i64 hi = mi.v() + li1.v();
        Cert cert = make_cert(lo == hi ? rules::kProdLesPinch : rules::kProdLesInterval,
                              label + (lo == hi ? " = " + std::to_string(lo) + ": the interval pinches"
                                               : " lies in [" + std::to_string(lo) + ", " +
                                                     std::to_string(hi) + "]"));
        put(cert, "i", i);
        put(cert, "lo", lo);
        put(cert, "hi", hi);
        put(cert, "value", lo);  // a certified lower bound; exact when it meets hi
        cert.premises = {seq.cert, li.cert, mi.cert, li1.cert, mi1.cert};
        out.kind = lo == hi ? LesValue::Kind::Exact : LesValue::Kind::Interval;
        out.value = lo;
        out.lo = lo;
        out.hi = hi;
        out.cert = std::move(cert);
        return out;
    }
    out.kind = LesValue::Kind::Unknown;
    out.cert = make_cert(rules::kProdLesUnknown, label + ": ambient groups did not resolve");
    if (!mi.known()) out.cert.premises.push_back(mi.cert);
    if (!li.known()) out.cert.premises.push_back(li.cert);
    if (!mi1.known()) out.cert.premises.push_back(mi1.cert);
    if (!li1.known()) out.cert.premises.push_back(li1.cert);
    return out;
}

std::optional<Cert> les_zero_family(const HypersurfaceModel& t, const ProductClass& g, int i) {
    IdealSequence seq = twist_ideal_sequence(t, g);
    auto mid_zero = kunneth_zero_family(seq.mid, i);
    if (!mid_zero) return std::nullopt;
    auto left_zero = kunneth_zero_family(seq.left, i + 1);
    if (!left_zero) return std::nullopt;
    Cert cert = make_cert(rules::kProdFamilyLes,
                          "h" + std::to_string(i) + "(" + t.name + ", .) = 0 for the whole family: " +
                              "middle degree " + std::to_string(i) + " and left degree " +
                              std::to_string(i + 1) + " both vanish");
    put(cert, "i", i);
    put(cert, "guard", std::max(get_data(*mid_zero, "guard"), get_data(*left_zero, "guard")));
    put(cert, "value", 0);
    cert.premises.push_back(seq.cert);
    cert.premises.push_back(std::move(*mid_zero));
    cert.premises.push_back(std::move(*left_zero));
    return cert;
}

Certification connectedness_certificate(const HypersurfaceModel& t) {
    const ProductClass& c = t.cls;
    Decision nef = surface_is_nef(c.s_part);
    i64 degb = degree(c.b_part).as_constant();
    Hval cube = triple_intersect(c, c, c);
    bool ok = nef.is_true() && degb > 0 && cube.v() > 0;
    if (!ok) {
        Cert cert = make_cert(rules::kProdConnectedNo,
                              t.name + ": connectedness not certified (class is not nef and big)");
        put(cert, "deg_curve_part", degb);
        put(cert, "cube", cube.v());
        cert.premises = {nef.cert, cube.cert};
        return Certification{false, std::move(cert)};
    }
    Cert cert = make_cert(rules::kProdConnected,
                          t.name + " is connected: its class is nef on both factors and numerically big");
    put(cert, "deg_curve_part", degb);
    put(cert, "cube", cube.v());
    put(cert, "value", 1);
    cert.premises = {nef.cert, cube.cert};
    return Certification{true, std::move(cert)};
}

namespace {

// Exact h0 comparison helper for the transversality bookkeeping: returns the
// pair of values when both sides resolve.
struct H0Pair {
    bool ok = false;
    i64 a = 0, b = 0;
    Cert ca, cb;
};

H0Pair h0_pair(const DivisorClass& x, const DivisorClass& y) {
    Hval hx = curve_h0(x), hy = curve_h0(y);
    H0Pair out;
    out.ca = hx.cert;
    out.cb = hy.cert;
    if (hx.known() && hy.known()) {
        out.ok = true;
        out.a = hx.v();
        out.b = hy.v();
    }
    return out;
}

Certification not_certified(const HypersurfaceModel& t, const std::string& reason,
                            std::vector<Cert> premises) {
    Cert cert = make_cert(rules::kProdSmoothNo, t.name + ": smoothness not certified: " + reason);
    cert.premises = std::move(premises);
    return Certification{false, std::move(cert)};
}

}  // namespace

Certification smoothness_certificate(const HypersurfaceModel& t) {
    const SurfaceClass& d1 = t.cls.s_part;
    const DivisorClass& d2 = t.cls.b_part;
    const RuledSurfaceModel& S = *t.ambient->surface;
    const CurveModel& C = *S.base;

    Decision free2 = is_basepoint_free(d2);
    Hval h2 = curve_h0(d2);
    if (free2.state != Tri::True || !h2.known() || h2.v() == 0)
        return not_certified(t, "the second-factor system is not known to be free and nonempty",
                             {free2.cert});

    SurfaceBaseLocus bs = surface_base_locus(d1);
    if (bs.state != SurfaceBaseLocus::State::Resolved)
        return not_certified(t, "the surface-side base locus did not resolve", {bs.cert});

    if (bs.region.empty()) {
        Cert cert = make_cert(rules::kProdSmoothFree,
                              t.name + ": the defining system is basepoint-free, so a general member "
                                       "is smooth");
        put(cert, "value", 1);
        cert.assumptions.push_back("bertini-general-member");
        cert.premises = {bs.cert, free2.cert, h2.cert};
        return Certification{true, std::move(cert)};
    }

    bool single_point = !bs.region.full && !bs.region.has_e && !bs.region.has_einf &&
                        bs.region.fibers.empty() && bs.region.points.size() == 1;
    if (!single_point)
        return not_certified(t, "the surface-side base locus is larger than a single point", {bs.cert});

    const RegionPoint& q = bs.region.points[0];
    DivisorClass Q = generator_class(C, q.point);
    DivisorClass A = S.twist_class();
    i64 a = d1.e_coeff.as_constant();
    if (a < 1)
        return not_certified(t, "the base point sits on a class with no section direction", {bs.cert});

    // The factor whose sections cut the base-point section, and the adjacent
    // factor that must move transversally across it.
    DivisorClass pinned = q.section == Section::Infinity ? d1.base_part : d1.base_part - a * A;
    DivisorClass moving = q.section == Section::Infinity ? d1.base_part - A
                                                         : d1.base_part - (a - 1) * A;

    H0Pair base = h0_pair(pinned, pinned - Q);
    H0Pair order = h0_pair(pinned - Q, pinned - 2 * Q);
    H0Pair trans = h0_pair(moving, moving - Q);
    if (!base.ok || !order.ok || !trans.ok)
        return not_certified(t, "a transversality dimension did not resolve", {bs.cert});

    // The pinned factor must vanish at the point to order exactly one, and the
    // adjacent factor must move off the point.
    bool shape_ok = base.a >= 1 && base.b == base.a && order.b == order.a - 1 && trans.a >= 1 &&
                    trans.b == trans.a - 1;
    if (!shape_ok)
        return not_certified(t, "the transversality bookkeeping fails at the base point",
                             {bs.cert, base.ca, base.cb, order.cb, trans.ca, trans.cb});

    Cert cert = make_cert(rules::kProdSmoothPoint,
                          t.name + ": one base point on the " +
                              (q.section == Section::Infinity ? std::string("infinity") : std::string("negative")) +
                              " section over " + C.generators[q.point].name +
                              "; a general member is smooth there and free elsewhere");
    put(cert, "h0_pinned", base.a);
    put(cert, "h0_pinned_minus", base.b);
    put(cert, "h0_pinned_minus2", order.b);
    put(cert, "h0_moving", trans.a);
    put(cert, "h0_moving_minus", trans.b);
    put(cert, "value", 1);
    cert.assumptions.push_back("bertini-general-member");
    cert.assumptions.push_back("fiber-section-transversality");
    cert.premises = {bs.cert, base.ca, base.cb, order.cb, trans.ca, trans.cb, free2.cert, h2.cert};
    return Certification{true, std::move(cert)};
}

Certification boundary_smoothness_certificate(const HypersurfaceModel& t) {
    const SurfaceClass& d1 = t.cls.s_part;
    const DivisorClass& d2 = t.cls.b_part;

    Certification inner = smoothness_certificate(t);
    if (!inner.certified) {
        Cert cert = make_cert(rules::kProdSmoothBoundaryNo,
                              t.name + ": boundary smoothness not certified: the hypersurface itself "
                                       "was not certified");
        cert.premises = {inner.cert};
        return Certification{false, std::move(cert)};
    }

    // The boundary lives on E x B; the restricted system is spanned by the
    // trace of the extreme pushforward factor against the full second factor.
    DivisorClass trace = restrict_to_section(d1, Section::Negative);
    CurveBaseLocus tb = curve_base_locus(trace);
    Decision free2 = is_basepoint_free(d2);
    if (tb.state != CurveBaseLocus::State::Resolved || !tb.points.empty() ||
        free2.state != Tri::True) {
        Cert cert = make_cert(rules::kProdSmoothBoundaryNo,
                              t.name + ": boundary smoothness not certified: the restricted system on "
                                       "the negative section is not known to be free");
        cert.premises = {tb.cert, free2.cert};
        return Certification{false, std::move(cert)};
    }

    Cert cert = make_cert(rules::kProdSmoothBoundary,
                          t.name + ": the boundary section cut is smooth: the restricted system on the "
                                   "negative section is free on both factors");
    put(cert, "value", 1);
    cert.assumptions.push_back("bertini-general-member");
    cert.premises = {inner.cert, tb.cert, free2.cert};
    return Certification{true, std::move(cert)};
}

Vec product_coord_vec(const ProductClass& c) {
    if (!product_is_concrete(c)) throw EngineError("lattice coordinates require a concrete class");
    Vec out;
    out.push_back(c.s_part.e_coeff.as_constant());
    for (const LinForm& f : c.s_part.base_part.coords) out.push_back(f.as_constant());
    for (const LinForm& f : c.b_part.coords) out.push_back(f.as_constant());
    return out;
}

std::vector<Vec> hypersurface_relation_vectors(const HypersurfaceModel& t) {
    const CurveModel& C = *t.ambient->surface->base;
    const CurveModel& B = *t.ambient->curve;
    std::size_t dim = 1 + C.ngens() + B.ngens();
    std::vector<Vec> out;
    for (const Vec& r : C.relations) {
        Vec v(dim, 0);
        for (std::size_t i = 0; i < r.size(); ++i) v[1 + i] = r[i];
        out.push_back(std::move(v));
    }
    for (const Vec& r : B.relations) {
        Vec v(dim, 0);
        for (std::size_t i = 0; i < r.size(); ++i) v[1 + C.ngens() + i] = r[i];
        out.push_back(std::move(v));
    }
    for (const Vec& r : t.restriction_kernel) {
        if (r.size() != dim) throw EngineError("restriction kernel vector has the wrong width");
        out.push_back(r);
    }
    return out;
}

}  // namespace conecheck
