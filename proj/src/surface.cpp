#include "conecheck/surface.hpp"

#include <algorithm>

#include "conecheck/rules.hpp"

namespace conecheck {

namespace {

void require_same_surface(const SurfaceClass& a, const SurfaceClass& b) {
    if (a.surface != b.surface || a.surface == nullptr)
        throw EngineError("surface class arithmetic across different surfaces");
}

i64 concrete_e(const SurfaceClass& c) {
    if (!c.e_coeff.is_constant())
        throw EngineError("operation requires a concrete class: " + surface_class_to_string(c));
    return c.e_coeff.as_constant();
}

}  // namespace

SurfaceClass make_surface_class(const RuledSurfaceModel& s, LinForm e_coeff, DivisorClass base_part) {
    if (base_part.curve != s.base)
        throw EngineError("base part of a surface class must live on the base curve");
    return SurfaceClass{&s, e_coeff, std::move(base_part)};
}

SurfaceClass section_class(const RuledSurfaceModel& s) {
    return make_surface_class(s, LinForm::constant(1), zero_class(*s.base));
}

SurfaceClass pullback_class(const RuledSurfaceModel& s, DivisorClass d) {
    return make_surface_class(s, LinForm::constant(0), std::move(d));
}

SurfaceClass fiber_class(const RuledSurfaceModel& s) {
    for (std::size_t gi = 0; gi < s.base->generators.size(); ++gi)
        if (s.base->generators[gi].is_point)
            return pullback_class(s, generator_class(*s.base, gi));
    throw EngineError("surface " + s.name + ": base curve declares no point generator for a fiber");
}

SurfaceClass canonical_class(const RuledSurfaceModel& s) {
    DivisorClass kc = make_class(*s.base, s.base->canonical);
    return make_surface_class(s, LinForm::constant(-2), kc - s.twist_class());
}

SurfaceClass zero_surface_class(const RuledSurfaceModel& s) {
    return make_surface_class(s, LinForm::constant(0), zero_class(*s.base));
}

SurfaceClass operator+(const SurfaceClass& a, const SurfaceClass& b) {
    require_same_surface(a, b);
    return SurfaceClass{a.surface, a.e_coeff + b.e_coeff, a.base_part + b.base_part};
}

SurfaceClass operator-(const SurfaceClass& a, const SurfaceClass& b) {
    require_same_surface(a, b);
    return SurfaceClass{a.surface, a.e_coeff - b.e_coeff, a.base_part - b.base_part};
}

SurfaceClass operator-(const SurfaceClass& a) {
    return SurfaceClass{a.surface, -a.e_coeff, -a.base_part};
}

SurfaceClass operator*(i64 k, const SurfaceClass& a) {
    return SurfaceClass{a.surface, k * a.e_coeff, k * a.base_part};
}

bool surface_is_concrete(const SurfaceClass& c) {
    return c.e_coeff.is_constant() && is_concrete(c.base_part);
}

SurfaceClass surface_at_parameter(const SurfaceClass& c, i64 n) {
    return SurfaceClass{c.surface, LinForm::constant(c.e_coeff.eval(n)), at_parameter(c.base_part, n)};
}

i64 surface_class_guard(const SurfaceClass& c) {
    return std::max(c.e_coeff.guard, class_guard(c.base_part));
}

std::string surface_class_to_string(const SurfaceClass& c) {
    std::string out;
    if (!(c.e_coeff == LinForm::constant(0))) {
        std::string e = to_string(c.e_coeff);
        if (e == "1")
            out = "E";
        else if (e == "-1")
            out = "-E";
        else if (c.e_coeff.is_constant())
            out = e + "*E";
        else
            out = "(" + e + ")*E";
    }
    std::string base = class_to_string(c.base_part);
    if (base != "0") {
        if (!out.empty()) out += " + ";
        out += "pi*(" + base + ")";
    }
    return out.empty() ? "0" : out;
}

bool surface_is_equivalent(const SurfaceClass& a, const SurfaceClass& b) {
    require_same_surface(a, b);
    if (a.e_coeff.slope != b.e_coeff.slope || a.e_coeff.offset != b.e_coeff.offset) return false;
    return is_equivalent(a.base_part, b.base_part);
}

Hval surface_intersect(const SurfaceClass& a, const SurfaceClass& b) {
    require_same_surface(a, b);
    if (!surface_is_concrete(a) || !surface_is_concrete(b))
        throw EngineError("intersection numbers are defined for concrete classes only");
    i64 a1 = concrete_e(a), a2 = concrete_e(b);
    i64 dm1 = degree(a.base_part).as_constant(), dm2 = degree(b.base_part).as_constant();
    i64 dega = a.surface->twist_degree();
    i64 value = checked_add(checked_sub(checked_mul(a1, dm2), checked_mul(checked_mul(a1, a2), dega)),
                            checked_mul(a2, dm1));
    Cert c = make_cert(rules::kSurfIntersect, "(" + surface_class_to_string(a) + ") . (" +
                                                  surface_class_to_string(b) + ") = " + std::to_string(value));
    put(c, "a1", a1);
    put(c, "deg_m1", dm1);
    put(c, "a2", a2);
    put(c, "deg_m2", dm2);
    put(c, "deg_twist", dega);
    put(c, "value", value);
    return known_hval(value, std::move(c));
}

Hval surface_self_intersect(const SurfaceClass& a) { return surface_intersect(a, a); }

DivisorClass restrict_to_section(const SurfaceClass& c, Section s) {
    if (s == Section::Infinity) return c.base_part;
    DivisorClass out = c.base_part;
    const Vec& tw = c.surface->twist;
    for (std::size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] = out.coords[i] - tw[i] * c.e_coeff;
    return out;
}

std::vector<Summand> pushforward_summands(const SurfaceClass& c) {
    i64 a = concrete_e(c);
    if (a < 0) throw EngineError("pushforward summands exist only for nonnegative section multiplicity");
    std::vector<Summand> out;
    DivisorClass tw = c.surface->twist_class();
    for (i64 k = 0; k <= a; ++k) out.push_back({k, c.base_part - k * tw});
    return out;
}

namespace {

Hval surface_h_impl(const SurfaceClass& c, int i, int depth) {
    const RuledSurfaceModel& S = *c.surface;
    if (depth > 2) throw EngineError("surface cohomology recursion failed to ground");
    if (!surface_is_concrete(c))
        throw EngineError("surface_h requires a concrete class; use surface_h_zero_family for families");

    if (i < 0 || i > 2) {
        Cert cert = make_cert(rules::kSurfH2Relative,
                              "h" + std::to_string(i) + "(" + S.name + ", " + surface_class_to_string(c) +
                                  ") = 0 beyond the dimension of a surface");
        put(cert, "i", i);
        put(cert, "value", 0);
        return known_hval(0, std::move(cert));
    }

    i64 a = concrete_e(c);
    std::string label = "h" + std::to_string(i) + "(" + S.name + ", " + surface_class_to_string(c) + ")";

    if (a >= 0) {
        if (i == 2) {
            // The fibers are lines: R^1 of the projection vanishes for the
            // split pushforward, so h2 comes from h2 on the base curve: zero.
            Cert cert = make_cert(rules::kSurfH2Relative, label + " = 0: pushforward to the base curve");
            put(cert, "e_mult", a);
            put(cert, "value", 0);
            return known_hval(0, std::move(cert));
        }
        std::vector<Summand> parts = pushforward_summands(c);
        Cert cert = make_cert(rules::kSurfHPushforward, label + " by split pushforward");
        put(cert, "e_mult", a);
        put(cert, "summands", static_cast<i64>(parts.size()));
        i64 total = 0;
        std::vector<Cert> unresolved;
        for (const Summand& p : parts) {
            Hval h = curve_h(p.cls, i);
            if (!h.known()) {
                unresolved.push_back(h.cert);
                continue;
            }
            Cert term = make_cert(rules::kSurfHPushforward, "summand k=" + std::to_string(p.k) + ": h" +
                                                                std::to_string(i) + "(" +
                                                                class_to_string(p.cls) + ")");
            put(term, "value", h.v());
            total = checked_add(total, h.v());
            term.premises.push_back(h.cert);
            cert.premises.push_back(std::move(term));
        }
        if (!unresolved.empty()) {
            Cert u = make_cert(rules::kSurfHUnknown, label + ": a pushforward summand did not resolve");
            u.premises = std::move(unresolved);
            return unknown_hval(std::move(u));
        }
        put(cert, "value", total);
        return known_hval(total, std::move(cert));
    }

    if (a == -1) {
        // O(-E) sits between the two sections: both pushforward and first
        // derived pushforward vanish, so every h^i is zero.
        Cert cert = make_cert(rules::kSurfHBetween, label + " = 0: section multiplicity -1");
        put(cert, "e_mult", a);
        put(cert, "i", i);
        put(cert, "value", 0);
        return known_hval(0, std::move(cert));
    }

    // a <= -2: Serre duality flips into the nonnegative range.
    SurfaceClass dual = canonical_class(S) - c;
    Hval inner = surface_h_impl(dual, 2 - i, depth + 1);
    if (!inner.known()) {
        Cert u = make_cert(rules::kSurfHUnknown, label + ": Serre dual did not resolve");
        u.premises.push_back(inner.cert);
        return unknown_hval(std::move(u));
    }
    Cert cert = make_cert(rules::kSurfHSerreDual,
                          label + " = h" + std::to_string(2 - i) + "(" + S.name + ", " +
                              surface_class_to_string(dual) + ") by Serre duality");
    put(cert, "i", i);
    put(cert, "e_mult", a);
    put(cert, "value", inner.v());
    cert.premises.push_back(inner.cert);
    return known_hval(inner.v(), std::move(cert));
}

}  // namespace

Hval surface_h(const SurfaceClass& c, int i) { return surface_h_impl(c, i, 0); }

Hval surface_chi(const SurfaceClass& c) {
    Hval h0 = surface_h(c, 0), h1 = surface_h(c, 1), h2 = surface_h(c, 2);
    if (!h0.known() || !h1.known() || !h2.known()) {
        Cert u = make_cert(rules::kSurfHUnknown, "chi(" + surface_class_to_string(c) + ") did not resolve");
        if (!h0.known()) u.premises.push_back(h0.cert);
        if (!h1.known()) u.premises.push_back(h1.cert);
        if (!h2.known()) u.premises.push_back(h2.cert);
        return unknown_hval(std::move(u));
    }
    i64 value = checked_add(checked_sub(h0.v(), h1.v()), h2.v());
    Cert cert = make_cert(rules::kSurfChi, "chi(" + c.surface->name + ", " + surface_class_to_string(c) +
                                               ") = h0 - h1 + h2 = " + std::to_string(value));
    put(cert, "value", value);
    cert.premises = {h0.cert, h1.cert, h2.cert};
    return known_hval(value, std::move(cert));
}

std::optional<Cert> surface_h_zero_family(const SurfaceClass& c, int i) {
    const RuledSurfaceModel& S = *c.surface;
    const LinForm& a = c.e_coeff;
    std::string label =
        "h" + std::to_string(i) + "(" + S.name + ", " + surface_class_to_string(c) + ") = 0 for the family";

    if (i < 0 || i > 2) {
        Cert cert = make_cert(rules::kSurfFamilyH2, label + ": beyond the dimension of a surface");
        put(cert, "i", i);
        put(cert, "guard", surface_class_guard(c));
        put(cert, "value", 0);
        return cert;
    }

    if (always_eq(a, -1)) {
        Cert cert = make_cert(rules::kSurfFamilyBetween, label + ": section multiplicity is identically -1");
        put(cert, "i", i);
        put(cert, "guard", surface_class_guard(c));
        put(cert, "value", 0);
        cert.premises.push_back(ineq_cert(a, 4, -1, "section multiplicity"));
        return cert;
    }

    if (always_ge(a, 0)) {
        i64 guard = surface_class_guard(c);
        Cert nonneg = ineq_cert(a, 0, 0, "section multiplicity");
        if (i == 2) {
            Cert cert = make_cert(rules::kSurfFamilyH2, label + ": pushforward to the base curve");
            put(cert, "guard", guard);
            put(cert, "value", 0);
            cert.premises.push_back(std::move(nonneg));
            return cert;
        }
        LinForm deg_m = degree(c.base_part);
        if (i == 1) {
            // Summand degrees decrease with k, so the k = a summand is extremal.
            LinForm min_deg = deg_m - S.twist_degree() * a;
            i64 bound = 2 * S.base->genus - 2;
            if (!always_gt(min_deg, bound)) return std::nullopt;
            Cert cert = make_cert(rules::kSurfFamilyH1,
                                  label + ": every pushforward summand has degree > " + std::to_string(bound));
            put(cert, "guard", std::max(guard, min_deg.guard));
            put(cert, "genus", S.base->genus);
            put(cert, "value", 0);
            cert.premises.push_back(std::move(nonneg));
            cert.premises.push_back(ineq_cert(min_deg, 1, bound, "minimal summand degree"));
            return cert;
        }
        // i == 0: the k = 0 summand has the largest degree.
        if (!always_lt(deg_m, 0)) return std::nullopt;
        Cert cert = make_cert(rules::kSurfFamilyH0, label + ": every pushforward summand has negative degree");
        put(cert, "guard", std::max(guard, deg_m.guard));
        put(cert, "value", 0);
        cert.premises.push_back(std::move(nonneg));
        cert.premises.push_back(ineq_cert(deg_m, 3, 0, "maximal summand degree"));
        return cert;
    }

    if (always_le(a, -2)) {
        SurfaceClass dual = canonical_class(S) - c;
        auto inner = surface_h_zero_family(dual, 2 - i);
        if (!inner) return std::nullopt;
        Cert cert = make_cert(rules::kSurfFamilySerre,
                              label + " = h" + std::to_string(2 - i) + " of the Serre dual family");
        put(cert, "i", i);
        put(cert, "guard", get_data(*inner, "guard"));
        put(cert, "value", 0);
        cert.premises.push_back(ineq_cert(a, 2, -2, "section multiplicity"));
        cert.premises.push_back(std::move(*inner));
        return cert;
    }

    return std::nullopt;
}

namespace {

struct RayData {
    i64 ce, cf, c2;
    Cert e_cert, f_cert, self_cert;
};

RayData ray_numbers(const SurfaceClass& c) {
    Hval ce = surface_intersect(c, section_class(*c.surface));
    Hval cf = surface_intersect(c, fiber_class(*c.surface));
    Hval c2 = surface_self_intersect(c);
    return RayData{ce.v(), cf.v(), c2.v(), ce.cert, cf.cert, c2.cert};
}

}  // namespace

Decision surface_is_ample(const SurfaceClass& c) {
    RayData r = ray_numbers(c);
    bool ok = r.ce > 0 && r.cf > 0;
    Cert cert = make_cert(rules::kSurfAmple, surface_class_to_string(c) +
                                                 (ok ? " is ample" : " is not ample") +
                                                 ": the closed cone of curves is spanned by E and a fiber");
    put(cert, "dot_section", r.ce);
    put(cert, "dot_fiber", r.cf);
    put(cert, "value", ok ? 1 : 0);
    cert.premises = {r.e_cert, r.f_cert};
    return Decision{ok ? Tri::True : Tri::False, std::move(cert)};
}

Decision surface_is_nef(const SurfaceClass& c) {
    RayData r = ray_numbers(c);
    bool ok = r.ce >= 0 && r.cf >= 0;
    Cert cert = make_cert(rules::kSurfNef, surface_class_to_string(c) + (ok ? " is nef" : " is not nef") +
                                               ": tested on the two extremal rays");
    put(cert, "dot_section", r.ce);
    put(cert, "dot_fiber", r.cf);
    put(cert, "value", ok ? 1 : 0);
    cert.premises = {r.e_cert, r.f_cert};
    return Decision{ok ? Tri::True : Tri::False, std::move(cert)};
}

Decision surface_is_nef_and_big(const SurfaceClass& c) {
    RayData r = ray_numbers(c);
    bool ok = r.ce >= 0 && r.cf >= 0 && r.c2 > 0;
    Cert cert = make_cert(rules::kSurfBig, surface_class_to_string(c) +
                                               (ok ? " is nef and big" : " is not (nef and big)") +
                                               ": nef on both rays with positive self-intersection");
    put(cert, "dot_section", r.ce);
    put(cert, "dot_fiber", r.cf);
    put(cert, "self", r.c2);
    put(cert, "value", ok ? 1 : 0);
    cert.premises = {r.e_cert, r.f_cert, r.self_cert};
    return Decision{ok ? Tri::True : Tri::False, std::move(cert)};
}

SectionDivisor section_divisor(const SurfaceClass& c, i64 k) {
    i64 a = concrete_e(c);
    if (a < 0 || k < 0 || k > a)
        throw EngineError("section divisor requires 0 <= k <= section multiplicity");
    DivisorClass part = c.base_part - k * c.surface->twist_class();
    Hval h = curve_h0(part);
    if (!h.known() || h.v() == 0)
        throw EngineError("summand k=" + std::to_string(k) + " of |" + surface_class_to_string(c) +
                          "| carries no section");
    SectionDivisor out;
    out.moving = pullback_class(*c.surface, part);
    out.e_mult = a - k;
    out.einf_mult = k;
    out.cert = make_cert(rules::kSurfSectionDivisor,
                         "a member of |" + surface_class_to_string(c) + "| from summand k=" +
                             std::to_string(k) + ": pullback of |" + class_to_string(part) + "| + " +
                             std::to_string(out.e_mult) + "*E + " + std::to_string(out.einf_mult) + "*Einf");
    put(out.cert, "k", k);
    put(out.cert, "e_mult", out.e_mult);
    put(out.cert, "einf_mult", out.einf_mult);
    out.cert.premises.push_back(h.cert);
    return out;
}

namespace {

// One standard component shape on the ruled surface.
struct Comp {
    enum class Kind { SectionE, SectionEinf, Fiber, Point } kind;
    std::size_t point = 0;  // base-point generator index for Fiber/Point
    Section section = Section::Negative;  // for Point
};

bool comp_eq(const Comp& x, const Comp& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Comp::Kind::SectionE:
        case Comp::Kind::SectionEinf:
            return true;
        case Comp::Kind::Fiber:
            return x.point == y.point;
        case Comp::Kind::Point:
            return x.point == y.point && x.section == y.section;
    }
    return false;
}

// Set-theoretic intersection of two components, when nonempty.
std::optional<Comp> comp_meet(const Comp& x, const Comp& y) {
    if (comp_eq(x, y)) return x;
    auto pt = [](std::size_t p, Section s) { return Comp{Comp::Kind::Point, p, s}; };
    auto ordered = [&](Comp::Kind a, Comp::Kind b) {
        return (x.kind == a && y.kind == b) ? std::optional<std::pair<Comp, Comp>>({x, y})
               : (x.kind == b && y.kind == a) ? std::optional<std::pair<Comp, Comp>>({y, x})
                                              : std::nullopt;
    };
    if (auto p = ordered(Comp::Kind::SectionE, Comp::Kind::Fiber)) return pt(p->second.point, Section::Negative);
    if (auto p = ordered(Comp::Kind::SectionEinf, Comp::Kind::Fiber))
        return pt(p->second.point, Section::Infinity);
    if (auto p = ordered(Comp::Kind::SectionE, Comp::Kind::Point))
        return p->second.section == Section::Negative ? std::optional<Comp>(p->second) : std::nullopt;
    if (auto p = ordered(Comp::Kind::SectionEinf, Comp::Kind::Point))
        return p->second.section == Section::Infinity ? std::optional<Comp>(p->second) : std::nullopt;
    if (auto p = ordered(Comp::Kind::Fiber, Comp::Kind::Point))
        return p->second.point == p->first.point ? std::optional<Comp>(p->second) : std::nullopt;
    return std::nullopt;  // disjoint sections, distinct fibers, distinct points
}

std::vector<Comp> region_comps(const Region& r) {
    std::vector<Comp> out;
    if (r.has_e) out.push_back({Comp::Kind::SectionE, 0, Section::Negative});
    if (r.has_einf) out.push_back({Comp::Kind::SectionEinf, 0, Section::Negative});
    for (std::size_t p : r.fibers) out.push_back({Comp::Kind::Fiber, p, Section::Negative});
    for (const RegionPoint& p : r.points) out.push_back({Comp::Kind::Point, p.point, p.section});
    return out;
}

Region comps_to_region(const std::vector<Comp>& comps) {
    Region r;
    for (const Comp& c : comps) {
        switch (c.kind) {
            case Comp::Kind::SectionE: r.has_e = true; break;
            case Comp::Kind::SectionEinf: r.has_einf = true; break;
            case Comp::Kind::Fiber:
                if (std::find(r.fibers.begin(), r.fibers.end(), c.point) == r.fibers.end())
                    r.fibers.push_back(c.point);
                break;
            case Comp::Kind::Point: {
                bool dup = false;
                for (const RegionPoint& q : r.points)
                    dup = dup || (q.point == c.point && q.section == c.section);
                if (!dup) r.points.push_back({c.point, c.section});
                break;
            }
        }
    }
    // Absorb points lying on a component already present.
    std::vector<RegionPoint> kept;
    for (const RegionPoint& q : r.points) {
        bool covered = (q.section == Section::Negative && r.has_e) ||
                       (q.section == Section::Infinity && r.has_einf) ||
                       std::find(r.fibers.begin(), r.fibers.end(), q.point) != r.fibers.end();
        if (!covered) kept.push_back(q);
    }
    r.points = std::move(kept);
    std::sort(r.fibers.begin(), r.fibers.end());
    std::sort(r.points.begin(), r.points.end(), [](const RegionPoint& x, const RegionPoint& y) {
        return x.point != y.point ? x.point < y.point : x.section < y.section;
    });
    return r;
}

Region region_meet(const Region& a, const Region& b) {
    if (a.full) return b;
    if (b.full) return a;
    std::vector<Comp> out;
    for (const Comp& x : region_comps(a))
        for (const Comp& y : region_comps(b))
            if (auto m = comp_meet(x, y)) out.push_back(*m);
    return comps_to_region(out);
}

}  // namespace

std::string region_to_string(const RuledSurfaceModel& s, const Region& r) {
    if (r.full) return "the whole surface";
    if (r.empty()) return "empty";
    std::vector<std::string> parts;
    if (r.has_e) parts.push_back("E");
    if (r.has_einf) parts.push_back("Einf");
    for (std::size_t p : r.fibers) parts.push_back("fiber over " + s.base->generators[p].name);
    for (const RegionPoint& q : r.points)
        parts.push_back("(" + s.base->generators[q.point].name + ", " +
                        (q.section == Section::Negative ? "E" : "Einf") + ")");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
    return out;
}

SurfaceBaseLocus surface_base_locus(const SurfaceClass& c) {
    const RuledSurfaceModel& S = *c.surface;
    SurfaceBaseLocus out;
    std::string label = "base locus of |" + surface_class_to_string(c) + "| on " + S.name;

    Hval h0 = surface_h(c, 0);
    if (!h0.known()) {
        out.cert = make_cert(rules::kSurfBsUnknown, label + ": h0 did not resolve");
        out.cert.premises.push_back(h0.cert);
        return out;
    }
    if (h0.v() == 0) {
        out.state = SurfaceBaseLocus::State::Resolved;
        out.region.full = true;
        out.cert = make_cert(rules::kSurfBsIntersect, label + ": empty linear system");
        put(out.cert, "value", -1);
        out.cert.premises.push_back(h0.cert);
        return out;
    }

    i64 a = concrete_e(c);
    if (a < 0) {
        // h0 > 0 with negative section multiplicity cannot happen on this model.
        throw EngineError(label + ": inconsistent model (sections with negative fiber degree)");
    }

    Region acc;
    acc.full = true;
    Cert cert = make_cert(rules::kSurfBsIntersect, label + " by factorwise intersection");
    for (const Summand& p : pushforward_summands(c)) {
        Hval hk = curve_h0(p.cls);
        if (!hk.known()) {
            out.cert = make_cert(rules::kSurfBsUnknown, label + ": summand k=" + std::to_string(p.k) +
                                                            " did not resolve");
            out.cert.premises.push_back(hk.cert);
            return out;
        }
        Region rk;
        Cert step = make_cert(rules::kSurfBsSummand,
                              "common zeros of factor k=" + std::to_string(p.k) + ", sections of |" +
                                  class_to_string(p.cls) + "|");
        put(step, "k", p.k);
        put(step, "h0", hk.v());
        step.premises.push_back(hk.cert);
        if (hk.v() == 0) {
            rk.full = true;  // empty factor constrains nothing
        } else {
            CurveBaseLocus bs = curve_base_locus(p.cls);
            if (bs.state == CurveBaseLocus::State::Unknown) {
                out.cert = make_cert(rules::kSurfBsUnknown, label + ": base locus of summand k=" +
                                                                std::to_string(p.k) + " did not resolve");
                out.cert.premises.push_back(bs.cert);
                return out;
            }
            if (bs.state == CurveBaseLocus::State::WholeCurve)
                throw EngineError(label + ": summand with sections reported a full base curve");
            rk.fibers = bs.points;
            rk.has_e = (a - p.k) > 0;
            rk.has_einf = p.k > 0;
            step.premises.push_back(bs.cert);
        }
        acc = region_meet(acc, rk);
        cert.premises.push_back(std::move(step));
    }

    // Defensive confirmation: an isolated point (p, section) must be a base
    // point of the restriction of c to that section.
    for (const RegionPoint& q : acc.points) {
        DivisorClass restricted = restrict_to_section(c, q.section);
        Hval hr = curve_h0(restricted);
        Hval hm = curve_h0(restricted - generator_class(*S.base, q.point));
        Cert conf = make_cert(rules::kSurfBsConfirm,
                              "restriction to " + std::string(q.section == Section::Negative ? "E" : "Einf") +
                                  " keeps " + S.base->generators[q.point].name + " as a base point");
        if (!hr.known() || !hm.known() || hm.v() != hr.v()) {
            out.cert = make_cert(rules::kSurfBsUnknown, label + ": point confirmation failed");
            out.cert.premises.push_back(hr.cert);
            out.cert.premises.push_back(hm.cert);
            return out;
        }
        put(conf, "h0_restricted", hr.v());
        put(conf, "h0_minus_point", hm.v());
        put(conf, "value", 1);
        conf.premises.push_back(hr.cert);
        conf.premises.push_back(hm.cert);
        cert.premises.push_back(std::move(conf));
    }

    out.state = SurfaceBaseLocus::State::Resolved;
    out.region = acc;
    i64 ncomp = static_cast<i64>((acc.has_e ? 1 : 0) + (acc.has_einf ? 1 : 0) + acc.fibers.size() +
                                 acc.points.size());
    put(cert, "value", ncomp);
    cert.statement += ": " + region_to_string(S, acc);
    out.cert = std::move(cert);
    return out;
}

}  // namespace conecheck
