#include "conecheck/cone.hpp"

#include <utility>

#include "conecheck/rules.hpp"

namespace conecheck {

namespace {

LesValue exact_or_unknown(Hval h) {
    LesValue out;
    if (h.known()) {
        out.kind = LesValue::Kind::Exact;
        out.value = out.lo = out.hi = h.v();
    } else {
        out.kind = LesValue::Kind::Unknown;
    }
    out.cert = std::move(h.cert);
    return out;
}

std::string tri_name(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        default: return "unknown";
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Cone over a curve.
// ---------------------------------------------------------------------------

CurveCone::CurveCone(DivisorClass polarization, std::optional<DivisorClass> boundary)
    : m_(std::move(polarization)), boundary_(std::move(boundary)) {
    if (!is_concrete(m_)) throw EngineError("a cone polarization must be a concrete class");
    if (boundary_ && (boundary_->curve != m_.curve || !is_concrete(*boundary_)))
        throw EngineError("a cone boundary must be a concrete class on the same base");
}

std::string CurveCone::describe() const {
    std::string s = "cone over " + m_.curve->name + " polarized by " + class_to_string(m_);
    if (boundary_) s += " with boundary " + class_to_string(*boundary_);
    return s;
}

Decision CurveCone::polarization_ample() const {
    i64 d = degree(m_).as_constant();
    Decision out;
    out.state = d > 0 ? Tri::True : Tri::False;
    out.cert = make_cert(rules::kConeAmpleCurve,
                         class_to_string(m_) + (d > 0 ? " is ample: positive degree on a curve"
                                                      : " is not ample: degree is not positive"));
    put(out.cert, "deg", d);
    put(out.cert, "value", d > 0 ? 1 : 0);
    return out;
}

DivisorClass CurveCone::twist(i64 n) const {
    DivisorClass c = n * m_;
    if (boundary_) c = c - *boundary_;
    return c;
}

DivisorClass CurveCone::family(i64 guard) const {
    Vec mc = concrete_coords(m_);
    Vec bc = boundary_ ? concrete_coords(*boundary_) : Vec(mc.size(), 0);
    std::vector<LinForm> coords;
    for (std::size_t j = 0; j < mc.size(); ++j) coords.emplace_back(mc[j], -bc[j], guard);
    return DivisorClass{m_.curve, std::move(coords)};
}

LesValue CurveCone::twisted_h(i64 n, int i) const { return exact_or_unknown(curve_h(twist(n), i)); }

std::optional<Cert> CurveCone::twisted_zero_family(i64 guard, int i) const {
    return curve_h_zero_family(family(guard), i);
}

// ---------------------------------------------------------------------------
// Cone over a ruled surface.
// ---------------------------------------------------------------------------

SurfaceCone::SurfaceCone(SurfaceClass polarization, std::optional<SurfaceClass> boundary)
    : m_(std::move(polarization)), boundary_(std::move(boundary)) {
    if (!surface_is_concrete(m_)) throw EngineError("a cone polarization must be a concrete class");
    if (boundary_ && (boundary_->surface != m_.surface || !surface_is_concrete(*boundary_)))
        throw EngineError("a cone boundary must be a concrete class on the same base");
}

std::string SurfaceCone::describe() const {
    std::string s = "cone over " + m_.surface->name + " polarized by " + surface_class_to_string(m_);
    if (boundary_) s += " with boundary " + surface_class_to_string(*boundary_);
    return s;
}

Decision SurfaceCone::polarization_ample() const {
    Decision inner = surface_is_ample(m_);
    Decision out;
    out.state = inner.state;
    out.cert = make_cert(rules::kConeAmpleSurface,
                         surface_class_to_string(m_) + ": two-ray ampleness test " +
                             tri_name(inner.state));
    put(out.cert, "value", inner.state == Tri::True ? 1 : 0);
    out.cert.premises.push_back(inner.cert);
    return out;
}

SurfaceClass SurfaceCone::twist(i64 n) const {
    SurfaceClass c = n * m_;
    if (boundary_) c = c - *boundary_;
    return c;
}

SurfaceClass SurfaceCone::family(i64 guard) const {
    i64 me = m_.e_coeff.as_constant();
    i64 be = boundary_ ? boundary_->e_coeff.as_constant() : 0;
    Vec mc = concrete_coords(m_.base_part);
    Vec bc = boundary_ ? concrete_coords(boundary_->base_part) : Vec(mc.size(), 0);
    std::vector<LinForm> coords;
    for (std::size_t j = 0; j < mc.size(); ++j) coords.emplace_back(mc[j], -bc[j], guard);
    return make_surface_class(*m_.surface, LinForm(me, -be, guard),
                              DivisorClass{m_.base_part.curve, std::move(coords)});
}

LesValue SurfaceCone::twisted_h(i64 n, int i) const {
    return exact_or_unknown(surface_h(twist(n), i));
}

std::optional<Cert> SurfaceCone::twisted_zero_family(i64 guard, int i) const {
    return surface_h_zero_family(family(guard), i);
}

// ---------------------------------------------------------------------------
// Cone over a hypersurface in the product threefold.
// ---------------------------------------------------------------------------

HypersurfaceCone::HypersurfaceCone(const HypersurfaceModel& t, ProductClass polarization,
                                   std::optional<ProductClass> boundary)
    : t_(&t), m_(std::move(polarization)), boundary_(std::move(boundary)) {
    if (m_.product != t.ambient || !product_is_concrete(m_))
        throw EngineError("a cone polarization must be a concrete class on the ambient threefold");
    if (boundary_ && (boundary_->product != t.ambient || !product_is_concrete(*boundary_)))
        throw EngineError("a cone boundary must be a concrete class on the ambient threefold");
}

std::string HypersurfaceCone::describe() const {
    std::string s = "cone over " + t_->name + " polarized by " + product_class_to_string(m_);
    if (boundary_) s += " with boundary " + product_class_to_string(*boundary_);
    return s;
}

Decision HypersurfaceCone::polarization_ample() const {
    Decision samp = surface_is_ample(m_.s_part);
    i64 degb = degree(m_.b_part).as_constant();
    bool ok = samp.state == Tri::True && degb > 0;
    Decision out;
    out.state = ok ? Tri::True : Tri::False;
    out.cert = make_cert(rules::kConeAmpleRestriction,
                         product_class_to_string(m_) +
                             (ok ? " is ample on the ambient product, hence ample restricted to " +
                                       t_->name
                                 : " is not certified ample on the ambient product"));
    put(out.cert, "deg_curve_part", degb);
    put(out.cert, "value", ok ? 1 : 0);
    out.cert.premises.push_back(samp.cert);
    return out;
}

ProductClass HypersurfaceCone::twist(i64 n) const {
    ProductClass c = n * m_;
    if (boundary_) c = c - *boundary_;
    return c;
}

ProductClass HypersurfaceCone::family(i64 guard) const {
    i64 me = m_.s_part.e_coeff.as_constant();
    i64 be = boundary_ ? boundary_->s_part.e_coeff.as_constant() : 0;
    Vec msc = concrete_coords(m_.s_part.base_part);
    Vec bsc = boundary_ ? concrete_coords(boundary_->s_part.base_part) : Vec(msc.size(), 0);
    std::vector<LinForm> scoords;
    for (std::size_t j = 0; j < msc.size(); ++j) scoords.emplace_back(msc[j], -bsc[j], guard);
    Vec mbc = concrete_coords(m_.b_part);
    Vec bbc = boundary_ ? concrete_coords(boundary_->b_part) : Vec(mbc.size(), 0);
    std::vector<LinForm> bcoords;
    for (std::size_t j = 0; j < mbc.size(); ++j) bcoords.emplace_back(mbc[j], -bbc[j], guard);
    SurfaceClass s = make_surface_class(*m_.s_part.surface, LinForm(me, -be, guard),
                                        DivisorClass{m_.s_part.base_part.curve, std::move(scoords)});
    return make_product_class(*m_.product, std::move(s),
                              DivisorClass{m_.b_part.curve, std::move(bcoords)});
}

LesValue HypersurfaceCone::twisted_h(i64 n, int i) const {
    return les_h(restrict_to_hypersurface(*t_, twist(n)), i);
}

std::optional<Cert> HypersurfaceCone::twisted_zero_family(i64 guard, int i) const {
    return les_zero_family(*t_, family(guard), i);
}

// ---------------------------------------------------------------------------
// The decision procedure.
// ---------------------------------------------------------------------------

DbResult db_criterion(const ConeBase& base, i64 nsweep) {
    if (nsweep < 1) throw EngineError("the sweep depth must be at least 1");
    Decision amp = base.polarization_ample();
    if (amp.state != Tri::True)
        throw EngineError(base.describe() + ": the polarization carries no ampleness certificate");

    std::vector<Cert> sweep;
    std::vector<Cert> pending;
    for (i64 n = 1; n <= nsweep; ++n) {
        for (int i = 1; i <= base.dim(); ++i) {
            LesValue v = base.twisted_h(n, i);
            bool nonzero = (v.kind == LesValue::Kind::Exact && v.value != 0) ||
                           (v.kind == LesValue::Kind::Interval && v.lo >= 1);
            if (nonzero) {
                i64 w = v.kind == LesValue::Kind::Exact ? v.value : v.lo;
                DbResult out;
                out.state = Tri::False;
                out.witness = DbWitness{n, i, w};
                out.cert = make_cert(
                    rules::kConeRefuted,
                    base.describe() + ": h^" + std::to_string(i) + " at n = " + std::to_string(n) +
                        " is " +
                        (v.kind == LesValue::Kind::Exact ? std::to_string(w)
                                                         : "at least " + std::to_string(w)) +
                        ", refuting the vanishing criterion");
                put(out.cert, "n", n);
                put(out.cert, "i", i);
                put(out.cert, "value", w);
                out.cert.premises = {amp.cert, v.cert};
                return out;
            }
            if (v.kind != LesValue::Kind::Exact) {
                Cert u = make_cert(rules::kConeUnknown,
                                   base.describe() + ": h^" + std::to_string(i) + " at n = " +
                                       std::to_string(n) + " did not resolve to a definite value");
                put(u, "n", n);
                put(u, "i", i);
                u.premises.push_back(v.cert);
                pending.push_back(std::move(u));
                continue;
            }
            Cert node = make_cert(rules::kConeSweepZero, "h^" + std::to_string(i) + " at n = " +
                                                             std::to_string(n) + " vanishes");
            put(node, "n", n);
            put(node, "i", i);
            put(node, "value", 0);
            node.premises.push_back(v.cert);
            sweep.push_back(std::move(node));
        }
    }
    if (!pending.empty()) {
        DbResult out;
        out.state = Tri::Unknown;
        out.cert = make_cert(rules::kConeUnknown,
                             base.describe() + ": the criterion could not be decided");
        out.cert.premises = std::move(pending);
        return out;
    }

    // One symbolic tail per degree, at the smallest guard the families accept;
    // the explicit sweep already covers everything below it.
    std::vector<Cert> tails;
    std::vector<Cert> gaps;
    for (int i = 1; i <= base.dim(); ++i) {
        std::optional<Cert> fam;
        i64 g = 0;
        for (i64 cand = 1; cand <= nsweep + 1 && !fam; ++cand) {
            fam = base.twisted_zero_family(cand, i);
            if (fam) g = cand;
        }
        if (!fam) {
            Cert u = make_cert(rules::kConeUnknown,
                               base.describe() + ": no symbolic tail closes degree " +
                                   std::to_string(i) + " within the sweep");
            put(u, "i", i);
            gaps.push_back(std::move(u));
            continue;
        }
        Cert node = make_cert(rules::kConeTail, "h^" + std::to_string(i) +
                                                    " vanishes for every n >= " + std::to_string(g));
        put(node, "i", i);
        put(node, "guard", g);
        put(node, "value", 0);
        node.premises.push_back(std::move(*fam));
        tails.push_back(std::move(node));
    }
    if (!gaps.empty()) {
        DbResult out;
        out.state = Tri::Unknown;
        out.cert = make_cert(rules::kConeUnknown,
                             base.describe() + ": the sweep leaves an uncovered range of n");
        out.cert.premises = std::move(gaps);
        return out;
    }

    DbResult out;
    out.state = Tri::True;
    out.cert = make_cert(rules::kConeVanishing,
                         base.describe() + ": the twisted cohomology vanishes for every degree in [1, " +
                             std::to_string(base.dim()) + "] and every n >= 1");
    put(out.cert, "nsweep", nsweep);
    put(out.cert, "dim", base.dim());
    put(out.cert, "value", 1);
    out.cert.premises.push_back(amp.cert);
    for (Cert& c : sweep) out.cert.premises.push_back(std::move(c));
    for (Cert& c : tails) out.cert.premises.push_back(std::move(c));
    return out;
}

// ---------------------------------------------------------------------------
// Cartier index and the assembled verdict.
// ---------------------------------------------------------------------------

CartierIndex cartier_index(const HypersurfaceModel& t, const RestrictedClass& m) {
    if (m.hyp != &t) throw EngineError("the polarization is not a class on " + t.name);
    AdjunctionResult adj = adjunction_canonical(t);
    Vec kt = product_coord_vec(adj.canonical.ambient_class);
    Vec mv = product_coord_vec(m.ambient_class);
    std::vector<Vec> gens = hypersurface_relation_vectors(t);
    gens.push_back(mv);
    ZLattice lat(std::move(gens), kt.size());
    std::optional<i64> ord = lat.order_in_quotient(kt);
    if (!ord)
        throw EngineError("K_" + t.name +
                          " is not rationally a multiple of the polarization in the restricted lattice");

    Cert leaf = make_cert(rules::kLatticeOrder,
                          "order of K_" + t.name + " in the lattice spanned by the polarization and " +
                              "the restriction relations");
    put(leaf, "value", *ord);

    Cert cert = make_cert(rules::kConeCartier,
                          std::to_string(*ord) + " * K_" + t.name +
                              " lies in the span of the polarization, and no smaller multiple does");
    put(cert, "value", *ord);
    cert.premises.push_back(adj.cert);
    cert.premises.push_back(std::move(leaf));
    for (const std::string& a : t.assumptions) cert.assumptions.push_back(a);
    return CartierIndex{*ord, std::move(cert)};
}

Verdict assemble_verdict(const HypersurfaceModel& t, const ProductClass& polarization,
                         const std::optional<ProductClass>& boundary, i64 nsweep) {
    Verdict out;
    out.pair = db_criterion(HypersurfaceCone(t, polarization, boundary), nsweep);
    out.space = db_criterion(HypersurfaceCone(t, polarization), nsweep);
    CartierIndex ci = cartier_index(t, restrict_to_hypersurface(t, polarization));
    out.cartier = ci.index;

    Certification conn = connectedness_certificate(t);
    Certification smooth = smoothness_certificate(t);
    std::optional<Certification> bnd;
    if (boundary) bnd = boundary_smoothness_certificate(t);

    Cert cert = make_cert(rules::kVerdict,
                          "cone over " + t.name + ": db_pair " + tri_name(out.pair.state) +
                              ", db_space " + tri_name(out.space.state) + ", Cartier index " +
                              std::to_string(ci.index));
    put(cert, "db_pair", static_cast<i64>(out.pair.state));
    put(cert, "db_space", static_cast<i64>(out.space.state));
    put(cert, "cartier_index", ci.index);
    cert.premises.push_back(out.pair.cert);
    cert.premises.push_back(out.space.cert);
    cert.premises.push_back(std::move(ci.cert));
    cert.premises.push_back(std::move(conn.cert));
    cert.premises.push_back(std::move(smooth.cert));
    if (bnd) cert.premises.push_back(std::move(bnd->cert));
    out.assumptions = collect_assumptions(cert);
    out.cert = std::move(cert);
    return out;
}

}  // namespace conecheck
