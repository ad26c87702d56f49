#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include <conecheck/lattice.hpp>
#include <conecheck/product.hpp>
#include <conecheck/rules.hpp>

#include "models.hpp"

using namespace conecheck;
using namespace testmodels;

namespace {

struct Setup {
    CurveModel C = make_base_curve();
    CurveModel B = make_genus2_curve();
    RuledSurfaceModel S;
    ProductModel X;
    Setup() {
        S.name = "S";
        S.base = &C;
        S.twist = {0, 1};  // A = R1
        X.name = "X";
        X.surface = &S;
        X.curve = &B;
    }
    DivisorClass g12() const { return generator_class(C, 0); }
    DivisorClass R1() const { return generator_class(C, 1); }
    DivisorClass theta() const { return generator_class(B, 0); }
    DivisorClass P() const { return generator_class(B, 1); }
    SurfaceClass L() const { return section_class(S) + pullback_class(S, 2 * g12()); }
    ProductClass pc(SurfaceClass s, DivisorClass b) const {
        return make_product_class(X, std::move(s), std::move(b));
    }
    // The hypersurface class the whole pipeline studies: (5L - K_S, 3*Theta).
    ProductClass tcls() const { return pc(5 * L() - canonical_class(S), 3 * theta()); }
    HypersurfaceModel T() const { return HypersurfaceModel{"T", &X, tcls(), {}}; }
};

// ---------------------------------------------------------------------------
// Independent oracle for the long exact sequence of
//   0 -> G - T -> G -> G|_T -> 0,
// written against nothing but linear algebra. A chain of dimensions
//   0 -> n_1 -> n_2 -> ... -> n_k -> 0
// is realizable by an exact sequence iff the ranks r_j = n_j - r_{j-1}
// (r_0 = 0) are all nonnegative and the last one is zero. The engine's answer
// in degree i must contain every realizable value of h^i(T, G|_T).
// ---------------------------------------------------------------------------

using H4 = std::array<i64, 4>;

bool les_feasible(const H4& l, const H4& m, const H4& t) {
    std::vector<i64> dims;
    for (int i = 0; i < 4; ++i) {
        dims.push_back(l[i]);
        dims.push_back(m[i]);
        dims.push_back(t[i]);
    }
    i64 r = 0;
    for (i64 n : dims) {
        r = n - r;
        if (r < 0) return false;
    }
    return r == 0;
}

std::vector<H4> feasible_t(const H4& l, const H4& m) {
    H4 hi{};
    for (int i = 0; i < 4; ++i) hi[i] = m[i] + (i + 1 < 4 ? l[i + 1] : 0);
    std::vector<H4> out;
    H4 t{};
    for (t[0] = 0; t[0] <= hi[0]; ++t[0])
        for (t[1] = 0; t[1] <= hi[1]; ++t[1])
            for (t[2] = 0; t[2] <= hi[2]; ++t[2])
                for (t[3] = 0; t[3] <= hi[3]; ++t[3])
                    if (les_feasible(l, m, t)) out.push_back(t);
    return out;
}

H4 ambient_h(const ProductClass& c) {
    H4 out{};
    for (int i = 0; i < 4; ++i) out[i] = kunneth_h(c, i).v();
    return out;
}

// Engine answer in one degree must agree with the oracle's projection: an
// exact value has to be the only realizable one, an interval has to cover all
// of them.
void check_against_oracle(const HypersurfaceModel& T, const ProductClass& g) {
    IdealSequence seq = twist_ideal_sequence(T, g);
    H4 l = ambient_h(seq.left), m = ambient_h(seq.mid);
    std::vector<H4> all = feasible_t(l, m);
    REQUIRE(!all.empty());
    RestrictedClass rc = restrict_to_hypersurface(T, g);
    for (int i = 0; i < 4; ++i) {
        i64 lo = all[0][i], hi = all[0][i];
        for (const H4& t : all) {
            lo = std::min(lo, t[i]);
            hi = std::max(hi, t[i]);
        }
        LesValue v = les_h(rc, i);
        if (v.kind == LesValue::Kind::Exact) {
            CHECK(v.value == lo);
            CHECK(v.value == hi);
        } else if (v.kind == LesValue::Kind::Interval) {
            CHECK(v.lo <= lo);
            CHECK(v.hi >= hi);
        } else {
            FAIL_CHECK("les_h did not resolve in degree ", i);
        }
        std::string why;
        CHECK_MESSAGE(replay_ok(v.cert, &why), why);
    }
}

// Build of the odd-theta control curve: same genus-2 presentation, but Theta
// is declared effective with a single section instead of classified even.
CurveModel make_odd_control() {
    CurveModel b = make_genus2_curve(false);
    b.h0_facts.push_back({{1, 0}, 1});
    return b;
}

}  // namespace

TEST_CASE("kunneth convolution on the ambient threefold") {
    Setup t;
    ProductClass G = t.pc(4 * t.L(), 4 * t.theta());

    Hval h0 = kunneth_h(G, 0);
    CHECK(h0.v() == 123);  // 41 * 3
    CHECK(h0.cert.rule == rules::kProdKunneth);
    CHECK(h0.cert.premises.size() == 1);  // only (p,q) = (0,0)
    std::string why;
    CHECK_MESSAGE(replay_ok(h0.cert, &why), why);

    CHECK(kunneth_h(G, 1).v() == 3);  // 41*0 + 1*3
    CHECK(kunneth_h(G, 2).v() == 0);
    CHECK(kunneth_h(G, 3).v() == 0);
    CHECK(kunneth_h(G, 4).v() == 0);
    CHECK(kunneth_h(G, 4).cert.rule == rules::kProdHTop);
    CHECK(kunneth_h(G, 1).cert.premises.size() == 2);
    CHECK_MESSAGE(replay_ok(kunneth_h(G, 1).cert, &why), why);

    // h(S, L) = (5, 10, 0) and h(B, 2Theta) = h(B, K_B) = (2, 1).
    ProductClass LK = t.pc(t.L(), 2 * t.theta());
    CHECK(kunneth_h(LK, 0).v() == 10);
    CHECK(kunneth_h(LK, 1).v() == 25);
    CHECK(kunneth_h(LK, 2).v() == 10);
    CHECK(kunneth_h(LK, 3).v() == 0);

    // Every factor of every term vanishes for (K_S - L, Theta).
    ProductClass dead = t.pc(canonical_class(t.S) - t.L(), t.theta());
    for (int i = 0; i <= 3; ++i) CHECK(kunneth_h(dead, i).v() == 0);

    ProductClass sym = t.pc(make_surface_class(t.S, LinForm::param(), zero_class(t.C)), t.theta());
    CHECK_THROWS_AS(kunneth_h(sym, 0).v(), EngineError);  // symbolic surface part never resolves
}

TEST_CASE("kunneth terms with one honest-unknown factor") {
    Setup t;
    DivisorClass mystery = 2 * t.P() - t.theta();  // h0 undetermined by the presentation
    REQUIRE(!curve_h0(mystery).known());

    ProductClass G = t.pc(t.L(), mystery);
    Hval h0 = kunneth_h(G, 0);
    CHECK(!h0.known());
    CHECK(h0.cert.rule == rules::kProdKunnethUnknown);
    CHECK_THROWS_AS(h0.v(), EngineError);

    // A vanishing factor kills a term even when the other factor is unknown:
    // h2(S, L) = 0 makes the only degree-3 term zero.
    Hval h3 = kunneth_h(G, 3);
    CHECK(h3.v() == 0);

    // Same on the surface side: h0(S, -pi*(g12)) = 0.
    ProductClass H = t.pc(pullback_class(t.S, -t.g12()), mystery);
    CHECK(kunneth_h(H, 0).v() == 0);
    std::string why;
    CHECK_MESSAGE(replay_ok(kunneth_h(H, 0).cert, &why), why);
}

TEST_CASE("euler characteristic multiplies across the factors") {
    Setup t;
    ProductClass G = t.pc(4 * t.L(), 4 * t.theta());
    Hval chi = product_chi(G);
    CHECK(chi.v() == 120);  // chi(S, 4L) * chi(B, 4Theta) = 40 * 3
    CHECK(chi.cert.rule == rules::kProdChi);
    std::string why;
    CHECK_MESSAGE(replay_ok(chi.cert, &why), why);

    std::mt19937 rng(2024);
    std::uniform_int_distribution<i64> small(-3, 5);
    int resolved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        SurfaceClass sc = small(rng) * section_class(t.S) +
                          pullback_class(t.S, small(rng) * t.g12() + small(rng) * t.R1());
        DivisorClass bc = small(rng) * t.theta() + small(rng) * t.P();
        Hval cs = surface_chi(sc);
        Hval px = product_chi(t.pc(sc, bc));
        if (!cs.known() || !px.known()) continue;
        i64 chi_b = degree(bc).as_constant() + 1 - t.B.genus;  // exact Riemann-Roch on a curve
        CHECK(px.v() == cs.v() * chi_b);
        ++resolved;
    }
    CHECK(resolved >= 120);
}

TEST_CASE("triple intersection numbers") {
    Setup t;
    ProductClass D = t.tcls();
    Hval cube = triple_intersect(D, D, D);
    CHECK(cube.v() == 693);  // (5L - K_S)^2 * deg(3Theta) * 3 = 77 * 3 * 3
    CHECK(cube.cert.rule == rules::kProdTriple);
    std::string why;
    CHECK_MESSAGE(replay_ok(cube.cert, &why), why);

    ProductClass E0 = t.pc(section_class(t.S), zero_class(t.B));
    ProductClass f0 = t.pc(fiber_class(t.S), zero_class(t.B));
    ProductClass p0 = t.pc(zero_surface_class(t.S), t.P());
    CHECK(triple_intersect(E0, E0, E0).v() == 0);   // no curve-factor content at all
    CHECK(triple_intersect(E0, E0, p0).v() == -1);  // E^2 = -deg A
    CHECK(triple_intersect(E0, f0, p0).v() == 1);
    CHECK(triple_intersect(f0, f0, p0).v() == 0);
    CHECK(triple_intersect(p0, p0, E0).v() == 0);  // two pullbacks from B multiply to zero

    // Symmetry and multilinearity against an independent expansion.
    std::mt19937 rng(5151);
    std::uniform_int_distribution<i64> coef(-4, 4);
    auto pair = [&](i64 a1, i64 dm1, i64 a2, i64 dm2) {
        return -a1 * a2 * t.S.twist_degree() + a1 * dm2 + a2 * dm1;
    };
    for (int trial = 0; trial < 200; ++trial) {
        i64 a1 = coef(rng), m1 = coef(rng), b1 = coef(rng);
        i64 a2 = coef(rng), m2 = coef(rng), b2 = coef(rng);
        i64 a3 = coef(rng), m3 = coef(rng), b3 = coef(rng);
        auto mk = [&](i64 a, i64 m, i64 b) {
            return t.pc(a * section_class(t.S) + pullback_class(t.S, m * t.g12()), b * t.P());
        };
        ProductClass c1 = mk(a1, m1, b1), c2 = mk(a2, m2, b2), c3 = mk(a3, m3, b3);
        i64 expect = pair(a1, 2 * m1, a2, 2 * m2) * b3 + pair(a1, 2 * m1, a3, 2 * m3) * b2 +
                     pair(a2, 2 * m2, a3, 2 * m3) * b1;
        CHECK(triple_intersect(c1, c2, c3).v() == expect);
        CHECK(triple_intersect(c2, c3, c1).v() == expect);
        CHECK(triple_intersect(c3, c1, c2).v() == expect);
        CHECK(triple_intersect(c1 + c2, c2, c3).v() ==
              expect + triple_intersect(c2, c2, c3).v());
    }

    ProductClass sym = t.pc(make_surface_class(t.S, LinForm::param(), zero_class(t.C)), t.P());
    CHECK_THROWS_AS(triple_intersect(sym, E0, p0), EngineError);
}

TEST_CASE("ideal sheaf sequence and adjunction bookkeeping") {
    Setup t;
    HypersurfaceModel T = t.T();
    ProductClass G = t.pc(4 * t.L(), 4 * t.theta());

    IdealSequence seq = twist_ideal_sequence(T, G);
    CHECK(seq.cert.rule == rules::kProdSES);
    CHECK(product_is_equivalent(seq.mid, G));
    CHECK(product_is_equivalent(seq.left, t.pc(canonical_class(t.S) - t.L(), t.theta())));
    CHECK(product_is_equivalent(seq.mid - seq.left, T.cls));
    std::string why;
    CHECK_MESSAGE(replay_ok(seq.cert, &why), why);

    AdjunctionResult adj = adjunction_canonical(T);
    CHECK(adj.cert.rule == rules::kProdAdjunction);
    CHECK(product_is_equivalent(adj.canonical.ambient_class, t.pc(5 * t.L(), 5 * t.theta())));
    CHECK(product_coord_vec(adj.canonical.ambient_class) == Vec{5, 10, 0, 5, 0});
    CHECK_MESSAGE(replay_ok(adj.cert, &why), why);

    ProductModel other{"Y", &t.S, &t.C};  // wrong second factor on purpose
    CHECK_THROWS_AS(twist_ideal_sequence(T, make_product_class(other, t.L(), t.g12())),
                    EngineError);
}

TEST_CASE("les: restriction values pinned by a vanishing left column") {
    Setup t;
    HypersurfaceModel T = t.T();
    ProductClass G = t.pc(4 * t.L(), 4 * t.theta());
    RestrictedClass M = restrict_to_hypersurface(T, G);

    LesValue v0 = les_h(M, 0);
    CHECK(v0.kind == LesValue::Kind::Exact);
    CHECK(v0.value == 123);
    CHECK(v0.cert.rule == rules::kProdLesP2);

    LesValue v1 = les_h(M, 1);
    CHECK(v1.kind == LesValue::Kind::Exact);
    CHECK(v1.value == 3);
    CHECK(v1.cert.rule == rules::kProdLesP2);

    LesValue v2 = les_h(M, 2);
    CHECK(v2.kind == LesValue::Kind::Exact);
    CHECK(v2.value == 0);
    CHECK(v2.cert.rule == rules::kProdLesP1);

    CHECK(les_h(M, 3).value == 0);

    for (int i = 0; i < 4; ++i) {
        std::string why;
        CHECK_MESSAGE(replay_ok(les_h(M, i).cert, &why), why);
    }
    check_against_oracle(T, G);
}

TEST_CASE("les: squeeze to zero fires even with unresolved corners") {
    Setup t;
    DivisorClass mystery = 2 * t.P() - t.theta();
    HypersurfaceModel T = t.T();
    // Middle h0 vanishes on the surface factor; the left column vanishes in
    // degree 1 by Serre duality upstairs. The other groups never resolve.
    ProductClass G = t.pc(pullback_class(t.S, -t.g12()), mystery);
    LesValue v0 = les_h(restrict_to_hypersurface(T, G), 0);
    CHECK(v0.kind == LesValue::Kind::Exact);
    CHECK(v0.value == 0);
    CHECK(v0.cert.rule == rules::kProdLesP1);
    std::string why;
    CHECK_MESSAGE(replay_ok(v0.cert, &why), why);
}

TEST_CASE("les: the odd-theta control pinches to a nonzero h1") {
    Setup t;
    CurveModel B1 = make_odd_control();
    REQUIRE(curve_h0(generator_class(B1, 0)).v() == 1);
    REQUIRE(curve_h1(generator_class(B1, 0)).v() == 1);

    ProductModel X1{"X1", &t.S, &B1};
    DivisorClass th = generator_class(B1, 0);
    ProductClass tcls = make_product_class(X1, 5 * t.L() - canonical_class(t.S), 3 * th);
    HypersurfaceModel T1{"T1", &X1, tcls, {}};

    ProductClass G = make_product_class(X1, 4 * t.L() - section_class(t.S), 4 * th);
    IdealSequence seq = twist_ideal_sequence(T1, G);
    CHECK(ambient_h(seq.left) == H4{0, 16, 23, 7});
    CHECK(ambient_h(seq.mid) == H4{102, 0, 0, 0});

    RestrictedClass rc = restrict_to_hypersurface(T1, G);
    LesValue v1 = les_h(rc, 1);
    CHECK(v1.kind == LesValue::Kind::Exact);
    CHECK(v1.value == 23);
    CHECK(v1.cert.rule == rules::kProdLesPinch);
    CHECK(get_data(v1.cert, "lo") == 23);
    CHECK(get_data(v1.cert, "hi") == 23);

    CHECK(les_h(rc, 0).value == 118);
    CHECK(les_h(rc, 2).value == 7);
    CHECK(les_h(rc, 3).value == 0);
    check_against_oracle(T1, G);
}

TEST_CASE("les: a genuine interval covers exactly the realizable values") {
    Setup t;
    CurveModel B1 = make_odd_control();
    ProductModel X1{"X1", &t.S, &B1};
    DivisorClass th = generator_class(B1, 0);
    HypersurfaceModel T1{"T1", &X1,
                         make_product_class(X1, 5 * t.L() - canonical_class(t.S), 3 * th),
                         {}};
    // Without the -E twist the left column no longer dies: l = (0, 10, 15, 5).
    ProductClass G = make_product_class(X1, 4 * t.L(), 4 * th);
    RestrictedClass rc = restrict_to_hypersurface(T1, G);

    LesValue v1 = les_h(rc, 1);
    CHECK(v1.kind == LesValue::Kind::Interval);
    CHECK(v1.lo == 15);
    CHECK(v1.hi == 18);
    CHECK(v1.cert.rule == rules::kProdLesInterval);
    std::string why;
    CHECK_MESSAGE(replay_ok(v1.cert, &why), why);

    LesValue v0 = les_h(rc, 0);
    CHECK(v0.kind == LesValue::Kind::Interval);
    CHECK(v0.lo == 130);
    CHECK(v0.hi == 133);

    LesValue v2 = les_h(rc, 2);
    CHECK(v2.kind == LesValue::Kind::Exact);
    CHECK(v2.value == 5);
    CHECK(v2.cert.rule == rules::kProdLesPinch);

    // The oracle confirms the interval ends are both realizable here.
    IdealSequence seq = twist_ideal_sequence(T1, G);
    std::vector<H4> all = feasible_t(ambient_h(seq.left), ambient_h(seq.mid));
    i64 lo1 = all[0][1], hi1 = all[0][1];
    for (const H4& x : all) {
        lo1 = std::min(lo1, x[1]);
        hi1 = std::max(hi1, x[1]);
    }
    CHECK(lo1 == 15);
    CHECK(hi1 == 18);
    check_against_oracle(T1, G);
}

TEST_CASE("les: unresolved ambient groups surface as unknown") {
    Setup t;
    HypersurfaceModel T = t.T();
    ProductClass G = t.pc(4 * t.L(), 2 * t.P() - t.theta());
    LesValue v = les_h(restrict_to_hypersurface(T, G), 0);
    CHECK(v.kind == LesValue::Kind::Unknown);
    CHECK(v.cert.rule == rules::kProdLesUnknown);
}

TEST_CASE("les zero family: symbolic tails with their minimal guards") {
    Setup t;
    HypersurfaceModel T = t.T();

    auto family = [&](i64 guard) {
        SurfaceClass s = make_surface_class(
            t.S, LinForm(4, -1, guard),
            DivisorClass{&t.C, {LinForm(8, 0, guard), LinForm(0, 0, guard)}});
        DivisorClass b{&t.B, {LinForm(4, 0, guard), LinForm(0, 0, guard)}};
        return make_product_class(t.X, s, b);
    };

    // The middle column vanishes from n = 1 on, in degrees 1 and 2.
    auto mid1 = kunneth_zero_family(family(1), 1);
    REQUIRE(mid1.has_value());
    CHECK(get_data(*mid1, "guard") == 1);
    CHECK(mid1->rule == rules::kProdFamilyKunneth);

    // The left column needs n >= 2, so the tail refuses guard 1 and accepts 2.
    CHECK(!les_zero_family(T, family(1), 1).has_value());
    auto tail1 = les_zero_family(T, family(2), 1);
    REQUIRE(tail1.has_value());
    CHECK(tail1->rule == rules::kProdFamilyLes);
    CHECK(get_data(*tail1, "guard") == 2);
    std::string why;
    CHECK_MESSAGE(replay_ok(*tail1, &why), why);

    auto tail2 = les_zero_family(T, family(2), 2);
    REQUIRE(tail2.has_value());
    CHECK(get_data(*tail2, "guard") == 2);
    CHECK_MESSAGE(replay_ok(*tail2, &why), why);

    // No family rule can kill the big h0 in degree zero.
    CHECK(!les_zero_family(T, family(2), 0).has_value());

    // Seam: the symbolic tail agrees with the concrete engine at every
    // parameter it covers.
    for (i64 n = 2; n <= 6; ++n) {
        ProductClass gn = product_at_parameter(family(2), n);
        RestrictedClass rc = restrict_to_hypersurface(T, gn);
        for (int i : {1, 2}) {
            LesValue v = les_h(rc, i);
            CHECK(v.kind == LesValue::Kind::Exact);
            CHECK(v.value == 0);
        }
    }
}

TEST_CASE("connectedness certificate") {
    Setup t;
    HypersurfaceModel T = t.T();
    Certification c = connectedness_certificate(T);
    CHECK(c.certified);
    CHECK(c.cert.rule == rules::kProdConnected);
    CHECK(get_data(c.cert, "cube") == 693);
    std::string why;
    CHECK_MESSAGE(replay_ok(c.cert, &why), why);

    // A fiber with no curve-factor content is nef but not big.
    HypersurfaceModel Tf{"Tf", &t.X, t.pc(fiber_class(t.S), zero_class(t.B)), {}};
    Certification cf = connectedness_certificate(Tf);
    CHECK(!cf.certified);
    CHECK(cf.cert.rule == rules::kProdConnectedNo);

    // The negative section is not nef at all.
    HypersurfaceModel Te{"Te", &t.X, t.pc(section_class(t.S), t.P()), {}};
    CHECK(!connectedness_certificate(Te).certified);
}

TEST_CASE("smoothness: one transversal base point on the infinity section") {
    Setup t;
    HypersurfaceModel T = t.T();
    Certification c = smoothness_certificate(T);
    CHECK(c.certified);
    CHECK(c.cert.rule == rules::kProdSmoothPoint);
    CHECK(get_data(c.cert, "h0_pinned") == 5);
    CHECK(get_data(c.cert, "h0_pinned_minus") == 5);
    CHECK(get_data(c.cert, "h0_pinned_minus2") == 4);
    CHECK(get_data(c.cert, "h0_moving") == 5);
    CHECK(get_data(c.cert, "h0_moving_minus") == 4);
    std::string why;
    CHECK_MESSAGE(replay_ok(c.cert, &why), why);

    auto assumptions = collect_assumptions(c.cert);
    CHECK(std::find(assumptions.begin(), assumptions.end(), "fiber-section-transversality") !=
          assumptions.end());
    CHECK(std::find(assumptions.begin(), assumptions.end(), "bertini-general-member") !=
          assumptions.end());
}

TEST_CASE("smoothness: bertini route for a free system") {
    Setup t;
    HypersurfaceModel Tfree{"Tfree", &t.X,
                            t.pc(section_class(t.S) + pullback_class(t.S, 8 * t.g12()),
                                 2 * t.theta()),
                            {}};
    Certification c = smoothness_certificate(Tfree);
    CHECK(c.certified);
    CHECK(c.cert.rule == rules::kProdSmoothFree);
    std::string why;
    CHECK_MESSAGE(replay_ok(c.cert, &why), why);

    // And the boundary cut is free as well for this class.
    Certification b = boundary_smoothness_certificate(Tfree);
    CHECK(b.certified);
    CHECK(b.cert.rule == rules::kProdSmoothBoundary);
    CHECK_MESSAGE(replay_ok(b.cert, &why), why);
}

TEST_CASE("smoothness: refused when the hypotheses fail") {
    Setup t;
    // Base locus is a whole fiber, not a point.
    HypersurfaceModel Tfib{"Tfib", &t.X, t.pc(pullback_class(t.S, t.R1()), 2 * t.theta()), {}};
    Certification c1 = smoothness_certificate(Tfib);
    CHECK(!c1.certified);
    CHECK(c1.cert.rule == rules::kProdSmoothNo);

    // Second factor empty: |Theta| on the even model has no sections.
    HypersurfaceModel Tempty{"Tempty", &t.X, t.pc(5 * t.L() - canonical_class(t.S), t.theta()), {}};
    CHECK(!smoothness_certificate(Tempty).certified);

    // Second factor has a base point: |P| always keeps P fixed.
    HypersurfaceModel Tbp{"Tbp", &t.X, t.pc(5 * t.L() - canonical_class(t.S), t.P()), {}};
    CHECK(!smoothness_certificate(Tbp).certified);
}

TEST_CASE("boundary smoothness: certified for T, refused when the trace is pinned") {
    Setup t;
    HypersurfaceModel T = t.T();
    Certification b = boundary_smoothness_certificate(T);
    CHECK(b.certified);
    CHECK(b.cert.rule == rules::kProdSmoothBoundary);
    std::string why;
    CHECK_MESSAGE(replay_ok(b.cert, &why), why);

    // (L, 2Theta) certifies smoothness through the single-point route, but its
    // trace on the negative section keeps a base point, so the boundary cut
    // does not certify.
    HypersurfaceModel TL{"TL", &t.X, t.pc(t.L(), 2 * t.theta()), {}};
    CHECK(smoothness_certificate(TL).certified);
    Certification bl = boundary_smoothness_certificate(TL);
    CHECK(!bl.certified);
    CHECK(bl.cert.rule == rules::kProdSmoothBoundaryNo);
}

TEST_CASE("ambient lattice coordinates and restriction relations") {
    Setup t;
    HypersurfaceModel T = t.T();

    ProductClass M = t.pc(4 * t.L(), 4 * t.theta());
    CHECK(product_coord_vec(M) == Vec{4, 8, 0, 4, 0});
    CHECK(product_coord_vec(t.tcls()) == Vec{7, 4, 1, 3, 0});

    std::vector<Vec> rels = hypersurface_relation_vectors(T);
    REQUIRE(rels.size() == 1);  // only the base curve's pencil relation
    CHECK(rels[0] == Vec{0, 1, -2, 0, 0});

    // The canonical class of T sits at index exactly 4 over the lattice
    // spanned by M and the relations: 4*K_T = 5*M up to relations.
    Vec kt = product_coord_vec(adjunction_canonical(T).canonical.ambient_class);
    CHECK(kt == Vec{5, 10, 0, 5, 0});
    std::vector<Vec> gens = rels;
    gens.push_back(product_coord_vec(M));
    ZLattice lat(gens, 5);
    CHECK(lat.order_in_quotient(kt) == 4);

    // Declared kernel vectors are passed through; malformed ones are refused.
    HypersurfaceModel T2 = t.T();
    T2.restriction_kernel.push_back(Vec{1, 0, 0, 0, -1});
    CHECK(hypersurface_relation_vectors(T2).size() == 2);
    T2.restriction_kernel.push_back(Vec{1, 0});
    CHECK_THROWS_AS(hypersurface_relation_vectors(T2), EngineError);

    ProductClass sym = t.pc(make_surface_class(t.S, LinForm::param(), zero_class(t.C)), t.P());
    CHECK_THROWS_AS(product_coord_vec(sym), EngineError);
}

TEST_CASE("product class plumbing: arithmetic, rendering, guards") {
    Setup t;
    ProductClass G = t.pc(4 * t.L(), 4 * t.theta());
    ProductClass H = t.pc(t.L(), t.P());
    CHECK(product_is_equivalent(G + H - H, G));
    CHECK(product_is_equivalent(-(-G), G));
    CHECK(product_is_equivalent(2 * H, H + H));
    CHECK(product_is_concrete(G));

    std::string s = product_class_to_string(G);
    CHECK(s.find(',') != std::string::npos);

    ProductClass fam = t.pc(
        make_surface_class(t.S, LinForm(4, -1, 2),
                           DivisorClass{&t.C, {LinForm(8, 0, 2), LinForm(0, 0, 2)}}),
        DivisorClass{&t.B, {LinForm(4, 0, 2), LinForm(0, 0, 2)}});
    CHECK(!product_is_concrete(fam));
    CHECK(product_class_guard(fam) == 2);
    ProductClass at3 = product_at_parameter(fam, 3);
    CHECK(product_is_concrete(at3));
    CHECK(product_coord_vec(at3) == Vec{11, 24, 0, 12, 0});
    CHECK_THROWS_AS(product_at_parameter(fam, 1), std::invalid_argument);

    CurveModel B2 = make_genus2_curve();
    ProductModel other{"X2", &t.S, &B2};
    ProductClass Gother = make_product_class(other, t.L(), generator_class(B2, 1));
    CHECK_THROWS_AS(G + Gother, EngineError);
    CHECK_THROWS_AS(make_product_class(t.X, t.L(), generator_class(B2, 1)), EngineError);
}
