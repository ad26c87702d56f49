#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <conecheck/surface.hpp>

#include "models.hpp"

using namespace conecheck;
using namespace testmodels;

namespace {

struct Setup {
    CurveModel C = make_base_curve();
    RuledSurfaceModel S;
    Setup() {
        S.name = "S";
        S.base = &C;
        S.twist = {0, 1};  // A = R1, a single ramification point
    }
    DivisorClass g12() const { return generator_class(C, 0); }
    DivisorClass R1() const { return generator_class(C, 1); }
    // The polarization everything downstream is built from: L = E + pi*(2*g12).
    SurfaceClass L() const { return section_class(S) + pullback_class(S, 2 * g12()); }
};

// Independent intersection oracle: bilinear extension from E^2 = -1,
// E.pi*D = deg D, pi*D.pi*D' = 0 (deg A = 1 in this setup).
i64 oracle_pair(const RuledSurfaceModel& S, i64 a1, i64 dm1, i64 a2, i64 dm2) {
    return -a1 * a2 * S.twist_degree() + a1 * dm2 + a2 * dm1;
}

}  // namespace

TEST_CASE("intersection numbers on the two-ray lattice") {
    Setup t;
    SurfaceClass E = section_class(t.S), f = fiber_class(t.S), L = t.L();
    CHECK(surface_intersect(E, E).v() == -1);
    CHECK(surface_intersect(E, f).v() == 1);
    CHECK(surface_intersect(f, f).v() == 0);
    CHECK(surface_intersect(L, L).v() == 7);
    CHECK(surface_intersect(L, E).v() == 3);
    CHECK(surface_intersect(L, f).v() == 1);
    SurfaceClass K = canonical_class(t.S);
    CHECK(surface_intersect(K, f).v() == -2);  // adjunction on a fiber: -2 = K.f + f^2
    SurfaceClass D = 5 * L - K;
    CHECK(surface_self_intersect(D).v() == 77);
    std::string why;
    CHECK_MESSAGE(replay_ok(surface_self_intersect(D).cert, &why), why);

    std::mt19937 rng(99);
    std::uniform_int_distribution<i64> coef(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        i64 a1 = coef(rng), m1 = coef(rng), a2 = coef(rng), m2 = coef(rng);
        SurfaceClass c1 = a1 * E + pullback_class(t.S, m1 * t.g12());
        SurfaceClass c2 = a2 * E + pullback_class(t.S, m2 * t.g12());
        CHECK(surface_intersect(c1, c2).v() == oracle_pair(t.S, a1, 2 * m1, a2, 2 * m2));
    }
}

TEST_CASE("canonical class and restriction to the two sections") {
    Setup t;
    SurfaceClass K = canonical_class(t.S);
    // K = -2E + pi*(K_C - A) restricted to E is K_C - A + 2A = K_C + A.
    DivisorClass onE = restrict_to_section(K, Section::Negative);
    CHECK(is_equivalent(onE, make_class(t.C, t.C.canonical) + t.R1()));
    // Genus of E via adjunction: deg (K_S + E)|_E = 2g - 2 = 12.
    DivisorClass adj = restrict_to_section(K + section_class(t.S), Section::Negative);
    CHECK(degree(adj).as_constant() == 12);

    SurfaceClass L = t.L();
    CHECK(is_equivalent(restrict_to_section(L, Section::Negative), 2 * t.g12() - t.R1()));
    CHECK(is_equivalent(restrict_to_section(L, Section::Negative), 3 * t.R1()));
    CHECK(is_equivalent(restrict_to_section(L, Section::Infinity), 2 * t.g12()));
    // 5L - K_S = 7E + pi*(4*g12 + R1); its trace on E has degree 9 - 7 = 2.
    CHECK(degree(restrict_to_section(5 * L - K, Section::Negative)).as_constant() == 2);
    CHECK(is_equivalent((5 * L - K).base_part, 4 * t.g12() + t.R1()));
    CHECK((5 * L - K).e_coeff.as_constant() == 7);
}

TEST_CASE("pushforward summands drive h0 and h1") {
    Setup t;
    SurfaceClass L = t.L();

    // h^i(S, L): summands M, M - A with M = g12 + R1.
    CHECK(surface_h(L, 0).v() == 5);
    CHECK(surface_h(L, 1).v() == 10);
    CHECK(surface_h(L, 2).v() == 0);

    // The table of h0 of the eight summands of 5L - K_S: 5,5,4,4,3,3,2,2.
    SurfaceClass D = 5 * L - canonical_class(t.S);
    std::vector<Summand> parts = pushforward_summands(D);
    REQUIRE(parts.size() == 8);
    const i64 expected[8] = {5, 5, 4, 4, 3, 3, 2, 2};
    i64 sum = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(curve_h0(parts[k].cls).v() == expected[k]);
        sum += expected[k];
    }
    CHECK(sum == 28);
    CHECK(surface_h(D, 0).v() == 28);
    // h1 sums the duals h0(2*g12 + (k-1)*R1) = 2,3,3,4,4,5,5,6.
    CHECK(surface_h(D, 1).v() == 32);
    CHECK(surface_chi(D).v() == -4);

    CHECK(surface_h(4 * L, 0).v() == 41);
    CHECK(surface_h(4 * L, 1).v() == 1);
    CHECK(surface_h(4 * L, 2).v() == 0);
    CHECK(surface_chi(4 * L).v() == 40);

    SurfaceClass E = section_class(t.S);
    CHECK(surface_h(4 * L - E, 0).v() == 34);

    std::string why;
    CHECK_MESSAGE(replay_ok(surface_h(4 * L, 0).cert, &why), why);
    CHECK_MESSAGE(replay_ok(surface_h(D, 1).cert, &why), why);
}

TEST_CASE("negative side: between-sections vanishing and Serre duality") {
    Setup t;
    SurfaceClass E = section_class(t.S), L = t.L(), K = canonical_class(t.S);
    for (int i = 0; i <= 2; ++i) CHECK(surface_h(-E, i).v() == 0);
    // K_S - L has section multiplicity -3: Serre-dual to L.
    SurfaceClass KmL = K - L;
    CHECK(surface_h(KmL, 0).v() == 0);
    CHECK(surface_h(KmL, 1).v() == 10);
    CHECK(surface_h(KmL, 2).v() == 5);
    // K_S - L - E, Serre-dual to L + E.
    SurfaceClass KmLE = K - L - E;
    CHECK(surface_h(KmLE, 0).v() == 0);
    CHECK(surface_h(KmLE, 1).v() == 16);
    CHECK(surface_h(KmLE, 2).v() == 7);
    std::string why;
    CHECK_MESSAGE(replay_ok(surface_h(KmLE, 1).cert, &why), why);
    // h3 and beyond are structurally zero.
    CHECK(surface_h(L, 3).v() == 0);
}

TEST_CASE("Serre duality as a property over random classes") {
    Setup t;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<i64> ae(-5, 5), am(-8, 8), ar(-2, 2);
    SurfaceClass K = canonical_class(t.S);
    int resolved = 0;
    for (int trial = 0; trial < 250; ++trial) {
        SurfaceClass c = ae(rng) * section_class(t.S) +
                         pullback_class(t.S, am(rng) * t.g12() + ar(rng) * t.R1());
        SurfaceClass dual = K - c;
        for (int i = 0; i <= 2; ++i) {
            Hval a = surface_h(c, i), b = surface_h(dual, 2 - i);
            CHECK(a.known() == b.known());
            if (a.known()) {
                ++resolved;
                CHECK(a.v() == b.v());
            }
        }
    }
    CHECK(resolved >= 600);
}

TEST_CASE("Riemann-Roch on the surface: chi agrees with the numerical form") {
    Setup t;
    // chi(O_S) = chi(O_C) = 1 - g = -6 for a ruled surface over genus 7.
    SurfaceClass zero = zero_surface_class(t.S);
    CHECK(surface_chi(zero).v() == -6);
    SurfaceClass K = canonical_class(t.S);

    std::mt19937 rng(31337);
    std::uniform_int_distribution<i64> ae(-4, 4), am(-7, 7), ar(-2, 2);
    int resolved = 0;
    for (int trial = 0; trial < 250; ++trial) {
        SurfaceClass c = ae(rng) * section_class(t.S) +
                         pullback_class(t.S, am(rng) * t.g12() + ar(rng) * t.R1());
        Hval chi = surface_chi(c);
        if (!chi.known()) continue;
        ++resolved;
        i64 cc = surface_self_intersect(c).v();
        i64 ck = surface_intersect(c, K).v();
        CHECK(chi.v() == -6 + (cc - ck) / 2);
    }
    CHECK(resolved >= 200);
    CHECK(surface_chi(4 * t.L()).v() == 40);
}

TEST_CASE("positivity on the two rays is decided exactly") {
    Setup t;
    SurfaceClass E = section_class(t.S), f = fiber_class(t.S), L = t.L();
    CHECK(surface_is_ample(L).state == Tri::True);
    CHECK(surface_is_nef(L).state == Tri::True);
    CHECK(surface_is_nef_and_big(L).state == Tri::True);
    CHECK(surface_is_ample(f).state == Tri::False);   // f.f = 0
    CHECK(surface_is_nef(f).state == Tri::True);
    CHECK(surface_is_nef_and_big(f).state == Tri::False);
    CHECK(surface_is_ample(E).state == Tri::False);   // E.E < 0
    CHECK(surface_is_nef(E).state == Tri::False);
    CHECK(surface_is_ample(5 * L - canonical_class(t.S)).state == Tri::True);
    // Pullback of an ample class on the base: nef, not ample, not big.
    SurfaceClass pb = pullback_class(t.S, t.g12());
    CHECK(surface_is_ample(pb).state == Tri::False);
    CHECK(surface_is_nef(pb).state == Tri::True);
    CHECK(surface_is_nef_and_big(pb).state == Tri::False);
    std::string why;
    CHECK_MESSAGE(replay_ok(surface_is_ample(L).cert, &why), why);
    CHECK_MESSAGE(replay_ok(surface_is_nef(E).cert, &why), why);
}

TEST_CASE("section divisors exhibit members of the linear system") {
    Setup t;
    SurfaceClass L = t.L();
    // k = 0: pullback of |M| plus a*E.
    SectionDivisor d0 = section_divisor(L, 0);
    CHECK(d0.e_mult == 1);
    CHECK(d0.einf_mult == 0);
    CHECK(is_equivalent(d0.moving.base_part, 2 * t.g12()));
    // k = a: pullback of |M - aA| plus a*Einf.
    SectionDivisor d1 = section_divisor(L, 1);
    CHECK(d1.e_mult == 0);
    CHECK(d1.einf_mult == 1);
    CHECK(is_equivalent(d1.moving.base_part, 2 * t.g12() - t.R1()));
    // The pieces reassemble to the class itself: Einf = E + pi*A.
    SurfaceClass E = section_class(t.S);
    SurfaceClass reassembled = d1.moving + d1.einf_mult * (E + pullback_class(t.S, t.R1()));
    CHECK(surface_is_equivalent(reassembled, L));
    // Empty summand: |K_S| itself is empty, so every k must throw.
    CHECK_THROWS_AS(section_divisor(-2 * E, 0), EngineError);
}

TEST_CASE("base locus: the adjoint system has exactly one isolated point") {
    Setup t;
    SurfaceClass D = 5 * t.L() - canonical_class(t.S);
    SurfaceBaseLocus bs = surface_base_locus(D);
    REQUIRE(bs.state == SurfaceBaseLocus::State::Resolved);
    CHECK_FALSE(bs.region.full);
    CHECK_FALSE(bs.region.has_e);
    CHECK_FALSE(bs.region.has_einf);
    CHECK(bs.region.fibers.empty());
    REQUIRE(bs.region.points.size() == 1);
    CHECK(t.C.generators[bs.region.points[0].point].name == "R1");
    CHECK(bs.region.points[0].section == Section::Infinity);
    std::string why;
    CHECK_MESSAGE(replay_ok(bs.cert, &why), why);
    // The assumption trail records that declared points stand in for general ones.
    auto as = collect_assumptions(bs.cert);
    CHECK(!as.empty());
}

TEST_CASE("base locus shapes across the standard systems") {
    Setup t;
    SurfaceClass E = section_class(t.S), L = t.L();
    // |L|: factor k=0 pins E, factor k=1 (sections of |2*g12 - R1|) pins the
    // fiber over R1 and Einf; the two constraints meet in one point on E.
    SurfaceBaseLocus bsL = surface_base_locus(L);
    REQUIRE(bsL.state == SurfaceBaseLocus::State::Resolved);
    REQUIRE(bsL.region.points.size() == 1);
    CHECK(t.C.generators[bsL.region.points[0].point].name == "R1");
    CHECK(bsL.region.points[0].section == Section::Negative);
    CHECK_FALSE(bsL.region.has_e);
    CHECK(bsL.region.fibers.empty());

    // E + pi*(8*g12): both factors have degree >= 2g, hence are free, and
    // their E/Einf constraints cancel: empty base locus.
    SurfaceBaseLocus bsfree = surface_base_locus(E + pullback_class(t.S, 8 * t.g12()));
    REQUIRE(bsfree.state == SurfaceBaseLocus::State::Resolved);
    CHECK(bsfree.region.empty());

    // 4L - E restricts to E as the class K_C + R1, and |K + point| always
    // keeps that point fixed: one isolated base point on the negative section.
    SurfaceBaseLocus bs4 = surface_base_locus(4 * L - E);
    REQUIRE(bs4.state == SurfaceBaseLocus::State::Resolved);
    REQUIRE(bs4.region.points.size() == 1);
    CHECK(bs4.region.points[0].section == Section::Negative);

    // |E| is the single negative section: base locus is E itself.
    SurfaceBaseLocus bsE = surface_base_locus(E);
    REQUIRE(bsE.state == SurfaceBaseLocus::State::Resolved);
    CHECK(bsE.region.has_e);
    CHECK_FALSE(bsE.region.has_einf);
    CHECK(bsE.region.points.empty());

    // An empty system covers the whole surface.
    SurfaceBaseLocus bsneg = surface_base_locus(-L);
    REQUIRE(bsneg.state == SurfaceBaseLocus::State::Resolved);
    CHECK(bsneg.region.full);

    // Pure pullback of a class with a base point: whole fiber.
    SurfaceBaseLocus bsf = surface_base_locus(pullback_class(t.S, 4 * t.g12() + t.R1()));
    REQUIRE(bsf.state == SurfaceBaseLocus::State::Resolved);
    REQUIRE(bsf.region.fibers.size() == 1);
    CHECK(t.C.generators[bsf.region.fibers[0]].name == "R1");
    CHECK(region_to_string(t.S, bsf.region) == "fiber over R1");
}

TEST_CASE("symbolic families: the criterion-4 shapes close for all large n") {
    Setup t;
    SurfaceClass L = t.L(), E = section_class(t.S), K = canonical_class(t.S);

    // 4n*L - E: section multiplicity 4n - 1, minimal summand degree
    // 16n - (4n - 1) = 12n + 1 > 12 already from n = 1.
    SurfaceClass famA = make_surface_class(
        t.S, LinForm(4, -1, 1), DivisorClass{&t.C, {LinForm(8, 0, 1), LinForm::constant(0)}});
    auto h1A = surface_h_zero_family(famA, 1);
    REQUIRE(h1A.has_value());
    CHECK(get_data(*h1A, "guard") == 1);
    CHECK(replay_ok(*h1A));
    auto h2A = surface_h_zero_family(famA, 2);
    REQUIRE(h2A.has_value());

    // K_S + (4n-5)L - E = (4n-8)E + pi*((8n-4)*g12 - R1) at guard 2: the
    // section multiplicity is nonnegative only from n = 2 on.
    SurfaceClass famB = make_surface_class(
        t.S, LinForm(4, -8, 2), DivisorClass{&t.C, {LinForm(8, -4, 2), LinForm(0, -1, 2)}});
    auto h2B = surface_h_zero_family(famB, 2);
    REQUIRE(h2B.has_value());
    CHECK(get_data(*h2B, "guard") == 2);
    auto h1B = surface_h_zero_family(famB, 1);
    REQUIRE(h1B.has_value());  // min degree 12n - 1 > 12 for n >= 2

    // At guard 1 the same family must refuse: at n = 1 the multiplicity is -4.
    SurfaceClass famB1 = famB;
    famB1.e_coeff.guard = 1;
    for (auto& co : famB1.base_part.coords) co.guard = 1;
    CHECK_FALSE(surface_h_zero_family(famB1, 2).has_value());

    // Constant family with multiplicity -1 vanishes in every degree.
    SurfaceClass between = -E;
    for (int i = 0; i <= 2; ++i) CHECK(surface_h_zero_family(between, i).has_value());

    // Serre-dual family: K_S - 4n*L falls in the a <= -2 range, and its h0
    // mirrors the structural h2 of 4n*L.
    SurfaceClass famC = make_surface_class(
        t.S, LinForm(-4, -2, 1), DivisorClass{&t.C, {LinForm(-8, 6, 1), LinForm(0, -1, 1)}});
    auto h0C = surface_h_zero_family(famC, 0);
    REQUIRE(h0C.has_value());
    CHECK(replay_ok(*h0C));

    // A family whose h1 genuinely survives must be refused: n*E + pi*(4n*g12)
    // has minimal summand degree 7n, which is not > 12 at the guard.
    SurfaceClass famD =
        make_surface_class(t.S, LinForm::param(), DivisorClass{&t.C, {LinForm(4, 0, 1), LinForm::constant(0)}});
    CHECK_FALSE(surface_h_zero_family(famD, 1).has_value());
}

TEST_CASE("families agree with concrete sweeps at the seam") {
    Setup t;
    SurfaceClass famA = make_surface_class(
        t.S, LinForm(4, -1, 1), DivisorClass{&t.C, {LinForm(8, 0, 1), LinForm::constant(0)}});
    REQUIRE(surface_h_zero_family(famA, 1).has_value());
    for (i64 n = 1; n <= 6; ++n) {
        SurfaceClass cn = surface_at_parameter(famA, n);
        CHECK(surface_h(cn, 1).v() == 0);
        CHECK(surface_h(cn, 2).v() == 0);
        // cn really is 4n*L - E.
        CHECK(surface_is_equivalent(cn, 4 * n * t.L() - section_class(t.S)));
    }
    SurfaceClass famB = make_surface_class(
        t.S, LinForm(4, -8, 2), DivisorClass{&t.C, {LinForm(8, -4, 2), LinForm(0, -1, 2)}});
    REQUIRE(surface_h_zero_family(famB, 2).has_value());
    for (i64 n = 2; n <= 6; ++n) {
        SurfaceClass cn = surface_at_parameter(famB, n);
        CHECK(surface_h(cn, 2).v() == 0);
        CHECK(surface_is_equivalent(
            cn, canonical_class(t.S) + (4 * n - 5) * t.L() - section_class(t.S)));
    }
}

TEST_CASE("equivalence and printing of surface classes") {
    Setup t;
    SurfaceClass L = t.L(), E = section_class(t.S);
    CHECK(surface_is_equivalent(L, section_class(t.S) + pullback_class(t.S, 4 * t.R1())));
    CHECK_FALSE(surface_is_equivalent(L, E));
    CHECK(surface_class_to_string(E) == "E");
    CHECK(surface_class_to_string(zero_surface_class(t.S)) == "0");
    // Unknown propagation: a summand off the rule chain leaves h0 unknown.
    CurveModel B = make_genus2_curve();
    RuledSurfaceModel SB;
    SB.name = "SB";
    SB.base = &B;
    SB.twist = {1, 0};
    SurfaceClass odd = section_class(SB) +
                       pullback_class(SB, 2 * generator_class(B, 1) + 0 * generator_class(B, 0));
    // Summand k=1: 2P - Theta, which the curve layer honestly cannot resolve.
    Hval h = surface_h(odd, 0);
    CHECK_FALSE(h.known());
    CHECK(h.cert.rule == "surface.h.unknown");
}
