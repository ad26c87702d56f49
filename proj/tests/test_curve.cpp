#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "models.hpp"

using namespace conecheck;
using namespace testmodels;

namespace {

// Independent oracle for the hyperelliptic model: h0(k*g12 + j*R1) equals the
// h0 of a split bundle on the line whose twist list depends on j. The lists
// were derived once from the projection formula / elementary sequences and are
// frozen here: j=0 -> {0,-8}; j=+1 -> {0,-7}; j=-1 -> {-1,-8}.
i64 oracle_h0_C(i64 k, int j) {
    auto term = [&](i64 t) { return std::max<i64>(0, k + t + 1); };
    if (j == 0) return term(0) + term(-8);
    if (j == 1) return term(0) + term(-7);
    return term(-1) + term(-8);
}

// Classical genus-2 values for a*Theta + b*P with an even theta characteristic
// and P generic. -1 encodes "the presentation does not determine the value".
i64 oracle_h0_B(i64 a, i64 b) {
    i64 deg = a + b;
    if (deg < 0) return 0;
    if (deg == 0) return (a == 0 && b == 0) ? 1 : 0;
    if (deg > 2) return deg - 1;  // nonspecial range
    if (deg == 1) {
        if (a == 1 && b == 0) return 0;  // even theta characteristic
        if (a == 0 && b == 1) return 1;  // the point itself
        if (a == 2 && b == -1) return 1; // K - P is effective on genus 2
        return -1;  // other degree-1 classes depend on the point's position
    }
    // deg == 2: h0 = 1 + h0(eta) with eta = class - K of degree 0, so 2 for
    // the canonical class itself and 1 otherwise.
    return (a == 2 && b == 0) ? 2 : 1;
}

}  // namespace

TEST_CASE("degrees, duals, equivalence on the genus-7 model") {
    CurveModel C = make_base_curve();
    DivisorClass g12 = generator_class(C, 0), R1 = generator_class(C, 1);
    CHECK(degree(4 * g12 + R1).as_constant() == 9);
    CHECK(degree(make_class(C, C.canonical)).as_constant() == 12);  // 2g - 2
    CHECK(is_equivalent(g12, 2 * R1));
    CHECK(is_equivalent(6 * g12 - R1, 5 * g12 + R1));
    CHECK_FALSE(is_equivalent(g12, R1));
    CHECK(is_equivalent(serre_dual(4 * g12), 2 * g12));
    CHECK(is_equivalent(zero_class(C), 2 * R1 - g12));

    // Symbolic equivalence holds for every n at once: (2n)*g12 ~ (4n)*R1.
    DivisorClass fam = make_class(C, {0, 0});
    fam.coords[0] = LinForm(2, 0, 1);
    DivisorClass fam2 = make_class(C, {0, 0});
    fam2.coords[1] = LinForm(4, 0, 1);
    CHECK(is_equivalent(fam, fam2));
    fam2.coords[1] = LinForm(4, 1, 1);
    CHECK_FALSE(is_equivalent(fam, fam2));
}

TEST_CASE("pencil multiples: h0(k*g12) = (k+1) + max(0, k-7)") {
    CurveModel C = make_base_curve();
    DivisorClass g12 = generator_class(C, 0);
    for (i64 k = 0; k <= 10; ++k) {
        Hval h = curve_h0(k * g12);
        REQUIRE(h.known());
        CHECK(h.v() == (k + 1) + std::max<i64>(0, k - 7));
        std::string why;
        CHECK_MESSAGE(replay_ok(h.cert, &why), why);
    }
    CHECK(curve_h0(4 * g12).v() == 5);
    CHECK(curve_h0(5 * g12).v() == 6);
    // Canonical class: h0 = g, h1 = 1.
    CHECK(curve_h0(6 * g12).v() == 7);
    CHECK(curve_h1(6 * g12).v() == 1);
}

TEST_CASE("rule-chain values match the double-cover oracle near the pencil") {
    CurveModel C = make_base_curve();
    DivisorClass g12 = generator_class(C, 0), R1 = generator_class(C, 1);
    for (i64 k = 0; k <= 10; ++k)
        for (int j = -1; j <= 1; ++j) {
            DivisorClass d = k * g12 + j * R1;
            Hval h = curve_h0(d);
            REQUIRE_MESSAGE(h.known(), "unresolved at k=", k, " j=", j);
            CHECK_MESSAGE(h.v() == oracle_h0_C(k, j), "k=", k, " j=", j, " engine=", h.v(),
                          " oracle=", oracle_h0_C(k, j));
        }
}

TEST_CASE("ramification point arithmetic used by the surface layer") {
    CurveModel C = make_base_curve();
    DivisorClass g12 = generator_class(C, 0), R1 = generator_class(C, 1);
    // The base-point identity: adding R1 to 4*g12 adds no section.
    CHECK(curve_h0(4 * g12 + R1).v() == 5);
    CHECK(curve_h0(4 * g12).v() == 5);
    CHECK(curve_h0(4 * g12 - R1).v() == 4);
    CHECK(curve_h0(3 * g12 + R1).v() == 4);
    CHECK(curve_h0(g12 - R1).v() == 1);
    CHECK(curve_h0(g12 - 2 * R1).v() == 1);  // trivial class
    CHECK(curve_h0(-R1).v() == 0);

    // h0 of every summand M - k*A for M = 4*g12 + R1, A = R1, k = 0..7.
    const i64 expected[8] = {5, 5, 4, 4, 3, 3, 2, 2};
    i64 total = 0;
    for (i64 k = 0; k <= 7; ++k) {
        Hval h = curve_h0(4 * g12 + (1 - k) * R1);
        REQUIRE(h.known());
        CHECK(h.v() == expected[k]);
        total += h.v();
    }
    CHECK(total == 28);
}

TEST_CASE("basepoint-freeness on the genus-7 model") {
    CurveModel C = make_base_curve();
    DivisorClass g12 = generator_class(C, 0), R1 = generator_class(C, 1);
    CHECK(is_basepoint_free(4 * g12).state == Tri::True);     // pullback rule
    CHECK(is_basepoint_free(2 * R1).state == Tri::True);      // ~ g12, pullback
    CHECK(is_basepoint_free(7 * g12).state == Tri::True);     // degree >= 2g
    CHECK(is_basepoint_free(4 * g12 + R1).state == Tri::False);  // base point at R1
    CHECK(is_basepoint_free(-g12).state == Tri::False);       // empty system
    std::string why;
    CHECK_MESSAGE(replay_ok(is_basepoint_free(4 * g12 + R1).cert, &why), why);
}

TEST_CASE("base locus support via fixed-part extraction") {
    CurveModel C = make_base_curve();
    DivisorClass g12 = generator_class(C, 0), R1 = generator_class(C, 1);

    CurveBaseLocus bs = curve_base_locus(4 * g12 + R1);
    REQUIRE(bs.state == CurveBaseLocus::State::Resolved);
    REQUIRE(bs.points.size() == 1);
    CHECK(C.generators[bs.points[0]].name == "R1");

    CurveBaseLocus free = curve_base_locus(4 * g12);
    REQUIRE(free.state == CurveBaseLocus::State::Resolved);
    CHECK(free.points.empty());

    CurveBaseLocus whole = curve_base_locus(-g12);
    CHECK(whole.state == CurveBaseLocus::State::WholeCurve);

    // Double fixed point: 4*g12 + 2*R1 ~ 5*g12 is free, so the fixed part of
    // (4*g12 + 2*R1) + nothing... use 3*g12 + 2*R1 - g12 + ... simpler:
    // |5*g12 + R1 - g12| = |4*g12 + R1| again; instead check K + R1.
    CurveBaseLocus kr = curve_base_locus(6 * g12 + R1);
    REQUIRE(kr.state == CurveBaseLocus::State::Resolved);
    REQUIRE(kr.points.size() == 1);
    CHECK(C.generators[kr.points[0]].name == "R1");
    std::string why;
    CHECK_MESSAGE(replay_ok(kr.cert, &why), why);
}

TEST_CASE("even theta bookkeeping on the genus-2 model") {
    CurveModel B = make_genus2_curve(false);
    ThetaInfo info = theta_classification(B, 0);
    CHECK(info.total == 16);
    CHECK(info.odd == 6);
    CHECK(info.even == 10);
    std::string why;
    CHECK_MESSAGE(replay_ok(info.cert, &why), why);

    DivisorClass Th = generator_class(B, 0);
    CHECK(curve_h0(Th).v() == 0);
    CHECK(curve_h1(Th).v() == 0);
    CHECK(curve_h0(2 * Th).v() == 2);  // canonical class
    for (i64 n = 3; n <= 10; ++n) {
        CHECK(curve_h0(n * Th).v() == n - 1);
        CHECK(curve_h1(n * Th).v() == 0);
        CHECK(is_basepoint_free(n * Th).state == Tri::True);
    }
    CHECK(is_basepoint_free(2 * Th).state == Tri::True);  // |K| on genus 2
    // Installing twice is idempotent.
    theta_classification(B, 0);
    CHECK(curve_h0(Th).v() == 0);
}

TEST_CASE("theta bookkeeping rejects bad inputs") {
    // Odd characteristic: declared h0 >= 1.
    CurveModel B = make_genus2_curve(false);
    B.h0_facts.push_back({{1, 0}, 1});
    CHECK_THROWS_AS(theta_classification(B, 0), EngineError);

    // Wrong genus.
    CurveModel C = make_base_curve();
    CHECK_THROWS_AS(theta_classification(C, 0), EngineError);

    // 2*Theta not canonical.
    CurveModel B2 = make_genus2_curve(false);
    B2.canonical = {0, 2};
    CHECK_THROWS_AS(theta_classification(B2, 0), EngineError);
}

TEST_CASE("genus-2 values match the classical oracle where determined") {
    CurveModel B = make_genus2_curve();
    DivisorClass Th = generator_class(B, 0), P = generator_class(B, 1);
    for (i64 a = -2; a <= 10; ++a)
        for (i64 b = -2; b <= 2; ++b) {
            i64 want = oracle_h0_B(a, b);
            Hval h = curve_h0(a * Th + b * P);
            if (want < 0) continue;  // oracle declines: engine may or may not resolve
            REQUIRE_MESSAGE(h.known(), "unresolved at a=", a, " b=", b);
            CHECK_MESSAGE(h.v() == want, "a=", a, " b=", b, " engine=", h.v(), " oracle=", want);
        }
    // Values the presentation cannot determine stay Unknown rather than
    // guessed: whether 2P - Theta is effective depends on where P sits
    // relative to the theta characteristics, which the model does not say.
    CHECK_FALSE(curve_h0(2 * P - Th).known());
    CHECK_FALSE(curve_h0(3 * Th - 2 * P).known());
    // Needed downstream: one point off a free pencil twist.
    CHECK(curve_h0(P).v() == 1);
    CHECK(curve_h0(3 * Th - P).v() == 1);
    CHECK(curve_h0(4 * Th - P).v() == 2);
}

TEST_CASE("Riemann-Roch and Serre involution over random classes") {
    std::mt19937 rng(424242);
    CurveModel C = make_base_curve();
    CurveModel B = make_genus2_curve();
    std::uniform_int_distribution<i64> ca(-12, 12), cb(-4, 4);

    int resolved_C = 0, resolved_B = 0;
    for (int trial = 0; trial < 300; ++trial) {
        DivisorClass d = ca(rng) * generator_class(C, 0) + cb(rng) * generator_class(C, 1);
        Hval h0 = curve_h0(d), h1 = curve_h1(d);
        if (h0.known() && h1.known()) {
            ++resolved_C;
            CHECK(h0.v() - h1.v() == degree(d).as_constant() - C.genus + 1);
        }
        // Serre involution: h1(K - d) must agree with h0(d) whenever both resolve.
        Hval dual = curve_h1(serre_dual(d));
        if (h0.known() && dual.known()) CHECK(h0.v() == dual.v());
    }
    for (int trial = 0; trial < 300; ++trial) {
        DivisorClass d = ca(rng) * generator_class(B, 0) + cb(rng) * generator_class(B, 1);
        Hval h0 = curve_h0(d), h1 = curve_h1(d);
        if (h0.known() && h1.known()) {
            ++resolved_B;
            CHECK(h0.v() - h1.v() == degree(d).as_constant() - B.genus + 1);
        }
    }
    // The property must not be vacuous.
    CHECK(resolved_C >= 200);
    CHECK(resolved_B >= 200);
}

TEST_CASE("every operation is invariant under the declared relations") {
    std::mt19937 rng(7777);
    CurveModel C = make_base_curve();
    std::uniform_int_distribution<i64> ca(-10, 10), mult(-3, 3);
    DivisorClass rel = make_class(C, C.relations[0]);
    for (int trial = 0; trial < 250; ++trial) {
        DivisorClass d = ca(rng) * generator_class(C, 0) + ca(rng) * generator_class(C, 1);
        DivisorClass e = d + mult(rng) * rel;
        CHECK(degree(d).as_constant() == degree(e).as_constant());
        CHECK(is_equivalent(d, e));
        Hval hd = curve_h0(d), he = curve_h0(e);
        CHECK(hd.known() == he.known());
        if (hd.known()) CHECK(hd.v() == he.v());
        Decision bd = is_basepoint_free(d), be = is_basepoint_free(e);
        CHECK(bd.state == be.state);
    }
}

TEST_CASE("certificates replay and re-evaluation is deterministic") {
    CurveModel C = make_base_curve();
    CurveModel B = make_genus2_curve();
    std::mt19937 rng(1357);
    std::uniform_int_distribution<i64> ca(-9, 9), cb(-3, 3);
    for (int trial = 0; trial < 120; ++trial) {
        DivisorClass d = ca(rng) * generator_class(C, 0) + cb(rng) * generator_class(C, 1);
        Hval h = curve_h0(d);
        if (h.known()) {
            std::string why;
            CHECK_MESSAGE(replay_ok(h.cert, &why), why);
            CHECK(replay_value(h.cert) == h.v());
        }
        Hval again = curve_h0(d);
        CHECK(render_cert(h.cert) == render_cert(again.cert));

        DivisorClass e = ca(rng) * generator_class(B, 0) + cb(rng) * generator_class(B, 1);
        Hval hb = curve_h0(e);
        if (hb.known()) {
            std::string why;
            CHECK_MESSAGE(replay_ok(hb.cert, &why), why);
        }
    }
}

TEST_CASE("symbolic family vanishing on curves") {
    CurveModel B = make_genus2_curve();
    // d(n) = (3n)*Theta: h1 vanishes for all n >= 1 since deg = 3n > 2.
    DivisorClass fam{&B, {LinForm(3, 0, 1), LinForm::constant(0)}};
    auto h1z = curve_h_zero_family(fam, 1);
    REQUIRE(h1z.has_value());
    CHECK(replay_ok(*h1z));
    // h0 does not vanish (degree positive), and the engine must not claim it.
    CHECK_FALSE(curve_h_zero_family(fam, 0).has_value());
    // d(n) = (2 - 4n)*Theta: h0 vanishes for all n >= 1.
    DivisorClass neg{&B, {LinForm(-4, 2, 1), LinForm::constant(0)}};
    CHECK(curve_h_zero_family(neg, 0).has_value());
    // (4n-3)*Theta: h1 zero only from n >= 2; at guard 1 the proof must fail.
    DivisorClass tail{&B, {LinForm(4, -3, 1), LinForm::constant(0)}};
    CHECK_FALSE(curve_h_zero_family(tail, 1).has_value());
    DivisorClass tail2{&B, {LinForm(4, -3, 2), LinForm::constant(0)}};
    auto ok = curve_h_zero_family(tail2, 1);
    REQUIRE(ok.has_value());
    CHECK(get_data(*ok, "guard") == 2);
    // i >= 2 is structural on a curve.
    CHECK(curve_h_zero_family(fam, 2).has_value());
}

TEST_CASE("symbolic claims agree with concrete sweeps at the seam") {
    CurveModel B = make_genus2_curve();
    DivisorClass tail2{&B, {LinForm(4, -3, 2), LinForm::constant(0)}};
    REQUIRE(curve_h_zero_family(tail2, 1).has_value());
    for (i64 n = 2; n <= 10; ++n) {
        Hval h = curve_h1(at_parameter(tail2, n));
        REQUIRE(h.known());
        CHECK(h.v() == 0);
    }
    // Evaluating a guarded family below its guard must fail loudly, never
    // silently extrapolate.
    CHECK_THROWS_AS((void)at_parameter(tail2, 1), std::invalid_argument);
}

TEST_CASE("unknowns carry explanatory certificates") {
    CurveModel B = make_genus2_curve();
    DivisorClass Th = generator_class(B, 0), P = generator_class(B, 1);
    Hval h = curve_h0(2 * P - Th);
    REQUIRE_FALSE(h.known());
    CHECK(h.cert.rule == "curve.h0.unknown");
    CHECK_THROWS_AS((void)h.v(), EngineError);
}
