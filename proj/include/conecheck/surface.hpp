#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"

namespace conecheck {

// A projectivized split rank-2 bundle over a declared curve: the fiber bundle
// P(O + O(-A)) -> C for a twist class A of positive degree. Its divisor theory
// is generated by the negative section E (E^2 = -deg A) and pullbacks from C.
struct RuledSurfaceModel {
    std::string name;
    const CurveModel* base = nullptr;
    Vec twist;  // coordinates of A on the base curve's generators

    DivisorClass twist_class() const { return make_class(*base, twist); }
    i64 twist_degree() const { return degree(twist_class()).as_constant(); }
};

// a*E + pi^*(base_part); the section coefficient may depend on the sweep
// parameter, so it is a linear form like every base coordinate.
struct SurfaceClass {
    const RuledSurfaceModel* surface = nullptr;
    LinForm e_coeff = LinForm::constant(0);
    DivisorClass base_part;
};

SurfaceClass make_surface_class(const RuledSurfaceModel& s, LinForm e_coeff, DivisorClass base_part);
SurfaceClass section_class(const RuledSurfaceModel& s);       // E
SurfaceClass pullback_class(const RuledSurfaceModel& s, DivisorClass d);
SurfaceClass fiber_class(const RuledSurfaceModel& s);         // pi^* of a point
SurfaceClass canonical_class(const RuledSurfaceModel& s);     // -2E + pi^*(K_C - A)
SurfaceClass zero_surface_class(const RuledSurfaceModel& s);

SurfaceClass operator+(const SurfaceClass& a, const SurfaceClass& b);
SurfaceClass operator-(const SurfaceClass& a, const SurfaceClass& b);
SurfaceClass operator-(const SurfaceClass& a);
SurfaceClass operator*(i64 k, const SurfaceClass& a);

bool surface_is_concrete(const SurfaceClass& c);
SurfaceClass surface_at_parameter(const SurfaceClass& c, i64 n);
i64 surface_class_guard(const SurfaceClass& c);
std::string surface_class_to_string(const SurfaceClass& c);
bool surface_is_equivalent(const SurfaceClass& a, const SurfaceClass& b);

// Intersection number of two concrete classes.
Hval surface_intersect(const SurfaceClass& a, const SurfaceClass& b);
Hval surface_self_intersect(const SurfaceClass& a);

// The two disjoint sections of the ruling.
enum class Section { Negative, Infinity };

// (aE + pi^*M)|_E = M - aA on C; restriction to the infinity section is M.
DivisorClass restrict_to_section(const SurfaceClass& c, Section s);

// For a >= 0 the pushforward splits: h^i(S, c) = sum_{k=0}^{a} h^i(C, M - kA).
struct Summand {
    i64 k;
    DivisorClass cls;
};
std::vector<Summand> pushforward_summands(const SurfaceClass& c);

Hval surface_h(const SurfaceClass& c, int i);
Hval surface_chi(const SurfaceClass& c);

// Symbolic vanishing for a parameter family: a certificate valid for every
// parameter value >= the recorded guard, or nothing if no rule applies.
std::optional<Cert> surface_h_zero_family(const SurfaceClass& c, int i);

// Positivity on the two-ray cone: decided exactly by intersecting with the
// section E and a fiber f.
Decision surface_is_ample(const SurfaceClass& c);
Decision surface_is_nef(const SurfaceClass& c);
Decision surface_is_nef_and_big(const SurfaceClass& c);

// The unique decomposition |c| = (moving part) + fixed vertical/horizontal
// pieces exhibited by choosing the k-th summand of the pushforward.
struct SectionDivisor {
    SurfaceClass moving;
    i64 e_mult = 0;
    i64 einf_mult = 0;
    Cert cert;
};
SectionDivisor section_divisor(const SurfaceClass& c, i64 k);

// Base locus support, reported as a union of components of the standard
// shapes on a ruled surface.
struct RegionPoint {
    std::size_t point;  // generator index on the base curve
    Section section;
};
struct Region {
    bool full = false;       // the whole surface (empty linear system)
    bool has_e = false;      // the negative section
    bool has_einf = false;   // the infinity section
    std::vector<std::size_t> fibers;  // fibers over declared base points
    std::vector<RegionPoint> points;  // isolated points (fiber cap section)

    bool empty() const { return !full && !has_e && !has_einf && fibers.empty() && points.empty(); }
};
struct SurfaceBaseLocus {
    enum class State { Resolved, Unknown };
    State state = State::Unknown;
    Region region;
    Cert cert;
};
SurfaceBaseLocus surface_base_locus(const SurfaceClass& c);

std::string region_to_string(const RuledSurfaceModel& s, const Region& r);

}  // namespace conecheck
