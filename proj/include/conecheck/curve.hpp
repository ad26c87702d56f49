#pragma once
// Divisor classes on a presented curve and their cohomology.
//
// A curve is presented by generators of (a sublattice of) its Picard group,
// degree-zero relations among them, the canonical class, optionally a declared
// degree-2 cover of the line with the splitting type of the pushforward, and a
// fact table. h0 is evaluated by a fixed first-match rule chain; h1 is h0 of
// the Serre dual. Values the chain cannot reach are Unknown, never guessed.
//
// Classes may be symbolic: coordinates are affine forms in one parameter n,
// valid for n >= guard. Family-level queries (equivalence, vanishing) decide
// their answer for the whole guarded range at once.

#include <optional>
#include <string>
#include <vector>

#include "conecheck/cert.hpp"
#include "conecheck/lattice.hpp"
#include "conecheck/linform.hpp"

namespace conecheck {

struct CurveGenerator {
    std::string name;
    i64 degree = 0;
    bool is_point = false;  // generator is the class of a single (general) point
};

struct H0Fact {
    Vec cls;
    i64 value = 0;
};

struct CurveModel {
    std::string name;
    i64 genus = 0;
    std::vector<CurveGenerator> generators;
    std::vector<Vec> relations;  // degree-zero vectors in generator coordinates
    Vec canonical;               // coordinates of the canonical class

    // Declared double cover of the line: `unit` is the pullback of O(1) and
    // `twists` the splitting type of the pushforward of the structure sheaf.
    struct DoubleCover {
        std::size_t unit = 0;
        std::vector<i64> twists;
    };
    std::optional<DoubleCover> cover;

    std::vector<H0Fact> h0_facts;
    std::vector<Vec> noneffective_facts;
    std::vector<Vec> bpf_facts;

    std::size_t ngens() const { return generators.size(); }
    std::optional<std::size_t> generator_index(std::string_view gname) const;
    ZLattice relation_lattice() const;
};

struct DivisorClass {
    const CurveModel* curve = nullptr;
    std::vector<LinForm> coords;
};

DivisorClass make_class(const CurveModel& c, Vec coords);
DivisorClass generator_class(const CurveModel& c, std::size_t gi);
DivisorClass zero_class(const CurveModel& c);

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a);
DivisorClass operator*(i64 k, const DivisorClass& a);

bool is_concrete(const DivisorClass& d);
Vec concrete_coords(const DivisorClass& d);            // throws on symbolic classes
DivisorClass at_parameter(const DivisorClass& d, i64 n);
DivisorClass with_guard(const DivisorClass& d, i64 guard);
i64 class_guard(const DivisorClass& d);
std::string class_to_string(const DivisorClass& d);

LinForm degree(const DivisorClass& d);
DivisorClass serre_dual(const DivisorClass& d);        // K - d

// Linear equivalence. For symbolic classes the answer holds for every n in the
// guarded range (slope and offset vectors must both lie in the relation lattice).
bool is_equivalent(const DivisorClass& a, const DivisorClass& b);

// h^i for concrete classes; i >= 2 vanishes on a curve.
Hval curve_h0(const DivisorClass& d);
Hval curve_h1(const DivisorClass& d);
Hval curve_h(const DivisorClass& d, int i);

// chi = deg + 1 - genus, always known for a concrete class.
Hval curve_chi(const DivisorClass& d);

Decision is_basepoint_free(const DivisorClass& d);

// Symbolic vanishing for the whole family n >= guard; nullopt when the degree
// argument does not close.
std::optional<Cert> curve_h_zero_family(const DivisorClass& d, int i);

// Base locus support, by repeated fixed-point extraction over declared points.
struct CurveBaseLocus {
    enum class State { Resolved, WholeCurve, Unknown };
    State state = State::Unknown;
    std::vector<std::size_t> points;  // generator indices, in extraction order
    Cert cert;
};
CurveBaseLocus curve_base_locus(const DivisorClass& d);

// Validates the even-theta bookkeeping on a genus-2 model (2*theta ~ K, theta
// not declared effective), installs h0(theta) = 0 into the fact table, and
// returns the theta-characteristic counts.
struct ThetaInfo {
    i64 total = 0;
    i64 odd = 0;
    i64 even = 0;
    Cert cert;
};
ThetaInfo theta_classification(CurveModel& c, std::size_t theta_gen);

}  // namespace conecheck
