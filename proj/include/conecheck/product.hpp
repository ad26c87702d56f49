#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surface.hpp"

namespace conecheck {

// The ambient threefold: a product of a declared ruled surface and a declared
// curve. Cohomology on it is a Kunneth convolution of the factor values.
struct ProductModel {
    std::string name;
    const RuledSurfaceModel* surface = nullptr;
    const CurveModel* curve = nullptr;
};

struct ProductClass {
    const ProductModel* product = nullptr;
    SurfaceClass s_part;
    DivisorClass b_part;
};

ProductClass make_product_class(const ProductModel& x, SurfaceClass s, DivisorClass b);
ProductClass zero_product_class(const ProductModel& x);
ProductClass canonical_product_class(const ProductModel& x);  // (K_S, K_B)

ProductClass operator+(const ProductClass& a, const ProductClass& b);
ProductClass operator-(const ProductClass& a, const ProductClass& b);
ProductClass operator-(const ProductClass& a);
ProductClass operator*(i64 k, const ProductClass& a);

bool product_is_concrete(const ProductClass& c);
ProductClass product_at_parameter(const ProductClass& c, i64 n);
i64 product_class_guard(const ProductClass& c);
std::string product_class_to_string(const ProductClass& c);
bool product_is_equivalent(const ProductClass& a, const ProductClass& b);

// h^i(X, (D1, D2)) = sum_{p+q=i} h^p(S, D1) h^q(B, D2). A term with one factor
// known to vanish is zero regardless of the other; otherwise an unresolved
// factor makes the whole sum Unknown.
Hval kunneth_h(const ProductClass& c, int i);
Hval product_chi(const ProductClass& c);

// Symbolic vanishing for a parameter family: every Kunneth term must be killed
// on one of its two factors for the whole guarded range.
std::optional<Cert> kunneth_zero_family(const ProductClass& c, int i);

// (A1,B1).(A2,B2).(A3,B3) = (A1.A2) deg B3 + (A1.A3) deg B2 + (A2.A3) deg B1.
Hval triple_intersect(const ProductClass& c1, const ProductClass& c2, const ProductClass& c3);

// A hypersurface T in the ambient product, presented by its class. Classes on
// T are restrictions of ambient classes; declared kernel vectors record any
// ambient classes that die on T.
struct HypersurfaceModel {
    std::string name;
    const ProductModel* ambient = nullptr;
    ProductClass cls;
    std::vector<Vec> restriction_kernel;
    // Declared modelling assumptions (e.g. faithfulness of the restricted
    // lattice); inherited by the certificates that rely on them.
    std::vector<std::string> assumptions = {};
};

struct RestrictedClass {
    const HypersurfaceModel* hyp = nullptr;
    ProductClass ambient_class;
};

RestrictedClass restrict_to_hypersurface(const HypersurfaceModel& t, ProductClass g);

// K_T = (K_X + T)|_T, with the derivation recorded.
struct AdjunctionResult {
    RestrictedClass canonical;
    Cert cert;
};
AdjunctionResult adjunction_canonical(const HypersurfaceModel& t);

// The twisted ideal-sheaf sequence 0 -> G - T -> G -> G|_T -> 0.
struct IdealSequence {
    ProductClass left;
    ProductClass mid;
    Cert cert;
};
IdealSequence twist_ideal_sequence(const HypersurfaceModel& t, const ProductClass& g);

// h^i(T, G|_T) deduced from the long exact sequence of the ideal sheaf:
// exactly when the neighbouring ambient groups pin it down, as an interval
// when they only bound it, Unknown otherwise.
struct LesValue {
    enum class Kind { Exact, Interval, Unknown };
    Kind kind = Kind::Unknown;
    i64 value = 0;  // Exact
    i64 lo = 0, hi = 0;  // Interval
    Cert cert;
};
LesValue les_h(const RestrictedClass& rc, int i);

// Symbolic vanishing of h^i(T, G(n)|_T) for the whole guarded range: the
// middle group vanishes in degree i and the left group in degree i+1.
std::optional<Cert> les_zero_family(const HypersurfaceModel& t, const ProductClass& g, int i);

struct Certification {
    bool certified = false;
    Cert cert;
};

// T is connected when its class is nef on both factors and numerically big.
Certification connectedness_certificate(const HypersurfaceModel& t);

// A general member of |T| is smooth when the system is free (Bertini), or has
// one isolated base point on a ruling section satisfying the transversality
// bookkeeping recorded in the certificate.
Certification smoothness_certificate(const HypersurfaceModel& t);

// The boundary F = T cap (E x B): smooth when the restricted system on E x B
// is free and T itself was certified.
Certification boundary_smoothness_certificate(const HypersurfaceModel& t);

// Coordinates of a concrete product class in the ambient lattice
// [E, base-curve generators..., second-factor generators...].
Vec product_coord_vec(const ProductClass& c);

// The degree-zero relations that hold among restricted classes on T.
std::vector<Vec> hypersurface_relation_vectors(const HypersurfaceModel& t);

}  // namespace conecheck
