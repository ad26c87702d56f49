#pragma once
// Affine forms a*n + b in one integer parameter n, valid on the range n >= guard.
// Every comparison below is decided for the *whole* guarded range by slope sign
// plus a boundary evaluation; nothing is ever sampled.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace conecheck {

using i64 = std::int64_t;

// Arithmetic everywhere in the engine is exact; overflow would be a bug, so trap it.
i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

struct LinForm {
    i64 slope = 0;
    i64 offset = 0;
    i64 guard = 1;  // the form only makes claims for n >= guard

    LinForm() = default;
    LinForm(i64 s, i64 o, i64 g) : slope(s), offset(o), guard(g) {}

    static LinForm constant(i64 c) { return LinForm(0, c, 1); }
    static LinForm param(i64 g = 1) { return LinForm(1, 0, g); }

    bool is_constant() const { return slope == 0; }

    // Value at a concrete parameter; refuses to evaluate outside the guard.
    i64 eval(i64 n) const;

    // The constant value of a slope-0 form.
    i64 as_constant() const;

    bool operator==(const LinForm& o) const {
        return slope == o.slope && offset == o.offset && guard == o.guard;
    }
};

LinForm operator+(const LinForm& a, const LinForm& b);
LinForm operator-(const LinForm& a, const LinForm& b);
LinForm operator-(const LinForm& a);
LinForm operator*(i64 k, const LinForm& a);

// Range decisions: "f(n) REL c holds for every n >= f.guard".
// A false return means "not provable for the whole range" (it may hold for some n).
bool always_ge(const LinForm& f, i64 c);
bool always_gt(const LinForm& f, i64 c);
bool always_le(const LinForm& f, i64 c);
bool always_lt(const LinForm& f, i64 c);
bool always_eq(const LinForm& f, i64 c);

// Rendering: "4n-3 [n>=2]" for symbolic forms, plain integer for constants.
std::string to_string(const LinForm& f);

}  // namespace conecheck
