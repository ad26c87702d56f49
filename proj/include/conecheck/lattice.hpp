#pragma once
// Integer-lattice utilities on small dense vectors. Everything is exact int64;
// the matrices handled here are tiny (dimension <= ~10, entries in the hundreds).
//
// A ZLattice is the Z-span of a finite generator list inside Z^dim. Membership
// is decided by integer row-echelon reduction (Hermite-style); the order of a
// vector in the quotient Z^dim / L is computed independently via Smith normal
// form, so the two routes cross-check each other in tests.

#include <optional>
#include <vector>

#include "conecheck/linform.hpp"

namespace conecheck {

using Vec = std::vector<i64>;

class ZLattice {
public:
    ZLattice(std::vector<Vec> gens, std::size_t dim);

    std::size_t dim() const { return dim_; }

    // v in span_Z(gens)?
    bool contains(Vec v) const;

    // Minimal m >= 1 with m*v in the lattice; nullopt when no multiple lands
    // in it (v is not even rationally dependent on the generators).
    std::optional<i64> order_in_quotient(Vec v) const;

private:
    std::size_t dim_;
    std::vector<Vec> basis_;       // row-echelon generators, pivots strictly right-down
    std::vector<std::size_t> pivot_col_;
};

}  // namespace conecheck
