#pragma once
// The Du Bois criterion for cones, as a decision procedure over a cohomology
// provider: the cone over a polarized base (with an optional reduced boundary)
// is decided by the vanishing of h^i(base, n*M - Sigma) for every i in
// [1, dim base] and every n >= 1. The quantifier over n is discharged by an
// explicit sweep below the symbolic guards and linear-inequality family
// certificates beyond them; the two ranges must cover all of n >= 1.

#include <optional>
#include <string>
#include <vector>

#include "product.hpp"

namespace conecheck {

// A polarized cone base. The criterion needs nothing else: the dimension, an
// ampleness certificate for the polarization, and the twisted cohomology both
// at concrete parameters and as guarded families.
class ConeBase {
public:
    virtual ~ConeBase() = default;
    virtual std::string describe() const = 0;
    virtual int dim() const = 0;
    virtual Decision polarization_ample() const = 0;
    // h^i(base, n*M - Sigma) at a concrete n.
    virtual LesValue twisted_h(i64 n, int i) const = 0;
    // A certificate that h^i(base, n*M - Sigma) = 0 for every n >= guard.
    virtual std::optional<Cert> twisted_zero_family(i64 guard, int i) const = 0;
};

class CurveCone final : public ConeBase {
public:
    explicit CurveCone(DivisorClass polarization,
                       std::optional<DivisorClass> boundary = std::nullopt);
    std::string describe() const override;
    int dim() const override { return 1; }
    Decision polarization_ample() const override;
    LesValue twisted_h(i64 n, int i) const override;
    std::optional<Cert> twisted_zero_family(i64 guard, int i) const override;

private:
    DivisorClass twist(i64 n) const;
    DivisorClass family(i64 guard) const;
    DivisorClass m_;
    std::optional<DivisorClass> boundary_;
};

class SurfaceCone final : public ConeBase {
public:
    explicit SurfaceCone(SurfaceClass polarization,
                         std::optional<SurfaceClass> boundary = std::nullopt);
    std::string describe() const override;
    int dim() const override { return 2; }
    Decision polarization_ample() const override;
    LesValue twisted_h(i64 n, int i) const override;
    std::optional<Cert> twisted_zero_family(i64 guard, int i) const override;

private:
    SurfaceClass twist(i64 n) const;
    SurfaceClass family(i64 guard) const;
    SurfaceClass m_;
    std::optional<SurfaceClass> boundary_;
};

class HypersurfaceCone final : public ConeBase {
public:
    HypersurfaceCone(const HypersurfaceModel& t, ProductClass polarization,
                     std::optional<ProductClass> boundary = std::nullopt);
    std::string describe() const override;
    int dim() const override { return 2; }
    Decision polarization_ample() const override;
    LesValue twisted_h(i64 n, int i) const override;
    std::optional<Cert> twisted_zero_family(i64 guard, int i) const override;

private:
    ProductClass twist(i64 n) const;
    ProductClass family(i64 guard) const;
    const HypersurfaceModel* t_;
    ProductClass m_;
    std::optional<ProductClass> boundary_;
};

struct DbWitness {
    i64 n = 0;
    int i = 0;
    i64 value = 0;  // the (certified lower bound of the) nonvanishing dimension
};

struct DbResult {
    Tri state = Tri::Unknown;
    std::optional<DbWitness> witness;  // present exactly when state is False
    Cert cert;
};

// Decide the vanishing criterion. True comes with a covering certificate
// (sweep nodes for n below each tail guard plus one family tail per degree),
// False with a concrete witness, Unknown with the values that failed to
// resolve. Throws when the polarization carries no ampleness certificate.
DbResult db_criterion(const ConeBase& base, i64 nsweep = 8);

struct CartierIndex {
    i64 index = 1;
    Cert cert;
};

// Smallest m >= 1 with m*K_T in the lattice spanned by the polarization and
// the declared restriction relations. Throws when no multiple lands in it.
CartierIndex cartier_index(const HypersurfaceModel& t, const RestrictedClass& m);

// The assembled bundle for the cone over a polarized hypersurface: the pair
// criterion with the given boundary, the space criterion without it, the
// Cartier index of the canonical class, and the supporting connectedness and
// smoothness certificates, under one assumption ledger.
struct Verdict {
    DbResult pair;
    DbResult space;
    i64 cartier = 0;
    std::vector<std::string> assumptions;
    Cert cert;
};
Verdict assemble_verdict(const HypersurfaceModel& t, const ProductClass& polarization,
                         const std::optional<ProductClass>& boundary, i64 nsweep = 8);

}  // namespace conecheck
