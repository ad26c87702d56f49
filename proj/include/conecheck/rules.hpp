#pragma once
// Every rule name a certificate node can carry. Emission sites and the replay
// interpreter both use these constants, so the catalog in replay.cpp stays total.

namespace conecheck::rules {

// range decisions and lattice leaves
inline constexpr char kIneqAlways[] = "ineq.always";
inline constexpr char kLatticeMember[] = "lattice.member";
inline constexpr char kLatticeOrder[] = "lattice.order";

// declared model inputs (trusted leaves)
inline constexpr char kFactH0[] = "fact.h0";
inline constexpr char kFactBpf[] = "fact.bpf";
inline constexpr char kFactNoneffective[] = "fact.noneffective";
inline constexpr char kModelInput[] = "model.input";

// curve cohomology rule chain
inline constexpr char kCurveH0Negative[] = "curve.h0.negative-degree";
inline constexpr char kCurveH0DegreeZero[] = "curve.h0.degree-zero";
inline constexpr char kCurveH0RRRange[] = "curve.h0.riemann-roch-range";
inline constexpr char kCurveH0Fact[] = "curve.h0.declared-fact";
inline constexpr char kCurveH0Point[] = "curve.h0.single-point";
inline constexpr char kCurveH0Cover[] = "curve.h0.double-cover";
inline constexpr char kCurveH0BpfSub[] = "curve.h0.bpf-subtraction";
inline constexpr char kCurveH0Serre[] = "curve.h0.serre-completion";
inline constexpr char kCurveH1Dual[] = "curve.h1.serre-dual";
inline constexpr char kCurveHTop[] = "curve.h.top-vanishing";
inline constexpr char kCurveH0Unknown[] = "curve.h0.unknown";

// curve basepoint-freeness
inline constexpr char kCurveBpfDeclared[] = "curve.bpf.declared";
inline constexpr char kCurveBpfBigDegree[] = "curve.bpf.big-degree";
inline constexpr char kCurveBpfPullback[] = "curve.bpf.pullback";
inline constexpr char kCurveBpfPointDrop[] = "curve.bpf.point-drop";
inline constexpr char kCurveBpfBasePoint[] = "curve.bpf.base-point";
inline constexpr char kCurveBpfEmptySystem[] = "curve.bpf.empty-system";
inline constexpr char kCurveBpfUnknown[] = "curve.bpf.unknown";
inline constexpr char kCurveBpfDropAt[] = "curve.bpf.drop-at-point";

// theta characteristic bookkeeping
inline constexpr char kCurveTheta[] = "curve.theta.even-characteristic";

// Euler characteristic straight from Riemann-Roch
inline constexpr char kCurveChi[] = "curve.chi";

// curve base locus
inline constexpr char kCurveBsSupport[] = "curve.bs.support";
inline constexpr char kCurveBsWholeCurve[] = "curve.bs.whole-curve";
inline constexpr char kCurveBsUnknown[] = "curve.bs.unknown";

// curve symbolic families
inline constexpr char kCurveFamilyH0Zero[] = "curve.family.h0-negative-degree";
inline constexpr char kCurveFamilyH1Zero[] = "curve.family.h1-large-degree";
inline constexpr char kCurveFamilyHTop[] = "curve.family.top-vanishing";

// ruled surface
inline constexpr char kSurfIntersect[] = "surface.intersect";
inline constexpr char kSurfHPushforward[] = "surface.h.pushforward";
inline constexpr char kSurfH2Relative[] = "surface.h2.relative-vanishing";
inline constexpr char kSurfHBetween[] = "surface.h.between-sections";
inline constexpr char kSurfHSerreDual[] = "surface.h.serre-dual";
inline constexpr char kSurfHUnknown[] = "surface.h.unknown";
inline constexpr char kSurfChi[] = "surface.chi";
inline constexpr char kSurfAmple[] = "surface.ample.two-ray";
inline constexpr char kSurfNef[] = "surface.nef.two-ray";
inline constexpr char kSurfBig[] = "surface.big.nef-positive-square";
inline constexpr char kSurfFamilyH2[] = "surface.family.h2-structural";
inline constexpr char kSurfFamilyH1[] = "surface.family.h1-min-degree";
inline constexpr char kSurfFamilyH0[] = "surface.family.h0-max-degree";
inline constexpr char kSurfFamilyBetween[] = "surface.family.between-sections";
inline constexpr char kSurfFamilySerre[] = "surface.family.serre-dual";
inline constexpr char kSurfSectionDivisor[] = "surface.section-divisor";
inline constexpr char kSurfBsSummand[] = "surface.bs.summand-region";
inline constexpr char kSurfBsIntersect[] = "surface.bs.intersection";
inline constexpr char kSurfBsConfirm[] = "surface.bs.point-confirmed";
inline constexpr char kSurfBsUnknown[] = "surface.bs.unknown";

// product threefold
inline constexpr char kProdKunneth[] = "product.h.kunneth";
inline constexpr char kProdKunnethTerm[] = "product.h.kunneth-term";
inline constexpr char kProdKunnethUnknown[] = "product.h.kunneth-unknown";
inline constexpr char kProdChi[] = "product.chi";
inline constexpr char kProdHTop[] = "product.h.top-vanishing";
inline constexpr char kProdFamilyKunneth[] = "product.family.kunneth-zero";
inline constexpr char kProdTriple[] = "product.intersect.triple";
inline constexpr char kProdSES[] = "product.ideal-sheaf-sequence";
inline constexpr char kProdLesP1[] = "product.les.pattern1";
inline constexpr char kProdLesP2[] = "product.les.pattern2";
inline constexpr char kProdLesInterval[] = "product.les.interval";
inline constexpr char kProdLesPinch[] = "product.les.interval-pinch";
inline constexpr char kProdLesUnknown[] = "product.les.unknown";
inline constexpr char kProdFamilyLes[] = "product.family.les-zero";
inline constexpr char kProdAdjunction[] = "product.adjunction.canonical";
inline constexpr char kProdConnected[] = "product.connected.ample-triple";
inline constexpr char kProdConnectedNo[] = "product.connected.not-certified";
inline constexpr char kProdSmoothPoint[] = "product.smooth.single-base-point";
inline constexpr char kProdSmoothFree[] = "product.smooth.base-point-free";
inline constexpr char kProdSmoothNo[] = "product.smooth.not-certified";
inline constexpr char kProdSmoothBoundary[] = "product.smooth.boundary-off-section";
inline constexpr char kProdSmoothBoundaryNo[] = "product.smooth.boundary-not-certified";

// cone criterion
inline constexpr char kConeAmpleCurve[] = "cone.ample.curve-degree";
inline constexpr char kConeAmpleSurface[] = "cone.ample.surface-two-ray";
inline constexpr char kConeAmpleRestriction[] = "cone.ample.restriction-of-ample";
inline constexpr char kConeSweepZero[] = "cone.db.sweep-zero";
inline constexpr char kConeWitness[] = "cone.db.witness";
inline constexpr char kConeTail[] = "cone.db.symbolic-tail";
inline constexpr char kConeVanishing[] = "cone.db.vanishing";
inline constexpr char kConeRefuted[] = "cone.db.refuted";
inline constexpr char kConeUnknown[] = "cone.db.unknown";
inline constexpr char kConeCartier[] = "cone.cartier.index";
inline constexpr char kVerdict[] = "verdict.assembled";

}  // namespace conecheck::rules
