#pragma once

#include "theta/geometry.hpp"

#include <compare>

namespace theta {

/// Cone-count family m = 4k + x and the constant c multiplying the far-side
/// term of the path bound.
struct FamilySpec {
    ConeSystem cones;
    double c_const;

    int m() const { return cones.cone_count(); }
    int k() const { return cones.k(); }
    int x() const { return cones.family(); }
    double theta() const { return cones.theta(); }
};

/// Throws UnsupportedConeCount for m < 6.
FamilySpec family_of(int m);

/// Upper bound on delta(u, w) / |uw| for a pair whose canonical triangle has
/// angle `alpha` in [0, theta/2]. Throws AlphaOutOfRange otherwise.
double path_bound(const FamilySpec& spec, double alpha);

/// The family's worst-case spanning ratio with respect to Vis(P, S).
double spanning_ratio_bound(const FamilySpec& spec);

/// min(path_bound(alpha), path_bound(theta/2 - alpha)): the bound when both
/// canonical triangles of a pair are taken into account (odd cone counts).
double two_direction_bound(const FamilySpec& spec, double alpha);

/// Lengths entering the quadrilateral inequality for u, v, w with
/// w in C_0^u and v in T_uw left of uw.
struct QuadrilateralTerms {
    int cone = 0;          ///< cone of v containing w
    double path_c = 0.0;   ///< |vc| + |cw|
    double path_d = 0.0;   ///< |vd| + |dw|
    double path_a = 0.0;   ///< |va| + |aw|
    double corner_c = 0.0; ///< |cw|
    double corner_d = 0.0; ///< |dw|
    double corner_a = 0.0; ///< |aw|
};

/// Throws PreconditionViolated if the geometric or cone hypotheses fail.
QuadrilateralTerms lemma2_terms(Point u, Point v, Point w, const FamilySpec& spec,
                                double eps = Tolerances{}.geom);

/// Both quadrilateral inequalities hold with slack `slack * |uw|`.
bool lemma2_check(Point u, Point v, Point w, const FamilySpec& spec, double slack = 1e-9);

struct Lemma3Config {
    double beta = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
};

/// Minimal constant c for which the displaced-path inequality is
/// guaranteed. Throws DegenerateDenominator if the denominator is <= 0.
double lemma3_rhs(const Lemma3Config& cfg);

struct DisplacedPathTerms {
    Lemma3Config config;
    double v_to_corner = 0.0; ///< |vp|
    double corner_to_w = 0.0; ///< |pw|
    double v_to_a = 0.0;      ///< |va|
    double a_to_w = 0.0;      ///< |aw|
    double scale = 1.0;       ///< |uw|
};

/// Geometry for w in C_0^u, v in T_uw left of uw, w not in C_0^v.
/// Throws PreconditionViolated otherwise.
DisplacedPathTerms lemma3_terms(Point u, Point v, Point w, const ConeSystem& cones,
                                double eps = Tolerances{}.geom);

/// |vp| + c |pw| <= |va| + c |aw| with slack `slack * |uw|`, for an
/// arbitrary constant c (no threshold requirement).
bool lemma3_inequality_holds(const DisplacedPathTerms& terms, double c, double slack = 1e-9);

/// The displaced-path inequality with the family constant. Throws
/// PreconditionViolated if the constant is below lemma3_rhs for this
/// configuration (or the threshold is undefined).
bool lemma3_check(Point u, Point v, Point w, const FamilySpec& spec, double slack = 1e-9);

enum class ConfigurationType { TypeI, TypeII, TypeIII, TypeIV };

const char* to_string(ConfigurationType type);

/// |c cur| <=> |d cur| where c and d are the upper and lower corner of
/// T(prev, cur), i.e. its counterclockwise and clockwise corners.
std::partial_ordering corner_distance_order(Point prev, Point cur, const ConeSystem& cones,
                                            double eps = Tolerances{}.geom);

/// Configuration class of consecutive chain vertices prev -> cur, in the
/// frame where the chain runs counterclockwise above prev. Family 4k+2
/// uses the cone-k rule for type I; other families split cone k with
/// `corner_cmp`. Directions outside cones 0..floor(m/2) are not covered by
/// any type and throw PreconditionViolated.
ConfigurationType classify_configuration(Point prev, Point cur, const FamilySpec& spec,
                                         std::partial_ordering corner_cmp,
                                         double eps = Tolerances{}.geom);

/// Convenience overload computing corner_cmp from the geometry.
ConfigurationType classify_configuration(Point prev, Point cur, const FamilySpec& spec,
                                         double eps = Tolerances{}.geom);

} // namespace theta
