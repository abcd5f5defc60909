#include "theta/bounds.hpp"

#include "theta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace theta {

namespace {

double family_constant(const ConeSystem& cones)
{
    const double t = cones.theta();
    switch (cones.family()) {
    case 2:
        return 1.0;
    case 4:
        return 1.0 / (std::cos(t / 2) - std::sin(t / 2));
    default:
        return std::cos(t / 4) / (std::cos(t / 2) - std::sin(3 * t / 4));
    }
}

} // namespace

FamilySpec family_of(int m)
{
    ConeSystem cones(m);
    return FamilySpec{cones, family_constant(cones)};
}

double path_bound(const FamilySpec& spec, double alpha)
{
    const double t = spec.theta();
    constexpr double slack = 1e-12;
    if (!(alpha >= -slack && alpha <= t / 2 + slack)) {
        throw AlphaOutOfRange("alpha " + std::to_string(alpha) + " outside [0, theta/2]");
    }
    alpha = std::clamp(alpha, 0.0, t / 2);
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    if (spec.x() == 2) {
        return (1 + std::sin(t / 2)) / std::cos(t / 2) * ca + sa;
    }
    return ca / std::cos(t / 2) + (ca * std::tan(t / 2) + sa) * spec.c_const;
}

double spanning_ratio_bound(const FamilySpec& spec)
{
    const double t = spec.theta();
    switch (spec.x()) {
    case 2:
        return 1 + 2 * std::sin(t / 2);
    case 4:
        return 1 + 2 * std::sin(t / 2) / (std::cos(t / 2) - std::sin(t / 2));
    default:
        return std::cos(t / 4) / (std::cos(t / 2) - std::sin(3 * t / 4));
    }
}

double two_direction_bound(const FamilySpec& spec, double alpha)
{
    return std::min(path_bound(spec, alpha), path_bound(spec, spec.theta() / 2 - alpha));
}

namespace {

int cone_or_precondition(Point u, Point v, const ConeSystem& cones, double eps, const char* what)
{
    try {
        return cone_of(u, v, cones, eps);
    } catch (const BoundaryDegeneracy&) {
        throw PreconditionViolated(std::string(what) + " lies on a cone boundary");
    }
}

struct LeftOfBisectorFrame {
    CanonicalTriangle outer; // T_uw
    Point a;                 // far side of T_uw meets the line through v along its left boundary
};

LeftOfBisectorFrame left_frame(Point u, Point v, Point w, const ConeSystem& cones, double eps)
{
    if (cone_or_precondition(u, w, cones, eps, "w relative to u") != 0) {
        throw PreconditionViolated("w must lie in cone 0 of u");
    }
    LeftOfBisectorFrame f{canonical_triangle_in_cone(u, w, 0, cones), {}};
    if (!f.outer.contains(v, eps)) {
        throw PreconditionViolated("v must lie in the canonical triangle of u and w");
    }
    if (orientation(u, w, v, eps) != Orientation::CounterClockwise) {
        throw PreconditionViolated("v must lie strictly left of uw");
    }
    const double rise = dot(w - v, cones.bisector(0));
    f.a = v + (rise / std::cos(cones.theta() / 2)) * cones.boundary_ccw(0);
    return f;
}

} // namespace

QuadrilateralTerms lemma2_terms(Point u, Point v, Point w, const FamilySpec& spec, double eps)
{
    const LeftOfBisectorFrame f = left_frame(u, v, w, spec.cones, eps);
    const int i = cone_or_precondition(v, w, spec.cones, eps, "w relative to v");
    const CanonicalTriangle inner = canonical_triangle_in_cone(v, w, i, spec.cones);
    const Point c = inner.corner_ccw;
    const Point d = inner.corner_cw;

    QuadrilateralTerms t;
    t.cone = i;
    t.corner_c = distance(c, w);
    t.corner_d = distance(d, w);
    t.corner_a = distance(f.a, w);
    t.path_c = distance(v, c) + t.corner_c;
    t.path_d = distance(v, d) + t.corner_d;
    t.path_a = distance(v, f.a) + t.corner_a;

    const int k = spec.k();
    const bool applies = (i >= 1 && i <= k - 1) || (i == k && t.corner_c <= t.corner_d);
    if (!applies) {
        throw PreconditionViolated("cone " + std::to_string(i) +
                                   " of v does not satisfy the quadrilateral cone condition");
    }
    return t;
}

bool lemma2_check(Point u, Point v, Point w, const FamilySpec& spec, double slack)
{
    const QuadrilateralTerms t = lemma2_terms(u, v, w, spec);
    const double tol = slack * distance(u, w);
    return std::max(t.path_c, t.path_d) <= t.path_a + tol &&
           std::max(t.corner_c, t.corner_d) <= t.corner_a + tol;
}

double lemma3_rhs(const Lemma3Config& cfg)
{
    const double denom = std::cos(cfg.theta / 2 - cfg.beta) - std::sin(cfg.theta / 2 + cfg.gamma);
    if (!(denom > 0)) {
        throw DegenerateDenominator("cos(theta/2 - beta) - sin(theta/2 + gamma) is not positive");
    }
    return (std::cos(cfg.gamma) - std::sin(cfg.beta)) / denom;
}

DisplacedPathTerms lemma3_terms(Point u, Point v, Point w, const ConeSystem& cones, double eps)
{
    const LeftOfBisectorFrame f = left_frame(u, v, w, cones, eps);
    const int i = cone_or_precondition(v, w, cones, eps, "w relative to v");
    if (i == 0) {
        throw PreconditionViolated("w must not lie in cone 0 of v");
    }
    const CanonicalTriangle inner = canonical_triangle_in_cone(v, w, i, cones);
    const Point wa = f.a - w;
    const Point wv = v - w;

    DisplacedPathTerms t;
    t.config.theta = cones.theta();
    t.config.beta = std::atan2(std::abs(cross(wa, wv)), dot(wa, wv));
    t.config.gamma = inner.alpha;
    const Point y = inner.corner_ccw;
    const Point z = inner.corner_cw;
    const Point p = distance(y, w) >= distance(z, w) ? y : z;
    t.v_to_corner = distance(v, p);
    t.corner_to_w = distance(p, w);
    t.v_to_a = distance(v, f.a);
    t.a_to_w = distance(f.a, w);
    t.scale = distance(u, w);
    return t;
}

bool lemma3_inequality_holds(const DisplacedPathTerms& t, double c, double slack)
{
    return t.v_to_corner + c * t.corner_to_w <= t.v_to_a + c * t.a_to_w + slack * t.scale;
}

bool lemma3_check(Point u, Point v, Point w, const FamilySpec& spec, double slack)
{
    const DisplacedPathTerms t = lemma3_terms(u, v, w, spec.cones);
    double threshold = 0.0;
    try {
        threshold = lemma3_rhs(t.config);
    } catch (const DegenerateDenominator& e) {
        throw PreconditionViolated(e.what());
    }
    if (spec.c_const < threshold) {
        throw PreconditionViolated("family constant is below the configuration threshold");
    }
    return lemma3_inequality_holds(t, spec.c_const, slack);
}

const char* to_string(ConfigurationType type)
{
    switch (type) {
    case ConfigurationType::TypeI:
        return "I";
    case ConfigurationType::TypeII:
        return "II";
    case ConfigurationType::TypeIII:
        return "III";
    case ConfigurationType::TypeIV:
        return "IV";
    }
    return "?";
}

std::partial_ordering corner_distance_order(Point prev, Point cur, const ConeSystem& cones, double eps)
{
    const CanonicalTriangle t = canonical_triangle(prev, cur, cones, eps);
    return distance(t.corner_ccw, cur) <=> distance(t.corner_cw, cur);
}

ConfigurationType classify_configuration(Point prev, Point cur, const FamilySpec& spec,
                                         std::partial_ordering corner_cmp, double eps)
{
    const int i = cone_of(prev, cur, spec.cones, eps);
    if (i == 0) {
        return cur.x >= prev.x ? ConfigurationType::TypeIII : ConfigurationType::TypeIV;
    }
    const int k = spec.k();
    if (i > spec.m() / 2) {
        throw PreconditionViolated("cone " + std::to_string(i) + " is outside the classified range");
    }
    if (spec.x() == 2) {
        if (i == k) {
            return ConfigurationType::TypeI;
        }
        if (i < k) {
            return ConfigurationType::TypeII;
        }
        throw PreconditionViolated("cone " + std::to_string(i) + " is below the horizontal for 4k+2");
    }
    if (i > k || (i == k && corner_cmp == std::partial_ordering::greater)) {
        return ConfigurationType::TypeI;
    }
    return ConfigurationType::TypeII;
}

ConfigurationType classify_configuration(Point prev, Point cur, const FamilySpec& spec, double eps)
{
    return classify_configuration(prev, cur, spec, corner_distance_order(prev, cur, spec.cones, eps), eps);
}

} // namespace theta
