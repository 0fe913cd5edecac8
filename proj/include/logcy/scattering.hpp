#pragma once

#include "logcy/geometry.hpp"
#include "logcy/series.hpp"

#include <optional>

namespace logcy {

struct Wall {
	QVec apex;     // a point of the support (the vertex for rays)
	Vec direction; // primitive
	bool line = false;
	Vec normal; // primitive, orthogonal to direction
	Series f;

	bool contains(const QVec &p) const;
	// parameter s with p = apex + s * direction, if p on the support line
	std::optional<Rat> parameter(const QVec &p) const;
	Rat side(const QVec &p) const; // <normal, p - apex>
};

/// Piecewise linear section: one class vector per ray of the fan.
struct PLSection {
	std::vector<Vec> values;
};

struct Diagram {
	AffineManifold ambient;
	std::shared_ptr<const Monoid> monoid;
	int k = 1;
	std::vector<Wall> walls;
	std::optional<PLSection> section;

	Ring ring() const { return Ring{monoid, ambient.fan.rank, k}; }
	Series one() const { return Series::one(ring()); }
	Series monomial(const Big &c, const Vec &q, const Vec &m) const
	{
		return Series::monomial(ring(), c, q, m);
	}
};

Wall make_wall(const QVec &apex, const Vec &direction, bool line,
               const Vec &normal, const Series &f);
void validate(const Diagram &d);

// z^v f^{<n,v>} from the <n,.> > 0 side (side = +1), inverse for side = -1
Series wall_cross(const Wall &w, const Vec &v, int side);
// the ring homomorphism z^m -> z^m g^{side <n,m>} applied to a series
Series apply_crossing(const Series &g, const Vec &n, int side, const Series &s);

// fan rays that act on monomials: a non-identity transition or a section kink
struct RayInfo {
	int cw = -1, ccw = -1; // adjacent maximal cones
	bool active = false;
	Mat to_ccw = identity(2); // transition from cw to ccw chart
	Vec kink;
};
std::vector<RayInfo> ray_info(const Diagram &d);
bool has_active_rays(const Diagram &d);
int wall_cone(const Diagram &d, const Wall &w);

// ---- section data ----
Mat section_piece(const Diagram &d, int cone);     // classes x rank
Vec section_kink(const Diagram &d, int ray);       // kink class across a ray
bool has_kinks(const Diagram &d);
Vec height(const Diagram &d, int cone, const Vec &m, const Vec &a);
bool in_positive(const Vec &h);
// class increment for a monomial z^m moving from cone a to cone b
Vec kink_increment(const Diagram &d, int from, int to, const Vec &m);

// ---- joints and loops ----
std::vector<QVec> joints(const Diagram &d);
bool is_kink_point(const Diagram &d, const QVec &p);

struct Automorphism {
	std::vector<Series> images; // images of z^{e_i}
	bool is_identity() const;
	int first_deviation_order() const; // -1 when identity
};

// counterclockwise loop around p; the first crossing is the first locus at
// angle >= angle(start) (any generic start when empty)
Automorphism path_ordered_product(const Diagram &d, const QVec &p,
                                  const Vec &start = {});

struct JointReport {
	QVec point;
	bool consistent = true;
	bool delegated = false; // checked through theta functions
	int first_failure_order = -1;
	std::string detail;
};

struct ConsistencyReport {
	std::vector<JointReport> joints;
	bool consistent() const;
};

ConsistencyReport is_consistent(const Diagram &d, int theta_norm = 2);

Diagram complete(const Diagram &initial, int k);


} // namespace logcy
