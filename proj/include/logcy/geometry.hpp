#pragma once

#include "logcy/common.hpp"

#include <map>
#include <optional>

namespace logcy {

using Mat = std::vector<Vec>; // rows

Mat identity(int n);
Vec act(const Mat &m, const Vec &v);
Mat matmul(const Mat &a, const Mat &b);
Int det(const Mat &m);
Mat inverse_unimodular(const Mat &m);

struct Lattice {
	int rank = 2;
	explicit Lattice(int r);
	bool contains(const Vec &v) const { return (int)v.size() == rank; }
	bool is_primitive(const Vec &v) const { return gcd_of(v) == 1; }
};

/// Cone spanned by linearly independent primitive generators.
struct RationalCone {
	std::vector<Vec> generators;
	int dim() const { return (int)generators.size(); }
	// coefficients of p in the generators, nullopt if p is off the span
	std::optional<QVec> coordinates(const QVec &p) const;
	bool contains(const QVec &p) const;
	bool relint_contains(const QVec &p) const;
	bool is_face_of(const RationalCone &o) const;
};

struct Fan {
	int rank = 2;
	std::vector<Vec> rays;
	std::vector<std::vector<int>> cones; // maximal cones as ray indices
	bool complete = false;
	bool simplicial = true;

	Fan() = default;
	Fan(int rank, std::vector<Vec> rays, std::vector<std::vector<int>> cones);

	RationalCone cone(const std::vector<int> &idx) const;
	// codim-1 faces: (face ray indices, adjacent maximal cones)
	std::vector<std::pair<std::vector<int>, std::vector<int>>> walls() const;
	// maximal cones containing the point (closed)
	std::vector<int> cones_containing(const QVec &p) const;
	int cone_of(const QVec &p) const; // first maximal cone containing p, -1 if none
	// rank 2, complete: maximal cones in counterclockwise order
	std::vector<int> cyclic_order() const;

	static int rank_of(const std::vector<QVec> &rows);
};

Fan fan_p2();

struct AffineManifold {
	Fan fan;
	std::map<std::pair<int, int>, Mat> transitions; // (from, to) cones
	std::vector<std::vector<int>> singular_cones;   // {} is the origin
	Vec self_intersections;                         // cyclic data if built so

	const Mat &transition(int from, int to) const;
	bool trivial_monodromy() const { return singular_cones.empty(); }
	bool is_singular(const std::vector<int> &face) const;
};

AffineManifold toric_manifold(const Fan &fan);
AffineManifold build_affine_structure_dim2(const Vec &self_intersections);
Mat monodromy(const AffineManifold &am, int base_cone);

// path: sequence of maximal cones, consecutive ones sharing a wall
Vec parallel_transport(const AffineManifold &am, const std::vector<int> &path,
                       const Vec &v);

/// Scalar coefficient per ray.
struct PLFunction {
	Vec coefficients;
};

// linear piece of a vector-valued PL function on a maximal cone: one
// functional per output coordinate
std::vector<QVec> linear_piece(const Fan &fan, const std::vector<Vec> &values,
                               int cone);
QVec pl_value(const Fan &fan, const std::vector<Vec> &values, const QVec &p);
Rat pl_value(const Fan &fan, const PLFunction &f, const QVec &p);

// kink across the interior wall given by its ray indices
Int bend(const AffineManifold &am, const PLFunction &f,
         const std::vector<int> &wall);
Vec bend(const AffineManifold &am, const std::vector<Vec> &values,
         const std::vector<int> &wall);

struct Location {
	std::vector<int> face; // ray indices of the smallest cone
	int maximal_cone = -1;
	bool generic = false; // off every codim-1 cone
};

Location locate(const AffineManifold &am, const QVec &p);

// primitive integer normal to the hyperplane spanned by d-1 vectors
Vec hyperplane_normal(const std::vector<Vec> &span);

} // namespace logcy
