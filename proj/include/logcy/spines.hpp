#pragma once

#include "logcy/geometry.hpp"

#include <optional>

namespace logcy {

enum class Mark { None, F, B, I };

struct SpineEdge {
	int a = 0, b = 0;
	std::optional<Rat> length; // nullopt: infinite leg
	Vec derivative;            // from a towards b
};

struct SpineVertex {
	QVec position;        // empty for boundary markers
	Mark mark = Mark::None;
	int boundary_ray = -1; // B-leg endpoints
	Vec b_weight;          // B-leg endpoints
};

struct Spine {
	std::vector<SpineVertex> vertices;
	std::vector<SpineEdge> edges;

	std::vector<int> incident(int v) const;
	int valence(int v) const { return (int)incident(v).size(); }
	// derivative of edge e pointing away from v
	Vec outgoing(int e, int v) const;
};

void validate(const Spine &s);

struct SpineWall {
	std::vector<Vec> generators; // codim-1 cone through the origin
	int cone = -1;               // containing maximal cone
	Vec vector;
	bool operator<(const SpineWall &o) const
	{
		return std::tie(cone, generators, vector) <
		       std::tie(o.cone, o.generators, o.vector);
	}
	bool operator==(const SpineWall &o) const
	{
		return cone == o.cone && generators == o.generators && vector == o.vector;
	}
};
using WallSet = std::vector<SpineWall>;

Vec nb_vertex(const Spine &s, int v);
Vec nb_vertex(const AffineManifold &am, const Spine &s, int v);
bool is_balanced(const Spine &s, int v);
bool is_wall_spine(const Spine &s, const WallSet &w);
bool is_transverse(const AffineManifold &am, const Spine &s, const WallSet &w);

// edge-interior points given as (edge, distance from its first vertex)
Spine glue(const Spine &s1, int e1, const Rat &t1, const Spine &s2, int e2,
           const Rat &t2);
Spine concat(const Spine &s1, int v1, const Spine &s2, int v2);
Spine contract(const Spine &s, int edge);

std::map<std::vector<int>, Int> z_cycle(const Spine &s, const Fan &fan);

struct TreeShape {
	int vertices = 0;
	std::vector<std::pair<int, int>> edges;
};
// derivative per edge (from first to second vertex)
std::vector<Vec> solve_weights(const TreeShape &t, const std::map<int, Vec> &nb);

WallSet generate_walls(const AffineManifold &am, const std::vector<Vec> &V,
                       int steps);

} // namespace logcy
