#pragma once

#include "logcy/spines.hpp"
#include "logcy/theta.hpp"
#include "logcy/vertex.hpp"

#include <json.hpp>

namespace logcy {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field.
struct InputError : Error {
	using Error::Error;
};

struct Grading {
	std::vector<Vec> points;  // per ray
	std::vector<Vec> classes; // per class generator
};

/// A diagram plus the run parameters that travel with it.
struct Problem {
	Diagram d;
	int bound = 2;
	std::uint64_t seed = 1;
	std::optional<Grading> grading;
	std::vector<PLFunction> nef;
	std::optional<PLFunction> rees;
};

Json to_json(const Rat &r);
Json to_json(const QVec &v);
Json to_json(const Series &s);
Json geometry_json(const AffineManifold &am);
Json monoid_json(const Monoid &m);
Json to_json(const Problem &p);
Json to_json(const Spine &s);
Json to_json(const WallSet &w);
Json to_json(const DualComplex &K);

Rat rat_from(const Json &j, const std::string &field);
QVec qvec_from(const Json &j, const std::string &field);
Vec vec_from(const Json &j, const std::string &field);
AffineManifold geometry_from(const Json &j);
Monoid monoid_from(const Json &j);
Series series_from(const Json &j, const Ring &r, const std::string &field);
Problem problem_from(const Json &j);
Spine spine_from(const Json &j);
WallSet wallset_from(const Json &j);
DualComplex complex_from(const Json &j);

// rays sorted lexicographically, per-ray data permuted along
Problem canonical(const Problem &p);

Json theta_record(const Vec &P, const QVec &x, const Series &value);
Json table_json(const MirrorAlgebra &alg);
Json vertex_table_json(const VertexAlgebra &va);

Json read_json(const std::string &path);
std::string dump(const Json &j);

} // namespace logcy
