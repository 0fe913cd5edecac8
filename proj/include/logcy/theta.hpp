#pragma once

#include "logcy/scattering.hpp"

#include <array>
#include <cstdint>
#include <mutex>
#include <random>

namespace logcy {

struct Mono {
	Big c;
	Vec q;
	Vec m;
	bool operator==(const Mono &o) const
	{
		return c == o.c && q == o.q && m == o.m;
	}
};

struct BrokenLine {
	Vec P;
	QVec x;
	std::vector<Mono> segments; // from infinity to x
	std::vector<QVec> bends;    // junction points, one fewer than segments
	const Mono &final() const { return segments.back(); }
};

std::vector<BrokenLine> enumerate_broken_lines(const Diagram &d, const Vec &P,
                                               const QVec &x);
Series theta_local(const Diagram &d, const Vec &P, const QVec &x);

// wall crossing at a wall point with kink and chart change, for a, b as in
// the four identities; throws on non-generic input. claimed replaces the
// product of wall functions at the crossing point.
bool theta_consistency_check(const Diagram &d, size_t wall, const Vec &P,
                             const QVec &a, const QVec &b,
                             std::string *detail = nullptr,
                             const Series *claimed = nullptr);
// picks a, b near the wall point x and checks every direction of norm <= n
bool theta_consistent_at(const Diagram &d, size_t wall, const QVec &x,
                         int norm, std::string *detail = nullptr);
// one point per wall piece between joints
std::vector<QVec> wall_sample_points(const Diagram &d, size_t wall);

// structure constants: element of the class ring, stored as a series with
// lattice exponent 0
Series structure_constant(const Diagram &d, const std::vector<Vec> &inputs,
                          const Vec &Q, std::uint64_t seed = 1,
                          int samples = 2);
// every nonzero coefficient of the product of theta functions
std::map<Vec, Series> product(const Diagram &d, const std::vector<Vec> &inputs,
                              std::uint64_t seed = 1, int samples = 2);
// lattice exponents reachable from zero through wall terms of order < k
std::vector<Vec> exponent_shifts(const Diagram &d);

using Expansion = std::map<Vec, Series>; // Q -> coefficient

struct MirrorAlgebra {
	Diagram d;
	int bound = 1;
	std::uint64_t seed = 1;
	int samples = 2;
	std::vector<Vec> basis;
	std::map<std::pair<Vec, Vec>, Expansion> table;
	// products outside the table, filled on demand
	std::shared_ptr<std::map<std::pair<Vec, Vec>, Expansion>> extra =
	    std::make_shared<std::map<std::pair<Vec, Vec>, Expansion>>();
	std::shared_ptr<std::mutex> lock = std::make_shared<std::mutex>();
};

std::vector<Vec> basis_points(int bound);
MirrorAlgebra build_algebra(const Diagram &d, int bound, std::uint64_t seed = 1,
                            int samples = 2);
Expansion multiply(const MirrorAlgebra &alg, const Vec &a, const Vec &b);
Expansion multiply(const MirrorAlgebra &alg, const Expansion &x, const Vec &c);

struct Report {
	bool ok = true;
	size_t checked = 0;
	std::string failure; // first counterexample
	void fail(const std::string &why)
	{
		if (ok)
			failure = why;
		ok = false;
	}
};

Report check_grading(const MirrorAlgebra &alg, const std::vector<Vec> &w_points,
                     const std::vector<Vec> &w_classes);
Report check_convexity(const MirrorAlgebra &alg, const PLFunction &F);
Report check_associativity(const MirrorAlgebra &alg,
                           const std::vector<std::array<Vec, 3>> &triples);

struct AbsoluteTable {
	std::map<std::pair<Vec, Vec>, std::map<Vec, Big>> table;
	std::vector<std::string> unstable; // entries that move between k-1 and k
};
AbsoluteTable absolutize(const MirrorAlgebra &alg);

struct Filtration {
	std::map<Vec, Int> level;
	Report multiplicative;
};
Filtration rees_filtration(const MirrorAlgebra &alg, const PLFunction &W);

std::string key_str(const Vec &a, const Vec &b);

} // namespace logcy
