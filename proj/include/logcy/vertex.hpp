#pragma once

#include "logcy/theta.hpp"

namespace logcy {

/// Simplices before gluing, with the gluing map onto the glued complex.
struct DualComplex {
	int dim = 0;                             // n: maximal simplices have n+1 vertices
	std::vector<std::vector<int>> simplices; // ordered vertex lists
	std::vector<int> glue;                   // empty: identity
	std::vector<int> orientation;            // +1/-1 per simplex, empty: all +1

	int glued(int v) const { return glue.empty() ? v : glue.at(v); }
	int orient(size_t s) const { return orientation.empty() ? 1 : orientation.at(s); }
	int vertex_count() const;
};

DualComplex dual_complex(const Fan &fan);
DualComplex cone_over_cycle(int k);

struct ComplexReport {
	bool ok = true;
	std::string failure;
	std::vector<std::vector<int>> boundary; // maximal simplices of L
	size_t checked = 0;
};

ComplexReport check_pseudomanifold(const DualComplex &K);
ComplexReport link_homology_check(const DualComplex &K);
// reduced Betti numbers over Q, index i+1 holds degree i (starting at -1)
std::vector<int> reduced_betti(const std::vector<std::vector<int>> &maximal);

using SigmaPoint = std::map<int, Rat>; // pre-gluing vertex -> positive coefficient

std::optional<SigmaPoint> sr_multiply(const DualComplex &K, const SigmaPoint &a,
                                      const SigmaPoint &b);

struct VertexAlgebra {
	DualComplex K;
	std::vector<Vec> rays; // one per glued vertex
	int bound = 1;
	std::vector<Vec> basis;
	std::map<std::pair<Vec, Vec>, std::map<Vec, Big>> table;
};

VertexAlgebra vertex_algebra(const DualComplex &K, const std::vector<Vec> &rays,
                             int bound);
VertexAlgebra vertex_algebra(const Fan &fan, int bound);
std::vector<SigmaPoint> preimages(const VertexAlgebra &va, const Vec &P);
Vec image(const VertexAlgebra &va, const SigmaPoint &p);
std::map<Vec, Big> vertex_multiply(const VertexAlgebra &va, const Vec &a,
                                   const Vec &b);

// structure constants with every curve class sent to zero
std::map<Vec, Big> central_fibre(const Expansion &e);
Report compare_central_fibre(const MirrorAlgebra &alg, const VertexAlgebra &va);

} // namespace logcy
