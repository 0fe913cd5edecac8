#include "logcy/vertex.hpp"

#include <algorithm>
#include <set>

namespace logcy {

int DualComplex::vertex_count() const
{
	int n = 0;
	for (auto &s : simplices)
		for (int v : s)
			n = std::max(n, v + 1);
	return n;
}

DualComplex dual_complex(const Fan &fan)
{
	DualComplex K;
	K.dim = fan.rank - 1;
	K.simplices = fan.cones;
	for (auto &c : fan.cones) {
		Mat m;
		for (int r : c)
			m.push_back(fan.rays[r]);
		K.orientation.push_back((int)c.size() == fan.rank && det(m) < 0 ? -1 : 1);
	}
	return K;
}

DualComplex cone_over_cycle(int k)
{
	if (k < 3)
		throw Error("cone over cycle: need at least 3 vertices");
	DualComplex K;
	K.dim = 2;
	for (int i = 1; i <= k; ++i)
		K.simplices.push_back({0, i, i % k + 1});
	return K;
}

static std::vector<int> glued_set(const DualComplex &K, const std::vector<int> &s)
{
	std::vector<int> out;
	for (int v : s)
		out.push_back(K.glued(v));
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

// sign of the permutation sorting v
static int sort_sign(std::vector<int> v)
{
	int s = 1;
	for (size_t i = 0; i < v.size(); ++i)
		for (size_t j = i + 1; j < v.size(); ++j)
			if (v[j] < v[i])
				s = -s;
	return s;
}

ComplexReport check_pseudomanifold(const DualComplex &K)
{
	ComplexReport rep;
	struct Coface {
		size_t simplex;
		int sign;
	};
	std::map<std::vector<int>, std::vector<Coface>> faces;
	for (size_t s = 0; s < K.simplices.size(); ++s) {
		std::vector<int> vs;
		for (int v : K.simplices[s])
			vs.push_back(K.glued(v));
		if ((int)vs.size() != K.dim + 1) {
			rep.ok = false;
			rep.failure = "simplex " + std::to_string(s) + " has wrong dimension";
			return rep;
		}
		for (size_t j = 0; j < vs.size(); ++j) {
			std::vector<int> f;
			for (size_t i = 0; i < vs.size(); ++i)
				if (i != j)
					f.push_back(vs[i]);
			int sign = K.orient(s) * ((j % 2) ? -1 : 1) * sort_sign(f);
			std::sort(f.begin(), f.end());
			faces[f].push_back({s, sign});
		}
	}
	for (auto &[f, cof] : faces) {
		++rep.checked;
		if (cof.size() == 1) {
			rep.boundary.push_back(f);
		} else if (cof.size() > 2) {
			if (rep.ok)
				rep.failure = "face " + str(Vec(f.begin(), f.end())) + " lies in " +
				              std::to_string(cof.size()) + " maximal simplices";
			rep.ok = false;
		} else if (cof[0].sign == cof[1].sign) {
			if (rep.ok)
				rep.failure = "face " + str(Vec(f.begin(), f.end())) +
				              " gets the same orientation from simplices " +
				              std::to_string(cof[0].simplex) + " and " +
				              std::to_string(cof[1].simplex);
			rep.ok = false;
		}
	}
	return rep;
}

std::vector<int> reduced_betti(const std::vector<std::vector<int>> &maximal)
{
	std::set<std::vector<int>> all;
	int top = -1;
	for (auto &m : maximal) {
		auto s = m;
		std::sort(s.begin(), s.end());
		s.erase(std::unique(s.begin(), s.end()), s.end());
		top = std::max(top, (int)s.size() - 1);
		size_t n = s.size();
		for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
			std::vector<int> f;
			for (size_t i = 0; i < n; ++i)
				if (mask >> i & 1)
					f.push_back(s[i]);
			all.insert(f);
		}
	}
	// chains by dimension, -1 holds the empty simplex
	std::vector<std::vector<std::vector<int>>> chains(top + 2);
	chains[0].push_back({});
	for (auto &f : all)
		chains[f.size()].push_back(f);
	std::vector<std::map<std::vector<int>, size_t>> index(chains.size());
	for (size_t d = 0; d < chains.size(); ++d)
		for (size_t i = 0; i < chains[d].size(); ++i)
			index[d][chains[d][i]] = i;
	// rank of the boundary from dimension d (index d+1) to d-1
	std::vector<int> rk(chains.size() + 1, 0);
	for (size_t d = 1; d < chains.size(); ++d) {
		std::vector<QVec> rows;
		for (auto &f : chains[d]) {
			QVec row(chains[d - 1].size(), 0);
			for (size_t j = 0; j < f.size(); ++j) {
				std::vector<int> g;
				for (size_t i = 0; i < f.size(); ++i)
					if (i != j)
						g.push_back(f[i]);
				row[index[d - 1].at(g)] += (j % 2) ? -1 : 1;
			}
			rows.push_back(row);
		}
		rk[d] = rows.empty() ? 0 : rank(rows);
	}
	std::vector<int> betti;
	for (size_t d = 0; d < chains.size(); ++d)
		betti.push_back((int)chains[d].size() - rk[d] - rk[d + 1]);
	return betti;
}

ComplexReport link_homology_check(const DualComplex &K)
{
	ComplexReport rep;
	std::vector<std::vector<int>> maximal;
	for (auto &s : K.simplices)
		maximal.push_back(glued_set(K, s));
	std::set<std::vector<int>> taus;
	for (auto &s : maximal) {
		size_t n = s.size();
		for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
			std::vector<int> f;
			for (size_t i = 0; i < n; ++i)
				if (mask >> i & 1)
					f.push_back(s[i]);
			taus.insert(f);
		}
	}
	for (auto &tau : taus) {
		++rep.checked;
		std::vector<std::vector<int>> link;
		for (auto &s : maximal) {
			if (!std::includes(s.begin(), s.end(), tau.begin(), tau.end()))
				continue;
			std::vector<int> rest;
			std::set_difference(s.begin(), s.end(), tau.begin(), tau.end(),
			                    std::back_inserter(rest));
			if (!rest.empty())
				link.push_back(rest);
		}
		auto betti = reduced_betti(link);
		int dim_tau = (int)tau.size() - 1;
		for (int i = -1; i < K.dim - dim_tau - 1; ++i) {
			int b = (size_t)(i + 1) < betti.size() ? betti[i + 1] : 0;
			if (b != 0) {
				if (rep.ok)
					rep.failure = "link of " + str(Vec(tau.begin(), tau.end())) +
					              " has reduced homology of rank " +
					              std::to_string(b) + " in degree " +
					              std::to_string(i);
				rep.ok = false;
				break;
			}
		}
	}
	return rep;
}

static bool inside_simplex(const DualComplex &K, const std::set<int> &support)
{
	for (auto &s : K.simplices)
		if (std::all_of(support.begin(), support.end(), [&](int v) {
			    return std::find(s.begin(), s.end(), v) != s.end();
		    }))
			return true;
	return false;
}

std::optional<SigmaPoint> sr_multiply(const DualComplex &K, const SigmaPoint &a,
                                      const SigmaPoint &b)
{
	std::set<int> support;
	for (auto &[v, c] : a)
		support.insert(v);
	for (auto &[v, c] : b)
		support.insert(v);
	if (!inside_simplex(K, support))
		return std::nullopt;
	SigmaPoint out = a;
	for (auto &[v, c] : b)
		out[v] += c;
	return out;
}

Vec image(const VertexAlgebra &va, const SigmaPoint &p)
{
	size_t r = va.rays.empty() ? 0 : va.rays[0].size();
	QVec s(r, 0);
	for (auto &[v, c] : p)
		s = qadd(s, qscale(to_q(va.rays.at(va.K.glued(v))), c));
	Vec out;
	for (auto &x : s) {
		if (x.get_den() != 1)
			throw Error("vertex: point is not integral");
		out.push_back(x.get_num().get_si());
	}
	return out;
}

std::vector<SigmaPoint> preimages(const VertexAlgebra &va, const Vec &P)
{
	std::set<SigmaPoint> out;
	if (is_zero(P))
		return {SigmaPoint{}};
	for (auto &s : va.K.simplices) {
		RationalCone c;
		for (int v : s)
			c.generators.push_back(va.rays.at(va.K.glued(v)));
		auto co = c.coordinates(to_q(P));
		if (!co)
			continue;
		if (std::any_of(co->begin(), co->end(), [](const Rat &x) { return x < 0; }))
			continue;
		SigmaPoint p;
		for (size_t i = 0; i < s.size(); ++i)
			if ((*co)[i] > 0)
				p[s[i]] = (*co)[i];
		out.insert(p);
	}
	return {out.begin(), out.end()};
}

std::map<Vec, Big> vertex_multiply(const VertexAlgebra &va, const Vec &a,
                                   const Vec &b)
{
	std::map<SigmaPoint, Big> prod;
	for (auto &pa : preimages(va, a))
		for (auto &pb : preimages(va, b))
			if (auto r = sr_multiply(va.K, pa, pb))
				prod[*r] += 1;
	std::map<Vec, std::map<SigmaPoint, Big>> by_image;
	for (auto &[p, c] : prod)
		if (c != 0)
			by_image[image(va, p)][p] = c;
	std::map<Vec, Big> out;
	for (auto &[Q, terms] : by_image) {
		auto pre = preimages(va, Q);
		Big c = terms.begin()->second;
		bool ok = pre.size() == terms.size();
		for (auto &p : pre) {
			auto it = terms.find(p);
			if (it == terms.end() || it->second != c)
				ok = false;
		}
		if (!ok)
			throw Error("vertex: product " + str(a) + "*" + str(b) +
			            " leaves the theta span at " + str(Q));
		out[Q] = c;
	}
	return out;
}

VertexAlgebra vertex_algebra(const DualComplex &K, const std::vector<Vec> &rays,
                             int bound)
{
	VertexAlgebra va;
	va.K = K;
	va.rays = rays;
	va.bound = bound;
	size_t r = rays.empty() ? 2 : rays[0].size();
	if (r == 2) {
		va.basis = basis_points(bound);
	} else {
		std::vector<Vec> pts{Vec{}};
		for (size_t i = 0; i < r; ++i) {
			std::vector<Vec> nxt;
			for (auto &p : pts)
				for (Int a = -bound; a <= bound; ++a) {
					Vec q = p;
					q.push_back(a);
					nxt.push_back(q);
				}
			pts = nxt;
		}
		va.basis = pts;
	}
	// keep points of the support
	std::vector<Vec> keep;
	for (auto &P : va.basis)
		if (!preimages(va, P).empty())
			keep.push_back(P);
	va.basis = keep;
	for (size_t i = 0; i < va.basis.size(); ++i)
		for (size_t j = i; j < va.basis.size(); ++j) {
			auto e = vertex_multiply(va, va.basis[i], va.basis[j]);
			va.table[{va.basis[i], va.basis[j]}] = e;
			va.table[{va.basis[j], va.basis[i]}] = e;
		}
	return va;
}

VertexAlgebra vertex_algebra(const Fan &fan, int bound)
{
	return vertex_algebra(dual_complex(fan), fan.rays, bound);
}

std::map<Vec, Big> central_fibre(const Expansion &e)
{
	std::map<Vec, Big> out;
	for (auto &[Q, coef] : e)
		for (auto &[k, c] : coef.terms())
			if (k.ord == 0 && c != 0)
				out[Q] += c;
	for (auto it = out.begin(); it != out.end();)
		it = it->second == 0 ? out.erase(it) : std::next(it);
	return out;
}

static std::string show(const std::map<Vec, Big> &m)
{
	std::string s = "{";
	for (auto &[Q, c] : m)
		s += (s.size() > 1 ? ", " : "") + str(Q) + ": " + c.get_str();
	return s + "}";
}

Report compare_central_fibre(const MirrorAlgebra &alg, const VertexAlgebra &va)
{
	Report rep;
	for (auto &[key, exp] : alg.table) {
		auto it = va.table.find(key);
		if (it == va.table.end())
			continue;
		++rep.checked;
		auto mine = central_fibre(exp);
		if (mine != it->second)
			rep.fail(key_str(key.first, key.second) + ": " + show(mine) +
			         " vs vertex " + show(it->second));
	}
	return rep;
}

} // namespace logcy
