#include "logcy/geometry.hpp"

#include <algorithm>
#include <set>

namespace logcy {

Mat identity(int n)
{
	Mat m(n, Vec(n, 0));
	for (int i = 0; i < n; ++i)
		m[i][i] = 1;
	return m;
}

Vec act(const Mat &m, const Vec &v)
{
	Vec r(m.size(), 0);
	for (size_t i = 0; i < m.size(); ++i)
		r[i] = dot(m[i], v);
	return r;
}

Mat matmul(const Mat &a, const Mat &b)
{
	size_t n = a.size(), p = b[0].size();
	Mat r(n, Vec(p, 0));
	for (size_t i = 0; i < n; ++i)
		for (size_t k = 0; k < b.size(); ++k)
			for (size_t j = 0; j < p; ++j)
				r[i][j] += a[i][k] * b[k][j];
	return r;
}

static std::vector<QVec> to_q(const Mat &m)
{
	std::vector<QVec> r;
	for (auto &row : m)
		r.push_back(logcy::to_q(row));
	return r;
}

static Rat qdet(std::vector<QVec> a)
{
	size_t n = a.size();
	Rat d = 1;
	for (size_t c = 0; c < n; ++c) {
		size_t piv = c;
		while (piv < n && a[piv][c] == 0)
			++piv;
		if (piv == n)
			return 0;
		if (piv != c) {
			std::swap(a[piv], a[c]);
			d = -d;
		}
		d *= a[c][c];
		for (size_t i = c + 1; i < n; ++i) {
			Rat f = a[i][c] / a[c][c];
			for (size_t j = c; j < n; ++j)
				a[i][j] -= f * a[c][j];
		}
	}
	return d;
}

Int det(const Mat &m) { return qdet(to_q(m)).get_num().get_si(); }

Mat inverse_unimodular(const Mat &m)
{
	size_t n = m.size();
	Mat r(n, Vec(n, 0));
	auto q = to_q(m);
	for (size_t j = 0; j < n; ++j) {
		QVec e(n, 0);
		e[j] = 1;
		QVec col = solve(q, e);
		for (size_t i = 0; i < n; ++i) {
			if (col[i].get_den() != 1)
				throw Error("inverse: matrix is not unimodular");
			r[i][j] = col[i].get_num().get_si();
		}
	}
	return r;
}

Lattice::Lattice(int r) : rank(r)
{
	if (r < 1)
		throw Error("lattice: rank must be positive");
}

std::optional<QVec> RationalCone::coordinates(const QVec &p) const
{
	size_t r = generators.size();
	if (r == 0)
		return qzero(p) ? std::optional<QVec>(QVec{}) : std::nullopt;
	std::vector<QVec> g;
	for (auto &v : generators)
		g.push_back(to_q(v));
	std::vector<QVec> gram(r, QVec(r, 0));
	QVec rhs(r, 0);
	for (size_t i = 0; i < r; ++i) {
		for (size_t j = 0; j < r; ++j)
			for (size_t t = 0; t < p.size(); ++t)
				gram[i][j] += g[i][t] * g[j][t];
		for (size_t t = 0; t < p.size(); ++t)
			rhs[i] += g[i][t] * p[t];
	}
	QVec c = solve(gram, rhs);
	QVec back(p.size(), 0);
	for (size_t i = 0; i < r; ++i)
		back = qadd(back, qscale(g[i], c[i]));
	if (back != p)
		return std::nullopt;
	return c;
}

bool RationalCone::contains(const QVec &p) const
{
	auto c = coordinates(p);
	if (!c)
		return false;
	for (auto &x : *c)
		if (x < 0)
			return false;
	return true;
}

bool RationalCone::relint_contains(const QVec &p) const
{
	auto c = coordinates(p);
	if (!c)
		return false;
	for (auto &x : *c)
		if (x <= 0)
			return false;
	return true;
}

bool RationalCone::is_face_of(const RationalCone &o) const
{
	for (auto &g : generators)
		if (std::find(o.generators.begin(), o.generators.end(), g) ==
		    o.generators.end())
			return false;
	return true;
}

Fan::Fan(int rank_, std::vector<Vec> rays_, std::vector<std::vector<int>> cones_)
    : rank(rank_), rays(std::move(rays_)), cones(std::move(cones_))
{
	if (rank < 1)
		throw Error("fan: rank must be positive");
	for (auto &r : rays) {
		if ((int)r.size() != rank)
			throw Error("fan: ray " + str(r) + " has wrong length");
		if (gcd_of(r) != 1)
			throw Error("fan: ray " + str(r) + " is not primitive");
	}
	for (auto &c : cones) {
		std::sort(c.begin(), c.end());
		for (int i : c)
			if (i < 0 || i >= (int)rays.size())
				throw Error("fan: ray index out of range");
		std::vector<QVec> g;
		for (int i : c)
			g.push_back(logcy::to_q(rays[i]));
		if (rank_of(g) != (int)c.size())
			throw Error("fan: cone is not simplicial");
	}
	if (rank == 2) {
		for (size_t a = 0; a < cones.size(); ++a)
			for (size_t b = a + 1; b < cones.size(); ++b) {
				if (cones[a] == cones[b])
					throw Error("fan: repeated cone");
				auto ca = cone(cones[a]), cb = cone(cones[b]);
				for (auto &g : ca.generators)
					if (cb.dim() == 2 && cb.relint_contains(logcy::to_q(g)))
						throw Error("fan: cones overlap");
				for (auto &g : cb.generators)
					if (ca.dim() == 2 && ca.relint_contains(logcy::to_q(g)))
						throw Error("fan: cones overlap");
			}
	}
	complete = !cones.empty();
	for (auto &c : cones)
		if ((int)c.size() != rank)
			complete = false;
	if (complete)
		for (auto &[face, adj] : walls())
			if (adj.size() != 2)
				complete = false;
}

int Fan::rank_of(const std::vector<QVec> &rows) { return logcy::rank(rows); }

RationalCone Fan::cone(const std::vector<int> &idx) const
{
	RationalCone c;
	for (int i : idx)
		c.generators.push_back(rays.at(i));
	return c;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> Fan::walls() const
{
	std::map<std::vector<int>, std::vector<int>> m;
	for (size_t ci = 0; ci < cones.size(); ++ci) {
		auto &c = cones[ci];
		if ((int)c.size() != rank)
			continue;
		for (size_t drop = 0; drop < c.size(); ++drop) {
			std::vector<int> face;
			for (size_t j = 0; j < c.size(); ++j)
				if (j != drop)
					face.push_back(c[j]);
			m[face].push_back((int)ci);
		}
	}
	return {m.begin(), m.end()};
}

std::vector<int> Fan::cones_containing(const QVec &p) const
{
	std::vector<int> out;
	for (size_t i = 0; i < cones.size(); ++i)
		if (cone(cones[i]).contains(p))
			out.push_back((int)i);
	return out;
}

int Fan::cone_of(const QVec &p) const
{
	for (size_t i = 0; i < cones.size(); ++i)
		if (cone(cones[i]).contains(p))
			return (int)i;
	return -1;
}

std::vector<int> Fan::cyclic_order() const
{
	if (rank != 2 || !complete)
		throw Error("fan: cyclic order needs a complete rank 2 fan");
	// orient each cone counterclockwise as (first, second)
	std::map<int, int> next_of_first;
	std::vector<std::pair<int, int>> oriented(cones.size());
	for (size_t i = 0; i < cones.size(); ++i) {
		int a = cones[i][0], b = cones[i][1];
		if (cross(rays[a], rays[b]) < 0)
			std::swap(a, b);
		oriented[i] = {a, b};
		next_of_first[a] = (int)i;
	}
	std::vector<int> order{0};
	while (order.size() < cones.size()) {
		int second = oriented[order.back()].second;
		order.push_back(next_of_first.at(second));
	}
	return order;
}

Fan fan_p2()
{
	return Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
}

const Mat &AffineManifold::transition(int from, int to) const
{
	auto it = transitions.find({from, to});
	if (it == transitions.end())
		throw Error("affine: cones " + std::to_string(from) + " and " +
		            std::to_string(to) + " do not share a wall");
	return it->second;
}

bool AffineManifold::is_singular(const std::vector<int> &face) const
{
	for (auto &s : singular_cones) {
		// a face touches a singular cone if it contains it
		bool inside = true;
		for (int r : s)
			if (std::find(face.begin(), face.end(), r) == face.end())
				inside = false;
		if (inside)
			return true;
	}
	return false;
}

AffineManifold toric_manifold(const Fan &fan)
{
	AffineManifold am;
	am.fan = fan;
	for (auto &[face, adj] : fan.walls())
		if (adj.size() == 2) {
			am.transitions[{adj[0], adj[1]}] = identity(fan.rank);
			am.transitions[{adj[1], adj[0]}] = identity(fan.rank);
		}
	return am;
}

static std::vector<Vec> smooth_complete_rays(size_t k)
{
	if (k == 3)
		return {{1, 0}, {0, 1}, {-1, -1}};
	std::vector<Vec> rays{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
	size_t pos = 0;
	while (rays.size() < k) {
		size_t nxt = (pos + 1) % rays.size();
		rays.insert(rays.begin() + nxt, add(rays[pos], rays[nxt]));
		pos = (nxt + 1) % rays.size();
	}
	return rays;
}

AffineManifold build_affine_structure_dim2(const Vec &d)
{
	size_t k = d.size();
	if (k < 3)
		throw Error("affine: cyclic self-intersection sequence needs length >= 3");
	auto rays = smooth_complete_rays(k);
	std::vector<std::vector<int>> cones;
	for (size_t i = 0; i < k; ++i)
		cones.push_back({(int)i, (int)((i + 1) % k)});
	AffineManifold am;
	am.fan = Fan(2, rays, cones);
	am.self_intersections = d;
	// cone i = (v_i, v_{i+1}); crossing ray i goes from cone i-1 to cone i
	for (size_t i = 0; i < k; ++i) {
		size_t prev = (i + k - 1) % k, next = (i + 1) % k;
		const Vec &vi = rays[i];
		Vec u = sub(scale(vi, -d[i]), rays[prev]);
		Mat src{{vi[0], u[0]}, {vi[1], u[1]}};
		Mat dst{{vi[0], rays[next][0]}, {vi[1], rays[next][1]}};
		Mat t = matmul(dst, inverse_unimodular(src));
		am.transitions[{(int)prev, (int)i}] = t;
		am.transitions[{(int)i, (int)prev}] = inverse_unimodular(t);
	}
	if (monodromy(am, 0) != identity(2))
		am.singular_cones.push_back({});
	return am;
}

Mat monodromy(const AffineManifold &am, int base)
{
	auto order = am.fan.cyclic_order();
	auto it = std::find(order.begin(), order.end(), base);
	if (it == order.end())
		throw Error("monodromy: base cone not found");
	std::rotate(order.begin(), it, order.end());
	Mat m = identity(2);
	for (size_t i = 0; i < order.size(); ++i) {
		int from = order[i], to = order[(i + 1) % order.size()];
		m = matmul(am.transition(from, to), m);
	}
	return m;
}

Vec parallel_transport(const AffineManifold &am, const std::vector<int> &path,
                       const Vec &v)
{
	Vec r = v;
	for (size_t i = 0; i + 1 < path.size(); ++i) {
		int a = path[i], b = path[i + 1];
		if (a == b)
			continue;
		auto it = am.transitions.find({a, b});
		if (it == am.transitions.end()) {
			if (!am.singular_cones.empty())
				throw Error("transport: path between cones " +
				            std::to_string(a) + " and " + std::to_string(b) +
				            " passes through a singular cone");
			throw Error("transport: cones " + std::to_string(a) + " and " +
			            std::to_string(b) + " are not adjacent");
		}
		r = act(it->second, r);
	}
	return r;
}

std::vector<QVec> linear_piece(const Fan &fan, const std::vector<Vec> &values,
                               int ci)
{
	auto &c = fan.cones.at(ci);
	if ((int)c.size() != fan.rank)
		throw Error("pl: cone is not full dimensional");
	size_t outdim = values.at(c[0]).size();
	std::vector<QVec> rows;
	for (int r : c)
		rows.push_back(to_q(fan.rays[r]));
	std::vector<QVec> out;
	for (size_t o = 0; o < outdim; ++o) {
		QVec rhs;
		for (int r : c)
			rhs.emplace_back(Big(static_cast<long>(values.at(r).at(o))));
		out.push_back(solve(rows, rhs));
	}
	return out;
}

QVec pl_value(const Fan &fan, const std::vector<Vec> &values, const QVec &p)
{
	int ci = fan.cone_of(p);
	if (ci < 0)
		throw Error("pl: point " + str(p) + " outside the fan support");
	QVec out;
	for (auto &ell : linear_piece(fan, values, ci)) {
		Rat s = 0;
		for (size_t i = 0; i < p.size(); ++i)
			s += ell[i] * p[i];
		out.push_back(s);
	}
	return out;
}

Rat pl_value(const Fan &fan, const PLFunction &f, const QVec &p)
{
	std::vector<Vec> vals;
	for (auto a : f.coefficients)
		vals.push_back({a});
	return pl_value(fan, vals, p)[0];
}

Vec hyperplane_normal(const std::vector<Vec> &span)
{
	size_t d = span.empty() ? 1 : span[0].size();
	if (span.size() + 1 != d)
		throw Error("hyperplane_normal: need rank-1 spanning vectors");
	Vec n(d, 0);
	for (size_t i = 0; i < d; ++i) {
		std::vector<QVec> minor;
		for (auto &v : span) {
			QVec row;
			for (size_t j = 0; j < d; ++j)
				if (j != i)
					row.emplace_back(Big(static_cast<long>(v[j])));
			minor.push_back(row);
		}
		Rat m = d == 1 ? Rat(1) : qdet(minor);
		n[i] = ((i % 2) ? -1 : 1) * m.get_num().get_si();
	}
	if (is_zero(n))
		throw Error("hyperplane_normal: vectors are dependent");
	return primitive(n);
}

Vec bend(const AffineManifold &am, const std::vector<Vec> &values,
         const std::vector<int> &wall_in)
{
	auto wall = wall_in;
	std::sort(wall.begin(), wall.end());
	const Fan &fan = am.fan;
	std::vector<int> adj;
	for (auto &[face, cs] : fan.walls())
		if (face == wall)
			adj = cs;
	if (adj.size() != 2)
		throw Error("bend: wall is not interior");
	int s1 = adj[0], s2 = adj[1];
	auto ell1 = linear_piece(fan, values, s1);
	const Mat &t = am.transition(s1, s2);
	Mat tinv = inverse_unimodular(t);
	int u = -1;
	for (int r : fan.cones[s2])
		if (std::find(wall.begin(), wall.end(), r) == wall.end())
			u = r;
	std::vector<Vec> span;
	for (int r : wall)
		span.push_back(fan.rays[r]);
	Vec n = hyperplane_normal(span);
	Vec uvec = fan.rays[u];
	if (dot(n, uvec) < 0)
		n = neg(n);
	Vec back = act(tinv, uvec); // u in the chart of s1
	Vec out;
	for (size_t o = 0; o < ell1.size(); ++o) {
		Rat diff = Rat(Big(static_cast<long>(values[u][o]))) - dot(back, ell1[o]);
		diff /= Rat(Big(static_cast<long>(dot(n, uvec))));
		if (diff.get_den() != 1)
			throw Error("bend: kink is not integral");
		out.push_back(diff.get_num().get_si());
	}
	return out;
}

Int bend(const AffineManifold &am, const PLFunction &f,
         const std::vector<int> &wall)
{
	std::vector<Vec> vals;
	for (auto a : f.coefficients)
		vals.push_back({a});
	return bend(am, vals, wall)[0];
}

Location locate(const AffineManifold &am, const QVec &p)
{
	const Fan &fan = am.fan;
	if ((int)p.size() != fan.rank)
		throw Error("locate: point has wrong dimension");
	int ci = fan.cone_of(p);
	if (ci < 0)
		throw Error("locate: point " + str(p) + " outside the fan support");
	auto c = fan.cone(fan.cones[ci]).coordinates(p);
	Location loc;
	loc.maximal_cone = ci;
	for (size_t i = 0; i < c->size(); ++i)
		if ((*c)[i] > 0)
			loc.face.push_back(fan.cones[ci][i]);
	std::sort(loc.face.begin(), loc.face.end());
	loc.generic = (int)loc.face.size() == fan.rank;
	return loc;
}

} // namespace logcy
