#include "logcy/spines.hpp"

#include <algorithm>
#include <set>

namespace logcy {

std::vector<int> Spine::incident(int v) const
{
	std::vector<int> out;
	for (size_t i = 0; i < edges.size(); ++i)
		if (edges[i].a == v || edges[i].b == v)
			out.push_back((int)i);
	return out;
}

Vec Spine::outgoing(int e, int v) const
{
	const SpineEdge &ed = edges.at(e);
	return ed.a == v ? ed.derivative : neg(ed.derivative);
}

static bool is_boundary(const SpineVertex &v) { return v.mark == Mark::B; }

void validate(const Spine &s)
{
	int n = (int)s.vertices.size();
	if (n == 0)
		throw Error("spine: no vertices");
	for (size_t i = 0; i < s.edges.size(); ++i) {
		auto &e = s.edges[i];
		if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n || e.a == e.b)
			throw Error("spine: edge " + std::to_string(i) + " has bad ends");
		bool ba = is_boundary(s.vertices[e.a]), bb = is_boundary(s.vertices[e.b]);
		if (ba && bb)
			throw Error("spine: edge " + std::to_string(i) + " joins two markers");
		if (!e.length) {
			if (!ba && !bb)
				throw Error("spine: infinite edge " + std::to_string(i) +
				            " without a boundary marker");
			continue;
		}
		if (ba || bb)
			throw Error("spine: boundary leg " + std::to_string(i) +
			            " must have infinite length");
		if (*e.length <= 0)
			throw Error("spine: edge " + std::to_string(i) +
			            " needs positive length");
		QVec end = qadd(s.vertices[e.a].position, qscale(to_q(e.derivative), *e.length));
		if (end != s.vertices[e.b].position)
			throw Error("spine: edge " + std::to_string(i) +
			            " does not match its end positions");
	}
	if ((int)s.edges.size() != n - 1)
		throw Error("spine: graph is not a tree");
	// connectivity
	std::vector<int> seen(n, 0), stack{0};
	seen[0] = 1;
	while (!stack.empty()) {
		int v = stack.back();
		stack.pop_back();
		for (int e : s.incident(v)) {
			int u = s.edges[e].a == v ? s.edges[e].b : s.edges[e].a;
			if (!seen[u]) {
				seen[u] = 1;
				stack.push_back(u);
			}
		}
	}
	if (std::count(seen.begin(), seen.end(), 0))
		throw Error("spine: graph is not connected");
	for (int v = 0; v < n; ++v) {
		auto &sv = s.vertices[v];
		if (sv.mark != Mark::None && s.valence(v) != 1)
			throw Error("spine: marked vertex " + std::to_string(v) +
			            " is not 1-valent");
		if (!is_boundary(sv) && sv.position.empty())
			throw Error("spine: vertex " + std::to_string(v) + " has no position");
	}
}

Vec nb_vertex(const Spine &s, int v)
{
	Vec out;
	for (int e : s.incident(v)) {
		Vec w = s.outgoing(e, v);
		out = out.empty() ? w : add(out, w);
	}
	if (out.empty()) {
		size_t r = 2;
		for (auto &x : s.vertices)
			if (!x.position.empty())
				r = x.position.size();
		out = Vec(r, 0);
	}
	return out;
}

static bool on_singular(const AffineManifold &am, const QVec &p)
{
	for (auto &c : am.singular_cones) {
		if (c.empty()) {
			if (qzero(p))
				return true;
			continue;
		}
		if (am.fan.cone(c).contains(p))
			return true;
	}
	return false;
}

Vec nb_vertex(const AffineManifold &am, const Spine &s, int v)
{
	auto &sv = s.vertices.at(v);
	if (!sv.position.empty() && on_singular(am, sv.position))
		throw Error("spine: vertex " + std::to_string(v) +
		            " lies on the singular locus");
	return nb_vertex(s, v);
}

bool is_balanced(const Spine &s, int v)
{
	if (is_boundary(s.vertices.at(v)))
		throw Error("spine: balancing is undefined at a boundary marker");
	return is_zero(nb_vertex(s, v));
}

static RationalCone wall_cone(const SpineWall &w)
{
	return RationalCone{w.generators};
}

bool is_wall_spine(const Spine &s, const WallSet &walls)
{
	for (size_t v = 0; v < s.vertices.size(); ++v) {
		auto &sv = s.vertices[v];
		if (is_boundary(sv)) {
			int e = s.incident((int)v).at(0);
			int inner = s.edges[e].a == (int)v ? s.edges[e].b : s.edges[e].a;
			if (s.outgoing(e, inner) != sv.b_weight)
				return false;
			continue;
		}
		if (sv.mark != Mark::None)
			continue;
		Vec nb = nb_vertex(s, (int)v);
		if (is_zero(nb))
			continue;
		bool found = false;
		for (auto &w : walls)
			if (w.vector == nb && wall_cone(w).contains(sv.position))
				found = true;
		if (!found)
			return false;
	}
	return true;
}

namespace {

struct Segment {
	QVec p;
	QVec d;
	std::optional<Rat> length; // parameter range [0, length] or [0, inf)
};

std::vector<Segment> segments(const Spine &s)
{
	std::vector<Segment> out;
	for (auto &e : s.edges) {
		auto &va = s.vertices[e.a], &vb = s.vertices[e.b];
		if (e.length)
			out.push_back({va.position, to_q(e.derivative), e.length});
		else if (is_boundary(vb))
			out.push_back({va.position, to_q(e.derivative), std::nullopt});
		else
			out.push_back({vb.position, to_q(neg(e.derivative)), std::nullopt});
	}
	return out;
}

bool in_range(const Segment &sg, const Rat &t)
{
	return t >= 0 && (!sg.length || t <= *sg.length);
}

enum class Meet { None, Interior, Degenerate };

// how a segment meets a codim-1 cone through the origin
Meet meet_cone(const Segment &sg, const std::vector<Vec> &gens, Rat *at = nullptr,
               bool *endpoint = nullptr)
{
	RationalCone c{gens};
	Vec n = hyperplane_normal(gens);
	Rat dp = dot(n, sg.p), dd = dot(n, sg.d);
	if (dd == 0) {
		if (dp != 0)
			return Meet::None;
		// inside the span: cone coordinates are affine in t
		auto c0 = c.coordinates(sg.p);
		auto c1 = c.coordinates(sg.d);
		Rat lo = 0;
		std::optional<Rat> hi = sg.length;
		for (size_t i = 0; i < gens.size(); ++i) {
			Rat a0 = (*c0)[i], a1 = (*c1)[i];
			if (a1 == 0) {
				if (a0 < 0)
					return Meet::None;
			} else if (a1 > 0) {
				lo = std::max(lo, Rat(-a0 / a1));
			} else {
				Rat h = -a0 / a1;
				hi = hi ? std::min(*hi, h) : h;
			}
		}
		if (hi && *hi < lo)
			return Meet::None;
		return Meet::Degenerate;
	}
	Rat t = -dp / dd;
	if (!in_range(sg, t))
		return Meet::None;
	QVec x = qadd(sg.p, qscale(sg.d, t));
	if (!c.contains(x))
		return Meet::None;
	if (at)
		*at = t;
	if (endpoint)
		*endpoint = t == 0 || (sg.length && t == *sg.length);
	if (!c.relint_contains(x) && !gens.empty())
		return Meet::Degenerate;
	return Meet::Interior;
}

bool segment_hits_point(const Segment &sg, const QVec &x)
{
	QVec r = qsub(x, sg.p);
	// r = t d
	Rat t;
	bool have = false;
	for (size_t i = 0; i < r.size(); ++i) {
		if (sg.d[i] == 0) {
			if (r[i] != 0)
				return false;
			continue;
		}
		Rat ti = r[i] / sg.d[i];
		if (have && ti != t)
			return false;
		t = ti;
		have = true;
	}
	return have ? in_range(sg, t) : qzero(r);
}

} // namespace

bool is_transverse(const AffineManifold &am, const Spine &s, const WallSet &walls)
{
	validate(s);
	auto segs = segments(s);
	size_t rank = am.fan.rank;
	for (auto &sg : segs) {
		// singular locus
		for (auto &c : am.singular_cones) {
			if (c.empty()) {
				if (segment_hits_point(sg, QVec(rank, 0)))
					return false;
			} else if (c.size() == 1 && rank > 1) {
				std::vector<Vec> gens{am.fan.rays[c[0]]};
				if (rank == 2 && meet_cone(sg, gens) != Meet::None)
					return false;
			}
		}
		for (auto &w : walls) {
			Meet m = meet_cone(sg, w.generators);
			if (m == Meet::Degenerate)
				return false;
		}
		// codim-2 strata of the fan in rank 2 is the origin
		if (rank == 2 && !walls.empty() && segment_hits_point(sg, QVec(2, 0)))
			return false;
	}
	for (size_t v = 0; v < s.vertices.size(); ++v) {
		auto &sv = s.vertices[v];
		if (is_boundary(sv))
			continue;
		bool on_wall = false;
		for (auto &w : walls)
			if (wall_cone(w).contains(sv.position))
				on_wall = true;
		if (on_wall && s.valence((int)v) != 2)
			return false;
		if (sv.mark == Mark::F && !locate(am, sv.position).generic)
			return false;
	}
	return true;
}

static Spine disjoint_union(const Spine &s1, const Spine &s2)
{
	Spine out = s1;
	int off = (int)s1.vertices.size();
	for (auto &v : s2.vertices)
		out.vertices.push_back(v);
	for (auto e : s2.edges) {
		e.a += off;
		e.b += off;
		out.edges.push_back(e);
	}
	return out;
}

static int split_edge(Spine &s, int e, const Rat &t)
{
	SpineEdge ed = s.edges.at(e);
	if (t <= 0 || (ed.length && t >= *ed.length))
		throw Error("glue: point is not interior to the edge");
	QVec base;
	Vec der = ed.derivative;
	int from = ed.a, to = ed.b;
	if (s.vertices[ed.a].position.empty()) {
		// measure from the finite end
		from = ed.b;
		to = ed.a;
		der = neg(der);
	}
	base = s.vertices[from].position;
	SpineVertex mid;
	mid.position = qadd(base, qscale(to_q(der), t));
	int m = (int)s.vertices.size();
	s.vertices.push_back(mid);
	std::optional<Rat> rest;
	if (ed.length)
		rest = *ed.length - t;
	s.edges[e] = SpineEdge{from, m, t, der};
	s.edges.push_back(SpineEdge{m, to, rest, der});
	return m;
}

static void merge_vertex(Spine &s, int keep, int drop)
{
	for (auto &e : s.edges) {
		if (e.a == drop)
			e.a = keep;
		if (e.b == drop)
			e.b = keep;
	}
	s.vertices.erase(s.vertices.begin() + drop);
	for (auto &e : s.edges) {
		if (e.a > drop)
			--e.a;
		if (e.b > drop)
			--e.b;
	}
}

Spine glue(const Spine &s1, int e1, const Rat &t1, const Spine &s2, int e2,
           const Rat &t2)
{
	Spine out = disjoint_union(s1, s2);
	int m1 = split_edge(out, e1, t1);
	int m2 = split_edge(out, e2 + (int)s1.edges.size(), t2);
	if (out.vertices[m1].position != out.vertices[m2].position)
		throw Error("glue: points have different images " +
		            str(out.vertices[m1].position) + " and " +
		            str(out.vertices[m2].position));
	merge_vertex(out, std::min(m1, m2), std::max(m1, m2));
	return out;
}

Spine concat(const Spine &s1, int v1, const Spine &s2, int v2)
{
	auto end_of = [](const Spine &s, int v) {
		auto &sv = s.vertices.at(v);
		if (sv.position.empty() || s.valence(v) != 1)
			throw Error("concat: vertex " + std::to_string(v) +
			            " is not a finite 1-valent vertex");
		return s.incident(v)[0];
	};
	int e1 = end_of(s1, v1), e2 = end_of(s2, v2);
	if (s1.vertices[v1].position != s2.vertices[v2].position)
		throw Error("concat: endpoints have different images");
	Vec w1 = s1.outgoing(e1, v1), w2 = s2.outgoing(e2, v2);
	if (!is_zero(add(w1, w2)))
		throw Error("concat: weights " + str(w1) + " and " + str(w2) +
		            " are not opposite");
	Spine out = disjoint_union(s1, s2);
	int off = (int)s1.vertices.size();
	int j2 = v2 + off;
	out.vertices[v1].mark = Mark::None;
	merge_vertex(out, v1, j2);
	// fuse the two edges through v1 into one
	int f1 = e1, f2 = e2 + (int)s1.edges.size();
	SpineEdge a = out.edges[f1], b = out.edges[f2];
	int far1 = a.a == v1 ? a.b : a.a;
	int far2 = b.a == v1 ? b.b : b.a;
	std::optional<Rat> len;
	if (a.length && b.length)
		len = *a.length + *b.length;
	SpineEdge fused{far1, far2, len, neg(w1)};
	out.edges.erase(out.edges.begin() + std::max(f1, f2));
	out.edges.erase(out.edges.begin() + std::min(f1, f2));
	out.edges.push_back(fused);
	merge_vertex(out, far1 == v1 ? far2 : far1, v1);
	return out;
}

Spine contract(const Spine &s, int edge)
{
	Spine out = s;
	SpineEdge e = out.edges.at(edge);
	if (out.vertices[e.a].mark != Mark::None || out.vertices[e.b].mark != Mark::None)
		throw Error("contract: edge touches a marked vertex");
	out.edges.erase(out.edges.begin() + edge);
	merge_vertex(out, std::min(e.a, e.b), std::max(e.a, e.b));
	return out;
}

std::map<std::vector<int>, Int> z_cycle(const Spine &s, const Fan &fan)
{
	std::map<std::vector<int>, Int> out;
	auto segs = segments(s);
	for (auto &[face, adj] : fan.walls()) {
		std::vector<Vec> gens;
		for (int r : face)
			gens.push_back(fan.rays[r]);
		Vec n = hyperplane_normal(gens);
		for (auto &sg : segs) {
			Rat t;
			bool endpoint = false;
			Meet m = meet_cone(sg, gens, &t, &endpoint);
			if (m == Meet::None)
				continue;
			if (m == Meet::Degenerate || endpoint)
				throw Error("z_cycle: spine meets the cone " +
				            str(Vec(face.begin(), face.end())) +
				            " non-transversally");
			Rat c = abs(dot(n, sg.d));
			out[face] += c.get_num().get_si();
		}
	}
	return out;
}

std::vector<Vec> solve_weights(const TreeShape &t, const std::map<int, Vec> &nb)
{
	int n = t.vertices;
	if ((int)t.edges.size() != n - 1)
		throw Error("solve_weights: not a tree");
	std::vector<std::vector<int>> inc(n);
	for (size_t i = 0; i < t.edges.size(); ++i) {
		inc.at(t.edges[i].first).push_back((int)i);
		inc.at(t.edges[i].second).push_back((int)i);
	}
	int root = -1;
	for (int v = 0; v < n; ++v)
		if (!nb.count(v)) {
			if (root >= 0)
				throw Error("solve_weights: NB missing at more than one vertex");
			root = v;
		}
	if (root < 0) {
		// all given: the free leaf is any 1-valent vertex, checked at the end
		for (int v = 0; v < n; ++v)
			if (inc[v].size() == 1) {
				root = v;
				break;
			}
	}
	if (root < 0 || (n > 1 && inc[root].size() != 1))
		throw Error("solve_weights: the free vertex must be 1-valent");
	size_t r = nb.begin()->second.size();
	std::vector<Vec> residual(n, Vec(r, 0));
	for (auto &[v, w] : nb)
		residual.at(v) = w;
	std::vector<Vec> out(t.edges.size());
	std::vector<int> deg(n);
	for (int v = 0; v < n; ++v)
		deg[v] = (int)inc[v].size();
	std::vector<int> leaves;
	for (int v = 0; v < n; ++v)
		if (deg[v] == 1 && v != root)
			leaves.push_back(v);
	int left = n;
	while (!leaves.empty()) {
		int l = leaves.back();
		leaves.pop_back();
		int e = -1;
		for (int x : inc[l])
			if (out[x].empty())
				e = x;
		if (e < 0)
			throw Error("solve_weights: not a tree");
		auto [a, b] = t.edges[e];
		int u = a == l ? b : a;
		// outgoing derivative at l equals its residual bend
		out[e] = a == l ? residual[l] : neg(residual[l]);
		residual[u] = add(residual[u], residual[l]);
		--left;
		if (--deg[u] == 1 && u != root)
			leaves.push_back(u);
	}
	if (left != 1)
		throw Error("solve_weights: not a tree");
	if (nb.count(root) && n > 1 && !is_zero(residual[root]))
		throw Error("solve_weights: bends do not sum to zero");
	return out;
}

namespace {

// extreme rays of (hyperplane ell = 0) cut with a simplicial cone
std::vector<Vec> cut(const std::vector<Vec> &rays, const Vec &ell)
{
	std::set<Vec> out;
	for (size_t i = 0; i < rays.size(); ++i) {
		Int a = dot(ell, rays[i]);
		if (a == 0)
			out.insert(primitive(rays[i]));
		for (size_t j = 0; j < rays.size(); ++j) {
			Int b = dot(ell, rays[j]);
			if (a > 0 && b < 0)
				out.insert(primitive(sub(scale(rays[j], a), scale(rays[i], b))));
		}
	}
	return {out.begin(), out.end()};
}

void add_cut(const Fan &fan, int ci, const Vec &ell, const Vec &v,
             std::set<SpineWall> &out)
{
	std::vector<Vec> rays;
	for (int r : fan.cones[ci])
		rays.push_back(fan.rays[r]);
	auto gens = cut(rays, ell);
	std::vector<QVec> rows;
	for (auto &g : gens)
		rows.push_back(to_q(g));
	if ((int)gens.size() != fan.rank - 1 || rank(rows) != fan.rank - 1)
		return;
	out.insert(SpineWall{gens, ci, v});
}

Vec cross3(const Vec &a, const Vec &b)
{
	return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
	        a[0] * b[1] - a[1] * b[0]};
}

} // namespace

WallSet generate_walls(const AffineManifold &am, const std::vector<Vec> &V,
                       int steps)
{
	const Fan &fan = am.fan;
	int r = fan.rank;
	if (r < 2)
		throw Error("generate_walls: rank must be at least 2");
	if (r > 3)
		throw Error("generate_walls: rank above 3 is not supported");
	std::set<SpineWall> walls;
	// seeds: spans of codim-2 faces with v, inside each maximal cone
	for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
		auto &c = fan.cones[ci];
		std::vector<std::vector<int>> faces;
		if (r == 2)
			faces.push_back({});
		else
			for (int x : c)
				faces.push_back({x});
		for (auto &f : faces)
			for (auto &v : V) {
				std::vector<Vec> span;
				for (int x : f)
					span.push_back(fan.rays[x]);
				span.push_back(v);
				std::vector<QVec> rows;
				for (auto &s : span)
					rows.push_back(to_q(s));
				if (rank(rows) != (int)span.size())
					continue;
				add_cut(fan, (int)ci, hyperplane_normal(span), v, walls);
			}
	}
	for (int step = 0; step < steps; ++step) {
		std::set<SpineWall> next = walls;
		std::vector<SpineWall> list(walls.begin(), walls.end());
		for (size_t i = 0; i < list.size(); ++i)
			for (size_t j = i + 1; j < list.size(); ++j) {
				if (list[i].cone != list[j].cone)
					continue;
				std::vector<Vec> meet; // generators of the codim-2 intersection
				if (r == 2) {
					meet = {};
				} else {
					Vec u = cross3(hyperplane_normal(list[i].generators),
					               hyperplane_normal(list[j].generators));
					if (is_zero(u))
						continue;
					u = primitive(u);
					RationalCone a{list[i].generators}, b{list[j].generators};
					if (a.contains(to_q(u)) && b.contains(to_q(u)))
						meet = {u};
					else if (a.contains(to_q(neg(u))) && b.contains(to_q(neg(u))))
						meet = {neg(u)};
					else
						continue;
				}
				for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
					if (!meet.empty() &&
					    !fan.cone(fan.cones[ci]).contains(to_q(meet[0])))
						continue;
					for (auto &v : V) {
						std::vector<Vec> span = meet;
						span.push_back(v);
						std::vector<QVec> rows;
						for (auto &s : span)
							rows.push_back(to_q(s));
						if (rank(rows) != (int)span.size())
							continue;
						add_cut(fan, (int)ci, hyperplane_normal(span), v, next);
					}
				}
			}
		if (next == walls)
			break;
		walls = next;
	}
	return {walls.begin(), walls.end()};
}

} // namespace logcy
