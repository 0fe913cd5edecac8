#include "logcy/scattering.hpp"
#include "logcy/theta.hpp"

#include <algorithm>
#include <set>

namespace logcy {

std::optional<Rat> Wall::parameter(const QVec &p) const
{
	QVec d = to_q(direction);
	QVec r = qsub(p, apex);
	if (qcross(r, d) != 0)
		return std::nullopt;
	return (r[0] * d[0] + r[1] * d[1]) / (d[0] * d[0] + d[1] * d[1]);
}

bool Wall::contains(const QVec &p) const
{
	auto s = parameter(p);
	return s && (line || *s >= 0);
}

Rat Wall::side(const QVec &p) const { return dot(normal, qsub(p, apex)); }

Wall make_wall(const QVec &apex, const Vec &direction, bool line,
               const Vec &normal, const Series &f)
{
	if (apex.size() != 2 || direction.size() != 2 || normal.size() != 2)
		throw Error("wall: only rank 2 walls are supported");
	if (is_zero(direction) || gcd_of(direction) != 1)
		throw Error("wall: direction " + str(direction) + " is not primitive");
	if (is_zero(normal) || gcd_of(normal) != 1)
		throw Error("wall: normal " + str(normal) + " is not primitive");
	if (dot(normal, direction) != 0)
		throw Error("wall: normal is not orthogonal to the support");
	if (f.constant() != 1)
		throw Error("wall: function must have constant term 1");
	for (auto &[key, c] : f.terms()) {
		if (key.ord == 0 && !is_zero(key.m))
			throw Error("wall: function is not 1 modulo the class ideal");
		if (dot(normal, key.m) != 0)
			throw Error("wall: exponent " + str(key.m) +
			            " is not tangent to the wall");
	}
	return Wall{apex, direction, line, normal, f};
}

Series apply_crossing(const Series &g, const Vec &n, int side, const Series &s)
{
	const Ring &r = s.ring();
	Series gg = g.with_order(r.k);
	std::map<Int, Series> powers;
	Series out(r);
	for (auto &[key, c] : s.terms()) {
		Int e = side * dot(n, key.m);
		Series term = Series::monomial(r, c, key.q, key.m);
		if (e != 0) {
			auto it = powers.find(e);
			if (it == powers.end())
				it = powers.emplace(e, pow(gg, e)).first;
			term = term * it->second;
		}
		out += term;
	}
	return out;
}

Series wall_cross(const Wall &w, const Vec &v, int side)
{
	Series z = Series::monomial(w.f.ring(), 1, w.f.ring().monoid->zero(), v);
	return apply_crossing(w.f, w.normal, side, z);
}

// ---- rays, sections ----

std::vector<RayInfo> ray_info(const Diagram &d)
{
	const Fan &fan = d.ambient.fan;
	std::vector<RayInfo> out(fan.rays.size());
	for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
		auto &c = fan.cones[ci];
		if (c.size() != 2)
			continue;
		int a = c[0], b = c[1];
		// the cone lies counterclockwise of ray a when cross(v_a, v_b) > 0
		if (cross(fan.rays[a], fan.rays[b]) < 0)
			std::swap(a, b);
		out[a].ccw = (int)ci;
		out[b].cw = (int)ci;
	}
	for (size_t i = 0; i < out.size(); ++i) {
		RayInfo &ri = out[i];
		if (ri.cw < 0 || ri.ccw < 0)
			continue;
		auto it = d.ambient.transitions.find({ri.cw, ri.ccw});
		if (it != d.ambient.transitions.end())
			ri.to_ccw = it->second;
		if (d.section)
			ri.kink = bend(d.ambient, d.section->values, {(int)i});
		ri.active = ri.to_ccw != identity(2) ||
		            (!ri.kink.empty() && !is_zero(ri.kink));
	}
	return out;
}

bool has_active_rays(const Diagram &d)
{
	for (auto &r : ray_info(d))
		if (r.active)
			return true;
	return false;
}

bool has_kinks(const Diagram &d)
{
	if (!d.section)
		return false;
	for (auto &r : ray_info(d))
		if (!r.kink.empty() && !is_zero(r.kink))
			return true;
	return false;
}

Mat section_piece(const Diagram &d, int cone)
{
	size_t nc = d.monoid->size();
	if (!d.section)
		return Mat(nc, Vec(2, 0));
	Mat out;
	for (auto &ell : linear_piece(d.ambient.fan, d.section->values, cone)) {
		Vec row;
		for (auto &x : ell) {
			if (x.get_den() != 1)
				throw Error("section: linear piece on cone " +
				            std::to_string(cone) + " is not integral");
			row.push_back(x.get_num().get_si());
		}
		out.push_back(row);
	}
	return out;
}

Vec section_kink(const Diagram &d, int ray)
{
	if (!d.section)
		return Vec(d.monoid->size(), 0);
	return bend(d.ambient, d.section->values, {ray});
}

Vec height(const Diagram &d, int cone, const Vec &m, const Vec &a)
{
	return sub(a, act(section_piece(d, cone), m));
}

bool in_positive(const Vec &h)
{
	return std::all_of(h.begin(), h.end(), [](Int x) { return x >= 0; });
}

Vec kink_increment(const Diagram &d, int from, int to, const Vec &m)
{
	Vec mt = act(d.ambient.transition(from, to), m);
	return sub(act(section_piece(d, from), m), act(section_piece(d, to), mt));
}

int wall_cone(const Diagram &d, const Wall &w)
{
	const Fan &fan = d.ambient.fan;
	QVec far = qadd(w.apex, to_q(w.direction));
	for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
		auto c = fan.cone(fan.cones[ci]);
		if (!w.line && c.contains(w.apex) && c.contains(far) &&
		    c.contains(to_q(w.direction)))
			return (int)ci;
	}
	return -1;
}

void validate(const Diagram &d)
{
	const Fan &fan = d.ambient.fan;
	if (fan.rank != 2)
		throw Error("diagram: only rank 2 diagrams are supported");
	if (!d.monoid)
		throw Error("diagram: missing curve class monoid");
	if (d.k < 1)
		throw Error("diagram: order must be at least 1");
	if (d.section) {
		if (d.section->values.size() != fan.rays.size())
			throw Error("section: need one class vector per ray");
		for (auto &v : d.section->values)
			if (v.size() != d.monoid->size())
				throw Error("section: class vector has wrong length");
		for (size_t ci = 0; ci < fan.cones.size(); ++ci)
			section_piece(d, (int)ci);
		for (size_t i = 0; i < fan.rays.size(); ++i) {
			auto ri = ray_info(d)[i];
			if (ri.cw < 0 || ri.ccw < 0)
				continue;
			if (is_zero(ri.kink) || !in_positive(ri.kink))
				throw Error("section: kink across ray " + std::to_string(i) +
				            " is not a nonzero effective class");
		}
	}
	bool active = has_active_rays(d);
	for (size_t i = 0; i < d.walls.size(); ++i) {
		const Wall &w = d.walls[i];
		make_wall(w.apex, w.direction, w.line, w.normal, w.f);
		if (!w.f.ring().same(d.ring()))
			throw Error("wall " + std::to_string(i) + ": ring does not match");
		if (w.f.is_one())
			throw Error("wall " + std::to_string(i) + ": trivial function");
		if (fan.cone_of(w.apex) < 0)
			throw Error("wall " + std::to_string(i) + ": apex outside the fan");
		if (active && wall_cone(d, w) < 0)
			throw Error("wall " + std::to_string(i) +
			            ": must lie in one maximal cone when rays carry kinks "
			            "or chart changes");
	}
}

// ---- joints ----

static std::optional<QVec> meet(const Wall &a, const Wall &b)
{
	QVec da = to_q(a.direction), db = to_q(b.direction);
	Rat den = qcross(da, db);
	if (den == 0)
		return std::nullopt;
	QVec r = qsub(b.apex, a.apex);
	Rat s = qcross(r, db) / den;
	Rat u = qcross(r, da) / den;
	if ((!a.line && s < 0) || (!b.line && u < 0))
		return std::nullopt;
	return qadd(a.apex, qscale(da, s));
}

std::vector<QVec> joints(const Diagram &d)
{
	std::set<QVec> out;
	for (size_t i = 0; i < d.walls.size(); ++i) {
		if (!d.walls[i].line)
			out.insert(d.walls[i].apex);
		for (size_t j = i + 1; j < d.walls.size(); ++j)
			if (auto p = meet(d.walls[i], d.walls[j]))
				out.insert(*p);
	}
	return {out.begin(), out.end()};
}

bool is_kink_point(const Diagram &d, const QVec &p)
{
	auto info = ray_info(d);
	bool any = false;
	for (size_t i = 0; i < info.size(); ++i) {
		if (!info[i].active)
			continue;
		any = true;
		QVec v = to_q(d.ambient.fan.rays[i]);
		if (qcross(v, p) == 0 && v[0] * p[0] + v[1] * p[1] > 0)
			return true;
	}
	return any && qzero(p);
}

// ---- loops ----

static int half(const Vec &v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

static bool angle_less(const Vec &a, const Vec &b)
{
	if (half(a) != half(b))
		return half(a) < half(b);
	return cross(a, b) > 0;
}

bool Automorphism::is_identity() const { return first_deviation_order() < 0; }

int Automorphism::first_deviation_order() const
{
	int best = -1;
	for (size_t i = 0; i < images.size(); ++i) {
		const Ring &r = images[i].ring();
		Vec e(r.rank, 0);
		e[i] = 1;
		Series diff = images[i] - Series::monomial(r, 1, r.monoid->zero(), e);
		if (!diff.is_zero()) {
			int o = diff.terms().begin()->first.ord;
			if (best < 0 || o < best)
				best = o;
		}
	}
	return best;
}

struct Crossing {
	Vec dir;
	size_t wall;
};

static std::vector<Crossing> crossings_at(const Diagram &d, const QVec &p)
{
	std::vector<Crossing> out;
	for (size_t i = 0; i < d.walls.size(); ++i) {
		const Wall &w = d.walls[i];
		auto s = w.parameter(p);
		if (!s || (!w.line && *s < 0))
			continue;
		out.push_back({w.direction, i});
		if (w.line || *s > 0)
			out.push_back({neg(w.direction), i});
	}
	std::stable_sort(out.begin(), out.end(), [](auto &a, auto &b) {
		return angle_less(a.dir, b.dir);
	});
	return out;
}

Automorphism path_ordered_product(const Diagram &d, const QVec &p,
                                  const Vec &start)
{
	if (is_kink_point(d, p))
		throw Error("loop: joint " + str(p) +
		            " lies on a ray carrying a kink or chart change");
	auto cs = crossings_at(d, p);
	if (!start.empty()) {
		auto it = std::find_if(cs.begin(), cs.end(), [&](auto &c) {
			return !angle_less(c.dir, start);
		});
		std::rotate(cs.begin(), it, cs.end());
	}
	Ring r = d.ring();
	Automorphism a;
	for (int i = 0; i < 2; ++i) {
		Vec e(2, 0);
		e[i] = 1;
		Series s = Series::monomial(r, 1, r.monoid->zero(), e);
		for (auto &c : cs) {
			const Wall &w = d.walls[c.wall];
			Vec motion = rot90(c.dir);
			int side = dot(w.normal, motion) < 0 ? 1 : -1;
			s = apply_crossing(w.f, w.normal, side, s);
		}
		a.images.push_back(s);
	}
	return a;
}

bool ConsistencyReport::consistent() const
{
	return std::all_of(joints.begin(), joints.end(),
	                   [](auto &j) { return j.consistent; });
}

static Rat joint_clearance(const QVec &p, const std::vector<QVec> &js)
{
	Rat best = 1;
	for (auto &q : js) {
		if (q == p)
			continue;
		QVec r = qsub(q, p);
		Rat n = abs(r[0]) > abs(r[1]) ? abs(r[0]) : abs(r[1]);
		if (n < best)
			best = n;
	}
	return best / 4;
}

ConsistencyReport is_consistent(const Diagram &d, int theta_norm)
{
	ConsistencyReport rep;
	auto js = joints(d);
	bool singular = !d.ambient.trivial_monodromy();
	for (auto &p : js) {
		JointReport jr;
		jr.point = p;
		if (is_kink_point(d, p) || (singular && qzero(p))) {
			jr.delegated = true;
			Rat eps = joint_clearance(p, js);
			for (auto &c : crossings_at(d, p)) {
				// a point on the wall just off the joint
				Rat len = abs(Rat(c.dir[0])) > abs(Rat(c.dir[1]))
				              ? abs(Rat(c.dir[0]))
				              : abs(Rat(c.dir[1]));
				QVec x = qadd(p, qscale(to_q(c.dir), eps / len));
				std::string why;
				try {
					if (!theta_consistent_at(d, c.wall, x, theta_norm, &why)) {
						jr.consistent = false;
						jr.detail = why;
						break;
					}
				} catch (const Error &e) {
					jr.consistent = false;
					jr.detail = e.what();
					break;
				}
			}
		} else {
			auto a = path_ordered_product(d, p);
			jr.first_failure_order = a.first_deviation_order();
			jr.consistent = jr.first_failure_order < 0;
			if (!jr.consistent)
				jr.detail = "loop product deviates from the identity at order " +
				            std::to_string(jr.first_failure_order);
		}
		rep.joints.push_back(jr);
	}
	return rep;
}

// ---- completion ----

static void sort_walls(std::vector<Wall> &ws)
{
	std::sort(ws.begin(), ws.end(), [](const Wall &a, const Wall &b) {
		if (a.line != b.line)
			return a.line > b.line;
		if (a.apex != b.apex)
			return a.apex < b.apex;
		if (a.direction != b.direction)
			return a.direction < b.direction;
		return a.normal < b.normal;
	});
}

static void insert_wall(std::vector<Wall> &ws, Wall w)
{
	for (auto it = ws.begin(); it != ws.end(); ++it) {
		if (it->line || it->apex != w.apex || it->direction != w.direction)
			continue;
		it->f = it->f * w.f;
		if (it->f.is_one())
			ws.erase(it);
		return;
	}
	ws.push_back(std::move(w));
}

Diagram complete(const Diagram &initial, int k)
{
	if (k < 1)
		throw Error("complete: order must be at least 1");
	Diagram d = initial;
	d.k = k;
	Ring ring = d.ring();
	std::vector<Wall> ws;
	for (auto &w : initial.walls) {
		Wall c = w;
		c.f = w.f.with_order(k);
		if (!c.f.is_one())
			ws.push_back(c);
	}
	d.walls = ws;
	validate(d);
	if (!d.ambient.trivial_monodromy())
		throw Error("complete: ambient has nontrivial monodromy");
	if (!d.walls.empty() && has_active_rays(d))
		throw Error("complete: fan rays carry kinks or chart changes; "
		            "completion needs a single linear chart");
	for (int j = 1; j < k; ++j) {
		Diagram dj = d;
		dj.k = j + 1;
		for (auto &w : dj.walls)
			w.f = w.f.with_order(j + 1);
		Ring rj = dj.ring();
		std::vector<Wall> added;
		for (auto &p : joints(dj)) {
			auto a = path_ordered_product(dj, p);
			int dev = a.first_deviation_order();
			if (dev < 0)
				continue;
			if (dev < j)
				throw Error("complete: joint " + str(p) +
				            " is inconsistent at order " + std::to_string(dev) +
				            " below the current order " + std::to_string(j));
			std::map<std::pair<Vec, Vec>, Vec> ell;
			for (int i = 0; i < 2; ++i) {
				Vec e(2, 0);
				e[i] = 1;
				Series diff = a.images[i] -
				              Series::monomial(rj, 1, rj.monoid->zero(), e);
				for (auto &[key, c] : diff.terms()) {
					if (key.ord != j)
						continue;
					auto &v = ell[{key.q, sub(key.m, e)}];
					if (v.empty())
						v = Vec(2, 0);
					v[i] = c.get_si();
				}
			}
			for (auto &[qm, l] : ell) {
				auto &[q, m] = qm;
				std::string where = " at joint " + str(p) + ", order " +
				                    std::to_string(j);
				if (is_zero(m))
					throw Error("complete: discrepancy with zero exponent" + where);
				if (l[0] * m[0] + l[1] * m[1] != 0)
					throw Error("complete: discrepancy term z^" + str(m) +
					            " cannot be cancelled by a wall" + where);
				Vec r = neg(primitive(m));
				Vec n{r[1], -r[0]};
				int i = n[0] != 0 ? 0 : 1;
				if (l[i] % n[i] != 0)
					throw Error("complete: non-integral wall coefficient" + where);
				Int c = -l[i] / n[i];
				if (l[0] != -c * n[0] || l[1] != -c * n[1])
					throw Error("complete: discrepancy not proportional to the "
					            "wall normal" + where);
				Series f = Series::one(ring) +
				           Series::monomial(ring, c, q, m);
				added.push_back(make_wall(p, r, false, n, f));
			}
		}
		for (auto &w : added)
			insert_wall(d.walls, w);
	}
	sort_walls(d.walls);
	return d;
}

} // namespace logcy
