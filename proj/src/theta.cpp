#include "logcy/theta.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace logcy {

namespace {

struct Locus {
	QVec apex;
	Vec dir;
	bool line = false;
	int wall = -1;
	int ray = -1;
};

struct Step {
	Big c;
	Vec dq;
	Vec m; // exponent on the x side of the junction
	QVec point;
};

Int norm_inf(const Vec &v)
{
	Int n = 0;
	for (auto x : v)
		n = std::max(n, x < 0 ? -x : x);
	return n;
}

Rat qnorm_inf(const QVec &v)
{
	Rat n = 0;
	for (auto &x : v)
		if (abs(x) > n)
			n = abs(x);
	return n;
}

// does the closed segment [a, b] meet the support of the locus
bool segment_meets(const Locus &l, const QVec &a, const QVec &b)
{
	QVec ab = qsub(b, a), d = to_q(l.dir);
	Rat den = qcross(ab, d);
	QVec r = qsub(l.apex, a);
	if (den == 0) {
		if (qcross(r, d) != 0)
			return false;
		// collinear: compare parameters along d
		auto par = [&](const QVec &p) {
			QVec w = qsub(p, l.apex);
			return (w[0] * d[0] + w[1] * d[1]);
		};
		if (l.line)
			return true;
		return par(a) >= 0 || par(b) >= 0;
	}
	Rat s = qcross(r, d) / den;
	Rat u = qcross(r, ab) / den;
	return s >= 0 && s <= 1 && (l.line || u >= 0);
}

bool on_locus(const Locus &l, const QVec &p)
{
	QVec r = qsub(p, l.apex);
	QVec d = to_q(l.dir);
	if (qcross(r, d) != 0)
		return false;
	return l.line || r[0] * d[0] + r[1] * d[1] >= 0;
}

class Tracer {
public:
	explicit Tracer(const Diagram &d) : d_(d), info_(ray_info(d))
	{
		validate(d);
		for (size_t i = 0; i < d.walls.size(); ++i) {
			auto &w = d.walls[i];
			loci_.push_back({w.apex, w.direction, w.line, (int)i, -1});
		}
		for (size_t i = 0; i < info_.size(); ++i) {
			if (info_[i].active) {
				loci_.push_back({QVec{0, 0}, d.ambient.fan.rays[i], false, -1,
				                 (int)i});
				if (info_[i].to_ccw != identity(2))
					chart_changes_ = true;
			}
		}
		for (size_t ci = 0; ci < d.ambient.fan.cones.size(); ++ci)
			pieces_.push_back(section_piece(d, (int)ci));
		shifts_ = exponent_shifts(d);
	}

	const std::vector<Locus> &loci() const { return loci_; }
	const Diagram &diagram() const { return d_; }

	void check_generic(const QVec &x) const
	{
		if (d_.ambient.fan.cone_of(x) < 0)
			throw Error("broken lines: point " + str(x) +
			            " outside the fan support");
		for (auto &l : loci_)
			if (on_locus(l, x))
				throw Error("broken lines: endpoint " + str(x) +
				            " is not generic");
	}

	std::vector<BrokenLine> run(const Vec &P, const QVec &x)
	{
		check_generic(x);
		std::vector<BrokenLine> out;
		if (is_zero(P)) {
			BrokenLine bl{P, x, {{1, d_.monoid->zero(), P}}, {}};
			out.push_back(bl);
			return out;
		}
		for (auto &m : candidates(P)) {
			if (is_zero(m))
				continue;
			std::vector<Step> steps;
			trace(x, m, d_.monoid->zero(), steps, P, x, out);
		}
		return out;
	}

	std::vector<Vec> candidates(const Vec &P) const
	{
		std::vector<Vec> out;
		if (!chart_changes_) {
			for (auto &e : shifts_)
				out.push_back(add(P, e));
		} else {
			Int emax = 0;
			for (auto &e : shifts_)
				emax = std::max(emax, norm_inf(e));
			Int r = 4 * (norm_inf(P) + emax + 1);
			for (Int a = -r; a <= r; ++a)
				for (Int b = -r; b <= r; ++b)
					out.push_back({a, b});
		}
		std::sort(out.begin(), out.end());
		out.erase(std::unique(out.begin(), out.end()), out.end());
		return out;
	}

	Vec phi(int cone, const Vec &m) const { return act(pieces_[cone], m); }

private:
	const Series &power(const std::vector<int> &walls, Int n, int budget)
	{
		auto key = std::make_tuple(walls, n, budget);
		auto it = cache_.find(key);
		if (it != cache_.end())
			return it->second;
		Ring r = d_.ring();
		r.k = budget;
		Series g = Series::one(r);
		for (int w : walls)
			g = g * d_.walls[w].f.with_order(budget);
		return cache_.emplace(key, pow(g, n)).first->second;
	}

	void trace(const QVec &y, const Vec &m, const Vec &q,
	           std::vector<Step> &steps, const Vec &P, const QVec &x,
	           std::vector<BrokenLine> &out)
	{
		QVec mq = to_q(m);
		std::optional<Rat> best;
		std::vector<const Locus *> hit;
		for (auto &l : loci_) {
			QVec d = to_q(l.dir);
			Rat den = qcross(mq, d);
			QVec r = qsub(l.apex, y);
			if (den == 0) {
				if (qcross(r, d) != 0)
					continue;
				// backward ray runs along the locus
				Rat from = -(r[0] * d[0] + r[1] * d[1]);
				bool forward = mq[0] * d[0] + mq[1] * d[1] > 0;
				if (l.line || forward || from > 0)
					throw Error("broken lines: path from " + str(x) +
					            " runs along a wall");
				continue;
			}
			Rat s = qcross(r, d) / den;
			Rat u = qcross(r, mq) / den;
			if (s <= 0 || (!l.line && u < 0))
				continue;
			if (!l.line && u == 0)
				throw Error("broken lines: path from " + str(x) +
				            " meets the end of a wall");
			if (!best || s < *best) {
				best = s;
				hit.clear();
			}
			if (s == *best)
				hit.push_back(&l);
		}
		if (!best) {
			if (m == P)
				emit(P, x, steps, out);
			return;
		}
		QVec z = qadd(y, qscale(mq, *best));
		std::vector<int> walls;
		const Locus *ray = nullptr;
		for (auto *l : hit) {
			if (cross(l->dir, hit[0]->dir) != 0)
				throw Error("broken lines: path from " + str(x) +
				            " passes through a joint at " + str(z));
			if (l->wall >= 0)
				walls.push_back(l->wall);
			else
				ray = l;
		}
		Vec n0 = hit[0]->wall >= 0 ? d_.walls[hit[0]->wall].normal
		                           : primitive(rot90(hit[0]->dir));
		Int N = dot(n0, m);
		N = N < 0 ? -N : N;
		int budget = d_.k - d_.monoid->order(q);
		int near = -1, far = -1;
		Mat to_far = identity(2);
		if (ray) {
			const RayInfo &ri = info_[ray->ray];
			bool ccw_side = cross(ray->dir, neg(m)) > 0;
			near = ccw_side ? ri.ccw : ri.cw;
			far = ccw_side ? ri.cw : ri.ccw;
			to_far = ccw_side ? inverse_unimodular(ri.to_ccw) : ri.to_ccw;
		}
		std::vector<std::tuple<Big, Vec, Vec>> terms;
		if (walls.empty()) {
			terms.emplace_back(1, d_.monoid->zero(), Vec{0, 0});
		} else {
			std::sort(walls.begin(), walls.end());
			for (auto &[key, c] : power(walls, N, budget).terms())
				terms.emplace_back(c, key.q, key.m);
		}
		for (auto &[c, qt, e] : terms) {
			Vec m1 = sub(m, e);
			Vec mf = m1, dq = qt;
			if (ray) {
				mf = act(to_far, m1);
				Vec inc = sub(phi(far, mf), phi(near, m1));
				if (!in_positive(inc))
					throw Error("broken lines: negative kink increment");
				dq = add(dq, inc);
			}
			Vec q1 = add(q, dq);
			if (d_.monoid->order(q1) >= d_.k)
				continue;
			bool recorded = ray || !is_zero(e);
			if (recorded)
				steps.push_back({c, dq, m, z});
			trace(z, mf, q1, steps, P, x, out);
			if (recorded)
				steps.pop_back();
		}
	}

	void emit(const Vec &P, const QVec &x, const std::vector<Step> &steps,
	          std::vector<BrokenLine> &out) const
	{
		BrokenLine bl;
		bl.P = P;
		bl.x = x;
		Mono cur{1, d_.monoid->zero(), P};
		bl.segments.push_back(cur);
		for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
			cur.c *= it->c;
			cur.q = add(cur.q, it->dq);
			cur.m = it->m;
			bl.segments.push_back(cur);
			bl.bends.push_back(it->point);
		}
		out.push_back(bl);
	}

	const Diagram &d_;
	std::vector<RayInfo> info_;
	std::vector<Locus> loci_;
	std::vector<Mat> pieces_;
	std::vector<Vec> shifts_;
	bool chart_changes_ = false;
	std::map<std::tuple<std::vector<int>, Int, int>, Series> cache_;
};

Series sum_finals(const Diagram &d, const std::vector<BrokenLine> &lines)
{
	Series s(d.ring());
	for (auto &l : lines)
		s.add_term(l.final().c, l.final().q, l.final().m);
	return s;
}

// basepoint near Q with nothing between it and Q
QVec basepoint(const Tracer &tr, const Vec &Q, std::mt19937_64 &rng)
{
	QVec qq = to_q(Q);
	Rat scale = is_zero(Q) ? Rat(1, 8) : Rat(1, 64);
	std::uniform_int_distribution<long> num(-1000, 1000), den(50000, 99999);
	for (int attempt = 0; attempt < 200; ++attempt) {
		long dn = den(rng);
		QVec delta{Rat(num(rng), dn) * scale, Rat(num(rng), dn) * scale};
		if (qzero(delta))
			continue;
		QVec z = qadd(qq, delta);
		bool ok = true;
		for (auto &l : tr.loci()) {
			if (on_locus(l, qq)) {
				if (qcross(delta, to_q(l.dir)) == 0)
					ok = false;
			} else if (segment_meets(l, qq, z)) {
				ok = false;
			}
			if (on_locus(l, z))
				ok = false;
		}
		if (ok && tr.diagram().ambient.fan.cone_of(z) >= 0)
			return z;
		if (attempt % 10 == 9)
			scale /= 2;
	}
	throw Error("structure constants: no generic basepoint near " + str(Q));
}

Series constant_at(Tracer &tr, const std::vector<Vec> &inputs, const Vec &Q,
                   const QVec &z)
{
	const Diagram &d = tr.diagram();
	Ring r = d.ring();
	Vec zero2{0, 0};
	std::map<Vec, Series> acc;
	acc.emplace(zero2, Series::one(r));
	for (auto &P : inputs) {
		auto lines = tr.run(P, z);
		std::map<Vec, Series> next;
		for (auto &[m, coef] : acc)
			for (auto &l : lines) {
				const Mono &f = l.final();
				Series t = coef * Series::monomial(r, f.c, f.q, zero2);
				if (t.is_zero())
					continue;
				Vec key = add(m, f.m);
				auto it = next.find(key);
				if (it == next.end())
					next.emplace(key, t);
				else
					it->second += t;
			}
		acc = std::move(next);
	}
	auto it = acc.find(Q);
	return it == acc.end() ? Series(r) : it->second;
}

Series constant_sampled(Tracer &tr, const std::vector<Vec> &inputs,
                        const Vec &Q, std::uint64_t seed, int samples)
{
	std::seed_seq ss{seed, (std::uint64_t)Q[0] * 7919u + 17u,
	                 (std::uint64_t)Q[1] * 104729u + 3u};
	std::mt19937_64 rng(ss);
	std::optional<Series> first;
	QVec first_z;
	int got = 0;
	for (int attempt = 0; got < std::max(samples, 1); ++attempt) {
		QVec z = basepoint(tr, Q, rng);
		Series v;
		try {
			v = constant_at(tr, inputs, Q, z);
		} catch (const Error &) {
			if (attempt > 50)
				throw;
			continue;
		}
		++got;
		if (!first) {
			first = v;
			first_z = z;
		} else if (v != *first) {
			throw Error("structure constants: basepoint instability for Q = " +
			            str(Q) + ": " + first->str() + " at " + str(first_z) +
			            " vs " + v.str() + " at " + str(z));
		}
	}
	return *first;
}

} // namespace

std::vector<Vec> exponent_shifts(const Diagram &d)
{
	std::vector<std::pair<int, Vec>> gens;
	for (auto &w : d.walls)
		for (auto &[key, c] : w.f.terms())
			if (key.ord > 0)
				gens.emplace_back(key.ord, key.m);
	std::map<Vec, int> best{{Vec{0, 0}, 0}};
	std::vector<Vec> queue{{0, 0}};
	while (!queue.empty()) {
		Vec e = queue.back();
		queue.pop_back();
		int o = best[e];
		for (auto &[go, gm] : gens) {
			if (o + go >= d.k)
				continue;
			Vec e2 = add(e, gm);
			auto it = best.find(e2);
			if (it == best.end() || it->second > o + go) {
				best[e2] = o + go;
				queue.push_back(e2);
			}
		}
	}
	std::vector<Vec> out;
	for (auto &[e, o] : best)
		out.push_back(e);
	return out;
}

std::vector<BrokenLine> enumerate_broken_lines(const Diagram &d, const Vec &P,
                                               const QVec &x)
{
	Tracer tr(d);
	return tr.run(P, x);
}

Series theta_local(const Diagram &d, const Vec &P, const QVec &x)
{
	Tracer tr(d);
	return sum_finals(d, tr.run(P, x));
}

// ---- theta consistency ----

namespace {

struct CrossingData {
	Vec n;
	Series g;
	bool ray = false;
	int A = -1, B = -1; // cones on the a and b sides
};

CrossingData crossing_at(const Diagram &d, size_t wi, const QVec &x,
                         const QVec &a, const QVec &b)
{
	const Wall &w = d.walls[wi];
	CrossingData cd{w.normal, d.one()};
	for (auto &o : d.walls) {
		if (!o.contains(x))
			continue;
		if (cross(o.direction, w.direction) != 0)
			throw Error("theta consistency: " + str(x) + " is a joint");
		cd.g = cd.g * o.f;
	}
	auto info = ray_info(d);
	const Fan &fan = d.ambient.fan;
	for (size_t i = 0; i < info.size(); ++i) {
		if (!info[i].active)
			continue;
		Locus l{QVec{0, 0}, fan.rays[i], false, -1, (int)i};
		if (!on_locus(l, x))
			continue;
		if (qzero(x) || cross(fan.rays[i], w.direction) != 0)
			throw Error("theta consistency: " + str(x) +
			            " meets a kinked ray transversally");
		cd.ray = true;
		bool a_ccw = fan.cone(fan.cones[info[i].ccw]).contains(a);
		cd.A = a_ccw ? info[i].ccw : info[i].cw;
		cd.B = a_ccw ? info[i].cw : info[i].ccw;
		(void)b;
	}
	return cd;
}

Series carry(const Diagram &d, const CrossingData &cd, const Series &part,
             bool a_to_b)
{
	Series out(d.ring());
	int from = a_to_b ? cd.A : cd.B, to = a_to_b ? cd.B : cd.A;
	std::map<Int, Series> powers;
	for (auto &[key, c] : part.terms()) {
		Vec e = key.m, h = key.q;
		if (cd.ray) {
			h = add(h, kink_increment(d, from, to, e));
			e = act(d.ambient.transition(from, to), e);
		}
		Int s = dot(cd.n, key.m) * (a_to_b ? 1 : -1);
		Series t = Series::monomial(d.ring(), c, h, e);
		if (s != 0) {
			auto it = powers.find(s);
			if (it == powers.end())
				it = powers.emplace(s, pow(cd.g, s)).first;
			t = t * it->second;
		}
		out += t;
	}
	return out;
}

std::array<Series, 3> split(const Diagram &d, const Series &s, const Vec &n)
{
	std::array<Series, 3> out{Series(d.ring()), Series(d.ring()),
	                          Series(d.ring())};
	for (auto &[key, c] : s.terms()) {
		Int v = dot(n, key.m);
		out[v > 0 ? 0 : v == 0 ? 1 : 2].add_term(c, key.q, key.m);
	}
	return out;
}

} // namespace

bool theta_consistency_check(const Diagram &d, size_t wi, const Vec &P,
                             const QVec &a, const QVec &b, std::string *detail,
                             const Series *claimed)
{
	if (wi >= d.walls.size())
		throw Error("theta consistency: no wall " + std::to_string(wi));
	const Wall &w = d.walls[wi];
	if (w.side(a) <= 0 || w.side(b) >= 0)
		throw Error("theta consistency: a must lie on the positive side and b "
		            "on the negative side of the wall");
	QVec ab = qsub(b, a);
	Rat t = -w.side(a) / dot(w.normal, ab);
	QVec x = qadd(a, qscale(ab, t));
	if (!w.contains(x))
		throw Error("theta consistency: segment from a to b misses the wall");
	CrossingData cd = crossing_at(d, wi, x, a, b);
	if (claimed)
		cd.g = *claimed;
	Tracer tr(d);
	Series ta = sum_finals(d, tr.run(P, a));
	Series tb = sum_finals(d, tr.run(P, b));
	auto pa = split(d, ta, w.normal);
	auto pb = split(d, tb, w.normal);
	struct Id {
		const char *name;
		Series lhs, rhs;
	};
	Id ids[] = {
	    {"positive part", carry(d, cd, pa[0], true), pb[0]},
	    {"negative part", carry(d, cd, pb[2], false), pa[2]},
	    {"zero part a to b", carry(d, cd, pa[1], true), pb[1]},
	    {"zero part b to a", carry(d, cd, pb[1], false), pa[1]},
	};
	for (auto &id : ids)
		if (id.lhs != id.rhs) {
			if (detail)
				*detail = std::string(id.name) + " differs for P = " + str(P) +
				          " at " + str(x) + ": " + id.lhs.str() + " vs " +
				          id.rhs.str();
			return false;
		}
	return true;
}

std::vector<QVec> wall_sample_points(const Diagram &d, size_t wi)
{
	const Wall &w = d.walls.at(wi);
	std::vector<Rat> ps;
	for (auto &j : joints(d))
		if (auto s = w.parameter(j); s && (w.line || *s >= 0))
			ps.push_back(*s);
	std::sort(ps.begin(), ps.end());
	ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
	std::vector<Rat> at;
	if (ps.empty()) {
		at.push_back(1);
		if (w.line)
			at.push_back(-1);
	} else {
		if (w.line)
			at.push_back(ps.front() - 1);
		for (size_t i = 0; i + 1 < ps.size(); ++i)
			at.push_back((ps[i] + ps[i + 1]) / 2);
		at.push_back(ps.back() + 1);
	}
	std::vector<QVec> out;
	for (auto &s : at)
		out.push_back(qadd(w.apex, qscale(to_q(w.direction), s)));
	return out;
}

bool theta_consistent_at(const Diagram &d, size_t wi, const QVec &x, int norm,
                         std::string *detail)
{
	const Wall &w = d.walls.at(wi);
	if (!w.contains(x))
		throw Error("theta consistency: point is not on the wall");
	Tracer tr(d);
	std::seed_seq ss{(std::uint64_t)wi, (std::uint64_t)x[0].get_num().get_si(),
	                 (std::uint64_t)x[1].get_num().get_si()};
	std::mt19937_64 rng(ss);
	std::uniform_int_distribution<long> jit(-97, 97);
	QVec n = to_q(w.normal), dir = to_q(w.direction);
	Rat eps = Rat(1, 16);
	if (qnorm_inf(x) != 0 && qnorm_inf(x) < 1)
		eps *= qnorm_inf(x);
	for (int attempt = 0; attempt < 60; ++attempt) {
		Rat e = eps * Rat(997 + jit(rng), 1000);
		QVec a = qadd(x, qadd(qscale(n, e), qscale(dir, e * Rat(jit(rng), 1000))));
		QVec b = qadd(x, qadd(qscale(n, -e), qscale(dir, e * Rat(jit(rng), 1000))));
		bool clear = true;
		for (auto &l : tr.loci()) {
			bool same_line = cross(l.dir, w.direction) == 0 &&
			                 qcross(qsub(l.apex, w.apex), dir) == 0;
			if (same_line) {
				if (on_locus(l, a) || on_locus(l, b))
					clear = false;
				continue;
			}
			if (segment_meets(l, a, b))
				clear = false;
		}
		if (!clear) {
			if (attempt % 4 == 3)
				eps /= 2;
			continue;
		}
		try {
			for (Int p0 = -norm; p0 <= norm; ++p0)
				for (Int p1 = -norm; p1 <= norm; ++p1) {
					Vec P{p0, p1};
					if (is_zero(P))
						continue;
					if (!theta_consistency_check(d, wi, P, a, b, detail))
						return false;
				}
			return true;
		} catch (const Error &ex) {
			std::string what = ex.what();
			if (what.find("broken lines") == std::string::npos)
				throw;
			if (attempt % 4 == 3)
				eps /= 2;
		}
	}
	throw Error("theta consistency: no generic pair of points near " + str(x));
}

// ---- structure constants ----

Series structure_constant(const Diagram &d, const std::vector<Vec> &inputs,
                          const Vec &Q, std::uint64_t seed, int samples)
{
	Tracer tr(d);
	return constant_sampled(tr, inputs, Q, seed, samples);
}

static std::map<Vec, Series> product_with(Tracer &tr,
                                          const std::vector<Vec> &inputs,
                                          std::uint64_t seed, int samples)
{
	const Diagram &d = tr.diagram();
	Vec sum{0, 0};
	for (auto &P : inputs)
		sum = add(sum, P);
	std::map<Vec, Series> out;
	size_t nonzero = 0;
	for (auto &P : inputs)
		nonzero += !is_zero(P);
	if (nonzero <= 1) {
		out.emplace(sum, d.one());
		return out;
	}
	std::set<Vec> cand;
	for (auto &c : tr.candidates(sum))
		cand.insert(c);
	for (auto &Q : cand) {
		Series v = constant_sampled(tr, inputs, Q, seed, samples);
		if (!v.is_zero())
			out.emplace(Q, v);
	}
	return out;
}

std::map<Vec, Series> product(const Diagram &d, const std::vector<Vec> &inputs,
                              std::uint64_t seed, int samples)
{
	Tracer tr(d);
	return product_with(tr, inputs, seed, samples);
}

std::vector<Vec> basis_points(int bound)
{
	std::vector<Vec> out;
	for (Int a = -bound; a <= bound; ++a)
		for (Int b = -bound; b <= bound; ++b)
			out.push_back({a, b});
	return out;
}

MirrorAlgebra build_algebra(const Diagram &d, int bound, std::uint64_t seed,
                            int samples)
{
	MirrorAlgebra alg;
	alg.d = d;
	alg.bound = bound;
	alg.seed = seed;
	alg.samples = samples;
	alg.basis = basis_points(bound);
	Tracer tr(alg.d);
	for (size_t i = 0; i < alg.basis.size(); ++i)
		for (size_t j = i; j < alg.basis.size(); ++j) {
			const Vec &a = alg.basis[i], &b = alg.basis[j];
			auto e = product_with(tr, {a, b}, seed, samples);
			alg.table[{a, b}] = e;
			alg.table[{b, a}] = e;
		}
	return alg;
}

Expansion multiply(const MirrorAlgebra &alg, const Vec &a, const Vec &b)
{
	auto it = alg.table.find({a, b});
	if (it != alg.table.end())
		return it->second;
	{
		std::lock_guard<std::mutex> g(*alg.lock);
		auto jt = alg.extra->find({a, b});
		if (jt != alg.extra->end())
			return jt->second;
	}
	auto e = product(alg.d, {a, b}, alg.seed, alg.samples);
	std::lock_guard<std::mutex> g(*alg.lock);
	(*alg.extra)[{a, b}] = e;
	(*alg.extra)[{b, a}] = e;
	return e;
}

static void accumulate(Expansion &out, const Vec &Q, const Series &s)
{
	auto it = out.find(Q);
	if (it == out.end()) {
		if (!s.is_zero())
			out.emplace(Q, s);
		return;
	}
	it->second += s;
	if (it->second.is_zero())
		out.erase(it);
}

Expansion multiply(const MirrorAlgebra &alg, const Expansion &x, const Vec &c)
{
	Expansion out;
	for (auto &[Q, coef] : x)
		for (auto &[R, v] : multiply(alg, Q, c))
			accumulate(out, R, coef * v);
	return out;
}

std::string key_str(const Vec &a, const Vec &b) { return str(a) + "*" + str(b); }

static Vec class_weight(const std::vector<Vec> &w_classes, const Vec &q,
                        size_t dim)
{
	Vec out(dim, 0);
	for (size_t i = 0; i < q.size(); ++i)
		if (q[i] != 0)
			out = add(out, scale(w_classes.at(i), q[i]));
	return out;
}

static Vec point_weight(const Fan &fan, const std::vector<Vec> &w_points,
                        const Vec &P)
{
	QVec v = pl_value(fan, w_points, to_q(P));
	Vec out;
	for (auto &x : v) {
		if (x.get_den() != 1)
			throw Error("grading: weight of " + str(P) + " is not integral");
		out.push_back(x.get_num().get_si());
	}
	return out;
}

Report check_grading(const MirrorAlgebra &alg, const std::vector<Vec> &w_points,
                     const std::vector<Vec> &w_classes)
{
	Report rep;
	const Fan &fan = alg.d.ambient.fan;
	if (w_points.size() != fan.rays.size())
		throw Error("grading: need one weight per ray");
	if (w_classes.size() != alg.d.monoid->size())
		throw Error("grading: need one weight per class generator");
	size_t dim = w_points[0].size();
	for (auto &[key, exp] : alg.table) {
		Vec lhs = add(point_weight(fan, w_points, key.first),
		              point_weight(fan, w_points, key.second));
		for (auto &[Q, coef] : exp)
			for (auto &[k, c] : coef.terms()) {
				++rep.checked;
				Vec rhs = add(point_weight(fan, w_points, Q),
				              class_weight(w_classes, k.q, dim));
				if (rhs != lhs)
					rep.fail(key_str(key.first, key.second) + " -> " + str(Q) +
					         " with class " + str(k.q) + ": weight " +
					         str(rhs) + " != " + str(lhs));
			}
	}
	return rep;
}

Report check_convexity(const MirrorAlgebra &alg, const PLFunction &F)
{
	Report rep;
	const Fan &fan = alg.d.ambient.fan;
	bool ample = true;
	for (auto &[face, adj] : fan.walls()) {
		if (adj.size() != 2)
			continue;
		Int b = bend(alg.d.ambient, F, face);
		if (b < 0) {
			rep.fail("F is not nef across ray " + str(fan.rays[face[0]]));
			return rep;
		}
		if (b == 0)
			ample = false;
	}
	auto val = [&](const Vec &P) { return pl_value(fan, F, to_q(P)); };
	for (auto &[key, exp] : alg.table) {
		Rat rhs = val(key.first) + val(key.second);
		for (auto &[Q, coef] : exp) {
			++rep.checked;
			Rat lhs = val(Q);
			std::string at = key_str(key.first, key.second) + " -> " + str(Q);
			if (lhs > rhs)
				rep.fail(at + ": F(Q) = " + lhs.get_str() + " exceeds " +
				         rhs.get_str());
			else if (ample && lhs == rhs && !coef.is_one())
				rep.fail(at + ": equality case with coefficient " + coef.str());
		}
	}
	return rep;
}

Report check_associativity(const MirrorAlgebra &alg,
                           const std::vector<std::array<Vec, 3>> &triples)
{
	Report rep;
	for (auto &[a, b, c] : triples) {
		++rep.checked;
		Expansion left = multiply(alg, multiply(alg, a, b), c);
		Expansion right;
		for (auto &[R, coef] : multiply(alg, b, c))
			for (auto &[S, v] : multiply(alg, a, R))
				accumulate(right, S, coef * v);
		if (left != right) {
			std::string why = "(" + str(a) + "*" + str(b) + ")*" + str(c);
			for (auto &[Q, v] : left) {
				auto it = right.find(Q);
				if (it == right.end() || it->second != v) {
					why += " differs at " + str(Q);
					break;
				}
			}
			rep.fail(why);
		}
	}
	return rep;
}

AbsoluteTable absolutize(const MirrorAlgebra &alg)
{
	AbsoluteTable out;
	int k = alg.d.k;
	for (auto &[key, exp] : alg.table) {
		auto &row = out.table[key];
		for (auto &[Q, coef] : exp) {
			Big total = 0, lower = 0;
			for (auto &[t, c] : coef.terms()) {
				total += c;
				if (t.ord < k - 1)
					lower += c;
			}
			if (total != 0)
				row[Q] = total;
			if (k >= 2 && total != lower)
				out.unstable.push_back(key_str(key.first, key.second) + " -> " +
				                       str(Q));
		}
	}
	return out;
}

Filtration rees_filtration(const MirrorAlgebra &alg, const PLFunction &W)
{
	Filtration out;
	const Fan &fan = alg.d.ambient.fan;
	auto level = [&](const Vec &P) {
		Rat w = pl_value(fan, W, to_q(P));
		if (w <= 0)
			return Int(0);
		Big c;
		mpz_cdiv_q(c.get_mpz_t(), w.get_num().get_mpz_t(),
		           w.get_den().get_mpz_t());
		return (Int)c.get_si();
	};
	for (auto &P : alg.basis)
		out.level[P] = level(P);
	for (auto &[key, exp] : alg.table)
		for (auto &[Q, coef] : exp) {
			++out.multiplicative.checked;
			Int l = level(Q), r = level(key.first) + level(key.second);
			if (l > r)
				out.multiplicative.fail(key_str(key.first, key.second) + " -> " +
				                        str(Q) + ": level " + std::to_string(l) +
				                        " > " + std::to_string(r));
		}
	return out;
}

} // namespace logcy
