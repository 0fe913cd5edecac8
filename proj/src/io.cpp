#include "logcy/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace logcy {

namespace {

const Json &need(const Json &j, const char *key, const std::string &where)
{
	if (!j.is_object())
		throw InputError(where + ": expected an object");
	auto it = j.find(key);
	if (it == j.end())
		throw InputError(where + (where.empty() ? "" : ".") + key + ": missing");
	return *it;
}

std::string at(const std::string &where, size_t i)
{
	return where + "[" + std::to_string(i) + "]";
}

Int int_from(const Json &j, const std::string &field)
{
	if (!j.is_number_integer())
		throw InputError(field + ": expected an integer");
	return j.get<Int>();
}

Big big_from(const Json &j, const std::string &field)
{
	if (j.is_number_integer())
		return Big(j.get<Int>());
	if (j.is_string()) {
		Big b;
		if (b.set_str(j.get<std::string>(), 10) == 0)
			return b;
	}
	throw InputError(field + ": expected an integer");
}

Json big_json(const Big &b)
{
	if (b.fits_slong_p())
		return Json(b.get_si());
	return Json(b.get_str());
}

Json vec_json(const Vec &v)
{
	return Json(v);
}

std::vector<Vec> vecs_from(const Json &j, const std::string &field)
{
	if (!j.is_array())
		throw InputError(field + ": expected an array");
	std::vector<Vec> out;
	for (size_t i = 0; i < j.size(); ++i)
		out.push_back(vec_from(j[i], at(field, i)));
	return out;
}

Json vecs_json(const std::vector<Vec> &v)
{
	Json a = Json::array();
	for (auto &x : v)
		a.push_back(vec_json(x));
	return a;
}

const char *mark_name(Mark m)
{
	switch (m) {
	case Mark::F: return "F";
	case Mark::B: return "B";
	case Mark::I: return "I";
	default: return "none";
	}
}

} // namespace

Json to_json(const Rat &r)
{
	if (r.get_den() == 1 && r.get_num().fits_slong_p())
		return Json(r.get_num().get_si());
	return Json(r.get_str());
}

Json to_json(const QVec &v)
{
	Json a = Json::array();
	for (auto &x : v)
		a.push_back(to_json(x));
	return a;
}

Json to_json(const Series &s)
{
	Json a = Json::array();
	for (auto &[k, c] : s.terms())
		a.push_back(Json{{"q", k.q}, {"m", k.m}, {"c", big_json(c)}});
	return a;
}

Rat rat_from(const Json &j, const std::string &field)
{
	if (j.is_number_integer())
		return Rat(j.get<Int>());
	if (j.is_string()) {
		Rat r;
		if (r.set_str(j.get<std::string>(), 10) == 0 && r.get_den() != 0) {
			r.canonicalize();
			return r;
		}
	}
	throw InputError(field + ": expected a rational (integer or \"p/q\")");
}

QVec qvec_from(const Json &j, const std::string &field)
{
	if (!j.is_array())
		throw InputError(field + ": expected an array");
	QVec out;
	for (size_t i = 0; i < j.size(); ++i)
		out.push_back(rat_from(j[i], at(field, i)));
	return out;
}

Vec vec_from(const Json &j, const std::string &field)
{
	if (!j.is_array())
		throw InputError(field + ": expected an integer array");
	Vec out;
	for (size_t i = 0; i < j.size(); ++i)
		out.push_back(int_from(j[i], at(field, i)));
	return out;
}

Json geometry_json(const AffineManifold &am)
{
	Json j;
	j["rank"] = am.fan.rank;
	if (!am.self_intersections.empty()) {
		j["self_intersections"] = am.self_intersections;
		return j;
	}
	j["rays"] = vecs_json(am.fan.rays);
	Json cones = Json::array();
	for (auto &c : am.fan.cones)
		cones.push_back(c);
	j["maximal_cones"] = cones;
	j["affine"] = "toric";
	return j;
}

AffineManifold geometry_from(const Json &j)
{
	const std::string w = "geometry";
	Int rank = int_from(need(j, "rank", w), w + ".rank");
	if (j.contains("self_intersections")) {
		if (rank != 2)
			throw InputError(w + ".rank: self_intersections need rank 2");
		Vec d = vec_from(j["self_intersections"], w + ".self_intersections");
		try {
			return build_affine_structure_dim2(d);
		} catch (const Error &e) {
			throw InputError(w + ".self_intersections: " + e.what());
		}
	}
	auto rays = vecs_from(need(j, "rays", w), w + ".rays");
	for (size_t i = 0; i < rays.size(); ++i)
		if ((Int)rays[i].size() != rank || !Lattice((int)rank).is_primitive(rays[i]))
			throw InputError(at(w + ".rays", i) + ": expected a primitive vector of length " +
			                 std::to_string(rank));
	const Json &mc = need(j, "maximal_cones", w);
	if (!mc.is_array())
		throw InputError(w + ".maximal_cones: expected an array");
	std::vector<std::vector<int>> cones;
	for (size_t i = 0; i < mc.size(); ++i) {
		Vec c = vec_from(mc[i], at(w + ".maximal_cones", i));
		cones.emplace_back(c.begin(), c.end());
	}
	if (j.contains("affine") && j["affine"] != "toric")
		throw InputError(w + ".affine: only \"toric\" is recognised");
	try {
		return toric_manifold(Fan((int)rank, rays, cones));
	} catch (const Error &e) {
		throw InputError(w + ": " + e.what());
	}
}

Json monoid_json(const Monoid &m)
{
	Json j;
	j["generators"] = m.names;
	j["degrees"] = m.degrees;
	if (!m.divisor_pairing.empty())
		j["divisor_pairing"] = vecs_json(m.divisor_pairing);
	return j;
}

Monoid monoid_from(const Json &j)
{
	const std::string w = "monoid";
	const Json &g = need(j, "generators", w);
	if (!g.is_array())
		throw InputError(w + ".generators: expected an array of names");
	std::vector<std::string> names;
	for (size_t i = 0; i < g.size(); ++i) {
		if (!g[i].is_string())
			throw InputError(at(w + ".generators", i) + ": expected a name");
		names.push_back(g[i].get<std::string>());
	}
	std::vector<int> degrees(names.size(), 1);
	if (j.contains("degrees")) {
		Vec d = vec_from(j["degrees"], w + ".degrees");
		degrees.assign(d.begin(), d.end());
	}
	std::vector<Vec> pairing;
	if (j.contains("divisor_pairing"))
		pairing = vecs_from(j["divisor_pairing"], w + ".divisor_pairing");
	try {
		return Monoid(names, degrees, pairing);
	} catch (const Error &e) {
		throw InputError(w + ": " + e.what());
	}
}

Series series_from(const Json &j, const Ring &r, const std::string &field)
{
	if (!j.is_array())
		throw InputError(field + ": expected an array of terms");
	Series s(r);
	for (size_t i = 0; i < j.size(); ++i) {
		std::string f = at(field, i);
		Vec q = vec_from(need(j[i], "q", f), f + ".q");
		Vec m = vec_from(need(j[i], "m", f), f + ".m");
		if (q.size() != r.monoid->size())
			throw InputError(f + ".q: expected " +
			                 std::to_string(r.monoid->size()) + " entries");
		if ((int)m.size() != r.rank)
			throw InputError(f + ".m: expected " + std::to_string(r.rank) +
			                 " entries");
		if (std::any_of(q.begin(), q.end(), [](Int x) { return x < 0; }))
			throw InputError(f + ".q: negative exponent");
		s.add_term(big_from(need(j[i], "c", f), f + ".c"), q, m);
	}
	return s;
}

Problem canonical(const Problem &p)
{
	Problem out = p;
	const Fan &fan = p.d.ambient.fan;
	if (!p.d.ambient.self_intersections.empty())
		return out;
	std::vector<int> order(fan.rays.size());
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(),
	          [&](int a, int b) { return fan.rays[a] < fan.rays[b]; });
	std::vector<int> where(order.size());
	for (size_t i = 0; i < order.size(); ++i)
		where[order[i]] = (int)i;
	std::vector<Vec> rays;
	for (int i : order)
		rays.push_back(fan.rays[i]);
	std::vector<std::vector<int>> cones;
	for (auto &c : fan.cones) {
		std::vector<int> n;
		for (int i : c)
			n.push_back(where[i]);
		std::sort(n.begin(), n.end());
		cones.push_back(n);
	}
	std::sort(cones.begin(), cones.end());
	out.d.ambient = toric_manifold(Fan(fan.rank, rays, cones));
	auto permute = [&](const std::vector<Vec> &v) {
		std::vector<Vec> r;
		for (int i : order)
			r.push_back(v.at(i));
		return r;
	};
	if (out.d.section)
		out.d.section->values = permute(p.d.section->values);
	if (!p.d.monoid->divisor_pairing.empty()) {
		Monoid m = *p.d.monoid;
		for (auto &row : m.divisor_pairing) {
			if (row.size() != order.size())
				continue;
			Vec r;
			for (int i : order)
				r.push_back(row[i]);
			row = r;
		}
		out.d.monoid = std::make_shared<Monoid>(m);
	}
	if (out.grading)
		out.grading->points = permute(p.grading->points);
	auto permute_pl = [&](const PLFunction &f) {
		PLFunction g;
		for (int i : order)
			g.coefficients.push_back(f.coefficients.at(i));
		return g;
	};
	for (auto &f : out.nef)
		f = permute_pl(f);
	if (out.rees)
		out.rees = permute_pl(*p.rees);
	std::sort(out.d.walls.begin(), out.d.walls.end(),
	          [](const Wall &a, const Wall &b) {
		          return std::tie(b.line, a.apex, a.direction, a.normal) <
		                 std::tie(a.line, b.apex, b.direction, b.normal);
	          });
	return out;
}

Json to_json(const Problem &p0)
{
	Problem p = canonical(p0);
	Json j;
	j["geometry"] = geometry_json(p.d.ambient);
	j["monoid"] = monoid_json(*p.d.monoid);
	j["order"] = p.d.k;
	Json walls = Json::array();
	for (auto &w : p.d.walls) {
		Json x;
		x["apex"] = to_json(w.apex);
		x["direction"] = w.direction;
		x["line"] = w.line;
		x["normal"] = w.normal;
		x["function"] = to_json(w.f);
		walls.push_back(x);
	}
	j["walls"] = walls;
	if (p.d.section)
		j["section"] = vecs_json(p.d.section->values);
	j["bound"] = p.bound;
	j["seed"] = p.seed;
	if (p.grading)
		j["grading"] = Json{{"points", vecs_json(p.grading->points)},
		                    {"classes", vecs_json(p.grading->classes)}};
	if (!p.nef.empty()) {
		Json a = Json::array();
		for (auto &f : p.nef)
			a.push_back(f.coefficients);
		j["nef"] = a;
	}
	if (p.rees)
		j["rees"] = p.rees->coefficients;
	return j;
}

Problem problem_from(const Json &j)
{
	if (!j.is_object())
		throw InputError("input: expected an object");
	Problem p;
	p.d.ambient = geometry_from(need(j, "geometry", ""));
	p.d.monoid = std::make_shared<Monoid>(monoid_from(need(j, "monoid", "")));
	if (j.contains("order"))
		p.d.k = (int)int_from(j["order"], "order");
	if (p.d.k < 1)
		throw InputError("order: must be at least 1");
	size_t nrays = p.d.ambient.fan.rays.size();
	size_t ngen = p.d.monoid->size();
	if (j.contains("section")) {
		auto v = vecs_from(j["section"], "section");
		if (v.size() != nrays)
			throw InputError("section: expected one class vector per ray");
		for (size_t i = 0; i < v.size(); ++i)
			if (v[i].size() != ngen)
				throw InputError(at("section", i) + ": expected " +
				                 std::to_string(ngen) + " entries");
		p.d.section = PLSection{v};
	}
	if (j.contains("walls")) {
		const Json &ws = j["walls"];
		if (!ws.is_array())
			throw InputError("walls: expected an array");
		for (size_t i = 0; i < ws.size(); ++i) {
			std::string f = at("walls", i);
			QVec apex = j["walls"][i].contains("apex")
			                ? qvec_from(ws[i]["apex"], f + ".apex")
			                : QVec(p.d.ambient.fan.rank, 0);
			Vec dir = vec_from(need(ws[i], "direction", f), f + ".direction");
			bool line = false;
			if (ws[i].contains("line")) {
				if (!ws[i]["line"].is_boolean())
					throw InputError(f + ".line: expected true or false");
				line = ws[i]["line"].get<bool>();
			}
			Vec n = ws[i].contains("normal")
			            ? vec_from(ws[i]["normal"], f + ".normal")
			            : Vec{};
			if (n.empty() && dir.size() == 2)
				n = primitive(Vec{dir[1], -dir[0]});
			Series fn = series_from(need(ws[i], "function", f), p.d.ring(),
			                        f + ".function");
			try {
				p.d.walls.push_back(make_wall(apex, dir, line, n, fn));
			} catch (const Error &e) {
				throw InputError(f + ": " + e.what());
			}
		}
	}
	try {
		validate(p.d);
	} catch (const Error &e) {
		throw InputError(std::string("walls: ") + e.what());
	}
	if (j.contains("bound"))
		p.bound = (int)int_from(j["bound"], "bound");
	if (p.bound < 0)
		throw InputError("bound: must be nonnegative");
	if (j.contains("seed")) {
		if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
			throw InputError("seed: expected a nonnegative integer");
		p.seed = j["seed"].get<std::uint64_t>();
	}
	if (j.contains("grading")) {
		Grading g;
		g.points = vecs_from(need(j["grading"], "points", "grading"),
		                     "grading.points");
		g.classes = vecs_from(need(j["grading"], "classes", "grading"),
		                      "grading.classes");
		if (g.points.size() != nrays)
			throw InputError("grading.points: expected one vector per ray");
		if (g.classes.size() != ngen)
			throw InputError("grading.classes: expected one vector per generator");
		p.grading = g;
	}
	if (j.contains("nef")) {
		auto fs = vecs_from(j["nef"], "nef");
		for (size_t i = 0; i < fs.size(); ++i) {
			if (fs[i].size() != nrays)
				throw InputError(at("nef", i) + ": expected one value per ray");
			p.nef.push_back(PLFunction{fs[i]});
		}
	}
	if (j.contains("rees")) {
		Vec r = vec_from(j["rees"], "rees");
		if (r.size() != nrays)
			throw InputError("rees: expected one value per ray");
		p.rees = PLFunction{r};
	}
	return canonical(p);
}

Json to_json(const Spine &s)
{
	Json vs = Json::array();
	for (auto &v : s.vertices) {
		Json x;
		if (!v.position.empty())
			x["position"] = to_json(v.position);
		x["mark"] = mark_name(v.mark);
		if (v.boundary_ray >= 0)
			x["boundary_ray"] = v.boundary_ray;
		if (!v.b_weight.empty())
			x["b_weight"] = v.b_weight;
		vs.push_back(x);
	}
	Json es = Json::array();
	for (auto &e : s.edges) {
		Json x;
		x["a"] = e.a;
		x["b"] = e.b;
		x["length"] = e.length ? to_json(*e.length) : Json(nullptr);
		x["derivative"] = e.derivative;
		es.push_back(x);
	}
	return Json{{"vertices", vs}, {"edges", es}};
}

Spine spine_from(const Json &j)
{
	Spine s;
	const Json &vs = need(j, "vertices", "spine");
	if (!vs.is_array())
		throw InputError("spine.vertices: expected an array");
	for (size_t i = 0; i < vs.size(); ++i) {
		std::string f = at("spine.vertices", i);
		SpineVertex v;
		if (vs[i].contains("position"))
			v.position = qvec_from(vs[i]["position"], f + ".position");
		if (vs[i].contains("mark")) {
			std::string m = vs[i]["mark"].is_string()
			                    ? vs[i]["mark"].get<std::string>()
			                    : "";
			if (m == "F")
				v.mark = Mark::F;
			else if (m == "B")
				v.mark = Mark::B;
			else if (m == "I")
				v.mark = Mark::I;
			else if (m != "none")
				throw InputError(f + ".mark: expected F, B, I or none");
		}
		if (vs[i].contains("boundary_ray"))
			v.boundary_ray = (int)int_from(vs[i]["boundary_ray"], f + ".boundary_ray");
		if (vs[i].contains("b_weight"))
			v.b_weight = vec_from(vs[i]["b_weight"], f + ".b_weight");
		s.vertices.push_back(v);
	}
	const Json &es = need(j, "edges", "spine");
	if (!es.is_array())
		throw InputError("spine.edges: expected an array");
	for (size_t i = 0; i < es.size(); ++i) {
		std::string f = at("spine.edges", i);
		SpineEdge e;
		e.a = (int)int_from(need(es[i], "a", f), f + ".a");
		e.b = (int)int_from(need(es[i], "b", f), f + ".b");
		if (es[i].contains("length") && !es[i]["length"].is_null())
			e.length = rat_from(es[i]["length"], f + ".length");
		e.derivative = vec_from(need(es[i], "derivative", f), f + ".derivative");
		s.edges.push_back(e);
	}
	try {
		validate(s);
	} catch (const Error &e) {
		throw InputError(std::string("spine: ") + e.what());
	}
	return s;
}

Json to_json(const WallSet &w)
{
	Json a = Json::array();
	for (auto &x : w)
		a.push_back(Json{{"cone_generators", vecs_json(x.generators)},
		                 {"cone", x.cone},
		                 {"vector", x.vector}});
	return a;
}

WallSet wallset_from(const Json &j)
{
	if (!j.is_array())
		throw InputError("walls: expected an array");
	WallSet out;
	for (size_t i = 0; i < j.size(); ++i) {
		std::string f = at("walls", i);
		SpineWall w;
		w.generators = vecs_from(need(j[i], "cone_generators", f),
		                         f + ".cone_generators");
		if (j[i].contains("cone"))
			w.cone = (int)int_from(j[i]["cone"], f + ".cone");
		w.vector = vec_from(need(j[i], "vector", f), f + ".vector");
		out.push_back(w);
	}
	std::sort(out.begin(), out.end());
	return out;
}

Json to_json(const DualComplex &K)
{
	Json j;
	j["dim"] = K.dim;
	Json s = Json::array();
	for (auto &x : K.simplices)
		s.push_back(x);
	j["simplices"] = s;
	if (!K.glue.empty())
		j["glue"] = K.glue;
	if (!K.orientation.empty())
		j["orientation"] = K.orientation;
	return j;
}

DualComplex complex_from(const Json &j)
{
	DualComplex K;
	const std::string w = "complex";
	K.dim = (int)int_from(need(j, "dim", w), w + ".dim");
	const Json &s = need(j, "simplices", w);
	if (!s.is_array())
		throw InputError(w + ".simplices: expected an array");
	for (size_t i = 0; i < s.size(); ++i) {
		Vec v = vec_from(s[i], at(w + ".simplices", i));
		K.simplices.emplace_back(v.begin(), v.end());
	}
	int n = K.vertex_count();
	for (auto &x : K.simplices)
		for (int v : x)
			if (v < 0)
				throw InputError(w + ".simplices: negative vertex");
	if (j.contains("glue")) {
		Vec g = vec_from(j["glue"], w + ".glue");
		if ((int)g.size() != n)
			throw InputError(w + ".glue: expected one target per vertex");
		K.glue.assign(g.begin(), g.end());
	}
	if (j.contains("orientation")) {
		Vec o = vec_from(j["orientation"], w + ".orientation");
		if (o.size() != K.simplices.size())
			throw InputError(w + ".orientation: expected one sign per simplex");
		for (Int x : o)
			if (x != 1 && x != -1)
				throw InputError(w + ".orientation: entries must be 1 or -1");
		K.orientation.assign(o.begin(), o.end());
	}
	return K;
}

Json theta_record(const Vec &P, const QVec &x, const Series &value)
{
	return Json{{"P", P}, {"x", to_json(x)}, {"terms", to_json(value)}};
}

Json table_json(const MirrorAlgebra &alg)
{
	Json entries = Json::array();
	for (auto &[key, exp] : alg.table) {
		if (key.second < key.first)
			continue;
		for (auto &[Q, c] : exp)
			entries.push_back(Json{{"inputs", Json::array({key.first, key.second})},
			                       {"Q", Q},
			                       {"value", to_json(c)}});
	}
	return Json{{"order", alg.d.k}, {"bound", alg.bound}, {"entries", entries}};
}

Json vertex_table_json(const VertexAlgebra &va)
{
	Json entries = Json::array();
	for (auto &[key, prod] : va.table) {
		if (key.second < key.first)
			continue;
		for (auto &[Q, c] : prod)
			entries.push_back(Json{{"inputs", Json::array({key.first, key.second})},
			                       {"Q", Q},
			                       {"value", big_json(c)}});
	}
	return Json{{"bound", va.bound}, {"entries", entries}};
}

Json read_json(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw InputError(path + ": cannot open");
	try {
		return Json::parse(in);
	} catch (const Json::parse_error &e) {
		throw InputError(path + ": " + e.what());
	}
}

std::string dump(const Json &j)
{
	return j.dump(2) + "\n";
}

} // namespace logcy
