#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logcy/geometry.hpp"

#include <random>

using namespace logcy;

namespace {

// develop the cyclic relation v[i-1] + v[i+1] = -d[i] v[i] starting from the
// standard frame; returns the matrix sending (v0, v1) to (vk, vk+1)
Mat developed_monodromy(const Vec &d)
{
	size_t k = d.size();
	std::vector<Vec> v{{1, 0}, {0, 1}};
	for (size_t i = 1; i <= k; ++i)
		v.push_back(sub(scale(v[i], -d[i % k]), v[i - 1]));
	// columns are the images of e1, e2
	return Mat{{v[k][0], v[k + 1][0]}, {v[k][1], v[k + 1][1]}};
}

// mismatch of f at the far ray against the linear extension across ray i,
// with the three rays developed in one chart
Int extension_mismatch(const Vec &d, const Vec &a, int i)
{
	int n = (int)d.size();
	int prev = (i + n - 1) % n, next = (i + 1) % n;
	Vec vp{1, 0}, vi{0, 1};
	Vec vn = sub(scale(vi, -d[i]), vp);
	QVec lin = solve({to_q(vp), to_q(vi)}, {Rat(a[prev]), Rat(a[i])});
	Rat diff = Rat(a[next]) - dot(vn, lin);
	return diff.get_num().get_si();
}

} // namespace

TEST_CASE("lattice and cones")
{
	Lattice l(2);
	CHECK(l.contains({1, 2}));
	CHECK_FALSE(l.contains({1, 2, 3}));
	CHECK(l.is_primitive({2, 3}));
	CHECK_FALSE(l.is_primitive({2, 4}));
	RationalCone c{{{1, 0}, {0, 1}}};
	CHECK(c.contains({Rat(1), Rat(2)}));
	CHECK(c.contains({Rat(0), Rat(0)}));
	CHECK_FALSE(c.contains({Rat(-1), Rat(2)}));
	CHECK(c.relint_contains({Rat(1, 2), Rat(3)}));
	CHECK_FALSE(c.relint_contains({Rat(0), Rat(3)}));
	RationalCone face{{{0, 1}}};
	CHECK(face.is_face_of(c));
	CHECK_FALSE(RationalCone{{{1, 1}}}.is_face_of(c));
}

TEST_CASE("fan validation")
{
	CHECK_THROWS_AS(Fan(2, {{2, 0}, {0, 1}}, {{0, 1}}), Error);
	CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 5}}), Error);
	CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}), Error);
	Fan p2 = fan_p2();
	CHECK(p2.complete);
	CHECK(p2.cyclic_order().size() == 3);
}

TEST_CASE("affine structure from self-intersections: P2")
{
	Vec d{1, 1, 1};
	AffineManifold am = build_affine_structure_dim2(d);
	auto &rays = am.fan.rays;
	REQUIRE(rays.size() == 3);
	CHECK(rays[0] == Vec{1, 0});
	CHECK(rays[1] == Vec{0, 1});
	CHECK(rays[2] == Vec{-1, -1});
	for (int i = 0; i < 3; ++i)
		CHECK(add(rays[(i + 2) % 3], rays[(i + 1) % 3]) == scale(rays[i], -d[i]));
	CHECK(am.trivial_monodromy());
	CHECK(monodromy(am, 0) == identity(2));
	CHECK(developed_monodromy(d) == identity(2));
}

TEST_CASE("affine structure with monodromy")
{
	for (Vec d : {Vec{-1, -1, -1}, Vec{0, 1, 1}, Vec{2, -1, 3, 0}, Vec{1, 1, 1, 1, 1}}) {
		AffineManifold am = build_affine_structure_dim2(d);
		// the oracle lives in the frame of the first cone
		Mat frame{{am.fan.rays[0][0], am.fan.rays[1][0]}, {am.fan.rays[0][1], am.fan.rays[1][1]}};
		Mat oracle = matmul(matmul(frame, developed_monodromy(d)), inverse_unimodular(frame));
		Mat m = monodromy(am, 0);
		CAPTURE(str(d));
		CHECK(det(m) == 1);
		bool matches = m == oracle || m == inverse_unimodular(oracle);
		CHECK(matches);
		CHECK(am.trivial_monodromy() == (oracle == identity(2)));
	}
	Mat minus{{-1, 0}, {0, -1}};
	CHECK(monodromy(build_affine_structure_dim2({-1, -1, -1}), 0) == minus);
}

TEST_CASE("short cycles are rejected")
{
	CHECK_THROWS_AS(build_affine_structure_dim2({1, 1}), Error);
	CHECK_THROWS_AS(build_affine_structure_dim2({4}), Error);
}

TEST_CASE("transitions fix the shared wall and invert each other")
{
	for (Vec d : {Vec{1, 1, 1}, Vec{-1, -1, -1}, Vec{0, 2, -3, 1}}) {
		AffineManifold am = build_affine_structure_dim2(d);
		for (auto &[face, adj] : am.fan.walls()) {
			if (adj.size() != 2)
				continue;
			const Mat &t = am.transition(adj[0], adj[1]);
			const Mat &u = am.transition(adj[1], adj[0]);
			CHECK(matmul(t, u) == identity(2));
			CHECK(det(t) == 1);
			for (int r : face)
				CHECK(act(t, am.fan.rays[r]) == am.fan.rays[r]);
		}
	}
}

TEST_CASE("parallel transport")
{
	AffineManifold toric = toric_manifold(fan_p2());
	CHECK(parallel_transport(toric, {0, 1}, {3, -2}) == Vec{3, -2});
	CHECK(parallel_transport(toric, {0, 1, 2, 0}, {1, 5}) == Vec{1, 5});

	AffineManifold am = build_affine_structure_dim2({-1, -1, -1});
	auto order = am.fan.cyclic_order();
	std::vector<int> loop(order.begin(), order.end());
	loop.push_back(order[0]);
	Vec v = parallel_transport(am, loop, {1, 0});
	CHECK(v != Vec{1, 0});
	CHECK(v == act(monodromy(am, order[0]), {1, 0}));

	// reversal and composition
	std::mt19937 rng(1);
	std::uniform_int_distribution<int> ex(-5, 5);
	for (Vec d : {Vec{-1, -1, -1}, Vec{0, 1, 1, 2}}) {
		AffineManifold m = build_affine_structure_dim2(d);
		auto cyc = m.fan.cyclic_order();
		std::vector<int> path(cyc.begin(), cyc.end());
		std::vector<int> back(path.rbegin(), path.rend());
		for (int t = 0; t < 10; ++t) {
			Vec w{ex(rng), ex(rng)};
			CHECK(parallel_transport(m, back, parallel_transport(m, path, w)) == w);
			std::vector<int> first(path.begin(), path.begin() + 2);
			std::vector<int> rest(path.begin() + 1, path.end());
			CHECK(parallel_transport(m, rest, parallel_transport(m, first, w)) ==
			      parallel_transport(m, path, w));
		}
	}
	CHECK_THROWS_AS(parallel_transport(am, {order[0], order[0] + 5}, {1, 0}), Error);
}

TEST_CASE("bend examples")
{
	AffineManifold am = build_affine_structure_dim2({1, 1, 1});
	for (int i = 0; i < 3; ++i)
		CHECK(bend(am, PLFunction{{0, 0, 0}}, {i}) == 0);
	PLFunction f{{1, 0, 0}};
	CHECK(bend(am, f, {0}) == 1);
	CHECK(bend(am, f, {1}) == 1);
	for (int i = 0; i < 3; ++i)
		CHECK(bend(am, f, {i}) == extension_mismatch(Vec{1, 1, 1}, f.coefficients, i));
	// restriction of a linear functional
	Vec ell{2, -3};
	Vec lin;
	for (auto &r : am.fan.rays)
		lin.push_back(dot(ell, r));
	for (int i = 0; i < 3; ++i)
		CHECK(bend(am, PLFunction{lin}, {i}) == 0);
}

TEST_CASE("bend matches the cyclic formula and the extension mismatch")
{
	std::mt19937 rng(9);
	std::uniform_int_distribution<int> ex(-4, 4);
	for (Vec d : {Vec{1, 1, 1}, Vec{0, 0, 0, 0}, Vec{-1, -1, -1}, Vec{2, -1, 3, 0}}) {
		AffineManifold am = build_affine_structure_dim2(d);
		size_t n = d.size();
		for (int t = 0; t < 10; ++t) {
			Vec a(n);
			for (auto &x : a)
				x = ex(rng);
			for (size_t i = 0; i < n; ++i) {
				Int formula = a[(i + n - 1) % n] + d[i] * a[i] + a[(i + 1) % n];
				CHECK(bend(am, PLFunction{a}, {(int)i}) == formula);
				CHECK(formula == extension_mismatch(d, a, (int)i));
			}
		}
	}
}

TEST_CASE("vector bend is computed per coordinate")
{
	AffineManifold am = build_affine_structure_dim2({1, 1, 1});
	std::vector<Vec> vals{{1, 0}, {0, 2}, {0, 0}};
	for (int i = 0; i < 3; ++i) {
		Vec b = bend(am, vals, {i});
		CHECK(b[0] == bend(am, PLFunction{{1, 0, 0}}, {i}));
		CHECK(b[1] == bend(am, PLFunction{{0, 2, 0}}, {i}));
	}
}

TEST_CASE("bend on a boundary wall is an error")
{
	AffineManifold am = toric_manifold(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}}));
	CHECK_THROWS_AS(bend(am, PLFunction{{1, 1}}, {0}), Error);
}

TEST_CASE("locate")
{
	AffineManifold am = toric_manifold(fan_p2());
	auto l = locate(am, {Rat(2), Rat(1)});
	CHECK(l.generic);
	CHECK(l.face == std::vector<int>{0, 1});
	auto r = locate(am, {Rat(1), Rat(0)});
	CHECK_FALSE(r.generic);
	CHECK(r.face == std::vector<int>{0});
	auto o = locate(am, {Rat(0), Rat(0)});
	CHECK(o.face.empty());
	AffineManifold half = toric_manifold(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}}));
	CHECK_THROWS_AS(locate(half, {Rat(-1), Rat(0)}), Error);
}

TEST_CASE("pl values are linear on cones")
{
	Fan fan = fan_p2();
	PLFunction f{{1, 2, 3}};
	CHECK(pl_value(fan, f, {Rat(1), Rat(0)}) == 1);
	CHECK(pl_value(fan, f, {Rat(2), Rat(3)}) == 2 + 6);
	CHECK(pl_value(fan, f, {Rat(-2), Rat(-2)}) == 6);
	CHECK(pl_value(fan, f, {Rat(-1), Rat(1, 2)}) == Rat(3) + Rat(3, 2) * 2);
}

TEST_CASE("hyperplane normal")
{
	CHECK(hyperplane_normal({{1, 1}}) == Vec{1, -1});
	Vec n = hyperplane_normal({{1, 0, 0}, {0, 1, 1}});
	CHECK(dot(n, Vec{1, 0, 0}) == 0);
	CHECK(dot(n, Vec{0, 1, 1}) == 0);
	CHECK(gcd_of(n) == 1);
}
