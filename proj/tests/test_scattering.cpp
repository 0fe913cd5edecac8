#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

#include <random>

using namespace logcy;

namespace {

struct Crossing {
	Series g;
	Vec n;
	int side;
};

// apply the crossings in order to z^{e_i}
std::vector<Series> compose(const Diagram &d, const std::vector<Crossing> &cs)
{
	std::vector<Series> out;
	for (int i = 0; i < 2; ++i) {
		Vec e{0, 0};
		e[i] = 1;
		Series s = d.monomial(1, Vec(d.monoid->size(), 0), e);
		for (auto &c : cs)
			s = apply_crossing(c.g, c.n, c.side, s);
		out.push_back(s);
	}
	return out;
}

// naive order of the lowest class where two image lists differ
int deviation(const std::vector<Series> &a, const std::vector<Series> &b)
{
	int best = -1;
	for (size_t i = 0; i < a.size(); ++i) {
		Series diff = a[i] - b[i];
		for (auto &[key, c] : diff.terms())
			if (best < 0 || key.ord < best)
				best = key.ord;
	}
	return best;
}

Series random_poly(std::mt19937 &rng, const Diagram &d)
{
	std::uniform_int_distribution<int> coef(-3, 3), ex(-2, 2), qd(0, 2), n(0, 4);
	Series s(d.ring());
	int terms = n(rng);
	for (int i = 0; i < terms; ++i) {
		Vec q(d.monoid->size());
		for (auto &x : q)
			x = qd(rng);
		s.add_term(coef(rng), q, {ex(rng), ex(rng)});
	}
	return s;
}

bool has_wall(const Diagram &d, const Vec &dir, const Series &f)
{
	for (auto &w : d.walls)
		if (!w.line && w.direction == dir && w.f == f)
			return true;
	return false;
}

} // namespace

TEST_CASE("wall crossing examples")
{
	Diagram d = fx::one_wall(3);
	const Wall &w = d.walls[0];
	CHECK(wall_cross(w, {1, 0}, 1) == d.monomial(1, {0}, {1, 0}) + d.monomial(1, {1}, {1, 1}));
	CHECK(wall_cross(w, {0, 1}, 1) == d.monomial(1, {0}, {0, 1}));
	CHECK(wall_cross(w, {0, 1}, -1) == d.monomial(1, {0}, {0, 1}));

	Series expect = d.monomial(1, {0}, {-1, 0}) * invert(w.f);
	CHECK(wall_cross(w, {-1, 0}, 1) == expect);
	CHECK(wall_cross(w, {-1, 0}, 1) ==
	      d.monomial(1, {0}, {-1, 0}) - d.monomial(1, {1}, {-1, 1}) + d.monomial(1, {2}, {-1, 2}));
	CHECK(wall_cross(w, {1, 0}, -1) == expect.shifted({0}, {2, 0}));
	CHECK(wall_cross(w, {2, 3}, 1) == d.monomial(1, {0}, {2, 3}) * pow(w.f, 2));
}

TEST_CASE("crossing back is the identity")
{
	std::mt19937 rng(4);
	Diagram d = fx::two_lines(4);
	for (auto &w : d.walls)
		for (int t = 0; t < 30; ++t) {
			Series s = random_poly(rng, d);
			CHECK(apply_crossing(w.f, w.normal, -1, apply_crossing(w.f, w.normal, 1, s)) == s);
			CHECK(apply_crossing(w.f, w.normal, 1, apply_crossing(w.f, w.normal, -1, s)) == s);
		}
}

TEST_CASE("crossing is a ring homomorphism")
{
	std::mt19937 rng(8);
	for (int k = 1; k <= 5; ++k) {
		Diagram d = fx::two_lines(k);
		for (auto &w : d.walls)
			for (int t = 0; t < 20; ++t) {
				Series a = random_poly(rng, d), b = random_poly(rng, d);
				for (int side : {1, -1}) {
					auto psi = [&](const Series &s) { return apply_crossing(w.f, w.normal, side, s); };
					CHECK(psi(a * b) == psi(a) * psi(b));
					CHECK(psi(a + b) == psi(a) + psi(b));
				}
			}
	}
}

TEST_CASE("crossing depends on the pairing only up to a monomial")
{
	Diagram d = fx::one_wall(4);
	const Wall &w = d.walls[0];
	for (Vec v : {Vec{1, 0}, Vec{2, -1}, Vec{-1, 3}})
		for (Int s = -2; s <= 2; ++s) {
			Vec v2 = add(v, {0, s});
			for (int side : {1, -1})
				CHECK(wall_cross(w, v2, side) == wall_cross(w, v, side).shifted({0}, {0, s}));
		}
}

TEST_CASE("path ordered products")
{
	Diagram one = fx::one_wall(4);
	CHECK(path_ordered_product(one, {0, 0}).is_identity());
	CHECK(path_ordered_product(one, fx::q({0, 1}), {1, 0}).is_identity());
	CHECK(path_ordered_product(one, fx::q({2, 1})).is_identity());

	Diagram d = fx::two_lines(3);
	Automorphism a = path_ordered_product(d, {0, 0}, {1, 0});
	CHECK_FALSE(a.is_identity());
	CHECK(a.first_deviation_order() == 2);
	const Wall &h = d.walls[0], &v = d.walls[1];
	std::vector<Crossing> cs{{h.f, h.normal, -1}, {v.f, v.normal, 1},
	                         {h.f, h.normal, 1}, {v.f, v.normal, -1}};
	auto images = compose(d, cs);
	REQUIRE(a.images.size() == 2);
	CHECK(a.images[0] == images[0]);
	CHECK(a.images[1] == images[1]);
	auto id = compose(d, {});
	CHECK(deviation(images, id) == 2);
}

TEST_CASE("consistency of simple diagrams")
{
	Diagram empty = fx::toric({"t"}, 3);
	CHECK(is_consistent(empty).consistent());
	CHECK(is_consistent(fx::one_wall(4)).consistent());

	auto rep = is_consistent(fx::two_lines(3));
	CHECK_FALSE(rep.consistent());
	bool located = false;
	for (auto &j : rep.joints)
		if (!j.consistent) {
			CHECK(j.point == fx::q({0, 0}));
			CHECK(j.first_failure_order == 2);
			located = true;
		}
	CHECK(located);
}

TEST_CASE("completion of two lines")
{
	for (int k = 3; k <= 5; ++k) {
		CAPTURE(k);
		Diagram d = complete(fx::two_lines(k), k);
		REQUIRE(d.walls.size() == 3);
		Series f = fx::binomial(d, {1, 1}, {1, 1});
		CHECK(has_wall(d, {-1, -1}, f));
		CHECK(is_consistent(d).consistent());

		// oracle: loop around the origin with the added ray
		const Wall *h = nullptr, *v = nullptr, *r = nullptr;
		for (auto &w : d.walls)
			(!w.line ? r : w.direction == Vec{1, 0} ? h : v) = &w;
		REQUIRE(r != nullptr);
		REQUIRE(h != nullptr);
		REQUIRE(v != nullptr);
		// the ray along (-1,-1) is crossed between the -x and -y half lines
		int rside = dot(r->normal, Vec{1, -1}) < 0 ? 1 : -1;
		std::vector<Crossing> cs{{h->f, h->normal, -1}, {v->f, v->normal, 1}, {h->f, h->normal, 1},
		                         {r->f, r->normal, rside}, {v->f, v->normal, -1}};
		CHECK(deviation(compose(d, cs), compose(d, {})) == -1);

		// removing the forced wall breaks consistency
		Diagram cut = d;
		cut.walls.erase(std::remove_if(cut.walls.begin(), cut.walls.end(),
		                               [](const Wall &w) { return !w.line; }),
		                cut.walls.end());
		CHECK_FALSE(is_consistent(cut).consistent());
	}
}

TEST_CASE("completion edge cases")
{
	Diagram empty = fx::toric({"t"}, 4);
	CHECK(complete(empty, 4).walls.empty());

	Diagram low = complete(fx::two_lines(1), 1);
	for (auto &w : low.walls)
		CHECK(w.line);
	CHECK(is_consistent(low).consistent());

	Diagram once = complete(fx::two_lines(4), 4);
	Diagram twice = complete(once, 4);
	CHECK(twice.walls.size() == once.walls.size());
	CHECK(is_consistent(twice).consistent());

	CHECK_THROWS_AS(complete(fx::two_lines(3), 0), Error);
	Diagram mono = fx::two_lines(3);
	mono.ambient = build_affine_structure_dim2({-1, -1, -1});
	CHECK_THROWS_AS(complete(mono, 3), Error);
}

TEST_CASE("completion of richer diagrams")
{
	struct Case {
		std::string name;
		Diagram d;
	};
	std::vector<Case> cases;
	{
		Diagram d = fx::toric({"t1", "t2"}, 4);
		d.walls.push_back(make_wall({0, 0}, {1, 0}, true, {0, 1},
		                            pow(fx::binomial(d, {1, 0}, {1, 0}), 2)));
		d.walls.push_back(make_wall({0, 0}, {0, 1}, true, {1, 0},
		                            fx::binomial(d, {0, 1}, {0, 1})));
		cases.push_back({"squared", d});
	}
	{
		Diagram d = fx::toric({"t1", "t2", "t3"}, 3);
		d.walls.push_back(make_wall({0, 0}, {1, 0}, true, {0, 1},
		                            fx::binomial(d, {1, 0, 0}, {1, 0})));
		d.walls.push_back(make_wall({0, 0}, {0, 1}, true, {1, 0},
		                            fx::binomial(d, {0, 1, 0}, {0, 1})));
		d.walls.push_back(make_wall({0, 0}, {1, -1}, true, {1, 1},
		                            fx::binomial(d, {0, 0, 1}, {1, -1})));
		cases.push_back({"three lines", d});
	}
	{
		Diagram d = fx::toric({"t1", "t2"}, 3);
		d.walls.push_back(make_wall(fx::q({0, 1}), {1, 0}, true, {0, 1},
		                            fx::binomial(d, {1, 0}, {1, 0})));
		d.walls.push_back(make_wall({0, 0}, {0, 1}, true, {1, 0},
		                            fx::binomial(d, {0, 1}, {0, 1})));
		cases.push_back({"shifted", d});
	}
	for (auto &c : cases) {
		CAPTURE(c.name);
		CHECK_FALSE(is_consistent(c.d).consistent());
		Diagram done = complete(c.d, c.d.k);
		CHECK(is_consistent(done).consistent());
		CHECK(done.walls.size() > c.d.walls.size());
		for (auto &w : done.walls) {
			if (w.line)
				continue;
			// outgoing: every exponent is a negative multiple of the direction
			for (auto &[key, coef] : w.f.terms()) {
				if (key.m == Vec{0, 0})
					continue;
				CHECK(dot(key.m, w.normal) == 0);
				CHECK(dot(key.m, w.direction) < 0);
			}
		}
	}
}

TEST_CASE("heights against the section")
{
	Diagram d = fx::p2_section(3);
	auto &fan = d.ambient.fan;
	for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
		Mat piece = section_piece(d, (int)ci);
		for (int r : fan.cones[ci])
			CHECK(act(piece, fan.rays[r]) == d.section->values[r]);
		for (Vec m : {Vec{1, 0}, Vec{0, 1}, Vec{-1, -1}, Vec{2, 3}}) {
			Vec phi = act(piece, m);
			CHECK(height(d, (int)ci, m, phi) == Vec{0});
			CHECK(in_positive(height(d, (int)ci, m, add(phi, {2}))));
			CHECK_FALSE(in_positive(height(d, (int)ci, m, sub(phi, {1}))));
		}
	}
	for (int r = 0; r < 3; ++r)
		CHECK(section_kink(d, r) == Vec{1});
	CHECK(has_kinks(d));
	CHECK_FALSE(has_kinks(fx::one_wall(2)));
}
