#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "logcy/io.hpp"
#include "logcy/suite.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace logcy;
namespace fs = std::filesystem;

namespace {

struct Run {
	int code;
	std::string out;
};

Run run(const std::string &args)
{
	std::string cmd = std::string(LOGCY_CLI) + " " + args + " 2>/dev/null";
	FILE *p = popen(cmd.c_str(), "r");
	REQUIRE(p != nullptr);
	std::string out;
	std::array<char, 4096> buf;
	size_t n;
	while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
		out.append(buf.data(), n);
	int st = pclose(p);
	return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const std::string &name)
{
	return std::string(LOGCY_DATA) + "/" + name;
}

fs::path scratch(const std::string &name)
{
	fs::path dir = fs::temp_directory_path() / "logcy_interface";
	fs::create_directories(dir);
	return dir / name;
}

void write(const fs::path &p, const Json &j)
{
	std::ofstream(p) << dump(j);
}

std::string slurp(const fs::path &p)
{
	std::ifstream in(p);
	return {std::istreambuf_iterator<char>(in), {}};
}

std::string error_of(const Json &j)
{
	try {
		problem_from(j);
	} catch (const InputError &e) {
		return e.what();
	}
	return "";
}

} // namespace

TEST_CASE("problem round trip")
{
	for (auto name : {"p2_toric.json", "p2_section.json", "commutator.json",
	                  "one_wall.json", "blowup.json"}) {
		CAPTURE(name);
		Json j = read_json(data(name));
		Problem p = problem_from(j);
		Json once = to_json(p);
		Json twice = to_json(problem_from(once));
		CHECK(once == twice);
		Problem q = problem_from(once);
		CHECK(q.d.walls.size() == p.d.walls.size());
		for (size_t i = 0; i < q.d.walls.size(); ++i)
			CHECK(q.d.walls[i].f == p.d.walls[i].f);
		CHECK(q.bound == p.bound);
		CHECK(q.nef.size() == p.nef.size());
	}
}

TEST_CASE("series and rationals")
{
	Diagram d = fx::one_wall(4);
	Series s = d.one() + d.monomial(-3, {2}, {1, -1});
	s.add_term(Big("123456789012345678901234567890"), {1}, {0, 2});
	Json j = to_json(s);
	CHECK(series_from(j, d.ring(), "f") == s);
	CHECK(to_json(Rat(3)) == Json(3));
	CHECK(to_json(Rat(-1, 2)) == Json("-1/2"));
	CHECK(rat_from(Json("4/6"), "x") == Rat(2, 3));
	CHECK(rat_from(Json(5), "x") == 5);
	CHECK_THROWS_AS(rat_from(Json("1/0"), "x"), InputError);
	CHECK_THROWS_AS(rat_from(Json("abc"), "x"), InputError);
	CHECK(qvec_from(to_json(QVec{Rat(1, 3), Rat(-2)}), "x") == QVec{Rat(1, 3), Rat(-2)});
}

TEST_CASE("spine, wall set and complex round trips")
{
	Spine s;
	s.vertices = {{fx::q({0, 0}), Mark::None, -1, {}},
	              {fx::q(Rat(1, 2), Rat(1)), Mark::F, -1, {}},
	              {{}, Mark::B, 2, {1, 1}}};
	s.edges = {{0, 1, Rat(1, 2), {1, 2}}, {0, 2, std::nullopt, {-1, -1}}};
	Spine t = spine_from(to_json(s));
	CHECK(to_json(t) == to_json(s));
	REQUIRE(t.edges.size() == 2);
	CHECK_FALSE(t.edges[1].length);
	CHECK(t.vertices[2].mark == Mark::B);
	CHECK(t.vertices[2].b_weight == Vec{1, 1});

	WallSet w{{{{1, 1}}, 0, {1, -1}}, {{{-1, 0}}, 1, {0, 2}}};
	CHECK(wallset_from(to_json(w)) == w);

	DualComplex K = dual_complex(fan_p2());
	DualComplex L = complex_from(to_json(K));
	CHECK(L.dim == K.dim);
	CHECK(L.simplices == K.simplices);
	CHECK(L.orientation == K.orientation);
	DualComplex C = complex_from(read_json(data("cone_over_4cycle.json")));
	CHECK(C.simplices.size() == 4);
	CHECK(check_pseudomanifold(C).ok);
}

TEST_CASE("malformed input names the field")
{
	Json base = read_json(data("one_wall.json"));
	auto broken = [&](auto edit) {
		Json j = base;
		edit(j);
		return error_of(j);
	};
	CHECK(broken([](Json &j) { j.erase("geometry"); }).find("geometry") != std::string::npos);
	CHECK(broken([](Json &j) { j["geometry"]["rays"][0] = {2, 0}; }).find("rays") != std::string::npos);
	CHECK(broken([](Json &j) { j["walls"][0]["normal"] = "x"; }).find("walls[0].normal") != std::string::npos);
	CHECK(broken([](Json &j) { j["walls"][0]["function"][1]["c"] = "seven"; })
	          .find("walls[0].function") != std::string::npos);
	CHECK(broken([](Json &j) { j["order"] = -1; }).find("order") != std::string::npos);
	CHECK(broken([](Json &j) { j["monoid"]["degrees"] = {1, 1}; }).find("monoid") != std::string::npos);
	CHECK(broken([](Json &j) { j["walls"][0]["function"][1]["q"] = {1, 2}; })
	          .find("walls[0].function") != std::string::npos);
	CHECK(error_of(base).empty());
}

TEST_CASE("canonical form sorts rays")
{
	Problem p = problem_from(read_json(data("p2_section.json")));
	Problem c = canonical(p);
	auto &rays = c.d.ambient.fan.rays;
	CHECK(std::is_sorted(rays.begin(), rays.end()));
	for (size_t i = 0; i < rays.size(); ++i) {
		auto it = std::find(p.d.ambient.fan.rays.begin(), p.d.ambient.fan.rays.end(), rays[i]);
		REQUIRE(it != p.d.ambient.fan.rays.end());
		size_t j = it - p.d.ambient.fan.rays.begin();
		CHECK(c.d.section->values[i] == p.d.section->values[j]);
	}
	CHECK(to_json(canonical(c)) == to_json(c));
}

TEST_CASE("suites on the sample data")
{
	for (auto name : {"p2_toric.json", "p2_section.json", "one_wall.json", "blowup.json"}) {
		CAPTURE(name);
		Problem p = problem_from(read_json(data(name)));
		for (auto &r : run_suite(p, "all")) {
			CAPTURE(r.name);
			CAPTURE(r.failure);
			CHECK(r.ok);
		}
	}
	Problem p = problem_from(read_json(data("one_wall.json")));
	CHECK_THROWS_AS(run_suite(p, "nonsense"), Error);
	auto only = run_suite(p, "theta");
	REQUIRE(only.size() == 1);
	CHECK(only[0].name == "theta");
}

TEST_CASE("cli: scatter and check")
{
	fs::path out = scratch("commutator_done.json");
	Run s = run("scatter --input " + data("commutator.json") + " --order 4 --out " + out.string());
	REQUIRE(s.code == 0);
	Json j = read_json(out.string());
	REQUIRE(j["walls"].size() == 3);
	int rays = 0;
	for (auto &w : j["walls"])
		if (!w["line"].get<bool>()) {
			++rays;
			CHECK(w["direction"] == Json({-1, -1}));
		}
	CHECK(rays == 1);

	Run c = run("check --diagram " + out.string() + " --suite all");
	CHECK(c.code == 0);
	CHECK(c.out.find("FAIL") == std::string::npos);
	CHECK(c.out.find("consistency: pass") != std::string::npos);

	Run raw = run("check --diagram " + data("commutator.json") + " --suite consistency");
	CHECK(raw.code == 1);
	CHECK(raw.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: theta, multiply, table and vertex")
{
	Run t = run("theta --diagram " + data("one_wall.json") + " --direction 1,0 --basepoint -2,1");
	REQUIRE(t.code == 0);
	Json tj = Json::parse(t.out);
	CHECK(tj["terms"].size() == 2);

	Run m = run("multiply --diagram " + data("one_wall.json") + " --inputs 1,0 -1,0 --target 0,1");
	REQUIRE(m.code == 0);
	Json mj = Json::parse(m.out);
	CHECK(mj["value"].size() == 1);
	CHECK(mj["value"][0]["q"] == Json({1}));

	Run tb = run("table --diagram " + data("p2_toric.json") + " --max-norm 1");
	REQUIRE(tb.code == 0);
	Json tab = Json::parse(tb.out);
	CHECK(tab["entries"].size() == 45);
	for (auto &e : tab["entries"]) {
		Vec a = vec_from(e["inputs"][0], "a"), b = vec_from(e["inputs"][1], "b");
		CHECK(vec_from(e["Q"], "Q") == add(a, b));
	}

	Run v = run("vertex --input " + data("cone_over_4cycle.json"));
	CHECK(v.code == 0);
	Json vj = Json::parse(v.out);
	CHECK(vj["pseudomanifold"]["ok"] == true);
	CHECK(vj["pseudomanifold"]["boundary"].size() == 4);
}

TEST_CASE("cli: bad input exits with code 2")
{
	fs::path bad = scratch("bad.json");
	Json j = read_json(data("one_wall.json"));
	j["walls"][0]["normal"] = {0, 0, 1};
	write(bad, j);
	CHECK(run("check --diagram " + bad.string()).code == 2);
	CHECK(run("check --diagram " + scratch("missing.json").string()).code == 2);
	std::ofstream(scratch("garbage.json")) << "{ not json";
	CHECK(run("table --diagram " + scratch("garbage.json").string()).code == 2);
	CHECK(run("theta --diagram " + data("one_wall.json") + " --direction 1 --basepoint 1,1").code == 2);
	CHECK(run("scatter --input " + data("one_wall.json") + " --order 0").code == 2);
	CHECK(run("bogus").code == 2);
}

TEST_CASE("cli output is deterministic")
{
	fs::path a = scratch("det_a.json"), b = scratch("det_b.json");
	REQUIRE(run("scatter --input " + data("commutator.json") + " --order 4 --out " + a.string()).code == 0);
	REQUIRE(run("scatter --input " + data("commutator.json") + " --order 4 --out " + b.string()).code == 0);
	CHECK(slurp(a) == slurp(b));
	Run t1 = run("table --diagram " + data("p2_section.json") + " --max-norm 1");
	Run t2 = run("table --diagram " + data("p2_section.json") + " --max-norm 1");
	CHECK(t1.code == 0);
	CHECK(t1.out == t2.out);
}
