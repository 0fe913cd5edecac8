// logcy: command line front end for scattering, theta functions and
// structure-constant tables.
#include "logcy/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace logcy;

namespace {

std::vector<std::string> split(const std::string &s, char sep)
{
	std::vector<std::string> out;
	std::stringstream in(s);
	std::string tok;
	while (std::getline(in, tok, sep))
		out.push_back(tok);
	return out;
}

Vec parse_vec(const std::string &s, const std::string &field)
{
	Vec out;
	for (auto &t : split(s, ',')) {
		try {
			size_t used = 0;
			out.push_back(std::stol(t, &used));
			if (used != t.size())
				throw std::invalid_argument(t);
		} catch (const std::exception &) {
			throw InputError(field + ": '" + s + "' is not a comma-separated integer list");
		}
	}
	return out;
}

QVec parse_qvec(const std::string &s, const std::string &field)
{
	QVec out;
	for (auto &t : split(s, ','))
		out.push_back(rat_from(Json(t), field));
	return out;
}

void emit(const Json &j, const std::string &path)
{
	if (path.empty()) {
		std::cout << dump(j);
		return;
	}
	std::ofstream out(path);
	if (!out)
		throw InputError(path + ": cannot write");
	out << dump(j);
}

void check_dim(const Problem &p, const Vec &v, const std::string &field)
{
	if ((int)v.size() != p.d.ambient.fan.rank)
		throw InputError(field + ": expected " +
		                 std::to_string(p.d.ambient.fan.rank) + " entries");
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"logcy: mirror algebras of log Calabi-Yau data"};
	app.require_subcommand(1);

	std::string input, out, suite = "all", direction, basepoint, target;
	std::vector<std::string> inputs;
	int order = 0, max_norm = -1;

	auto *scatter = app.add_subcommand("scatter", "complete a diagram to order k");
	scatter->add_option("--input", input, "problem file")->required();
	scatter->add_option("--order", order, "truncation order k")->required();
	scatter->add_option("--out", out, "output file (stdout if omitted)");

	auto *check = app.add_subcommand("check", "run verification suites");
	check->add_option("--diagram", input, "diagram file")->required();
	std::vector<std::string> choices = suite_names();
	choices.push_back("all");
	check->add_option("--suite", suite, "suite name")->check(CLI::IsMember(choices));

	auto *theta = app.add_subcommand("theta", "local theta function");
	theta->add_option("--diagram", input, "diagram file")->required();
	theta->add_option("--direction", direction, "P as a,b")->required();
	theta->add_option("--basepoint", basepoint, "x as rationals p/q,r/s")->required();

	auto *mult = app.add_subcommand("multiply", "one structure constant");
	mult->add_option("--diagram", input, "diagram file")->required();
	mult->add_option("--inputs", inputs, "points a,b (space separated)")->required();
	mult->add_option("--target", target, "Q as a,b")->required();

	auto *table = app.add_subcommand("table", "structure-constant table");
	table->add_option("--diagram", input, "diagram file")->required();
	table->add_option("--max-norm", max_norm, "basis norm bound");

	auto *vert = app.add_subcommand("vertex", "vertex algebra and complex checks");
	vert->add_option("--input", input, "complex or problem file")->required();
	vert->add_option("--max-norm", max_norm, "basis norm bound");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	try {
		if (*scatter) {
			if (order < 1)
				throw InputError("--order: must be at least 1");
			Problem p = problem_from(read_json(input));
			p.d = complete(p.d, order);
			emit(to_json(p), out);
			return 0;
		}
		if (*check) {
			Problem p = problem_from(read_json(input));
			bool ok = true;
			for (auto &r : run_suite(p, suite)) {
				std::cout << r.name << ": "
				          << (r.skipped ? "skipped" : r.ok ? "pass" : "FAIL")
				          << " (" << r.checked << " checked)";
				if (!r.failure.empty())
					std::cout << " " << r.failure;
				std::cout << "\n";
				ok = ok && r.ok;
			}
			return ok ? 0 : 1;
		}
		if (*theta) {
			Problem p = problem_from(read_json(input));
			Vec P = parse_vec(direction, "--direction");
			QVec x = parse_qvec(basepoint, "--basepoint");
			check_dim(p, P, "--direction");
			if ((int)x.size() != p.d.ambient.fan.rank)
				throw InputError("--basepoint: wrong number of entries");
			emit(theta_record(P, x, theta_local(p.d, P, x)), "");
			return 0;
		}
		if (*mult) {
			Problem p = problem_from(read_json(input));
			std::vector<Vec> pts;
			for (auto &s : inputs) {
				pts.push_back(parse_vec(s, "--inputs"));
				check_dim(p, pts.back(), "--inputs");
			}
			Vec Q = parse_vec(target, "--target");
			check_dim(p, Q, "--target");
			Series v = structure_constant(p.d, pts, Q, p.seed);
			emit(Json{{"inputs", pts}, {"Q", Q}, {"value", to_json(v)}}, "");
			return 0;
		}
		if (*table) {
			Problem p = problem_from(read_json(input));
			int bound = max_norm >= 0 ? max_norm : p.bound;
			emit(table_json(build_algebra(p.d, bound, p.seed)), "");
			return 0;
		}
		if (*vert) {
			Json j = read_json(input);
			DualComplex K;
			std::vector<Vec> rays;
			int bound = max_norm >= 0 ? max_norm : 2;
			if (j.contains("geometry")) {
				Problem p = problem_from(j);
				K = dual_complex(p.d.ambient.fan);
				rays = p.d.ambient.fan.rays;
				if (max_norm < 0)
					bound = p.bound;
			} else {
				K = complex_from(j.contains("complex") ? j["complex"] : j);
				if (j.contains("rays"))
					for (auto &r : j["rays"])
						rays.push_back(vec_from(r, "rays"));
				if (j.contains("bound") && max_norm < 0)
					bound = j["bound"].get<int>();
			}
			auto pm = check_pseudomanifold(K);
			auto lh = link_homology_check(K);
			Json boundary = Json::array();
			for (auto &b : pm.boundary)
				boundary.push_back(b);
			Json rep{{"pseudomanifold", {{"ok", pm.ok}, {"failure", pm.failure},
			                             {"boundary", boundary}}},
			         {"link_homology", {{"ok", lh.ok}, {"failure", lh.failure}}}};
			if (!rays.empty())
				rep["table"] = vertex_table_json(vertex_algebra(K, rays, bound));
			emit(rep, "");
			return pm.ok && lh.ok ? 0 : 1;
		}
	} catch (const InputError &e) {
		std::cerr << "input error: " << e.what() << "\n";
		return 2;
	} catch (const Json::exception &e) {
		std::cerr << "input error: " << e.what() << "\n";
		return 2;
	} catch (const Error &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
