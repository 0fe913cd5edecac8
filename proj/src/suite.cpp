#include "logcy/suite.hpp"

#include <optional>

namespace logcy {

const std::vector<std::string> &suite_names()
{
	static const std::vector<std::string> names{
	    "consistency", "theta", "grading", "convexity", "associativity", "vertex"};
	return names;
}

namespace {

SuiteResult from_report(const std::string &name, const Report &r)
{
	return SuiteResult{name, r.ok, false, r.checked, r.failure};
}

SuiteResult skipped(const std::string &name, const std::string &why)
{
	return SuiteResult{name, true, true, 0, why};
}

class Runner {
public:
	explicit Runner(const Problem &p) : p_(p) {}

	SuiteResult run(const std::string &name)
	{
		try {
			if (name == "consistency")
				return consistency();
			if (name == "theta")
				return theta();
			if (name == "grading")
				return grading();
			if (name == "convexity")
				return convexity();
			if (name == "associativity")
				return associativity();
			if (name == "vertex")
				return vertex();
		} catch (const Error &e) {
			return SuiteResult{name, false, false, 0, e.what()};
		}
		throw InputError("suite: unknown name " + name);
	}

private:
	const MirrorAlgebra &algebra()
	{
		if (!alg_)
			alg_ = build_algebra(p_.d, p_.bound, p_.seed);
		return *alg_;
	}

	SuiteResult consistency()
	{
		auto rep = is_consistent(p_.d);
		SuiteResult r{"consistency", true, false, rep.joints.size(), ""};
		for (auto &j : rep.joints)
			if (!j.consistent) {
				r.ok = false;
				r.failure = "joint " + str(j.point) + ": " + j.detail;
				break;
			}
		return r;
	}

	SuiteResult theta()
	{
		SuiteResult r{"theta", true, false, 0, ""};
		for (size_t w = 0; w < p_.d.walls.size() && r.ok; ++w)
			for (auto &x : wall_sample_points(p_.d, w)) {
				++r.checked;
				std::string why;
				if (!theta_consistent_at(p_.d, w, x, p_.bound, &why)) {
					r.ok = false;
					r.failure = "wall " + std::to_string(w) + " at " + str(x) + ": " + why;
					break;
				}
			}
		return r;
	}

	SuiteResult grading()
	{
		if (!p_.grading)
			return skipped("grading", "no grading weights given");
		return from_report("grading", check_grading(algebra(), p_.grading->points,
		                                            p_.grading->classes));
	}

	SuiteResult convexity()
	{
		if (p_.nef.empty())
			return skipped("convexity", "no nef test functions given");
		SuiteResult r{"convexity", true, false, 0, ""};
		for (size_t i = 0; i < p_.nef.size(); ++i) {
			auto rep = check_convexity(algebra(), p_.nef[i]);
			r.checked += rep.checked;
			if (!rep.ok && r.ok) {
				r.ok = false;
				r.failure = "F" + std::to_string(i) + ": " + rep.failure;
			}
		}
		return r;
	}

	SuiteResult associativity()
	{
		std::vector<std::array<Vec, 3>> triples;
		auto pts = basis_points(std::min(p_.bound, 1));
		for (auto &a : pts)
			for (auto &b : pts)
				for (auto &c : pts)
					triples.push_back({a, b, c});
		return from_report("associativity", check_associativity(algebra(), triples));
	}

	SuiteResult vertex()
	{
		auto K = dual_complex(p_.d.ambient.fan);
		SuiteResult r{"vertex", true, false, 0, ""};
		auto pm = check_pseudomanifold(K);
		auto lh = link_homology_check(K);
		r.checked = pm.checked + lh.checked;
		if (!pm.ok) {
			r.ok = false;
			r.failure = pm.failure;
			return r;
		}
		if (!lh.ok) {
			r.ok = false;
			r.failure = lh.failure;
			return r;
		}
		if (!p_.d.section)
			return r;
		auto va = vertex_algebra(p_.d.ambient.fan, p_.bound);
		auto cf = compare_central_fibre(algebra(), va);
		r.checked += cf.checked;
		if (!cf.ok) {
			r.ok = false;
			r.failure = cf.failure;
		}
		return r;
	}

	const Problem &p_;
	std::optional<MirrorAlgebra> alg_;
};

} // namespace

std::vector<SuiteResult> run_suite(const Problem &p, const std::string &which)
{
	Runner run(p);
	std::vector<SuiteResult> out;
	if (which == "all") {
		for (auto &n : suite_names())
			out.push_back(run.run(n));
		return out;
	}
	out.push_back(run.run(which));
	return out;
}

} // namespace logcy
