#pragma once

#include "logcy/theta.hpp"

namespace fx {

using namespace logcy;

inline std::shared_ptr<const Monoid> monoid(std::vector<std::string> names)
{
	std::vector<int> deg(names.size(), 1);
	return std::make_shared<Monoid>(names, deg);
}

inline Diagram toric(std::vector<std::string> names, int k)
{
	Diagram d;
	d.ambient = toric_manifold(fan_p2());
	d.monoid = monoid(names);
	d.k = k;
	return d;
}

inline Series binomial(const Diagram &d, const Vec &q, const Vec &m, long c = 1)
{
	return d.one() + d.monomial(c, q, m);
}

// vertical line through the origin, f = 1 + t z^(0,1)
inline Diagram one_wall(int k)
{
	Diagram d = toric({"t"}, k);
	d.walls.push_back(make_wall({0, 0}, {0, 1}, true, {1, 0},
	                            binomial(d, {1}, {0, 1})));
	return d;
}

// the two coordinate lines with f = 1 + t1 z^(1,0) and 1 + t2 z^(0,1)
inline Diagram two_lines(int k)
{
	Diagram d = toric({"t1", "t2"}, k);
	d.walls.push_back(make_wall({0, 0}, {1, 0}, true, {0, 1},
	                            binomial(d, {1, 0}, {1, 0})));
	d.walls.push_back(make_wall({0, 0}, {0, 1}, true, {1, 0},
	                            binomial(d, {0, 1}, {0, 1})));
	return d;
}

// P2 with the kink class L on every ray
inline Diagram p2_section(int k)
{
	Diagram d = toric({"L"}, k);
	d.section = PLSection{{{0}, {0}, {1}}};
	return d;
}

// one blown-up point on the boundary line of ray (1,0)
inline Diagram blowup(int k)
{
	Diagram d = toric({"L", "E"}, k);
	d.section = PLSection{{{0, 0}, {0, 0}, {1, 1}}};
	d.walls.push_back(make_wall({0, 0}, {1, 0}, false, {0, 1},
	                            binomial(d, {0, 1}, {-1, 0})));
	return d;
}

inline QVec q(std::initializer_list<long> v)
{
	QVec out;
	for (long x : v)
		out.push_back(Rat(x));
	return out;
}

inline QVec q(const Rat &a, const Rat &b)
{
	return QVec{a, b};
}

} // namespace fx
