#include "logcy/common.hpp"

#include <numeric>
#include <sstream>

namespace logcy {

Int dot(const Vec &a, const Vec &b)
{
	Int s = 0;
	for (size_t i = 0; i < a.size(); ++i)
		s += a[i] * b[i];
	return s;
}

Rat dot(const Vec &a, const QVec &b)
{
	Rat s = 0;
	for (size_t i = 0; i < a.size(); ++i)
		s += Rat(Big(static_cast<long>(a[i]))) * b[i];
	return s;
}

Vec add(const Vec &a, const Vec &b)
{
	Vec r(a);
	for (size_t i = 0; i < r.size(); ++i)
		r[i] += b[i];
	return r;
}

Vec sub(const Vec &a, const Vec &b)
{
	Vec r(a);
	for (size_t i = 0; i < r.size(); ++i)
		r[i] -= b[i];
	return r;
}

Vec neg(const Vec &a) { return scale(a, -1); }

Vec scale(const Vec &a, Int s)
{
	Vec r(a);
	for (auto &x : r)
		x *= s;
	return r;
}

bool is_zero(const Vec &a)
{
	for (auto x : a)
		if (x != 0)
			return false;
	return true;
}

Int gcd_of(const Vec &a)
{
	Int g = 0;
	for (auto x : a)
		g = std::gcd(g, x < 0 ? -x : x);
	return g;
}

Vec primitive(const Vec &a)
{
	Int g = gcd_of(a);
	if (g == 0)
		throw Error("primitive: zero vector");
	Vec r(a);
	for (auto &x : r)
		x /= g;
	return r;
}

QVec to_q(const Vec &a)
{
	QVec r;
	r.reserve(a.size());
	for (auto x : a)
		r.emplace_back(Big(static_cast<long>(x)));
	return r;
}

QVec qadd(const QVec &a, const QVec &b)
{
	QVec r(a);
	for (size_t i = 0; i < r.size(); ++i)
		r[i] += b[i];
	return r;
}

QVec qsub(const QVec &a, const QVec &b)
{
	QVec r(a);
	for (size_t i = 0; i < r.size(); ++i)
		r[i] -= b[i];
	return r;
}

QVec qscale(const QVec &a, const Rat &s)
{
	QVec r(a);
	for (auto &x : r)
		x *= s;
	return r;
}

bool qzero(const QVec &a)
{
	for (auto &x : a)
		if (x != 0)
			return false;
	return true;
}

Int cross(const Vec &a, const Vec &b) { return a[0] * b[1] - a[1] * b[0]; }

Rat qcross(const QVec &a, const QVec &b) { return a[0] * b[1] - a[1] * b[0]; }

Vec rot90(const Vec &a) { return {-a[1], a[0]}; }

int sign(const Rat &r) { return sgn(r); }

int sign(Int x) { return (x > 0) - (x < 0); }

std::string str(const Vec &a)
{
	std::ostringstream os;
	os << "(";
	for (size_t i = 0; i < a.size(); ++i)
		os << (i ? "," : "") << a[i];
	os << ")";
	return os.str();
}

std::string str(const QVec &a)
{
	std::ostringstream os;
	os << "(";
	for (size_t i = 0; i < a.size(); ++i)
		os << (i ? "," : "") << a[i].get_str();
	os << ")";
	return os.str();
}

int rank(std::vector<QVec> rows)
{
	int r = 0;
	size_t ncols = rows.empty() ? 0 : rows[0].size();
	for (size_t c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
		size_t piv = r;
		while (piv < rows.size() && rows[piv][c] == 0)
			++piv;
		if (piv == rows.size())
			continue;
		std::swap(rows[piv], rows[r]);
		for (size_t i = r + 1; i < rows.size(); ++i) {
			if (rows[i][c] == 0)
				continue;
			Rat f = rows[i][c] / rows[r][c];
			for (size_t j = c; j < ncols; ++j)
				rows[i][j] -= f * rows[r][j];
		}
		++r;
	}
	return r;
}

QVec solve(std::vector<QVec> a, QVec b)
{
	size_t n = a.size();
	for (size_t c = 0; c < n; ++c) {
		size_t piv = c;
		while (piv < n && a[piv][c] == 0)
			++piv;
		if (piv == n)
			throw Error("solve: singular system");
		std::swap(a[piv], a[c]);
		std::swap(b[piv], b[c]);
		for (size_t i = 0; i < n; ++i) {
			if (i == c || a[i][c] == 0)
				continue;
			Rat f = a[i][c] / a[c][c];
			for (size_t j = c; j < n; ++j)
				a[i][j] -= f * a[c][j];
			b[i] -= f * b[c];
		}
	}
	for (size_t i = 0; i < n; ++i)
		b[i] /= a[i][i];
	return b;
}

} // namespace logcy
