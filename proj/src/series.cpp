#include "logcy/series.hpp"

#include <sstream>

namespace logcy {

Monoid::Monoid(std::vector<std::string> n, std::vector<int> d,
               std::vector<Vec> pairing)
    : names(std::move(n)), degrees(std::move(d)),
      divisor_pairing(std::move(pairing))
{
	if (names.size() != degrees.size())
		throw Error("monoid: names and degrees differ in length");
	for (int x : degrees)
		if (x < 1)
			throw Error("monoid: degrees must be positive");
	if (!divisor_pairing.empty() && divisor_pairing.size() != degrees.size())
		throw Error("monoid: divisor_pairing needs one row per generator");
}

int Monoid::order(const Vec &q) const
{
	Int s = 0;
	for (size_t i = 0; i < q.size(); ++i)
		s += q[i] * degrees[i];
	return static_cast<int>(s);
}

Vec Monoid::generator(size_t i) const
{
	Vec q(size(), 0);
	q.at(i) = 1;
	return q;
}

bool Ring::same(const Ring &o) const
{
	if (rank != o.rank || k != o.k)
		return false;
	if (monoid == o.monoid)
		return true;
	if (!monoid || !o.monoid)
		return false;
	return *monoid == *o.monoid;
}

Series Series::one(const Ring &r)
{
	Series s(r);
	s.add_term(1, r.monoid->zero(), Vec(r.rank, 0));
	return s;
}

Series Series::monomial(const Ring &r, const Big &c, const Vec &q,
                        const Vec &m)
{
	Series s(r);
	s.add_term(c, q, m);
	return s;
}

void Series::add_term(const Big &c, const Vec &q, const Vec &m)
{
	if (c == 0)
		return;
	if (q.size() != ring_.monoid->size() || m.size() != (size_t)ring_.rank)
		throw Error("series: term shape does not match ring");
	for (auto x : q)
		if (x < 0)
			throw Error("series: negative curve class exponent");
	int ord = ring_.monoid->order(q);
	if (ord >= ring_.k)
		return;
	Key key{ord, q, m};
	auto it = terms_.find(key);
	if (it == terms_.end()) {
		terms_.emplace(std::move(key), c);
		return;
	}
	it->second += c;
	if (it->second == 0)
		terms_.erase(it);
}

Big Series::coeff(const Vec &q, const Vec &m) const
{
	auto it = terms_.find(Key{ring_.monoid->order(q), q, m});
	return it == terms_.end() ? Big(0) : it->second;
}

Big Series::constant() const
{
	return coeff(ring_.monoid->zero(), Vec(ring_.rank, 0));
}

bool Series::is_one() const
{
	return terms_.size() == 1 && constant() == 1;
}

void Series::check_same(const Series &o) const
{
	if (!ring_.same(o.ring_))
		throw Error("series: mismatched ring context");
}

Series &Series::operator+=(const Series &o)
{
	check_same(o);
	for (auto &[key, c] : o.terms_)
		add_term(c, key.q, key.m);
	return *this;
}

Series &Series::operator-=(const Series &o)
{
	check_same(o);
	for (auto &[key, c] : o.terms_)
		add_term(-c, key.q, key.m);
	return *this;
}

Series Series::operator+(const Series &o) const
{
	Series r(*this);
	r += o;
	return r;
}

Series Series::operator-(const Series &o) const
{
	Series r(*this);
	r -= o;
	return r;
}

Series Series::operator-() const { return scaled(-1); }

Series Series::scaled(const Big &c) const
{
	Series r(ring_);
	if (c == 0)
		return r;
	for (auto &[key, v] : terms_)
		r.terms_.emplace(key, v * c);
	return r;
}

Series Series::operator*(const Series &o) const
{
	check_same(o);
	Series r(ring_);
	const int k = ring_.k;
	for (auto &[ka, ca] : terms_) {
		if (ka.ord >= k)
			break;
		for (auto &[kb, cb] : o.terms_) {
			if (ka.ord + kb.ord >= k)
				break; // terms are sorted by order
			r.add_term(ca * cb, add(ka.q, kb.q), add(ka.m, kb.m));
		}
	}
	return r;
}

bool Series::operator==(const Series &o) const
{
	return ring_.same(o.ring_) && terms_ == o.terms_;
}

Series Series::shifted(const Vec &q, const Vec &m) const
{
	Series r(ring_);
	for (auto &[key, c] : terms_)
		r.add_term(c, add(key.q, q), add(key.m, m));
	return r;
}

Series Series::truncated(int k) const
{
	Series r(ring_);
	for (auto &[key, c] : terms_)
		if (key.ord < k)
			r.terms_.emplace(key, c);
	return r;
}

Series Series::with_order(int k) const
{
	Ring rr = ring_;
	rr.k = k;
	Series r(rr);
	for (auto &[key, c] : terms_)
		if (key.ord < k)
			r.terms_.emplace(key, c);
	return r;
}

std::string Series::str() const
{
	if (terms_.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (auto &[key, c] : terms_) {
		if (!first)
			os << (c > 0 ? " + " : " - ");
		else if (c < 0)
			os << "-";
		first = false;
		Big a = abs(c);
		bool bare = a == 1;
		if (!bare)
			os << a.get_str();
		for (size_t i = 0; i < key.q.size(); ++i) {
			if (key.q[i] == 0)
				continue;
			os << (bare ? "" : "*") << ring_.monoid->names[i];
			if (key.q[i] > 1)
				os << "^" << key.q[i];
			bare = false;
		}
		if (!logcy::is_zero(key.m)) {
			os << (bare ? "" : "*") << "z^" << logcy::str(key.m);
			bare = false;
		}
		if (bare)
			os << "1";
	}
	return os.str();
}

Series mul(const Series &a, const Series &b) { return a * b; }

Series invert(const Series &a)
{
	const Ring &r = a.ring();
	Big u = a.constant();
	if (u != 1 && u != -1)
		throw Error("invert: constant term is not a unit");
	for (auto &[key, c] : a.terms())
		if (key.ord == 0 && !is_zero(key.m))
			throw Error("invert: non-constant term of curve-class order 0");
	// a = u (1 + h), a^-1 = u (1 - h + h^2 - ...)
	Series h = a.scaled(u) - Series::one(r);
	Series result = Series::one(r);
	Series p = Series::one(r);
	for (int i = 1; i < r.k; ++i) {
		p = p * h;
		if (p.is_zero())
			break;
		result += (i % 2) ? -p : p;
	}
	return result.scaled(u);
}

Series pow(const Series &a, Int n)
{
	Series base = n < 0 ? invert(a) : a;
	Int e = n < 0 ? -n : n;
	Series result = Series::one(a.ring());
	while (e > 0) {
		if (e & 1)
			result = result * base;
		e >>= 1;
		if (e)
			base = base * base;
	}
	return result;
}

LaurentSum set_classes_to_zero(const Series &a, bool strict)
{
	LaurentSum out;
	std::map<Vec, int> seen;
	for (auto &[key, c] : a.terms()) {
		if (strict) {
			auto it = seen.find(key.m);
			if (it != seen.end() && it->second != key.ord)
				throw Error("set_classes_to_zero: exponent " +
				            str(key.m) +
				            " collects terms of different orders");
			seen[key.m] = key.ord;
		}
		Big &v = out[key.m];
		v += c;
		if (v == 0)
			out.erase(key.m);
	}
	return out;
}

} // namespace logcy
