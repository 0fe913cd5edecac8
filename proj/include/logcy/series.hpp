#pragma once

#include "logcy/common.hpp"

#include <map>
#include <memory>

namespace logcy {

/// Free commutative monoid of curve classes with positive degree weights.
struct Monoid {
	std::vector<std::string> names;
	std::vector<int> degrees;
	// optional: one row per generator, pairing against boundary divisors
	std::vector<Vec> divisor_pairing;

	Monoid() = default;
	Monoid(std::vector<std::string> n, std::vector<int> d,
	       std::vector<Vec> pairing = {});

	size_t size() const { return degrees.size(); }
	int order(const Vec &q) const;
	Vec generator(size_t i) const;
	Vec zero() const { return Vec(size(), 0); }
	bool operator==(const Monoid &o) const
	{
		return names == o.names && degrees == o.degrees;
	}
};

struct Ring {
	std::shared_ptr<const Monoid> monoid;
	int rank = 2;
	int k = 1;
	bool same(const Ring &o) const;
};

struct Key {
	int ord;
	Vec q;
	Vec m;
	bool operator<(const Key &o) const
	{
		if (ord != o.ord)
			return ord < o.ord;
		if (q != o.q)
			return q < o.q;
		return m < o.m;
	}
	bool operator==(const Key &o) const { return q == o.q && m == o.m; }
};

using LaurentSum = std::map<Vec, Big>;

/// Element of Z[Q + M] / I^k, sparse, canonical order (order(q), q, m).
class Series {
public:
	Series() = default;
	explicit Series(Ring r) : ring_(std::move(r)) {}

	static Series one(const Ring &r);
	static Series monomial(const Ring &r, const Big &c, const Vec &q,
	                       const Vec &m);

	const Ring &ring() const { return ring_; }
	int order() const { return ring_.k; }
	const std::map<Key, Big> &terms() const { return terms_; }
	size_t size() const { return terms_.size(); }
	bool is_zero() const { return terms_.empty(); }
	bool is_one() const;

	void add_term(const Big &c, const Vec &q, const Vec &m);
	Big coeff(const Vec &q, const Vec &m) const;
	Big constant() const;

	Series &operator+=(const Series &o);
	Series &operator-=(const Series &o);
	Series operator+(const Series &o) const;
	Series operator-(const Series &o) const;
	Series operator-() const;
	Series operator*(const Series &o) const;
	Series &operator*=(const Series &o) { return *this = *this * o; }
	Series scaled(const Big &c) const;
	bool operator==(const Series &o) const;
	bool operator!=(const Series &o) const { return !(*this == o); }

	// multiply by the monomial t^q z^m (stays truncated)
	Series shifted(const Vec &q, const Vec &m) const;
	Series truncated(int k) const;
	Series with_order(int k) const;

	std::string str() const;

private:
	void check_same(const Series &o) const;
	Ring ring_;
	std::map<Key, Big> terms_;
};

Series mul(const Series &a, const Series &b);
Series invert(const Series &a);
Series pow(const Series &a, Int n);
LaurentSum set_classes_to_zero(const Series &a, bool strict = false);

} // namespace logcy
