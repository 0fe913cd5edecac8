#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace logcy {

using Int = long;
using Vec = std::vector<Int>;
using Big = mpz_class;
using Rat = mpq_class;
using QVec = std::vector<Rat>;

struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

Int dot(const Vec &a, const Vec &b);
Rat dot(const Vec &a, const QVec &b);
Vec add(const Vec &a, const Vec &b);
Vec sub(const Vec &a, const Vec &b);
Vec neg(const Vec &a);
Vec scale(const Vec &a, Int s);
bool is_zero(const Vec &a);
Int gcd_of(const Vec &a);
Vec primitive(const Vec &a);

QVec to_q(const Vec &a);
QVec qadd(const QVec &a, const QVec &b);
QVec qsub(const QVec &a, const QVec &b);
QVec qscale(const QVec &a, const Rat &s);
bool qzero(const QVec &a);

// 2d helpers
Int cross(const Vec &a, const Vec &b);
Rat qcross(const QVec &a, const QVec &b);
Vec rot90(const Vec &a); // (-y, x)
int sign(const Rat &r);
int sign(Int x);

std::string str(const Vec &a);
std::string str(const QVec &a);

// exact rank of a rational matrix (rows)
int rank(std::vector<QVec> rows);
// solve A x = b for square nonsingular A (rows), throws if singular
QVec solve(std::vector<QVec> a, QVec b);

} // namespace logcy
