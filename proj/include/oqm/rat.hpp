#ifndef OQM_RAT_HPP
#define OQM_RAT_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqm {

// Exact rationals. mpq_class keeps denominator > 0 and gcd(num,den) = 1
// after every canonicalized operation.
using Int = mpz_class;
using Rat = mpq_class;

// NB: mpq_class(num, den) does not canonicalize; always build two-part
// rationals through this helper.
inline Rat rat(long num, long den = 1) {
	if (den == 0) throw std::domain_error("rat: zero denominator");
	Rat r(num, den);
	r.canonicalize();
	return r;
}

inline Rat rat_from_string(const std::string& s) {
	auto slash = s.find('/');
	Rat r;
	if (slash == std::string::npos) r = Rat(s);
	else r = Rat(s.substr(0, slash)) / Rat(s.substr(slash + 1));
	r.canonicalize();
	return r;
}

// Serialized as "num/den" ("num" if den == 1).
inline std::string rat_to_string(const Rat& r) {
	if (r.get_den() == 1) return r.get_num().get_str();
	return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
	if (!is_integer(r)) throw std::domain_error("to_long: not an integer");
	if (!r.get_num().fits_slong_p()) throw std::overflow_error("to_long: out of range");
	return r.get_num().get_si();
}

inline double to_double(const Rat& r) { return r.get_d(); }

Int factorial(long n);

// Binomial with the falling-factorial extension for negative (or rational) n;
// C(n,k) = 0 for k < 0.
Rat binomial(const Rat& n, long k);
Int binomial_int(long n, long k);

// B_n, generating function t e^{xt}/(e^t - 1); B_1 = -1/2.
Rat bernoulli_number(long n);
Rat bernoulli_poly(long k, const Rat& x);

// zeta(m) for m <= 0: zeta(-n) = (-1)^n B_{n+1}/(n+1).
Rat zeta_nonpos(long m);

// alpha(r,t,j) = sum_{h+n=r} (-1)^h (2h)!(2n)!/(h!n!) C(j,2h) C(t+r-j,2n).
Rat alpha_sum(long r, long t, long j);

// plain + r*sqrt(pi). Products of two sqrt(pi)-parts are rejected; exactly
// one sqrt(pi) survives in the Gamma-sum lemma, which is all this is for.
struct SqrtPiRat {
	Rat plain;
	Rat r;

	SqrtPiRat() = default;
	SqrtPiRat(Rat p, Rat rr) : plain(std::move(p)), r(std::move(rr)) {}

	SqrtPiRat operator+(const SqrtPiRat& o) const { return {plain + o.plain, r + o.r}; }
	SqrtPiRat operator-(const SqrtPiRat& o) const { return {plain - o.plain, r - o.r}; }
	SqrtPiRat operator*(const Rat& c) const { return {plain * c, r * c}; }
	SqrtPiRat operator*(const SqrtPiRat& o) const {
		if (r != 0 && o.r != 0)
			throw std::domain_error("SqrtPiRat: product of two sqrt(pi) parts");
		return {plain * o.plain, plain * o.r + r * o.plain};
	}
	bool operator==(const SqrtPiRat& o) const { return plain == o.plain && r == o.r; }
};

// Gamma(1/2 + m) as an exact multiple of sqrt(pi); m may be negative,
// using Gamma(1/2 - n) = sqrt(pi) (-4)^n n!/(2n)!.
SqrtPiRat gamma_half(long m);

} // namespace oqm

#endif
