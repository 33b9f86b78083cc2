#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oqm/rat.hpp"

#include <vector>

using namespace oqm;

namespace {

// Independent oracle: coefficients of t e^{xt}/(e^t - 1) up to t^N, computed
// by truncated power-series division (no shared code with bernoulli_poly).
std::vector<Rat> bernoulli_poly_series(const Rat& x, long N) {
	// numerator: t e^{xt} = sum_{m>=1} x^{m-1} t^m / (m-1)!
	std::vector<Rat> num(N + 2, Rat(0)), den(N + 2, Rat(0));
	Rat xp(1);
	for (long m = 1; m <= N + 1; ++m) {
		num[m] = xp / Rat(factorial(m - 1));
		xp *= x;
	}
	// denominator: e^t - 1 = sum_{m>=1} t^m / m!
	for (long m = 1; m <= N + 1; ++m) den[m] = Rat(1) / Rat(factorial(m));
	// quotient g with num = den * g; both have a simple zero at t = 0
	std::vector<Rat> g(N + 1, Rat(0));
	for (long n = 0; n <= N; ++n) {
		Rat acc = num[n + 1];
		for (long j = 0; j < n; ++j) acc -= den[n + 1 - j] * g[j];
		g[n] = acc / den[1];
	}
	// g[n] = B_n(x)/n!
	for (long n = 0; n <= N; ++n) g[n] *= Rat(factorial(n));
	return g;
}

// Truncated rational series in z, for the generating-function oracle.
using ZSeries = std::vector<Rat>;

ZSeries zs_mul(const ZSeries& a, const ZSeries& b, long N) {
	ZSeries r(N + 1, Rat(0));
	for (long i = 0; i <= N && i < (long)a.size(); ++i)
		for (long j = 0; i + j <= N && j < (long)b.size(); ++j)
			r[i + j] += a[i] * b[j];
	return r;
}

ZSeries zs_pow(ZSeries base, long e, long N) {
	ZSeries r(N + 1, Rat(0));
	r[0] = 1;
	while (e > 0) {
		if (e & 1) r = zs_mul(r, base, N);
		e >>= 1;
		if (e) base = zs_mul(base, base, N);
	}
	return r;
}

// (1-z)^{-(t+1)} = sum C(t+r, r) z^r
ZSeries zs_inv_one_minus_z_pow(long t, long N) {
	ZSeries r(N + 1, Rat(0));
	for (long k = 0; k <= N; ++k) r[k] = binomial(Rat(t + k), k);
	return r;
}

} // namespace

TEST_CASE("bernoulli polynomial values") {
	CHECK(bernoulli_poly(2, Rat(0)) == rat(1, 6));
	CHECK(bernoulli_poly(0, rat(7, 3)) == Rat(1));
	CHECK(bernoulli_poly(0, Rat(0)) == Rat(1));
	// derived via the generating-function oracle
	auto series0 = bernoulli_poly_series(Rat(0), 6);
	CHECK(series0[4] == rat(-1, 30));
	CHECK(bernoulli_poly(4, Rat(0)) == series0[4]);
	for (long k = 0; k <= 6; ++k) {
		auto sx = bernoulli_poly_series(rat(2, 5), 6);
		CHECK(bernoulli_poly(k, rat(2, 5)) == sx[k]);
	}
}

TEST_CASE("zeta at non-positive integers") {
	CHECK(zeta_nonpos(-1) == rat(-1, 12));
	CHECK(zeta_nonpos(0) == rat(-1, 2));
	CHECK(zeta_nonpos(-11) == rat(691, 32760));
	CHECK_THROWS(zeta_nonpos(1));
	// consistency: B_k(0) = -k zeta(1-k) for even k >= 2
	for (long k = 2; k <= 12; k += 2)
		CHECK(bernoulli_poly(k, Rat(0)) == Rat(-k) * zeta_nonpos(1 - k));
}

TEST_CASE("alpha sums: basics and generating function oracle") {
	for (long t = 0; t <= 5; ++t)
		for (long j = 0; j <= 5; ++j)
			CHECK(alpha_sum(0, t, j) == Rat(1));

	// sum_j C(2,j) alpha(1,1,j) = 0
	Rat s(0);
	for (long j = 0; j <= 2; ++j) s += Rat(binomial_int(2, j)) * alpha_sum(1, 1, j);
	CHECK(s == Rat(0));

	// coefficient of z^r in (1-2z)^j/(1-z)^{t+1}, times r! C(t,r), equals alpha(r,t,j)
	const long N = 10;
	for (long t = 0; t <= N; ++t) {
		ZSeries invpow = zs_inv_one_minus_z_pow(t, N);
		for (long j = 0; j <= N; ++j) {
			ZSeries top(N + 1, Rat(0));
			top[0] = 1;
			if (N >= 1) top[1] = Rat(-2);
			ZSeries gf = zs_mul(zs_pow(top, j, N), invpow, N);
			for (long r = 0; r <= N; ++r) {
				Rat expect = gf[r] * Rat(factorial(r)) * binomial(Rat(t), r);
				CHECK(alpha_sum(r, t, j) == expect);
			}
		}
	}

	// alpha(r,t,j) = 0 whenever r > t
	for (long r = 0; r <= 10; ++r)
		for (long t = 0; t < r; ++t)
			for (long j = 0; j <= 10; ++j)
				CHECK(alpha_sum(r, t, j) == Rat(0));
}

TEST_CASE("binomial identity lemma, both displays") {
	for (long k = 0; k <= 8; ++k) {
		for (long r = 0; r <= 8; ++r) {
			for (long t = 0; t <= 8; ++t) {
				Rat plain(0), alt(0);
				for (long j = 0; j <= k; ++j) {
					Rat b(binomial_int(k, j));
					plain += b * alpha_sum(r, t, j);
					alt += ((j % 2) ? -b : b) * alpha_sum(r, t, j);
				}
				Rat twok(1);
				for (long i = 0; i < k; ++i) twok *= 2;
				Rat rt = Rat(factorial(r)) * binomial(Rat(t), r);
				CHECK(plain == twok * rt * binomial(Rat(t + r - k), r));
				CHECK(alt == twok * rt * binomial(Rat(t + r - k), r - k));
				if (r < k) CHECK(alt == Rat(0));
			}
		}
	}
}

TEST_CASE("gamma at half integers and the Gamma-sum lemma") {
	CHECK(gamma_half(0) == SqrtPiRat(Rat(0), Rat(1)));
	CHECK(gamma_half(1) == SqrtPiRat(Rat(0), rat(1, 2)));
	CHECK(gamma_half(2) == SqrtPiRat(Rat(0), rat(3, 4)));
	// reflection side: Gamma(-1/2) = -2 sqrt(pi)
	CHECK(gamma_half(-1) == SqrtPiRat(Rat(0), Rat(-2)));

	for (long k = 0; k <= 10; ++k) {
		for (long t = 0; t <= 10; ++t) {
			SqrtPiRat lhs(Rat(0), Rat(0));
			for (long h = 0; 2 * h <= k; ++h) {
				Rat coef = Rat(factorial(k)) / Rat(factorial(h) * factorial(k - 2 * h));
				Rat m4(1);
				for (long i = 0; i < h; ++i) m4 *= -4;
				coef /= m4;
				lhs = lhs + gamma_half(t - h) * coef;
			}
			Rat rhs = Rat(factorial(t)) * binomial(Rat(2 * t - k), t);
			Rat p2(1);
			long e = k - 1 - 2 * t;
			if (e >= 0) for (long i = 0; i < e; ++i) p2 *= 2;
			else for (long i = 0; i < -e; ++i) p2 /= 2;
			rhs *= p2;
			if (k <= t) rhs *= 2;
			CHECK(lhs == SqrtPiRat(Rat(0), rhs));
		}
	}
}

TEST_CASE("SqrtPiRat closure rules") {
	SqrtPiRat a(rat(1, 2), Rat(3));
	SqrtPiRat b(Rat(2), Rat(0));
	CHECK((a * b).plain == Rat(1));
	CHECK((a * b).r == Rat(6));
	SqrtPiRat c(Rat(0), Rat(1));
	CHECK_THROWS(a * c);
}
