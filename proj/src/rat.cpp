#include "oqm/rat.hpp"

#include <mutex>

namespace oqm {

Int factorial(long n) {
	if (n < 0) throw std::domain_error("factorial: negative argument");
	Int f = 1;
	for (long i = 2; i <= n; ++i) f *= i;
	return f;
}

Rat binomial(const Rat& n, long k) {
	if (k < 0) return Rat(0);
	Rat num(1);
	for (long i = 0; i < k; ++i) num *= (n - i);
	num /= Rat(factorial(k));
	num.canonicalize();
	return num;
}

Int binomial_int(long n, long k) {
	if (k < 0) return Int(0);
	Rat b = binomial(Rat(n), k);
	if (!is_integer(b)) throw std::logic_error("binomial_int: not integral");
	return b.get_num();
}

namespace {
std::vector<Rat> g_bernoulli{Rat(1), Rat(-1, 2)};
std::mutex g_bernoulli_mutex;
} // namespace

// Recursive convolution of the generating function:
// sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1.
Rat bernoulli_number(long n) {
	if (n < 0) throw std::domain_error("bernoulli_number: negative index");
	std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
	while ((long)g_bernoulli.size() <= n) {
		long m = (long)g_bernoulli.size();
		Rat acc(0);
		for (long k = 0; k < m; ++k)
			acc += Rat(binomial_int(m + 1, k)) * g_bernoulli[k];
		acc /= Rat(m + 1);
		g_bernoulli.push_back(-acc);
	}
	return g_bernoulli[n];
}

// B_k(x) = sum_j C(k,j) B_j x^{k-j}.
Rat bernoulli_poly(long k, const Rat& x) {
	if (k < 0) throw std::domain_error("bernoulli_poly: negative degree");
	Rat acc(0);
	Rat xpow(1);
	for (long j = k; j >= 0; --j) {
		acc += Rat(binomial_int(k, j)) * bernoulli_number(j) * xpow;
		xpow *= x;
	}
	return acc;
}

Rat zeta_nonpos(long m) {
	if (m > 0) throw std::domain_error("zeta_nonpos: positive argument");
	long n = -m;
	Rat v = bernoulli_number(n + 1) / Rat(n + 1);
	if (n % 2 == 1) v = -v;
	return v;
}

Rat alpha_sum(long r, long t, long j) {
	if (r < 0 || t < 0 || j < 0) throw std::domain_error("alpha_sum: negative argument");
	Rat acc(0);
	for (long h = 0; h <= r; ++h) {
		long n = r - h;
		Rat term = Rat(factorial(2 * h) * factorial(2 * n)) / Rat(factorial(h) * factorial(n));
		term *= binomial(Rat(j), 2 * h);
		term *= binomial(Rat(t + r - j), 2 * n);
		if (h % 2 == 1) term = -term;
		acc += term;
	}
	return acc;
}

SqrtPiRat gamma_half(long m) {
	Rat coeff;
	if (m >= 0) {
		coeff = Rat(factorial(2 * m)) / Rat(factorial(m));
		Rat four(1);
		for (long i = 0; i < m; ++i) four *= 4;
		coeff /= four;
	} else {
		long n = -m;
		coeff = Rat(factorial(n)) / Rat(factorial(2 * n));
		Rat four(1);
		for (long i = 0; i < n; ++i) four *= -4;
		coeff *= four;
	}
	coeff.canonicalize();
	return SqrtPiRat(Rat(0), coeff);
}

} // namespace oqm
