#include "oqm/qexp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oqm {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

long clamp_trunc(long t) { return std::min(t, QExp::kExact); }

// exponent as scaled key; throws if the denominator does not divide P
long key_of(const Rat& e, long P) {
	Rat s = e * P;
	if (!is_integer(s)) throw std::domain_error("QExp: exponent denominator does not divide P");
	return to_long(s);
}

} // namespace

Rat QExp::coeff(const Rat& exponent) const {
	Rat s = exponent * P;
	if (!is_integer(s)) return Rat(0);
	auto it = c.find(to_long(s));
	return it == c.end() ? Rat(0) : it->second;
}

void QExp::set(const Rat& exponent, const Rat& value) {
	long k = key_of(exponent, P);
	if (value == 0) c.erase(k); else c[k] = value;
}

void QExp::add_to(const Rat& exponent, const Rat& value) {
	long k = key_of(exponent, P);
	Rat v = c[k] + value;
	if (v == 0) c.erase(k); else c[k] = v;
}

void QExp::prune() {
	for (auto it = c.begin(); it != c.end();) {
		if (it->second == 0 || it->first >= trunc) it = c.erase(it);
		else ++it;
	}
}

QExp QExp::rekeyed(long newP) const {
	if (newP == P) return *this;
	if (newP % P != 0) throw std::domain_error("QExp::rekeyed: P must refine");
	long f = newP / P;
	QExp r;
	r.P = newP;
	r.trunc = (trunc == kExact) ? kExact : trunc * f;
	for (auto& [k, v] : c) r.c[k * f] = v;
	return r;
}

QExp QExp::truncated(const Rat& newTrunc) const {
	long newP = lcm_long(P, (long)newTrunc.get_den().get_si());
	QExp r = (newP == P) ? *this : rekeyed(newP);
	long nt = key_of(newTrunc, r.P);
	r.trunc = std::min(r.trunc, nt);
	r.prune();
	return r;
}

QExp QExp::operator-() const {
	QExp r = *this;
	for (auto& [k, v] : r.c) v = -v;
	return r;
}

QExp QExp::operator+(const QExp& o) const {
	long newP = lcm_long(P, o.P);
	QExp a = rekeyed(newP), b = o.rekeyed(newP);
	QExp r;
	r.P = newP;
	r.trunc = std::min(a.trunc, b.trunc);
	r.c = std::move(a.c);
	for (auto& [k, v] : b.c) {
		Rat s = r.c[k] + v;
		if (s == 0) r.c.erase(k); else r.c[k] = s;
	}
	r.prune();
	return r;
}

QExp QExp::operator-(const QExp& o) const { return *this + (-o); }

QExp QExp::operator*(const QExp& o) const {
	long newP = lcm_long(P, o.P);
	QExp a = rekeyed(newP), b = o.rekeyed(newP);
	QExp r;
	r.P = newP;
	// trunc = min(truncA + ordB, truncB + ordA); ord of the zero series is 0
	long ta = (a.trunc == kExact) ? kExact : clamp_trunc(a.trunc + b.ord());
	long tb = (b.trunc == kExact) ? kExact : clamp_trunc(b.trunc + a.ord());
	r.trunc = std::min(ta, tb);
	if (a.c.empty() || b.c.empty()) return r;
	for (auto& [ka, va] : a.c) {
		if (ka >= r.trunc - b.ord() && r.trunc != kExact) continue;
		for (auto& [kb, vb] : b.c) {
			long k = ka + kb;
			if (k >= r.trunc) break;
			Rat s = r.c[k] + va * vb;
			if (s == 0) r.c.erase(k); else r.c[k] = s;
		}
	}
	r.prune();
	return r;
}

QExp QExp::operator*(const Rat& s) const {
	QExp r = *this;
	if (s == 0) { r.c.clear(); return r; }
	for (auto& [k, v] : r.c) v = v * s;
	return r;
}

bool QExp::operator==(const QExp& o) const {
	long newP = lcm_long(P, o.P);
	QExp a = rekeyed(newP), b = o.rekeyed(newP);
	long t = std::min(a.trunc, b.trunc);
	for (auto& [k, v] : a.c) {
		if (k >= t) continue;
		if (b.c.count(k) == 0 || b.c.at(k) != v) return false;
	}
	for (auto& [k, v] : b.c) {
		if (k >= t) continue;
		if (a.c.count(k) == 0) return false;
	}
	return true;
}

QExp QExp::inverse() const {
	if (c.empty()) throw std::domain_error("QExp::inverse: zero series");
	long o = ord();
	Rat lead = c.begin()->second;
	// 1/f where f = lead q^o (1 + h): Neumann on h, coefficient recurrence.
	long t = (trunc == kExact) ? kExact : clamp_trunc(trunc - 2 * o);
	QExp r;
	r.P = P;
	r.trunc = t;
	long span;
	if (t == kExact) {
		// exactly known input: exact only for monomials; otherwise compute a
		// window past the support and record the resulting truncation
		span = (c.rbegin()->first - o) + 1;
	} else {
		span = t + o; // g has keys -o .. t-1
	}
	if (span < 1) span = 1;
	// g_m for m = 0..span-1 with g = sum_m g_m q^{(-o+m)/P}
	std::vector<Rat> g(span);
	g[0] = Rat(1) / lead;
	for (long m = 1; m < span; ++m) {
		Rat acc(0);
		for (long j = 1; j <= m; ++j) {
			auto it = c.find(o + j);
			if (it == c.end()) continue;
			acc += it->second * g[m - j];
		}
		g[m] = -acc / lead;
	}
	for (long m = 0; m < span; ++m) {
		long k = -o + m;
		if (r.trunc != kExact && k >= r.trunc) break;
		if (g[m] != 0) r.c[k] = g[m];
	}
	if (t == kExact && ord() == o && c.size() == 1) {
		// monomial: exact inverse
	} else if (t == kExact) {
		// generic exact input: inverse only known to the computed span
		r.trunc = -o + span;
	}
	return r;
}

QExp QExp::pow(long e) const {
	if (e < 0) return inverse().pow(-e);
	QExp r(Rat(1));
	r.P = P;
	QExp base = *this;
	while (e > 0) {
		if (e & 1) r = r * base;
		e >>= 1;
		if (e) base = base * base;
	}
	return r;
}

QExp QExp::derivative() const {
	QExp r;
	r.P = P;
	r.trunc = trunc;
	for (auto& [k, v] : c) {
		if (k == 0) continue;
		r.c[k] = v * rat(k, P);
	}
	return r;
}

QExp QExp::scale_exponents(long m) const {
	if (m <= 0) throw std::domain_error("scale_exponents: m must be positive");
	QExp r;
	r.P = P;
	r.trunc = (trunc == kExact) ? kExact : clamp_trunc(trunc * m);
	for (auto& [k, v] : c) r.c[k * m] = v;
	return r;
}

double QExp::eval(double q) const {
	double acc = 0;
	for (auto& [k, v] : c) acc += to_double(v) * std::pow(q, double(k) / double(P));
	return acc;
}

QExp qexp_zero(long P, const Rat& trunc) {
	QExp r;
	r.P = P;
	r.trunc = key_of(trunc, P);
	return r;
}

namespace {

// Euler product prod_{n>=1} (1 - q^{mn}) via the pentagonal number theorem.
QExp euler_product(long m, long truncKey /* P = 1 keys */) {
	QExp r;
	r.P = 1;
	r.trunc = truncKey;
	for (long k = -truncKey; k <= truncKey; ++k) {
		long e = m * (k * (3 * k - 1) / 2);
		if (e < 0 || e >= truncKey) continue;
		Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
		Rat s = r.c[e] + sign;
		if (s == 0) r.c.erase(e); else r.c[e] = s;
	}
	return r;
}

QExp divisor_series(long k, long truncKey) {
	QExp r;
	r.P = 1;
	r.trunc = truncKey;
	for (long n = 1; n < truncKey; ++n) {
		Rat sigma(0);
		for (long d = 1; d <= n; ++d) {
			if (n % d) continue;
			Int p = 1;
			for (long i = 0; i < k - 1; ++i) p *= d;
			sigma += Rat(p);
		}
		r.c[n] = sigma;
	}
	return r;
}

} // namespace

QExp eta_quotient(const std::vector<std::pair<long, long>>& spec, const Rat& trunc) {
	// prefactor q^{sum m e/24}
	Rat pre(0);
	for (auto& [m, e] : spec) {
		if (m < 1) throw std::domain_error("eta_quotient: level must be >= 1");
		pre += rat(m * e, 24);
	}
	long P = std::max(1L, (long)pre.get_den().get_si());
	long truncKey = key_of(trunc, P);
	if (truncKey <= key_of(pre, P))
		throw std::domain_error("eta_quotient: truncation at or below the pole order");
	QExp r(Rat(1));
	r.P = 1;
	long span = (truncKey - key_of(pre, P)) / P + 1; // integer-exponent budget
	r.trunc = span;
	for (auto& [m, e] : spec) {
		QExp f = euler_product(m, span);
		r = r * f.pow(e);
	}
	r = r.rekeyed(P);
	// shift exponents by the prefactor
	QExp shifted;
	shifted.P = P;
	long preKey = key_of(pre, P);
	shifted.trunc = clamp_trunc(r.trunc + preKey);
	for (auto& [k, v] : r.c) shifted.c[k + preKey] = v;
	shifted.trunc = std::min(shifted.trunc, truncKey);
	shifted.prune();
	return shifted;
}

QExp eisenstein_G(long k, const Rat& trunc) {
	if (k < 2 || k % 2) throw std::domain_error("eisenstein_G: k must be even and >= 2");
	long truncKey = key_of(trunc, 1);
	QExp r = divisor_series(k, truncKey);
	Rat c0 = -bernoulli_number(k) / Rat(2 * k);
	if (c0 != 0) r.c[0] = c0;
	return r;
}

QExp eisenstein_E(long k, const Rat& trunc) {
	QExp g = eisenstein_G(k, trunc);
	Rat c0 = -bernoulli_number(k) / Rat(2 * k);
	return g * (Rat(1) / c0);
}

QExp theta3(const Rat& trunc) {
	QExp r;
	r.P = 2;
	r.trunc = key_of(trunc, 2);
	for (long n = 0;; ++n) {
		long k = n * n; // exponent n^2/2, key = n^2 with P = 2
		if (k >= r.trunc) break;
		r.c[k] = (n == 0) ? Rat(1) : Rat(2);
	}
	return r;
}

QExp theta2(const Rat& trunc) {
	QExp r;
	r.P = 8;
	r.trunc = key_of(trunc, 8);
	for (long m = 0;; ++m) {
		long k = (2 * m + 1) * (2 * m + 1); // exponent (m+1/2)^2/2, key with P = 8
		if (k >= r.trunc) break;
		r.c[k] = Rat(2);
	}
	return r;
}

QExp delta_cusp(const Rat& trunc) { return eta_quotient({{1, 24}}, trunc); }

QExp e10_over_delta(const Rat& trunc) {
	// need Delta inverse: Delta has ord q^1 => compute inputs to trunc+2
	Rat t2 = trunc + 2;
	QExp e10 = eisenstein_E(4, t2) * eisenstein_E(6, t2);
	QExp del = delta_cusp(t2);
	return (e10 * del.inverse()).truncated(trunc);
}

QExp j_invariant(const Rat& trunc) {
	Rat t2 = trunc + 2;
	QExp e4 = eisenstein_E(4, t2);
	QExp del = delta_cusp(t2);
	return (e4 * e4 * e4 * del.inverse()).truncated(trunc);
}

ZQExp ZQExp::operator+(const ZQExp& o) const {
	ZQExp r(std::max(zorder, o.zorder));
	for (long i = 0; i <= r.zorder; ++i) {
		if (i <= zorder) r.comp[i] = r.comp[i] + comp[i];
		if (i <= o.zorder) r.comp[i] = r.comp[i] + o.comp[i];
	}
	return r;
}

ZQExp ZQExp::operator*(const ZQExp& o) const {
	ZQExp r(std::max(zorder, o.zorder)); // z-truncation: keep the max declared order
	for (long i = 0; i <= zorder; ++i) {
		if (comp[i].is_zero()) continue;
		for (long j = 0; j <= o.zorder && i + j <= r.zorder; ++j) {
			if (o.comp[j].is_zero()) continue;
			r.comp[i + j] = r.comp[i + j] + comp[i] * o.comp[j];
		}
	}
	return r;
}

ZQExp zq_exp(const ZQExp& s) {
	for (long i = 0; i <= std::min(1L, s.zorder); ++i)
		if (!s.comp[i].is_zero()) throw std::domain_error("zq_exp: needs z-order >= 2");
	ZQExp r(s.zorder);
	r.comp[0] = QExp(Rat(1));
	ZQExp p(s.zorder);
	p.comp[0] = QExp(Rat(1));
	Rat fact(1);
	for (long m = 1; 2 * m <= s.zorder; ++m) {
		p = p * s;
		fact *= m;
		ZQExp term = p;
		for (auto& comp : term.comp) comp = comp * (Rat(1) / fact);
		r = r + term;
	}
	return r;
}

QExp theta_quotient_coeff(long g, ThetaVariant variant, const Rat& trunc) {
	if (variant != ThetaVariant::KKV && g < 1)
		throw std::domain_error("theta_quotient_coeff: g >= 1 required");
	if (variant == ThetaVariant::KKV && g < 0)
		throw std::domain_error("theta_quotient_coeff: g >= 0 required");
	long Z = 2 * g; // z-order needed: coefficient of z^{2g-2} (or z^{2g} for kkv)
	if (variant == ThetaVariant::KKV) Z = 2 * g + 2;
	ZQExp S(Z);
	for (long k = 2; k <= Z; k += 2) {
		QExp gk = eisenstein_G(k, trunc + 2);
		QExp g2k = gk.scale_exponents(2);
		Rat invfact = Rat(1) / Rat(factorial(k));
		switch (variant) {
		case ThetaVariant::FG:
			// exp(-4 sum (G_k(2t) - G_k(t)) z^k / k!)
			S.comp[k] = (g2k.truncated(trunc + 2) - gk) * Rat(-4) * invfact;
			break;
		case ThetaVariant::FG_TILDE: {
			// (1/4) exp(-4 sum (G_k(t) - 2^k G_k(2t)) z^k / k!)
			Rat twok(1);
			for (long i = 0; i < k; ++i) twok *= 2;
			S.comp[k] = (gk - g2k.truncated(trunc + 2) * twok) * Rat(-4) * invfact;
			break;
		}
		case ThetaVariant::KKV:
			// -1/(Delta Theta^2) = -Delta^{-1} z^{-2} exp(+4 sum G_k z^k/k!)
			S.comp[k] = gk * Rat(4) * invfact;
			break;
		}
	}
	ZQExp E = zq_exp(S);
	switch (variant) {
	case ThetaVariant::FG: {
		QExp etaq = eta_quotient({{2, 8}, {1, -16}}, trunc + 2);
		return (E.comp[2 * g - 2] * etaq).truncated(trunc);
	}
	case ThetaVariant::FG_TILDE: {
		QExp etaq = eta_quotient({{1, 8}, {2, -16}}, trunc + 2);
		Rat pre(1, 4); // z^2/(2z)^2
		Rat two_pow(1);
		for (long i = 0; i < g + 3; ++i) two_pow *= 2;
		return (E.comp[2 * g - 2] * etaq * (pre / two_pow)).truncated(trunc);
	}
	case ThetaVariant::KKV: {
		QExp del = delta_cusp(trunc + 3);
		return (E.comp[2 * g] * del.inverse() * Rat(-1)).truncated(trunc);
	}
	}
	throw std::logic_error("unreachable");
}

} // namespace oqm
