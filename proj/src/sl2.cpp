#include "oqm/sl2.hpp"

namespace oqm {

long DepthForm::depth() const {
	for (long t = (long)comp.size() - 1; t >= 0; --t)
		if (!comp[t].is_zero()) return t;
	return 0;
}

bool DepthForm::is_zero() const {
	for (auto& f : comp)
		if (!f.is_zero()) return false;
	return true;
}

void DepthForm::strip() {
	while (comp.size() > 1 && comp.back().is_zero()) comp.pop_back();
}

const QExp& DepthForm::slot(long t) const {
	static const QExp zero;
	if (t < 0 || t >= (long)comp.size()) return zero;
	return comp[t];
}

DepthForm DepthForm::operator+(const DepthForm& o) const {
	if (!is_zero() && !o.is_zero() && weight != o.weight)
		throw std::domain_error("DepthForm: adding different weights");
	DepthForm r;
	r.weight = is_zero() ? o.weight : weight;
	r.comp.resize(std::max(comp.size(), o.comp.size()));
	for (size_t t = 0; t < r.comp.size(); ++t)
		r.comp[t] = slot((long)t) + o.slot((long)t);
	r.strip();
	return r;
}

DepthForm DepthForm::operator-(const DepthForm& o) const { return *this + o * Rat(-1); }

DepthForm DepthForm::operator*(const DepthForm& o) const {
	DepthForm r;
	r.weight = weight + o.weight;
	r.comp.resize(comp.size() + o.comp.size() - 1);
	for (size_t a = 0; a < comp.size(); ++a) {
		if (comp[a].is_zero()) continue;
		for (size_t b = 0; b < o.comp.size(); ++b)
			r.comp[a + b] = r.comp[a + b] + comp[a] * o.comp[b];
	}
	r.strip();
	return r;
}

DepthForm DepthForm::operator*(const Rat& s) const {
	DepthForm r = *this;
	for (auto& f : r.comp) f = f * s;
	r.strip();
	return r;
}

bool DepthForm::operator==(const DepthForm& o) const {
	size_t n = std::max(comp.size(), o.comp.size());
	for (size_t t = 0; t < n; ++t)
		if (!(slot((long)t) == o.slot((long)t))) return false;
	return true;
}

DepthForm maass_lower(const DepthForm& f) {
	DepthForm r;
	r.weight = f.weight - 2;
	if (f.comp.size() <= 1) {
		r.comp.resize(1);
		return r;
	}
	r.comp.resize(f.comp.size() - 1);
	for (size_t t = 0; t + 1 < f.comp.size(); ++t)
		r.comp[t] = f.comp[t + 1] * Rat((long)t + 1);
	r.strip();
	return r;
}

DepthForm maass_raise(const DepthForm& f) {
	DepthForm r;
	r.weight = f.weight + 2;
	r.comp.resize(f.comp.size() + 1);
	for (long t = 0; t < (long)r.comp.size(); ++t) {
		QExp acc;
		if (t < (long)f.comp.size()) acc = f.comp[t].derivative();
		if (t >= 1 && t - 1 < (long)f.comp.size()) {
			Rat c = (f.weight - Rat(t) + 1) / 2;
			acc = acc - f.comp[t - 1] * c;
		}
		r.comp[t] = acc;
	}
	r.strip();
	return r;
}

DepthForm g2_hat(const Rat& trunc) {
	return DepthForm(Rat(2), {eisenstein_G(2, trunc), QExp(rat(1, 4))});
}

DepthForm e2_star(const Rat& trunc) {
	return DepthForm(Rat(2), {eisenstein_E(2, trunc), QExp(Rat(-6))});
}

std::vector<QExp> e2star_decompose(const DepthForm& f) {
	long d = (long)f.comp.size() - 1;
	std::vector<QExp> out((size_t)d + 1);
	DepthForm rem = f;
	// pick a q-truncation wide enough for the E2* powers involved
	Rat trunc(24);
	for (auto& comp : f.comp) {
		if (comp.trunc != QExp::kExact) trunc = std::min(trunc, comp.trunc_exponent());
		if (!comp.is_zero()) trunc = std::max(trunc, Rat(rat(-comp.ord(), comp.P) + 1));
	}
	DepthForm estar = e2_star(trunc);
	for (long t = d; t >= 0; --t) {
		Rat lead(1); // top slot of (E2*)^t is (-6)^t
		for (long i = 0; i < t; ++i) lead *= -6;
		QExp ft = rem.slot(t) * (Rat(1) / lead);
		out[t] = ft;
		DepthForm sub = DepthForm::holomorphic(f.weight, ft);
		for (long i = 0; i < t; ++i) sub = sub * estar;
		sub.weight = rem.weight;
		rem = rem - sub;
		if (!rem.slot(t).is_zero())
			throw std::domain_error("e2star_decompose: residual depth did not decrease");
	}
	if (!rem.is_zero()) throw std::domain_error("e2star_decompose: nonzero remainder");
	return out;
}

Rat phi0_bracket(const DepthForm& f) {
	auto parts = e2star_decompose(f);
	// E2^{t+1} must be known past the worst pole among the f_t
	Rat trunc(2);
	for (auto& p : parts)
		if (!p.is_zero()) trunc = std::max(trunc, Rat(rat(-p.ord(), p.P) + 2));
	QExp e2 = eisenstein_E(2, trunc);
	Rat acc(0);
	QExp e2pow(Rat(1));
	for (size_t t = 0; t < parts.size(); ++t) {
		e2pow = e2pow * e2; // E2^{t+1}
		QExp term = parts[t] * e2pow;
		acc += term.coeff(Rat(0)) / Rat((long)t + 1);
	}
	return acc;
}

} // namespace oqm
