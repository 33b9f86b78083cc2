#include "oqm/lift.hpp"

#include <cmath>

namespace oqm {

TrivialLevelCoeffs::TrivialLevelCoeffs(DepthForm f) : F(std::move(f)) {
	if (!is_integer(F.weight)) throw std::domain_error("TrivialLevelCoeffs: integral weight expected");
	k = to_long(F.weight); // kappa = k for n = 2
	d = F.depth();
}

Rat TrivialLevelCoeffs::coeff(const IVec& y, const Rat& n, long t) const {
	(void)y;
	return F.slot(t).coeff(n);
}

Rat TrivialLevelCoeffs::c00(long t) const { return F.slot(t).coeff(Rat(0)); }

std::shared_ptr<LiftCoeffs> TrivialLevelCoeffs::lowered() const {
	return std::make_shared<TrivialLevelCoeffs>(maass_lower(F));
}

void TrivialLevelCoeffs::ensure_exponents(const Rat& maxExp) const {
	for (auto& slot : F.comp)
		if (slot.trunc != QExp::kExact && !(slot.trunc_exponent() > maxExp))
			throw std::domain_error(
			    "lift: input truncated below the required exponent range (need > " +
			    rat_to_string(maxExp) + ")");
}

RVec TrivialLevelCoeffs::weyl_constant(const LorentzFrame& fr) const {
	// The k = 0 bottom on U+U in scope is the lift of a constant; the
	// Kronecker limit formula pins the constant slot at -c(0,0)/24 per
	// direction (eta prefactor exponents).
	if (fr.K.rank() != 0 || fr.N != 1)
		throw std::domain_error("weyl_constant: U+U frame expected");
	QExp c0(F.slot(0).coeff(Rat(0)));
	if (F.depth() != 0 || !(F.slot(0) == c0))
		throw std::domain_error("weyl_constant: constant k = 0 input expected on U+U");
	return RVec(fr.rank(), -c00(0) / 24);
}

Gamma0pCoeffs::Gamma0pCoeffs(DepthForm f_, DepthForm fFr_, long p_, long rkN_, Rat scale_)
    : f(std::move(f_)), fFr(std::move(fFr_)), p(p_), rkN(rkN_), scale(std::move(scale_)) {
	Rat kk = f.weight - 1 + Rat(rkN + 2) / 2; // k = kappa - 1 + n/2, n = rkN + 2
	if (!is_integer(kk)) throw std::domain_error("Gamma0pCoeffs: k not integral");
	k = to_long(kk);
	d = f.depth();
}

Rat Gamma0pCoeffs::prefactor() const {
	Rat half = (f.weight + rkN) / 2;
	if (!is_integer(half)) throw std::domain_error("Gamma0pCoeffs: (kappa + rkN)/2 not integral");
	long e = to_long(half);
	Rat r(1);
	for (long i = 0; i < std::labs(e); ++i) r *= p;
	if (e < 0) r = Rat(1) / r;
	return r;
}

Rat Gamma0pCoeffs::coeff(const IVec& y, const Rat& n, long t) const {
	Rat acc(0);
	Rat pn = n * p;
	if (is_integer(pn)) {
		Rat pt(1);
		for (long i = 0; i < t; ++i) pt *= p;
		acc += pt * f.slot(t).coeff(pn);
	}
	bool inL = true;
	for (long v : y)
		if (v % p) { inL = false; break; }
	if (inL) acc += prefactor() * fFr.slot(t).coeff(n);
	return acc * scale;
}

Rat Gamma0pCoeffs::c00(long t) const {
	Rat pt(1);
	for (long i = 0; i < t; ++i) pt *= p;
	return (prefactor() * fFr.slot(t).coeff(Rat(0)) + pt * f.slot(t).coeff(Rat(0))) * scale;
}

void Gamma0pCoeffs::ensure_exponents(const Rat& maxExp) const {
	for (auto& slot : f.comp)
		if (slot.trunc != QExp::kExact && !(slot.trunc_exponent() > maxExp * p))
			throw std::domain_error(
			    "lift: f truncated below the required exponent range (need > " +
			    rat_to_string(Rat(maxExp * p)) + ")");
	for (auto& slot : fFr.comp)
		if (slot.trunc != QExp::kExact && !(slot.trunc_exponent() > maxExp))
			throw std::domain_error(
			    "lift: Fricke side truncated below the required exponent range (need > " +
			    rat_to_string(maxExp) + ")");
}

std::shared_ptr<LiftCoeffs> Gamma0pCoeffs::lowered() const {
	// L^{Maass}(F_f) = p F_{L^{Maass} f}; surrogate scaling keeps the p
	return std::make_shared<Gamma0pCoeffs>(maass_lower(f), maass_lower(fFr), p, rkN,
	                                       scale * p);
}

OrthoSeries lift_ct(const LiftCoeffs& C, const LorentzFrame& fr, long heightBound) {
	if (C.k < 1) throw std::domain_error("lift_ct: k >= 1 required");
	OrthoSeries out = OrthoSeries::zero(fr, C.k, 0, heightBound);
	{
		Rat maxN(0);
		for (auto& cv : enumerate_cone(fr, heightBound, true))
			maxN = std::max(maxN, Rat(cv.norm / 2));
		C.ensure_exponents(maxN);
	}
	Rat constant = zeta_nonpos(1 - C.k) * C.c00(0) / 2;
	if (constant != 0) out.add(IVec(fr.rank(), 0), 0, NuPoly::constant(constant));

	auto& cone = enumerate_cone(fr, heightBound, /*dual=*/true);
	for (auto& cv : cone) {
		if (cv.height == 0) continue;
		long g = dual_divisibility(cv.y);
		Rat acc(0);
		for (long delta = 1; delta <= g; ++delta) {
			if (g % delta) continue;
			IVec mu(cv.y.size());
			for (size_t i = 0; i < mu.size(); ++i) mu[i] = cv.y[i] / delta;
			Rat n = cv.norm / Rat(delta * delta) / 2;
			Rat c = C.coeff(mu, n, 0);
			if (c == 0) continue;
			Rat dk(1);
			for (long i = 0; i < C.k - 1; ++i) dk *= delta;
			acc += dk * c;
		}
		if (acc != 0) out.add(cv.y, 0, NuPoly::constant(acc));
	}
	out.prune();
	return out;
}

OrthoSeries raise_of_k0_lift(const LiftCoeffs& C, const LorentzFrame& fr, long heightBound) {
	if (C.k != 0 || C.d != 0)
		throw std::domain_error("raise_of_k0_lift: depth-0 weight-(1-n/2) input required");
	long n = fr.rank();
	OrthoSeries out = OrthoSeries::zero(fr, 1, 1, heightBound);
	auto& cone = enumerate_cone(fr, heightBound, /*dual=*/true);
	for (auto& cv : cone) {
		if (cv.height == 0) continue;
		long g = dual_divisibility(cv.y);
		Rat acc(0);
		for (long delta = 1; delta <= g; ++delta) {
			if (g % delta) continue;
			IVec mu(cv.y.size());
			for (size_t i = 0; i < mu.size(); ++i) mu[i] = cv.y[i] / delta;
			Rat nn = cv.norm / Rat(delta * delta) / 2;
			Rat c = C.coeff(mu, nn, 0);
			if (c == 0) continue;
			acc += c / Rat(delta);
		}
		if (acc == 0) continue;
		for (long a = 0; a < n; ++a)
			if (cv.y[a] != 0) out.add(cv.y, (uint32_t)a, NuPoly::constant(acc * Rat(cv.y[a])));
	}
	Rat c0 = C.c00(0);
	RVec W = C.weyl_constant(fr);
	IVec zero(n, 0);
	for (long a = 0; a < n; ++a) {
		NuPoly pa = NuPoly::var(a) * (-c0 / 2) + NuPoly::constant(W[a]);
		out.add(zero, (uint32_t)a, pa);
	}
	out.prune();
	return out;
}

OrthoSeries lift_ah(const LiftCoeffs& C, const LorentzFrame& fr, long heightBound) {
	if (C.k < 2 * C.d)
		throw std::domain_error("lift not almost-holomorphic: k < 2d");
	if (C.d == 0) {
		if (C.k == 0)
			throw std::domain_error("lift_ah: k = 0 lift is not almost-holomorphic");
		if (C.k == 1)
			throw std::domain_error("lift_ah: k = 1 wall terms unsupported");
		return lift_ct(C, fr, heightBound);
	}
	auto low = C.lowered();
	OrthoSeries H;
	if (low->k == 0) {
		H = raise_of_k0_lift(*low, fr, heightBound) * Rat(-1);
	} else {
		H = ortho_raise(lift_ah(*low, fr, heightBound)) * Rat(-1);
	}

	OrthoSeries G = lift_ct(C, fr, heightBound);
	long n = fr.rank();
	auto ginv = fr.L.gram_inverse();
	// dG/du_j = 2 sum_a g^{ja} H_a; reconstruct degree m from degree m-1 parts
	for (auto& [y, T] : H.coef) {
		for (long j = 0; j < n; ++j) {
			NuPoly grad;
			for (long a = 0; a < n; ++a) {
				if (ginv[j][a] == 0) continue;
				const NuPoly* ha = T.find((uint32_t)a);
				if (ha) grad = grad + *ha * (ginv[j][a] * 2);
			}
			if (grad.is_zero()) continue;
			for (auto& [key, v] : grad.mono) {
				long m = NuPoly::mono_degree(key) + 1;
				NuPoly add;
				add.add_mono(key, v / Rat(m));
				G.add(y, 0, add.mul_u(j));
			}
		}
	}
	G.prune();
	if (!(ortho_lower(G) == H))
		throw std::logic_error("lift_ah: gradient reconstruction failed (convention error)");
	return G;
}

namespace {

double zeta_pos(long s) {
	double acc = 0;
	for (long n = 1; n <= 1000; ++n) acc += std::pow((double)n, -(double)s);
	// tail estimate via the integral bound
	acc += std::pow(1000.5, 1.0 - (double)s) / ((double)s - 1.0);
	return acc;
}

constexpr double kEulerGamma = 0.57721566490153286060651209;

} // namespace

LiftReport lift_report_uu(const DepthForm& F, long k, Cplx z1, Cplx z2) {
	LiftReport rep;
	double y1 = z1.imag(), y2 = z2.imag();
	if (y1 <= 0 || y2 <= 0) throw std::domain_error("lift_report: points must be in H x H");
	double vv = 2 * y1 * y2;
	long d = F.depth();

	long pole = 0;
	for (auto& comp : F.comp)
		if (!comp.is_zero()) pole = std::max(pole, (long)((-comp.ord() + comp.P - 1) / comp.P));

	auto cval = [&](long t, long nExp) { return to_double(F.slot(t).coeff(Rat(nExp))); };

	Cplx fam1(0), fam2(0);
	long Amax = (long)(30.0 / y2) + pole + 6;
	long Bmax = (long)(30.0 / y1) + pole + 6;
	for (long a = 0; a <= Amax; ++a) {
		long blo = (a == 0) ? 1 : -pole - 1;
		for (long b = blo; b <= Bmax; ++b) {
			if (a == 0 && b <= 0) continue;
			if (a > 0 && a * b < -pole) continue;
			double muv = a * y2 + b * y1;
			if (muv <= 1e-12) {
				bool contributes = false;
				for (long t = 0; t <= d && !contributes; ++t)
					if (cval(t, a * b) != 0) contributes = true;
				if (contributes)
					throw std::domain_error(
					    "lift_report: point outside the convergence region for mu = (" +
					    std::to_string(a) + "," + std::to_string(b) + ")");
				continue;
			}
			Cplx muz = Cplx(a) * z2 + Cplx(b) * z1;
			for (long t = 0; t <= d; ++t) {
				double c = cval(t, a * b);
				if (c == 0) continue;
				for (long r = 0; r <= t; ++r) {
					double comb1 = to_double(Rat(factorial(r)) * binomial(Rat(t), r) *
					                         binomial(Rat(t + r - k), r));
					double comb2 = to_double(Rat(factorial(r)) * binomial(Rat(t), r) *
					                         binomial(Rat(t + r - k), r - k));
					double pref = std::pow(4.0, -(double)r) * std::pow(M_PI, -(double)(r + t)) *
					              std::pow(vv, -(double)t) * std::pow(muv, (double)(t - r));
					Cplx dsum(0);
					for (long delta = 1; delta <= 4000; ++delta) {
						double mag = std::exp(-2 * M_PI * delta * muv) *
						             std::pow((double)delta, (double)(k - t - r - 1));
						if (mag < 1e-18 && delta > 2) break;
						double ph = 2 * M_PI * delta * muz.real();
						dsum += mag * Cplx(std::cos(ph), std::sin(ph));
					}
					if (comb1 != 0) fam1 += c * pref * comb1 * dsum;
					// mu < 0 family pairs with the conjugate phases; only t >= k
					if (t >= k && comb2 != 0) fam2 += c * pref * comb2 * std::conj(dsum);
				}
			}
		}
	}
	rep.main_pos = fam1.real();
	rep.main_neg = fam2.real();

	// zeta tower: t >= k, (t,k) != (0,0)
	for (long t = std::max(k, 0L); t <= d; ++t) {
		if (t == 0 && k == 0) continue;
		double c = cval(t, 0);
		if (c == 0) continue;
		Rat coef = Rat(factorial(2 * t - k)) / Rat(factorial(t - k));
		Rat cr = F.slot(t).coeff(Rat(0));
		rep.zeta_tower += to_double(coef) * zeta_pos(2 * t + 1 - k) *
		                  std::pow(2 * M_PI, -2.0 * t) * c * std::pow(vv, -(double)t);
		rep.atoms.push_back(rat_to_string(coef * cr) + " * zeta(" +
		                    std::to_string(2 * t + 1 - k) + ") * (2 pi)^" +
		                    std::to_string(-2 * t) + " * <v,v>^" + std::to_string(-t));
	}
	// sub-k/2 zeta line: t < k/2 (zeta at non-positive integers, exact)
	for (long t = 0; 2 * t < k && t <= d; ++t) {
		double c = cval(t, 0);
		if (c == 0) continue;
		Rat coef = Rat(factorial(t)) * binomial(Rat(2 * t - k), t) * zeta_nonpos(2 * t + 1 - k) / 2;
		rep.zeta_sub += to_double(coef) * std::pow(2 * M_PI, -2.0 * t) * c * std::pow(vv, -(double)t);
		rep.atoms.push_back(rat_to_string(coef * F.slot(t).coeff(Rat(0))) + " * (2 pi)^" +
		                    std::to_string(-2 * t) + " * <v,v>^" + std::to_string(-t));
	}
	// digamma line, even k > 0, needs c^{(k/2)}(0,0)
	if (k > 0 && k % 2 == 0 && k / 2 <= d) {
		double c = cval(k / 2, 0);
		if (c != 0) {
			double S = 0;
			for (long h = 0; h <= k / 2 - 1; ++h) {
				Rat fac = Rat(factorial(k)) / (Rat(factorial(h)) * Rat(factorial(k - 2 * h)));
				Rat m4(1);
				for (long i = 0; i < h; ++i) m4 *= -4;
				double gam = to_double(gamma_half(k / 2 - h).r) * std::sqrt(M_PI);
				double harm = 0;
				for (long j = 1; j <= k / 2 - h; ++j) harm += 1.0 / (2 * j - 1);
				S += to_double(fac / m4) * gam * harm;
			}
			rep.digamma = std::pow(2.0, -(double)k) * std::pow(M_PI, -(double)k - 0.5) * c * S *
			              std::pow(vv, -(double)k / 2);
		}
	}
	// k = 0 gamma/log line
	if (k == 0) {
		double c = cval(0, 0);
		rep.euler_log = 0.5 * c * (2 * kEulerGamma - std::log(2 * M_PI) - std::log(vv));
		Rat cr = F.slot(0).coeff(Rat(0)) / 2;
		if (cr != 0)
			rep.atoms.push_back(rat_to_string(cr) +
			                    " * (2 gamma_E - log(2 pi) - log<v,v>)");
	}
	// Bernoulli line (N = 1, K = 0: single beta = lambda = 0 term, {0} = 1)
	for (long t = std::max(0L, (k + 1) / 2 - 1); t <= d; ++t) {
		if (2 * t < k - 2) continue;
		double c = cval(t, 0);
		if (c == 0) continue;
		Rat m4(1);
		for (long i = 0; i < t; ++i) m4 *= -4;
		Rat coef = m4 * Rat(factorial(t)) / Rat(factorial(2 + 2 * t - k));
		Rat bern = bernoulli_poly(2 + 2 * t - k, Rat(1));
		double sign = (k % 2 == 0) ? 1.0 : -1.0;
		rep.bernoulli += sign * std::pow(2.0, 1.0 - 2.0 * k) * std::pow(M_PI, 1.0 - (double)k) *
		                 to_double(coef * bern) * c * std::pow(y1, (double)(1 + 2 * t - k)) *
		                 std::pow(vv, -(double)t);
		Rat pre = coef * bern * F.slot(t).coeff(Rat(0));
		if (k % 2) pre = -pre;
		Rat two(1);
		for (long i = 0; i < std::labs(2 * k - 1); ++i) two *= 2;
		pre /= (2 * k - 1 >= 0) ? two : Rat(1) / two;
		if (pre != 0)
			rep.atoms.push_back(rat_to_string(pre) + " * pi^" + std::to_string(1 - k) +
			                    " * v_e^" + std::to_string(1 + 2 * t - k) + " * <v,v>^" +
			                    std::to_string(-t));
	}
	// Phi_0 line (k = 0)
	if (k == 0) {
		Rat bracket = phi0_bracket(F);
		rep.phi0 = M_PI * vv / (12 * y1) * to_double(bracket);
		if (bracket != 0)
			rep.atoms.push_back(rat_to_string(bracket / 12) + " * pi * <v,v> / v_e");
	}
	return rep;
}

} // namespace oqm
