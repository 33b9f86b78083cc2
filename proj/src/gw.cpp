#include "oqm/gw.hpp"

#include <numeric>

namespace oqm {

DepthForm enriques_pair(long g, const Rat& trunc) {
	std::vector<QExp> comps;
	Rat denom(1);
	for (long t = 0; t < g; ++t) {
		if (t > 0) denom *= Rat(4) * Rat(t);
		comps.push_back(theta_quotient_coeff(g - t, ThetaVariant::FG, trunc) * (Rat(1) / denom));
	}
	return DepthForm(Rat(2 * g - 6), comps);
}

DepthForm enriques_pair_fricke(long g, const Rat& trunc) {
	std::vector<QExp> comps;
	Rat denom(1);
	for (long t = 0; t < g; ++t) {
		if (t > 0) denom *= Rat(4) * Rat(t);
		comps.push_back(theta_quotient_coeff(g - t, ThetaVariant::FG_TILDE, trunc) * (Rat(1) / denom));
	}
	return DepthForm(Rat(2 * g - 6), comps);
}

namespace {

// omega_g(n) coefficients, cached per (g, trunc-needed)
QExp omega_series(long g, long nMax) {
	return theta_quotient_coeff(g, ThetaVariant::FG, Rat(nMax + 1));
}

Rat pow_rat(long base, long e) {
	Rat r(1);
	for (long i = 0; i < std::labs(e); ++i) r *= base;
	if (e < 0) r = Rat(1) / r;
	return r;
}

} // namespace

OrthoSeries enriques_fg_lattice(long g, long heightBound) {
	LorentzFrame fr = LorentzFrame::U2_E8m2();
	// beta^2_L/2 equals the lift-frame dual norm; bounded by (B/2)^2
	long nMax = (heightBound / 2 + 1) * (heightBound / 2 + 1) + 1;
	QExp om = omega_series(g, nMax);
	OrthoSeries out = OrthoSeries::zero(fr, 2 * g - 2, 0, heightBound);
	Rat sign = (g % 2 == 0) ? Rat(-2) : Rat(2); // 2 (-1)^{g-1}
	auto& cone = enumerate_cone(fr, heightBound, /*dual=*/true);
	for (auto& cv : cone) {
		if (cv.height == 0) continue;
		long div = dual_divisibility(cv.y);
		Rat acc(0);
		for (long k = 1; k <= div; k += 2) {
			if (div % k) continue;
			Rat arg = cv.norm / Rat(k * k);
			if (!is_integer(arg)) continue;
			acc += pow_rat(k, 2 * g - 3) * om.coeff(arg);
		}
		acc *= sign;
		if (acc != 0) out.add(cv.y, 0, NuPoly::constant(acc));
	}
	out.prune();
	return out;
}

OrthoSeries enriques_fg_lift_ct(long g, long heightBound) {
	long pn = (heightBound / 2 + 1) * (heightBound / 2 + 1) * 2 + 4;
	Gamma0pCoeffs C(enriques_pair(g, Rat(pn)), enriques_pair_fricke(g, Rat(pn)), 2, 8);
	LorentzFrame fr = LorentzFrame::U2_E8m2();
	OrthoSeries lifted = lift_ct(C, fr, heightBound);
	Rat sign = (g % 2 == 0) ? Rat(-2) : Rat(2);
	return lifted * sign;
}

OrthoSeries enriques_fg_star(long g, long heightBound) {
	long pn = (heightBound / 2 + 1) * (heightBound / 2 + 1) * 2 + 4;
	Gamma0pCoeffs C(enriques_pair(g, Rat(pn)), enriques_pair_fricke(g, Rat(pn)), 2, 8);
	if (!coefficient_condition(C.f, C.fFr, 2, std::min(20L, pn / 2 - 1)))
		throw std::logic_error("enriques_fg_star: coefficient condition failed");
	LorentzFrame fr = LorentzFrame::U2_E8m2();
	OrthoSeries lifted = lift_ah(C, fr, heightBound);
	Rat sign = (g % 2 == 0) ? Rat(-2) : Rat(2);
	return lifted * sign;
}

OrthoSeries enriques_hae_residual(long g, long heightBound) {
	if (g < 3) throw std::domain_error("enriques_hae_residual: g >= 3 required");
	OrthoSeries fg = enriques_fg_star(g, heightBound);
	OrthoSeries fgm1 = enriques_fg_star(g - 1, heightBound);
	OrthoSeries lhs = ortho_lower(fg) * Rat(2);
	OrthoSeries rhs = ortho_raise(fgm1);
	lhs.k = rhs.k;
	return lhs - rhs;
}

namespace {

QExp phi4_exponent_series(long heightBound) {
	long nMax = (heightBound / 2 + 1) * (heightBound / 2 + 1) + 1;
	return eta_quotient({{2, 8}, {1, -16}}, Rat(nMax + 1));
}

} // namespace

OrthoSeries borcherds_phi4(long heightBound) {
	LorentzFrame fr = LorentzFrame::U_E8m1();
	QExp a = phi4_exponent_series(heightBound);
	// log Phi4 = -16 sum_{beta>0} a(beta^2/2) sum_{odd m} Q^{m beta} / m
	OrthoSeries S = OrthoSeries::zero(fr, 0, 0, heightBound);
	auto& cone = enumerate_cone(fr, heightBound, /*dual=*/true);
	for (auto& cv : cone) {
		if (cv.height == 0) continue;
		Rat n2 = cv.norm / 2;
		if (!is_integer(n2)) continue;
		Rat av = a.coeff(n2);
		if (av == 0) continue;
		for (long m = 1; m * cv.height <= heightBound; m += 2) {
			IVec key(cv.y.size());
			for (size_t i = 0; i < key.size(); ++i) key[i] = m * cv.y[i];
			S.add(key, 0, NuPoly::constant(Rat(-16) * av / Rat(m)));
		}
	}
	S.prune();
	// exp by height grading
	OrthoSeries out = OrthoSeries::constant(fr, 4, Rat(1), heightBound);
	OrthoSeries P = OrthoSeries::constant(fr, 0, Rat(1), heightBound);
	Rat invfact(1);
	for (long j = 1; j <= heightBound; ++j) {
		P = ortho_mul(P, S);
		P.k = 0;
		if (P.is_zero()) break;
		invfact /= j;
		out = out + P * invfact;
	}
	out.k = 4;
	return out;
}

OrthoSeries borcherds_phi4_direct(long heightBound) {
	LorentzFrame fr = LorentzFrame::U_E8m1();
	QExp a = phi4_exponent_series(heightBound);
	OrthoSeries out = OrthoSeries::constant(fr, 4, Rat(1), heightBound);
	auto& cone = enumerate_cone(fr, heightBound, /*dual=*/true);
	for (auto& cv : cone) {
		if (cv.height == 0) continue;
		Rat n2 = cv.norm / 2;
		if (!is_integer(n2)) continue;
		Rat av = a.coeff(n2);
		if (av == 0) continue;
		if (!is_integer(Rat(8) * av)) throw std::logic_error("phi4: non-integral exponent");
		long e = to_long(Rat(8) * av);
		// ((1-x)/(1+x))^e per beta, truncated in powers of Q^beta
		long kmax = heightBound / cv.height;
		std::vector<Rat> pw(kmax + 1, Rat(0));
		// (1-x)^e (1+x)^{-e} = sum_j C(e,j)(-x)^j * sum_i C(-e,i) x^i
		for (long j = 0; j <= kmax; ++j) {
			Rat cj = binomial(Rat(e), j);
			if ((j % 2)) cj = -cj;
			for (long i = 0; i + j <= kmax; ++i)
				pw[i + j] += cj * binomial(Rat(-e), i);
		}
		OrthoSeries factor = OrthoSeries::zero(fr, 0, 0, heightBound);
		for (long m = 0; m <= kmax; ++m) {
			if (pw[m] == 0) continue;
			IVec key(cv.y.size());
			for (size_t i = 0; i < key.size(); ++i) key[i] = m * cv.y[i];
			factor.add(key, 0, NuPoly::constant(pw[m]));
		}
		out = ortho_mul(out, factor);
		out.k = 4;
	}
	return out;
}

OrthoSeries enriques_f1_insertion(const IVec& lambda, long heightBound) {
	LorentzFrame fr = LorentzFrame::U_E8m1();
	long nMax = (heightBound / 2 + 1) * (heightBound / 2 + 1) + 1;
	QExp om = omega_series(1, nMax);
	OrthoSeries out = OrthoSeries::zero(fr, 1, 0, heightBound);
	auto& cone = enumerate_cone(fr, heightBound, /*dual=*/true);
	for (auto& cv : cone) {
		if (cv.height == 0) continue;
		long div = dual_divisibility(cv.y);
		// D_lambda multiplies Q^beta by (beta, lambda)_L = y . lambda
		Rat blam(0);
		for (size_t i = 0; i < cv.y.size(); ++i) blam += Rat(cv.y[i]) * Rat(lambda[i]);
		if (blam == 0) continue;
		Rat acc(0);
		for (long k = 1; k <= div; k += 2) {
			if (div % k) continue;
			Rat arg = cv.norm / Rat(2 * k * k);
			if (!is_integer(arg)) continue;
			acc += om.coeff(arg) / Rat(k);
		}
		acc *= Rat(2) * blam;
		if (acc != 0) out.add(cv.y, 0, NuPoly::constant(acc));
	}
	out.prune();
	return out;
}

OrthoSeries f1_from_phi4(const IVec& lambda, long heightBound) {
	OrthoSeries phi4 = borcherds_phi4(heightBound);
	OrthoSeries dphi = OrthoSeries::zero(phi4.frame, 5, 0, heightBound);
	for (auto& [y, T] : phi4.coef) {
		Rat blam(0);
		for (size_t i = 0; i < y.size(); ++i) blam += Rat(y[i]) * Rat(lambda[i]);
		if (blam == 0) continue;
		const NuPoly* p = T.find(0);
		if (p) dphi.add(y, 0, *p * blam);
	}
	OrthoSeries out = ortho_mul(dphi, ortho_inverse(phi4)) * rat(-1, 8);
	out.k = 1;
	return out;
}

K3Preset stu_preset(const Rat& trunc) {
	K3Preset p;
	p.name = "STU";
	p.phi = eisenstein_E(4, trunc) * eisenstein_E(6, trunc) * Rat(-2); // -2 E10
	p.gram = {{0, 1}, {1, 0}}; // U polarization
	return p;
}

namespace {

Rat dual_norm_half(const K3Preset& preset, const IVec& d) {
	// (d, d)_{L^dual}/2 = d g^{-1} d^T / 2
	EvenLattice L{preset.gram, preset.name};
	auto inv = L.gram_inverse();
	Rat acc(0);
	for (size_t i = 0; i < d.size(); ++i)
		for (size_t j = 0; j < d.size(); ++j) acc += Rat(d[i]) * inv[i][j] * Rat(d[j]);
	return acc / 2;
}

QExp psi_series(const K3Preset& preset, long g, const Rat& trunc) {
	QExp fk = theta_quotient_coeff(g, ThetaVariant::KKV, trunc + 2);
	return (preset.phi * fk).truncated(trunc);
}

} // namespace

Rat k3_fiber_invariant_mc(const K3Preset& preset, long g, const IVec& d) {
	Rat n = dual_norm_half(preset, d);
	QExp psi = psi_series(preset, g, n + 2);
	Rat sign = (g % 2 == 0) ? Rat(-1) : Rat(1);
	return sign * psi.coeff(n);
}

Rat k3_fiber_invariant(const K3Preset& preset, long g, const IVec& d) {
	long gcd = 0;
	for (long v : d) gcd = std::gcd(gcd, std::labs(v));
	if (gcd == 0) throw std::domain_error("k3_fiber_invariant: d = 0");
	Rat acc(0);
	for (long k = 1; k <= gcd; ++k) {
		if (gcd % k) continue;
		IVec dk(d.size());
		for (size_t i = 0; i < d.size(); ++i) dk[i] = d[i] / k;
		acc += pow_rat(k, 2 * g - 3) * k3_fiber_invariant_mc(preset, g, dk);
	}
	return acc;
}

QExp banana_a_series(const Rat& trunc) {
	QExp t3 = theta3(trunc + 1);
	QExp t2 = theta2(trunc + 1);
	return ((t3 * t2.pow(4)).inverse() * Rat(16)).truncated(trunc);
}

BananaSeries banana_f0(long degreeBound) {
	BananaSeries out;
	QExp a = banana_a_series(Rat(degreeBound * degreeBound + 2));
	std::set<std::string> missing;
	for (long D1 = 0; D1 <= degreeBound; ++D1)
		for (long D2 = 0; D2 <= degreeBound; ++D2)
			for (long D3 = 0; D3 <= degreeBound; ++D3) {
				if (D1 == 0 && D2 == 0 && D3 == 0) continue;
				long g = std::gcd(std::gcd(D1, D2), D3);
				Rat acc(0);
				for (long k = 1; k <= g; ++k) {
					if (g % k) continue;
					long d1 = D1 / k, d2 = D2 / k, d3 = D3 / k;
					long arg = d1 * d2 + d1 * d3 + d2 * d3 - d1 * d1 - d2 * d2 - d3 * d3;
					Rat av = a.coeff(Rat(arg));
					if (av == 0 && arg >= 0) missing.insert(std::to_string(arg));
					acc += Rat(12) * av / Rat(k * k * k);
				}
				if (acc != 0) out.coef[{D1, D2, D3}] = acc;
			}
	out.missing_support.assign(missing.begin(), missing.end());
	return out;
}

} // namespace oqm
