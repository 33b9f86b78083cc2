#include "oqm/weil.hpp"

#include <cmath>
#include <numeric>

namespace oqm {

long VVForm::depth() const {
	long d = 0;
	for (auto& f : comp) d = std::max(d, f.depth());
	return d;
}

bool VVForm::is_zero() const {
	for (auto& f : comp)
		if (!f.is_zero()) return false;
	return true;
}

VVForm VVForm::lowered() const {
	VVForm r = *this;
	r.kappa = kappa - 2;
	for (auto& f : r.comp) f = maass_lower(f);
	return r;
}

VVForm VVForm::operator*(const Rat& s) const {
	VVForm r = *this;
	for (auto& f : r.comp) f = f * s;
	return r;
}

VVForm gamma0p_induce(const DepthForm& f, const DepthForm& fFr, long p,
                      const EvenLattice& Npos, const Rat& kappa) {
	if (Npos.rank() > 0 && abs(Npos.det()) != 1)
		throw std::domain_error("gamma0p_induce: N must have level 1");
	Rat half = (kappa + Npos.rank()) / 2;
	if (!is_integer(half))
		throw std::domain_error("gamma0p_induce: kappa + rk N must be even");
	Rat ppow(1);
	{
		long e = to_long(half);
		for (long i = 0; i < std::labs(e); ++i) ppow *= p;
		if (e < 0) ppow = Rat(1) / ppow;
	}

	VVForm F;
	EvenLattice M = EvenLattice::dsum(EvenLattice::U(1), EvenLattice::U(p));
	if (Npos.rank() > 0) M = EvenLattice::dsum(M, Npos.rescaled(-p));
	M.name = "U+U(" + std::to_string(p) + ")+N(-" + std::to_string(p) + ")";
	F.M = M;
	F.disc = std::make_shared<DiscGroup>(disc_group(M));
	F.kappa = kappa;
	F.comp.resize(F.disc->size());

	long d = (long)f.comp.size() - 1;
	for (long idx = 0; idx < F.disc->size(); ++idx) {
		// exponents on this coset: n/p with n == p Q(gamma) mod p
		Rat pq = F.disc->Q_mod1(idx) * p;
		if (!is_integer(pq)) throw std::logic_error("gamma0p_induce: unexpected Q denominator");
		long res = to_long(pq) % p;

		std::vector<QExp> comps((size_t)d + 1);
		Rat pt(1); // p^t
		for (long t = 0; t <= d; ++t) {
			const QExp& slot = f.slot(t);
			QExp g;
			g.P = p; // exponents n/p, keys = n
			g.trunc = (slot.trunc == QExp::kExact) ? QExp::kExact
			                                       : slot.trunc / std::max(1L, slot.P);
			for (auto& [k, v] : slot.c) {
				if (k % slot.P) throw std::domain_error("gamma0p_induce: f must have integral exponents");
				long n = k / slot.P;
				long nm = ((n % p) + p) % p;
				if (nm != res) continue;
				g.c[n] = v * pt;
			}
			comps[t] = g;
			pt *= p;
		}
		DepthForm df(kappa, comps);
		if (idx == 0) {
			DepthForm fr = fFr * ppow;
			fr.weight = kappa;
			df = df + fr;
		}
		df.weight = kappa;
		F.comp[idx] = df;
	}
	return F;
}

bool coefficient_condition(const DepthForm& f, const DepthForm& fFr, long p, long n_max) {
	long d = (long)std::max(f.comp.size(), fFr.comp.size()) - 1;
	for (long t = 0; t <= d; ++t) {
		Rat kt = f.weight - 2 * t;
		Rat e = kt / 2 - 1;
		if (!is_integer(e))
			throw std::domain_error("coefficient_condition: kappa_t must be even");
		Rat pk(1);
		long ee = to_long(e);
		for (long i = 0; i < std::labs(ee); ++i) pk *= p;
		if (ee < 0) pk = Rat(1) / pk;
		const QExp& ct = fFr.slot(t);
		const QExp& dt = f.slot(t);
		if (ct.trunc != QExp::kExact && ct.trunc_exponent() < Rat(p * n_max + 1))
			throw std::domain_error("coefficient_condition: insufficient truncation (Fricke side)");
		if (dt.trunc != QExp::kExact && dt.trunc_exponent() < Rat(n_max + 1))
			throw std::domain_error("coefficient_condition: insufficient truncation");
		// negative exponents too: scan every stored key of the d side
		for (auto& [k, v] : dt.c) {
			long n = k / dt.P;
			if (n > n_max) break;
			if (ct.coeff(Rat(p * n)) + pk * v != 0) return false;
		}
		for (long n = 0; n <= n_max; ++n) {
			Rat lhs = ct.coeff(Rat(p * n)) + pk * dt.coeff(Rat(n));
			if (lhs != 0) return false;
		}
	}
	return true;
}

namespace {

Cplx unit(double turns) { return Cplx(std::cos(2 * M_PI * turns), std::sin(2 * M_PI * turns)); }

std::vector<std::vector<Cplx>> matmul(const std::vector<std::vector<Cplx>>& a,
                                      const std::vector<std::vector<Cplx>>& b) {
	long n = (long)a.size();
	std::vector<std::vector<Cplx>> r(n, std::vector<Cplx>(n, Cplx(0)));
	for (long i = 0; i < n; ++i)
		for (long k = 0; k < n; ++k) {
			if (a[i][k] == Cplx(0)) continue;
			for (long j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
		}
	return r;
}

double defect_from_identity(const std::vector<std::vector<Cplx>>& m, Cplx scale) {
	long n = (long)m.size();
	double worst = 0;
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) {
			Cplx expect = (i == j) ? scale : Cplx(0);
			worst = std::max(worst, std::abs(m[i][j] - expect));
		}
	return worst;
}

} // namespace

WeilMatrices weil_matrices(const EvenLattice& M) {
	// Odd rank is a genuine Mp2 representation; the matrices and the relations
	// are checked against the same central element either way.
	DiscGroup D = disc_group(M);
	auto [pos, neg] = M.signature();
	long sigma = pos - neg;
	long n = D.size();
	long rank = M.rank();

	// scale all representatives to integer vectors over a common denominator
	long den = 1;
	for (long i = 0; i < n; ++i)
		for (auto& c : D.representative(i))
			den = std::lcm(den, (long)c.get_den().get_si());
	std::vector<IVec> reps(n, IVec(rank));
	for (long i = 0; i < n; ++i) {
		RVec r = D.representative(i);
		for (long c = 0; c < rank; ++c) reps[i][c] = to_long(r[c] * den);
	}
	// gram * rep precomputed; pairings are then integer dot products / den^2
	std::vector<IVec> gr(n, IVec(rank, 0));
	for (long i = 0; i < n; ++i)
		for (long a = 0; a < rank; ++a)
			for (long b = 0; b < rank; ++b) gr[i][a] += M.gram[a][b] * reps[i][b];

	WeilMatrices W;
	W.dim = n;
	W.T.assign(n, std::vector<Cplx>(n, Cplx(0)));
	W.S.assign(n, std::vector<Cplx>(n, Cplx(0)));
	double d2 = (double)den * (double)den;
	for (long x = 0; x < n; ++x) {
		long q = 0;
		for (long a = 0; a < rank; ++a) q += reps[x][a] * gr[x][a];
		W.T[x][x] = unit((double)q / (2 * d2));
	}
	Cplx pre = unit(-sigma / 8.0) / std::sqrt((double)n);
	for (long x = 0; x < n; ++x)
		for (long y = 0; y < n; ++y) {
			long b = 0;
			for (long a = 0; a < rank; ++a) b += reps[x][a] * gr[y][a];
			W.S[x][y] = pre * unit(-(double)b / d2);
		}
	return W;
}

WeilCheckReport weil_check(const EvenLattice& M, const WeilMatrices& W) {
	WeilCheckReport rep;
	auto S2 = matmul(W.S, W.S);
	auto S4 = matmul(S2, S2);
	auto S8 = matmul(S4, S4);
	rep.defect_S8 = defect_from_identity(S8, Cplx(1));
	auto ST = matmul(W.S, W.T);
	auto ST2 = matmul(ST, ST);
	auto ST4 = matmul(ST2, ST2);
	auto ST6 = matmul(ST4, ST2);
	// (ST)^3 = S^2 in SL2, so (ST)^6 and S^4 both represent the same central
	// element: the identity for even rank, -id for odd rank.
	double sign = (M.rank() % 2 == 0) ? 1.0 : -1.0; // (-1)^{rk M}
	rep.defect_ST6 = defect_from_identity(ST6, Cplx(sign));
	rep.defect_S4 = defect_from_identity(S4, Cplx(sign));
	return rep;
}

double eigen_consistency(const VVForm& F, const WeilMatrices& W) {
	long n = F.cosets();
	if (W.dim != n) throw std::domain_error("eigen_consistency: dimension mismatch");
	const double q = std::exp(-2 * M_PI);
	std::vector<Cplx> v(n, Cplx(0));
	for (long i = 0; i < n; ++i) {
		double acc = 0, u = 1;
		for (size_t t = 0; t < F.comp[i].comp.size(); ++t) {
			acc += F.comp[i].comp[t].eval(q) * u;
			u /= 2 * M_PI; // (2 pi y)^{-t} at y = 1
		}
		v[i] = Cplx(acc);
	}
	if (!is_integer(F.kappa)) throw std::domain_error("eigen_consistency: kappa not integral");
	long kap = to_long(F.kappa);
	Cplx ik = std::pow(Cplx(0, 1), (double)-kap);
	double worst = 0;
	for (long i = 0; i < n; ++i) {
		Cplx acc(0);
		for (long j = 0; j < n; ++j) acc += std::conj(W.S[j][i]) * v[j];
		worst = std::max(worst, std::abs(v[i] - ik * acc));
	}
	return worst;
}

} // namespace oqm
