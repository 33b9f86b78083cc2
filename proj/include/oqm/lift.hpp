#ifndef OQM_LIFT_HPP
#define OQM_LIFT_HPP

#include "oqm/ortho.hpp"
#include "oqm/weil.hpp"

#include <memory>
#include <string>
#include <vector>

namespace oqm {

// Coefficient oracle c^{(t)}(mu, mu^2/2) feeding the lift expansion engines.
struct LiftCoeffs {
	long k = 0; // orthogonal weight
	long d = 0; // depth

	virtual ~LiftCoeffs() = default;
	// mu given by dual coordinates y (nonzero); n = mu^2/2
	virtual Rat coeff(const IVec& y, const Rat& n, long t) const = 0;
	virtual Rat c00(long t) const = 0;
	virtual std::shared_ptr<LiftCoeffs> lowered() const = 0;
	// throw when the input truncation cannot serve exponents up to maxExp
	virtual void ensure_exponents(const Rat& maxExp) const = 0;
	// constant vector W_a of the k = 0 bottom (see notes in lift.cpp)
	virtual RVec weyl_constant(const LorentzFrame& fr) const {
		return RVec(fr.rank(), Rat(0));
	}
};

// Level-1 input on M = U + U: single coset, coefficients straight off a
// depth tuple. weight k = kappa (n = 2).
struct TrivialLevelCoeffs : LiftCoeffs {
	DepthForm F;
	explicit TrivialLevelCoeffs(DepthForm f);
	Rat coeff(const IVec& y, const Rat& n, long t) const override;
	Rat c00(long t) const override;
	std::shared_ptr<LiftCoeffs> lowered() const override;
	RVec weyl_constant(const LorentzFrame& fr) const override;
	void ensure_exponents(const Rat& maxExp) const override;
};

// Gamma_0(p) pipeline on M = U + U(p) + N(-p): the pair (f, fFr) with the
// induced vector-valued coefficients looked up implicitly.
struct Gamma0pCoeffs : LiftCoeffs {
	DepthForm f, fFr;
	long p = 2;
	long rkN = 0;
	Rat scale = Rat(1);
	Gamma0pCoeffs(DepthForm f_, DepthForm fFr_, long p_, long rkN_, Rat scale_ = Rat(1));
	Rat prefactor() const; // p^{(kappa + rkN)/2}
	Rat coeff(const IVec& y, const Rat& n, long t) const override;
	Rat c00(long t) const override;
	std::shared_ptr<LiftCoeffs> lowered() const override;
	void ensure_exponents(const Rat& maxExp) const override;
};

// Constant-term lift: 1/2 zeta(1-k) c^{(0)}(0,0) + sum_{mu>0} c^{(0)}(mu,mu^2/2)
// sum_delta delta^{k-1} Q^{delta mu}. Requires k >= 1.
OrthoSeries lift_ct(const LiftCoeffs& C, const LorentzFrame& fr, long heightBound);

// Almost-holomorphic lift under the gate k >= 2d: constant term as above, the
// u-parts reconstructed from L[Lift f] = -R[Lift(L^Maass-surrogate f)]
// depth-recursively. Exactness is asserted (lower(G) == H).
OrthoSeries lift_ah(const LiftCoeffs& C, const LorentzFrame& fr, long heightBound);

// rank-1 R[Lift(F_0)] for a depth-0 weight-(1 - n/2) input (k = 0):
// main-part derivative - (c00/2) u + W.
OrthoSeries raise_of_k0_lift(const LiftCoeffs& C, const LorentzFrame& fr, long heightBound);

// Numeric evaluation of the theta-lift expansion on U + U (K = 0), all term
// families reported separately.
struct LiftReport {
	double main_pos = 0;      // mu > 0 family
	double main_neg = 0;      // mu < 0 family
	double zeta_tower = 0;    // t >= k
	double zeta_sub = 0;      // t < k/2
	double digamma = 0;       // even k > 0
	double euler_log = 0;     // k = 0 gamma/log line
	double bernoulli = 0;     // B_{2+2t-k} line
	double phi0 = 0;          // k = 0 constant-term integral
	// exact symbolic atoms of the non-series families (rational coefficients
	// with tagged pi / gamma_E / log / zeta symbols), for auditing
	std::vector<std::string> atoms;
	double total() const {
		return main_pos + main_neg + zeta_tower + zeta_sub + digamma + euler_log +
		       bernoulli + phi0;
	}
};

// F: trivial-level depth tuple on M = U+U, z = (z1, z2) upper half plane.
LiftReport lift_report_uu(const DepthForm& F, long k, Cplx z1, Cplx z2);

} // namespace oqm

#endif
