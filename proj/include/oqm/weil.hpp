#ifndef OQM_WEIL_HPP
#define OQM_WEIL_HPP

#include "oqm/lattice.hpp"
#include "oqm/sl2.hpp"

#include <complex>
#include <memory>

namespace oqm {

// Vector-valued almost-holomorphic form for the Weil representation of M:
// one depth tuple per coset of M'/M. Exponents n satisfy n == Q(gamma) mod 1.
struct VVForm {
	EvenLattice M;
	std::shared_ptr<DiscGroup> disc;
	Rat kappa;
	std::vector<DepthForm> comp;

	long cosets() const { return disc ? disc->size() : 1; }
	long depth() const;
	bool is_zero() const;
	VVForm lowered() const;  // slot-wise maass_lower
	VVForm operator*(const Rat& s) const;
};

// Gamma_0(p) induction (M = U + U(p) + N(-p), N positive definite of level 1):
// coset 0 carries p^{(kappa+rk N)/2} fFr plus the g_0 branch; coset gamma
// carries p^t-scaled slot-t coefficients d_n at q^{n/p} for n == p Q(gamma) (p).
VVForm gamma0p_induce(const DepthForm& f, const DepthForm& fFr, long p,
                      const EvenLattice& Npos, const Rat& kappa);

// c_{pn} + p^{kappa_t/2 - 1} d_n == 0 slot-wise for n <= n_max (kappa_t = kappa-2t).
bool coefficient_condition(const DepthForm& f, const DepthForm& fFr, long p, long n_max);

using Cplx = std::complex<double>;

struct WeilMatrices {
	long dim = 0;
	std::vector<std::vector<Cplx>> S, T;
};

struct WeilCheckReport {
	double defect_S8 = 0, defect_ST6 = 0, defect_S4 = 0;
	double max_defect() const { return std::max({defect_S8, defect_ST6, defect_S4}); }
};

WeilMatrices weil_matrices(const EvenLattice& M);
WeilCheckReport weil_check(const EvenLattice& M, const WeilMatrices& W);

// || F(i) - i^{-kappa} rho(S)^{-1} F(i) ||_inf, the full depth tuple evaluated
// at tau = i (y = 1).
double eigen_consistency(const VVForm& F, const WeilMatrices& W);

} // namespace oqm

#endif
