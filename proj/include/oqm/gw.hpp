#ifndef OQM_GW_HPP
#define OQM_GW_HPP

#include "oqm/lift.hpp"

#include <array>
#include <set>

namespace oqm {

// Enriques depth tuples f_g* (and the Fricke side), built from
// d/dG2 f_g = f_{g-1}: slot t carries f_{g-t}/(4^t t!).
DepthForm enriques_pair(long g, const Rat& trunc);
DepthForm enriques_pair_fricke(long g, const Rat& trunc);

// Gromov-Witten Hodge series of the Enriques surface, genus g >= 2, as a
// series over the lift frame U(2)+E8(-2) (keys are frame-independent):
//   F_g = 2 (-1)^{g-1} sum_{beta>0} Q^beta sum_{odd k | beta} k^{2g-3} omega_g(beta^2/2k^2)
OrthoSeries enriques_fg_lattice(long g, long heightBound);
// the same constant term via the theta lift (two independent pipelines)
OrthoSeries enriques_fg_lift_ct(long g, long heightBound);
// the full almost-holomorphic completion F_g^* = 2(-1)^{g-1} Lift(F_{f_g^*})
OrthoSeries enriques_fg_star(long g, long heightBound);

// 2 L[F_g^*] - R[F_{g-1}^*] in the lift frame; zero iff the holomorphic
// anomaly identity holds.
OrthoSeries enriques_hae_residual(long g, long heightBound);

// Borcherds-Enriques form as a truncated product over the positive cone of
// L = U + E8(-1); coefficient a(n) of eta(2t)^8/eta(t)^16.
OrthoSeries borcherds_phi4(long heightBound);
// independent oracle: same product expanded factor by factor (slow; small B)
OrthoSeries borcherds_phi4_direct(long heightBound);

// genus-1 series with a divisor insertion: 2 sum_{beta>0} (beta,lambda)_L
// Q^beta sum_{odd k | beta} omega_1(beta^2/2k^2); lambda in lattice coords.
OrthoSeries enriques_f1_insertion(const IVec& lambda, long heightBound);
// -(1/8) D_lambda Phi4 / Phi4
OrthoSeries f1_from_phi4(const IVec& lambda, long heightBound);

// ---- lattice-polarized K3 fibrations ----

struct K3Preset {
	std::string name;
	QExp phi;                  // scalar Noether-Lefschetz series (trivial coset)
	std::vector<IVec> gram;    // Gram of the polarization lattice L (d in L^dual)
	// (d,d)_{L^dual} = d g^{-1} d^T
};

K3Preset stu_preset(const Rat& trunc);

// N_{g,d} = (-1)^{g-1} sum_{k | gcd(d)} k^{2g-3} Psi_g[(d,d)/2k^2],
// Psi_g = phi * f_g^{kkv}
Rat k3_fiber_invariant(const K3Preset& preset, long g, const IVec& d);
// the "multiple cover" coefficient recovered by divisor-sum inversion
Rat k3_fiber_invariant_mc(const K3Preset& preset, long g, const IVec& d);

// ---- banana Calabi-Yau ----

struct BananaSeries {
	std::map<std::array<long, 3>, Rat> coef;
	std::vector<std::string> missing_support; // audited absent a(n) arguments
};

// F_0 = 12 sum_{d>0} sum_k k^{-3} a(d1d2+d1d3+d2d3-d1^2-d2^2-d3^2) Q^{kd}
BananaSeries banana_f0(long degreeBound);
QExp banana_a_series(const Rat& trunc); // 16/(theta3 theta2^4)

} // namespace oqm

#endif
