#ifndef OQM_JACOBI_HPP
#define OQM_JACOBI_HPP

#include "oqm/ortho.hpp"

namespace oqm {

// Fourier-Jacobi slice of an OrthoSeries along the distinguished hyperbolic
// direction of its frame: index m, weight k + wt(v), entries keyed by
// (n, alpha) with a single formal variable u (the tau-direction u after the
// FJ limit u_omega = u_z = 0).
struct JacobiSlice {
	long m = 0;
	long weight = 0;
	long uVar = 1; // which frame variable survived as u
	// key: (n, alpha-coords); value: polynomial in u (stored as NuPoly in uVar)
	std::map<std::pair<long, IVec>, NuPoly> coef;

	bool is_zero() const;
	bool operator==(const JacobiSlice& o) const { return m == o.m && coef == o.coef; }
	JacobiSlice operator-(const JacobiSlice& o) const;
	JacobiSlice du() const; // d/du on every entry
};

// Insertion vectors for slices: e1, f1 (the U1-basis) or a K-part vector,
// given in lattice-basis coordinates of the frame.
struct FJInsertion {
	enum Kind { E1, F1, KVEC } kind = KVEC;
	RVec v; // lattice coordinates (used for KVEC; E1/F1 are canonical)
};

FJInsertion fj_e1(const LorentzFrame& fr);
FJInsertion fj_f1(const LorentzFrame& fr);
FJInsertion fj_kvec(const LorentzFrame& fr, const RVec& kpart);

// Slice at index m with slot insertions v (coefficient level, alpha = 0 twist).
JacobiSlice fj_slice(const OrthoSeries& F, long m, const std::vector<FJInsertion>& v);

// residual of d/du fj(F, m, v) - 2 * fj(L_gw F, m, v + e1); the operator L is
// applied with the gw-scaled gram when `gwScale` (= frame rescale r) divides
// the stored frame. Returns the residual slice (zero iff compatible).
JacobiSlice fj_lower_residual(const OrthoSeries& F, long m, const std::vector<FJInsertion>& v);

// residual of the xi_mu identity: twist-derivative rule vs the generic
// Eichler transvection (mu in K-part lattice coordinates).
JacobiSlice fj_xi_residual(const OrthoSeries& F, long m, const std::vector<FJInsertion>& v,
                           const RVec& mu);

} // namespace oqm

#endif
