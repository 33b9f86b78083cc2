#ifndef OQM_LATTICE_HPP
#define OQM_LATTICE_HPP

#include "oqm/rat.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace oqm {

using IVec = std::vector<long>;
using RVec = std::vector<Rat>;

// Even integral lattice: symmetric Gram matrix with even diagonal.
struct EvenLattice {
	std::vector<IVec> gram;
	std::string name;

	long rank() const { return (long)gram.size(); }
	void validate() const;

	long pair(const IVec& a, const IVec& b) const;
	Rat pair_q(const RVec& a, const RVec& b) const;
	Int det() const;
	std::pair<int, int> signature() const; // (pos, neg)

	// Inverse Gram (rational), cached by the caller as needed.
	std::vector<RVec> gram_inverse() const;

	EvenLattice rescaled(long r) const;

	static EvenLattice U(long m = 1);
	static EvenLattice A1(long m);      // rank 1, Gram (2m)
	static EvenLattice E8(long s = 1);  // E8(s), s may be negative
	static EvenLattice dsum(const EvenLattice& a, const EvenLattice& b);
};

// Discriminant group L'/L with Q mod 1 and the bilinear form mod 1.
struct DiscGroup {
	EvenLattice L;
	std::vector<long> divisors;       // elementary divisors d_i > 1
	std::vector<RVec> gens;           // generators in L-basis coordinates
	long order = 1;

	// element = exponents (k_i mod d_i); indexing is mixed-radix
	long size() const { return order; }
	std::vector<long> unrank(long idx) const;
	long rank_of(const std::vector<long>& ks) const;
	RVec representative(long idx) const;     // coordinates in L-basis, in [0,1)
	Rat Q_mod1(long idx) const;              // in [0,1)
	Rat B_mod1(long i, long j) const;        // in [0,1)
	long neg(long idx) const;                // index of -gamma
	long add(long i, long j) const;

	// coset of a dual vector given by integer coordinates in the dual basis
	long coset_of_dual(const IVec& y) const;
};

DiscGroup disc_group(const EvenLattice& L);

// Eichler transvection (v ^ w) x = (w,x) v - (v,x) w.
RVec eichler(const EvenLattice& L, const RVec& v, const RVec& w, const RVec& x);

// Vector in the closed positive cone, stored by integer coordinates in the
// dual basis (y_i = (beta, e_i)); norm and height cached.
struct ConeVector {
	IVec y;
	Rat norm;    // (beta, beta)
	long height; // (beta, w0)

	bool operator<(const ConeVector& o) const {
		if (height != o.height) return height < o.height;
		return y < o.y;
	}
};

// All x in Z^rank with x^T G x <= bound for a positive-definite rational G.
std::vector<IVec> enumerate_ball(const std::vector<RVec>& G, const Rat& bound);

// Lorentzian frame L = U1(N) + K(-s), basis ordered (e, f, K-basis).
struct LorentzFrame {
	EvenLattice L;   // full Lorentzian lattice, signature (1, n-1)
	long N = 1;      // e.f = N
	EvenLattice K;   // positive-definite part (unscaled)
	long s = 1;      // K enters as K(-s)
	std::string name;

	long rank() const { return 2 + K.rank(); }
	// dual-basis-coordinate pairing with a lattice vector x: (beta, x) = y.x
	Rat norm_dual(const IVec& y) const;   // y^T A^{-1} y
	Rat norm_lattice(const IVec& x) const;
	IVec to_dual_coords(const IVec& x) const; // y = A x

	static LorentzFrame UU();                   // U (N=1, K=0)
	static LorentzFrame U_scaled(long N);       // U(N)
	static LorentzFrame U_E8m1();               // U + E8(-1)
	static LorentzFrame U2_E8m2();              // U(2) + E8(-2)  (Enriques lift frame)
	static LorentzFrame U_with_K(long N, const EvenLattice& Kpos, long s, std::string name);
};

// beta in the closed positive cone (w0 = e + f side): y_e, y_f >= 0 for dual
// vectors, heights (beta,w0) in [0, heightBound], norms >= normFloor.
// Deterministic ordering by (height, lex). Cached per frame/arguments.
const std::vector<ConeVector>& enumerate_cone(const LorentzFrame& fr, long heightBound,
                                              bool dual, const Rat& normFloor = Rat(0));

// Largest delta >= 1 with y/delta still an integer vector (dual divisibility).
long dual_divisibility(const IVec& y);

} // namespace oqm

#endif
