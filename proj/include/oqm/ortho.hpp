#ifndef OQM_ORTHO_HPP
#define OQM_ORTHO_HPP

#include "oqm/lattice.hpp"

#include <cstdint>
#include <functional>

namespace oqm {

// Polynomial in the formal variables u_1..u_n (u_j = nu_j / 2 pi i), sparse,
// keyed by packed 4-bit exponents. Degrees stay tiny (<= 2 depth).
struct NuPoly {
	std::vector<std::pair<uint64_t, Rat>> mono; // sorted by key

	static uint64_t mono_key(const std::vector<int>& exps);
	static long mono_degree(uint64_t key);
	static long mono_exp(uint64_t key, long j) { return (key >> (4 * j)) & 0xF; }

	bool is_zero() const { return mono.empty(); }
	long degree() const;
	Rat ct() const; // coefficient of the constant monomial

	static NuPoly constant(const Rat& c);
	static NuPoly var(long j); // u_j

	void add_mono(uint64_t key, const Rat& v);
	NuPoly operator+(const NuPoly& o) const;
	NuPoly operator-(const NuPoly& o) const;
	NuPoly operator*(const NuPoly& o) const;
	NuPoly operator*(const Rat& s) const;
	bool operator==(const NuPoly& o) const { return mono == o.mono; }

	NuPoly d_u(long j) const;     // partial derivative
	NuPoly mul_u(long j) const;   // multiply by u_j
	NuPoly select_degree(long m) const;
};

// Dense-indexed sparse tensor of NuPoly, rank s over dimension n.
struct Tensor {
	long n = 0, s = 0;
	std::vector<std::pair<uint32_t, NuPoly>> a; // sorted by flat index

	static uint32_t flat(const std::vector<long>& idx, long n);
	const NuPoly* find(uint32_t i) const;
	void add(uint32_t i, const NuPoly& v);
	bool is_zero() const { return a.empty(); }
	Tensor operator+(const Tensor& o) const;
	Tensor operator*(const Rat& s_) const;
};

// Tube-domain expansion of an orthogonal (quasi/almost-holomorphic) form:
// map from dual vectors (integer coordinates y, heights y0+y1 <= heightBound)
// to rank-s tensors of u-polynomials. The frame fixes the operator Gram.
struct OrthoSeries {
	LorentzFrame frame;
	long k = 0;          // weight
	long s = 0;          // rank
	long heightBound = 0;
	bool logarithmic = false; // informational flag
	std::map<IVec, Tensor> coef;

	long n() const { return frame.rank(); }
	static long height(const IVec& y) { return y[0] + y[1]; }

	Tensor& at(const IVec& y);
	void add(const IVec& y, uint32_t flatIdx, const NuPoly& v);
	void prune();
	bool is_zero() const;
	long depth() const;

	OrthoSeries operator+(const OrthoSeries& o) const;
	OrthoSeries operator-(const OrthoSeries& o) const;
	OrthoSeries operator*(const Rat& s_) const;
	bool operator==(const OrthoSeries& o) const;

	static OrthoSeries zero(const LorentzFrame& fr, long k, long s, long heightBound);
	static OrthoSeries constant(const LorentzFrame& fr, long k, const Rat& c, long heightBound);
};

// hatted raising operator R = (1/2 pi i) R_analytic: new slot appended last
OrthoSeries ortho_raise(const OrthoSeries& F);
// hatted lowering operator L = 2 pi i L_analytic
OrthoSeries ortho_lower(const OrthoSeries& F);
// constant-term map: u -> 0
OrthoSeries ortho_ct(const OrthoSeries& F);
// graded tensor product (rank adds, height truncation = min of the bounds)
OrthoSeries ortho_mul(const OrthoSeries& F, const OrthoSeries& G);

// insert a fixed vector (lattice-basis coordinates) into slot `slot`
OrthoSeries contract_slot(const OrthoSeries& F, long slot, const RVec& v);

// [L_lambda, R_mu] F - (k/2)<lambda,mu> F - (1/2) sum_m F(..,(mu^lambda)g_m,..)
OrthoSeries commutator_residual(const OrthoSeries& F, const RVec& lambda, const RVec& mu);

// Zemel operators: trace of the two new slots with g^{-1}
OrthoSeries zemel_raise(const OrthoSeries& F);
OrthoSeries zemel_lower(const OrthoSeries& F);
OrthoSeries trace_last_two(const OrthoSeries& F);

// scalar series inverse (height-graded Neumann; needs constant unit at 0)
OrthoSeries ortho_inverse(const OrthoSeries& F);

// rank-1 logarithmic derivative D(f)/f + k u of a scalar series
OrthoSeries log_derivative(const OrthoSeries& f);

// Serre derivative of F with respect to the divisor form fdiv of weight ell
OrthoSeries serre_derivative(const OrthoSeries& F, const OrthoSeries& fdiv, long ell);

// eps(f) = R^2 f / f - ((l+1)/l) Rf (x) Rf / f^2 + (1/2l) tr(Rf (x) Rf)/f^2 g
OrthoSeries eps_form(const OrthoSeries& f, long ell);

// u-polynomial of <u,u> for a frame
NuPoly uu_pairing(const LorentzFrame& fr);
// u(x) for a lattice vector given in dual coordinates is just x; for lattice
// coordinates v: u(v) = sum_a v_a u_a-dual... here: linear form sum_a c_a u_a
NuPoly u_linear(const RVec& coeffs);

} // namespace oqm

#endif
