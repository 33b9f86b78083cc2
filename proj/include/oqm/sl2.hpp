#ifndef OQM_SL2_HPP
#define OQM_SL2_HPP

#include "oqm/qexp.hpp"

namespace oqm {

// Almost-holomorphic SL2 form as a depth tuple: F = sum_t F^(t) (2 pi y)^{-t}.
struct DepthForm {
	Rat weight;              // half-integers allowed
	std::vector<QExp> comp;  // comp[t] = F^(t); depth = comp.size()-1

	DepthForm() : weight(0) {}
	DepthForm(Rat w, std::vector<QExp> comps) : weight(std::move(w)), comp(std::move(comps)) {
		if (comp.empty()) comp.emplace_back();
	}
	static DepthForm holomorphic(Rat w, QExp f) { return DepthForm(std::move(w), {std::move(f)}); }

	long depth() const;
	bool is_zero() const;
	void strip();            // drop vanishing top components
	const QExp& slot(long t) const;

	DepthForm operator+(const DepthForm& o) const;
	DepthForm operator-(const DepthForm& o) const;
	DepthForm operator*(const DepthForm& o) const;
	DepthForm operator*(const Rat& s) const;
	bool operator==(const DepthForm& o) const;
};

// Rational surrogates of the Maass operators:
//   lower = -2 pi L^Maass: (lower F)^(t) = (t+1) F^(t+1), weight -2
//   raise = -(1/4 pi) R^Maass: (raise F)^(t) = D F^(t) - ((k-t+1)/2) F^(t-1), weight +2
DepthForm maass_lower(const DepthForm& f);
DepthForm maass_raise(const DepthForm& f);

// Completion of G2: (G2, 1/4), i.e. G2 + 1/(8 pi y).
DepthForm g2_hat(const Rat& trunc);
// E2* as a depth tuple: (E2, -6).
DepthForm e2_star(const Rat& trunc);

// Unique holomorphic f_t with F = sum_t f_t (E2*)^t, solved from the top depth.
std::vector<QExp> e2star_decompose(const DepthForm& f);

// [ sum_t f_t E2^{t+1}/(t+1) ]_{q^0}; the caller supplies the outer prefactor.
Rat phi0_bracket(const DepthForm& f);

} // namespace oqm

#endif
