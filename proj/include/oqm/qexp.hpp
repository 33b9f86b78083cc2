#ifndef OQM_QEXP_HPP
#define OQM_QEXP_HPP

#include "oqm/rat.hpp"

#include <map>
#include <utility>

namespace oqm {

// Truncated Laurent q-expansion with exponents in (1/P)Z and Rat coefficients.
// Keys are exponents scaled by P. Coefficients are stored for keys < trunc
// (also scaled by P); trunc == kExact means the series is known exactly.
struct QExp {
	static constexpr long kExact = (1L << 60);

	long P = 1;
	long trunc = kExact;
	std::map<long, Rat> c;

	QExp() = default;
	explicit QExp(const Rat& constant, long trunc_ = kExact) : trunc(trunc_) {
		if (constant != 0) c[0] = constant;
	}

	bool is_zero() const { return c.empty(); }
	// Pole order (smallest stored exponent, scaled by P); 0 for the zero series.
	long ord() const { return c.empty() ? 0 : c.begin()->first; }

	Rat coeff(const Rat& exponent) const;
	void set(const Rat& exponent, const Rat& value);
	void add_to(const Rat& exponent, const Rat& value);
	void prune();

	// Exponent bound below which coefficients are reliable, as a Rat.
	Rat trunc_exponent() const { return trunc == kExact ? Rat(kExact) : rat(trunc, P); }

	QExp rekeyed(long newP) const;
	QExp truncated(const Rat& newTrunc) const;

	QExp operator-() const;
	QExp operator+(const QExp& o) const;
	QExp operator-(const QExp& o) const;
	QExp operator*(const QExp& o) const;
	QExp operator*(const Rat& s) const;
	QExp& operator+=(const QExp& o) { *this = *this + o; return *this; }
	QExp& operator*=(const QExp& o) { *this = *this * o; return *this; }
	bool operator==(const QExp& o) const;

	QExp inverse() const;
	QExp pow(long e) const;

	// D = q d/dq: multiplies the q^n coefficient by n.
	QExp derivative() const;

	// Substitute q -> q^m (exponent scaling).
	QExp scale_exponents(long m) const;

	double eval(double q) const; // numeric, needs ord() >= some finite value
};

QExp qexp_zero(long P, const Rat& trunc);

// Building blocks. `trunc` is the exponent bound (coefficients < trunc).
QExp eta_quotient(const std::vector<std::pair<long, long>>& spec, const Rat& trunc);
QExp eisenstein_G(long k, const Rat& trunc);   // -B_k/2k + sum sigma_{k-1} q^n
QExp eisenstein_E(long k, const Rat& trunc);   // normalized, constant 1
QExp theta2(const Rat& trunc);                 // sum_{n in Z+1/2} q^{n^2/2}
QExp theta3(const Rat& trunc);                 // sum_{n in Z} q^{n^2/2}
QExp delta_cusp(const Rat& trunc);             // eta(tau)^24
QExp e10_over_delta(const Rat& trunc);
QExp j_invariant(const Rat& trunc);

// Polynomial in z with QExp coefficients, truncated above z^zorder.
struct ZQExp {
	long zorder = 0;
	std::vector<QExp> comp; // comp[i] = coefficient of z^i, size zorder+1

	explicit ZQExp(long zo = 0) : zorder(zo), comp(zo + 1) {}
	ZQExp operator+(const ZQExp& o) const;
	ZQExp operator*(const ZQExp& o) const;
	ZQExp& operator*=(const ZQExp& o) { *this = *this * o; return *this; }
};

ZQExp zq_exp(const ZQExp& s); // exp of a series with zero z^0 and z^1 parts

enum class ThetaVariant { FG, FG_TILDE, KKV };

// z^{2g-2} coefficients of the theta quotients of the Enriques / KKV series.
QExp theta_quotient_coeff(long g, ThetaVariant variant, const Rat& trunc);

} // namespace oqm

#endif
