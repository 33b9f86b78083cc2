#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oqm/weil.hpp"

using namespace oqm;

namespace {

DepthForm enriques_pair_f(long g, const Rat& trunc) {
	std::vector<QExp> comps;
	Rat denom(1);
	for (long t = 0; t < g; ++t) {
		if (t > 0) denom *= Rat(4) * Rat(t);
		comps.push_back(theta_quotient_coeff(g - t, ThetaVariant::FG, trunc) * (Rat(1) / denom));
	}
	return DepthForm(Rat(2 * g - 6), comps);
}

DepthForm enriques_pair_fFr(long g, const Rat& trunc) {
	std::vector<QExp> comps;
	Rat denom(1);
	for (long t = 0; t < g; ++t) {
		if (t > 0) denom *= Rat(4) * Rat(t);
		comps.push_back(theta_quotient_coeff(g - t, ThetaVariant::FG_TILDE, trunc) * (Rat(1) / denom));
	}
	return DepthForm(Rat(2 * g - 6), comps);
}

} // namespace

TEST_CASE("coefficient condition for the Enriques pairs") {
	// c_{2n} + 2^{g-4} d_n = 0 with kappa = 2g-6
	for (long g = 2; g <= 3; ++g) {
		DepthForm f = enriques_pair_f(g, Rat(44));
		DepthForm fFr = enriques_pair_fFr(g, Rat(44));
		CHECK(coefficient_condition(f, fFr, 2, 20));
	}
	// zero forms trivially satisfy it
	DepthForm z(Rat(2), {QExp(Rat(0), 100)});
	CHECK(coefficient_condition(z, z, 2, 5));
	// a level-1 Eisenstein series regarded in Gamma_0(2) has nonzero trace:
	// G4 is Fricke-invariant up to 2^{-kappa/2}... use (G4, G4-scaled) directly
	QExp g4 = eisenstein_G(4, Rat(44));
	DepthForm e4(Rat(4), {g4});
	// Fricke involute of G4(tau) is 2^{-2} tau^{-4} G4(-1/2tau)|... for level 1
	// G4 in Gamma_0(2): G4|Fr = 2^{-2} G4; either way the condition fails:
	CHECK_FALSE(coefficient_condition(e4, e4 * rat(1, 4), 2, 8));
}

TEST_CASE("gamma0p induction structure for the Enriques input") {
	long g = 2;
	Rat T(20);
	DepthForm f = enriques_pair_f(g, T);
	DepthForm fFr = enriques_pair_fFr(g, T);
	VVForm F = gamma0p_induce(f, fFr, 2, EvenLattice::E8(), Rat(2 * g - 6));
	CHECK(F.cosets() == 1024); // |M'/M| = 2^10
	CHECK(F.depth() == g - 1);

	// coset 0 carries 2^{(kappa+8)/2} fFr plus the even-exponent part of f at q^{n/2}
	Rat pref(1); // 2^{(2g-6+8)/2} = 2^{g+1}
	for (long i = 0; i < g + 1; ++i) pref *= 2;
	// its constant term: pref * c_0 + d_0 (n = 0 contributes from the g_0 branch)
	Rat expect_ct = pref * fFr.slot(0).coeff(Rat(0)) + f.slot(0).coeff(Rat(0));
	CHECK(F.comp[0].slot(0).coeff(Rat(0)) == expect_ct);

	// lowering compatibility: maass_lower(F) == p * gamma0p_induce(Lf, LfFr)
	VVForm LF = F.lowered();
	VVForm expect = gamma0p_induce(maass_lower(f), maass_lower(fFr), 2, EvenLattice::E8(),
	                               Rat(2 * g - 6) - 2) * Rat(2);
	REQUIRE(LF.cosets() == expect.cosets());
	for (long i = 0; i < LF.cosets(); ++i)
		CHECK(LF.comp[i] == expect.comp[i]);
}

TEST_CASE("gamma0p induction of zero is zero") {
	DepthForm z(Rat(-4), {QExp(Rat(0), 10)});
	VVForm F = gamma0p_induce(z, z, 2, EvenLattice::E8(), Rat(-4));
	CHECK(F.is_zero());
}

TEST_CASE("weil matrices: small lattice relations") {
	// U+U: trivial disc group, 1x1 identity matrices
	EvenLattice uu = EvenLattice::dsum(EvenLattice::U(), EvenLattice::U());
	WeilMatrices w = weil_matrices(uu);
	CHECK(w.dim == 1);
	CHECK(std::abs(w.S[0][0] - Cplx(1)) < 1e-12);
	CHECK(std::abs(w.T[0][0] - Cplx(1)) < 1e-12);
	CHECK(weil_check(uu, w).max_defect() < 1e-10);

	// (2): phases e^{2 pi i Q} with Q in {0, 1/4}
	EvenLattice a1 = EvenLattice::A1(1);
	WeilMatrices w2 = weil_matrices(a1);
	CHECK(w2.dim == 2);
	bool has_i = false;
	for (int x = 0; x < 2; ++x)
		if (std::abs(w2.T[x][x] - Cplx(0, 1)) < 1e-12) has_i = true;
	CHECK(has_i);
	CHECK(weil_check(a1, w2).max_defect() < 1e-10);

	// rho(S)^4 = (-1)^{rk} for U(2) + (2), rank 3
	EvenLattice u2a1 = EvenLattice::dsum(EvenLattice::U(2), EvenLattice::A1(1));
	WeilCheckReport rep = weil_check(u2a1, weil_matrices(u2a1));
	CHECK(rep.max_defect() < 1e-10);

	// a matrix of small lattices, rank <= 4, |disc| <= 64
	std::vector<EvenLattice> mat = {
		EvenLattice::A1(1), EvenLattice::A1(2), EvenLattice::A1(5),
		EvenLattice::U(2), EvenLattice::U(3),
		EvenLattice::dsum(EvenLattice::A1(1), EvenLattice::A1(-3)),
		EvenLattice::dsum(EvenLattice::U(2), EvenLattice::U(2)),
		EvenLattice::dsum(EvenLattice::U(), EvenLattice::A1(7)),
	};
	for (auto& L : mat) {
		CAPTURE(L.name);
		CHECK(weil_check(L, weil_matrices(L)).max_defect() < 1e-10);
	}
}

TEST_CASE("eigen consistency at tau = i") {
	// zero form -> 0
	DepthForm z(Rat(-2), {QExp(Rat(0), 40)});
	VVForm F0 = gamma0p_induce(z, z, 2, EvenLattice::E8(), Rat(-2));
	WeilMatrices W = weil_matrices(F0.M);
	CHECK(eigen_consistency(F0, W) == 0.0);

	// Enriques g = 2 input: residual < 1e-6 at truncation 40
	DepthForm f = enriques_pair_f(2, Rat(40));
	DepthForm fFr = enriques_pair_fFr(2, Rat(40));
	VVForm F = gamma0p_induce(f, fFr, 2, EvenLattice::E8(), Rat(-2));
	double res = eigen_consistency(F, W);
	CHECK(res < 1e-6);

	// corrupting one coefficient breaks it
	VVForm bad = F;
	bad.comp[0].comp[0].add_to(Rat(1), Rat(1));
	CHECK(eigen_consistency(bad, W) > 1e-3);
}

TEST_CASE("induced components depend only on Q of the coset") {
	Rat T(20);
	DepthForm f = enriques_pair_f(2, T);
	DepthForm fFr = enriques_pair_fFr(2, T);
	VVForm F = gamma0p_induce(f, fFr, 2, EvenLattice::E8(), Rat(-2));
	// group the nonzero cosets by Q mod 1 and by membership in the zero coset
	std::map<std::string, const DepthForm*> byQ;
	for (long i = 1; i < F.cosets(); ++i) {
		std::string q = rat_to_string(F.disc->Q_mod1(i));
		auto it = byQ.find(q);
		if (it == byQ.end()) byQ[q] = &F.comp[i];
		else CHECK(*it->second == F.comp[i]);
	}
	CHECK(byQ.size() >= 2);
}
