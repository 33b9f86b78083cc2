#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oqm/ortho.hpp"

#include <random>

using namespace oqm;

namespace {

OrthoSeries random_series(std::mt19937& rng, const LorentzFrame& fr, long k, long s,
                          long heightBound, long depth) {
	OrthoSeries F = OrthoSeries::zero(fr, k, s, heightBound);
	auto& cone = enumerate_cone(fr, heightBound, true);
	std::uniform_int_distribution<size_t> pickKey(0, cone.size() - 1);
	long n = fr.rank();
	uint32_t dim = 1;
	for (long i = 0; i < s; ++i) dim *= (uint32_t)n;
	std::uniform_int_distribution<uint32_t> pickIdx(0, dim - 1);
	std::uniform_int_distribution<long> pickVar(0, n - 1), pickDeg(0, depth);
	std::uniform_int_distribution<long> num(-5, 5);
	for (int rep = 0; rep < 8; ++rep) {
		const auto& cv = cone[pickKey(rng)];
		NuPoly p = NuPoly::constant(Rat(num(rng)));
		long d = pickDeg(rng);
		for (long i = 0; i < d; ++i) p = p.mul_u(pickVar(rng));
		F.add(cv.y, pickIdx(rng), p);
	}
	F.prune();
	return F;
}

RVec random_vec(std::mt19937& rng, long n) {
	std::uniform_int_distribution<long> num(-3, 3);
	RVec v(n);
	bool nonzero = false;
	for (long i = 0; i < n; ++i) {
		v[i] = Rat(num(rng));
		if (v[i] != 0) nonzero = true;
	}
	if (!nonzero) v[0] = 1;
	return v;
}

} // namespace

TEST_CASE("raise and lower on simple inputs") {
	LorentzFrame uu = LorentzFrame::UU();
	OrthoSeries one = OrthoSeries::constant(uu, 0, Rat(1), 4);
	CHECK(ortho_raise(one).is_zero());

	OrthoSeries f = one;
	f.add({1, 0}, 0, NuPoly::constant(Rat(7)));
	CHECK(ortho_lower(f).is_zero());

	// L applied to the rank-1 constant tensor u gives g/2
	OrthoSeries uform = OrthoSeries::zero(uu, 1, 1, 2);
	for (long a = 0; a < 2; ++a)
		uform.add(IVec{0, 0}, (uint32_t)a, NuPoly::var(a));
	OrthoSeries lu = ortho_lower(uform);
	auto it = lu.coef.find(IVec{0, 0});
	REQUIRE(it != lu.coef.end());
	for (long a = 0; a < 2; ++ a)
		for (long b = 0; b < 2; ++b) {
			const NuPoly* p = it->second.find((uint32_t)(a * 2 + b));
			Rat expect = Rat(uu.L.gram[a][b]) / 2;
			if (expect == 0) CHECK((p == nullptr || p->is_zero()));
			else {
				REQUIRE(p != nullptr);
				CHECK(p->ct() == expect);
			}
		}
}

TEST_CASE("ct is a projection and ct(raise F) = D ct(F)") {
	std::mt19937 rng(42);
	LorentzFrame uu = LorentzFrame::UU();
	OrthoSeries F = random_series(rng, uu, 3, 0, 4, 2);
	OrthoSeries cF = ortho_ct(F);
	CHECK(ortho_ct(cF) == cF);
	OrthoSeries lhs = ortho_ct(ortho_raise(F));
	OrthoSeries rhs = OrthoSeries::zero(uu, F.k + 1, 1, F.heightBound);
	for (auto& [y, T] : cF.coef) {
		const NuPoly* p = T.find(0);
		if (!p) continue;
		for (long a = 0; a < 2; ++a)
			rhs.add(y, (uint32_t)a, *p * Rat(y[a]));
	}
	rhs.prune();
	CHECK(lhs == rhs);
}

TEST_CASE("commutator identity on random truncated forms") {
	std::mt19937 rng(2024);
	int cases = 0;
	for (int rep = 0; rep < 12; ++rep) {
		LorentzFrame fr = (rep % 2) ? LorentzFrame::U_E8m1() : LorentzFrame::UU();
		long hb = (rep % 2) ? 2 : 3;
		long s = rep % 3;
		long k = 1 + (rep % 5);
		OrthoSeries F = random_series(rng, fr, k, s, hb, 2);
		RVec lam = random_vec(rng, fr.rank()), mu = random_vec(rng, fr.rank());
		CAPTURE(rep);
		CHECK(commutator_residual(F, lam, mu).is_zero());
		++cases;
	}
	CHECK(cases == 12);
	OrthoSeries z = OrthoSeries::zero(LorentzFrame::UU(), 5, 1, 2);
	RVec e{Rat(1), Rat(0)};
	CHECK(commutator_residual(z, e, e).is_zero());
}

TEST_CASE("raise and lower are derivations (scalar times scalar, slot-compatible)") {
	std::mt19937 rng(7);
	LorentzFrame uu = LorentzFrame::UU();
	for (int rep = 0; rep < 6; ++rep) {
		OrthoSeries F = random_series(rng, uu, 2, 0, 4, 2);
		OrthoSeries G = random_series(rng, uu, 3, 0, 4, 2);
		OrthoSeries FG = ortho_mul(F, G);
		OrthoSeries lhsL = ortho_lower(FG);
		OrthoSeries rhsL = ortho_mul(ortho_lower(F), G) + ortho_mul(F, ortho_lower(G));
		CHECK(lhsL == rhsL);
		OrthoSeries lhsR = ortho_raise(FG);
		OrthoSeries rhsR = ortho_mul(ortho_raise(F), G) + ortho_mul(F, ortho_raise(G));
		CHECK(lhsR == rhsR);
	}
}

TEST_CASE("last-slot symmetry of L^2 and R^2") {
	std::mt19937 rng(99);
	LorentzFrame fr = LorentzFrame::UU();
	OrthoSeries F = random_series(rng, fr, 4, 1, 3, 2);
	long n = fr.rank();
	for (const OrthoSeries& T : {ortho_lower(ortho_lower(F)), ortho_raise(ortho_raise(F))}) {
		for (auto& [y, ten] : T.coef) {
			for (auto& [idx, p] : ten.a) {
				long b = idx % n, a = (idx / n) % n;
				uint32_t swapped = (uint32_t)(idx / (n * n)) * (uint32_t)(n * n) +
				                   (uint32_t)(b * n + a);
				const NuPoly* q = ten.find(swapped);
				REQUIRE(q != nullptr);
				CHECK(*q == p);
			}
		}
	}
}

TEST_CASE("tube gram trace is n, not n+2") {
	LorentzFrame uu = LorentzFrame::UU();
	auto ginv = uu.L.gram_inverse();
	Rat tr(0);
	for (int a = 0; a < 2; ++a)
		for (int b = 0; b < 2; ++b) tr += Rat(uu.L.gram[a][b]) * ginv[a][b];
	CHECK(tr == Rat(2));
}

TEST_CASE("inverse and logarithmic derivative") {
	std::mt19937 rng(5);
	LorentzFrame uu = LorentzFrame::UU();
	OrthoSeries F = OrthoSeries::constant(uu, 4, Rat(1), 4);
	OrthoSeries noise = random_series(rng, uu, 4, 0, 4, 0);
	noise.coef.erase(IVec{0, 0});
	F = F + noise;
	OrthoSeries inv = ortho_inverse(F);
	OrthoSeries prod = ortho_mul(F, inv);
	OrthoSeries one = OrthoSeries::constant(uu, 0, Rat(1), prod.heightBound);
	CHECK(prod == one);

	// L((1/l) R(f)/f) = g/2 for a holomorphic divisor form
	OrthoSeries lG = ortho_lower(log_derivative(F) * (Rat(1) / Rat(4)));
	auto it = lG.coef.find(IVec{0, 0});
	REQUIRE(it != lG.coef.end());
	for (long a = 0; a < 2; ++a)
		for (long b = 0; b < 2; ++b) {
			const NuPoly* p = it->second.find((uint32_t)(a * 2 + b));
			Rat expect = Rat(uu.L.gram[a][b]) / 2;
			if (expect == 0) CHECK((p == nullptr || p->is_zero()));
			else {
				REQUIRE(p != nullptr);
				CHECK(p->ct() == expect);
			}
		}
	long nonzero_keys = 0;
	for (auto& [y, t] : lG.coef)
		if (OrthoSeries::height(y) > 0 && !t.is_zero()) ++nonzero_keys;
	CHECK(nonzero_keys == 0);
}

TEST_CASE("serre derivative kills its divisor form") {
	std::mt19937 rng(11);
	LorentzFrame uu = LorentzFrame::UU();
	OrthoSeries F = OrthoSeries::constant(uu, 4, Rat(1), 3);
	OrthoSeries noise = random_series(rng, uu, 4, 0, 3, 0);
	noise.coef.erase(IVec{0, 0});
	F = F + noise;
	CHECK(serre_derivative(F, F, 4).is_zero());
}

TEST_CASE("eps form is a symmetric rank-2 tensor of weight 2") {
	std::mt19937 rng(13);
	LorentzFrame uu = LorentzFrame::UU();
	OrthoSeries F = OrthoSeries::constant(uu, 4, Rat(1), 3);
	OrthoSeries noise = random_series(rng, uu, 4, 0, 3, 0);
	noise.coef.erase(IVec{0, 0});
	F = F + noise;
	OrthoSeries eps = eps_form(F, 4);
	CHECK(eps.s == 2);
	CHECK(eps.k == 2);
	long n = 2;
	for (auto& [y, T] : eps.coef)
		for (auto& [idx, p] : T.a) {
			long b = idx % n, a = idx / n;
			const NuPoly* q = T.find((uint32_t)(b * n + a));
			REQUIRE(q != nullptr);
			CHECK(*q == p);
		}
}

TEST_CASE("depth bookkeeping") {
	std::mt19937 rng(21);
	LorentzFrame uu = LorentzFrame::UU();
	for (int rep = 0; rep < 5; ++rep) {
		OrthoSeries F = random_series(rng, uu, 3, 0, 3, 2);
		long d = F.depth();
		// L^{d+1} F = 0 and depth(L F) = max(d-1, 0)
		OrthoSeries L = F;
		for (long i = 0; i <= d; ++i) L = ortho_lower(L);
		CHECK(L.is_zero());
		if (d > 0) {
			OrthoSeries L1 = ortho_lower(F);
			CHECK(L1.depth() == d - 1);
		}
		CHECK(ortho_raise(F).depth() <= d + 1);
	}
}
