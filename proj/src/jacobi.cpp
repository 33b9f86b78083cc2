#include "oqm/jacobi.hpp"

namespace oqm {

namespace {

// FJ limit on u-polynomials: u_omega (var 0) and the K-part variables vanish,
// only the tau-direction variable (var 1) survives.
NuPoly fj_limit(const NuPoly& p) {
	NuPoly r;
	for (auto& [key, v] : p.mono) {
		uint64_t masked = key & ~(uint64_t)0xF0;
		if (masked == 0) r.add_mono(key, v);
	}
	return r;
}

} // namespace

bool JacobiSlice::is_zero() const {
	for (auto& [k, p] : coef)
		if (!p.is_zero()) return false;
	return true;
}

JacobiSlice JacobiSlice::operator-(const JacobiSlice& o) const {
	JacobiSlice r = *this;
	for (auto& [k, p] : o.coef) {
		auto it = r.coef.find(k);
		if (it == r.coef.end()) r.coef[k] = p * Rat(-1);
		else {
			it->second = it->second - p;
			if (it->second.is_zero()) r.coef.erase(it);
		}
	}
	for (auto it = r.coef.begin(); it != r.coef.end();) {
		if (it->second.is_zero()) it = r.coef.erase(it);
		else ++it;
	}
	return r;
}

JacobiSlice JacobiSlice::du() const {
	JacobiSlice r = *this;
	for (auto it = r.coef.begin(); it != r.coef.end();) {
		it->second = it->second.d_u(uVar);
		if (it->second.is_zero()) it = r.coef.erase(it);
		else ++it;
	}
	return r;
}

FJInsertion fj_e1(const LorentzFrame& fr) {
	FJInsertion v;
	v.kind = FJInsertion::E1;
	v.v.assign(fr.rank(), Rat(0));
	v.v[0] = 1;
	return v;
}

FJInsertion fj_f1(const LorentzFrame& fr) {
	FJInsertion v;
	v.kind = FJInsertion::F1;
	v.v.assign(fr.rank(), Rat(0));
	v.v[1] = 1;
	return v;
}

FJInsertion fj_kvec(const LorentzFrame& fr, const RVec& kpart) {
	FJInsertion v;
	v.kind = FJInsertion::KVEC;
	v.v.assign(fr.rank(), Rat(0));
	for (size_t i = 0; i < kpart.size(); ++i) v.v[2 + i] = kpart[i];
	return v;
}

JacobiSlice fj_slice(const OrthoSeries& F, long m, const std::vector<FJInsertion>& v) {
	if ((long)v.size() != F.s)
		throw std::domain_error("fj_slice: need one insertion per tensor slot");
	OrthoSeries G = F;
	for (auto it = v.rbegin(); it != v.rend(); ++it)
		G = contract_slot(G, G.s - 1, it->v);
	JacobiSlice out;
	out.m = m;
	long wt = 0;
	for (auto& ins : v) {
		if (ins.kind == FJInsertion::F1) ++wt;
		if (ins.kind == FJInsertion::E1) --wt;
	}
	out.weight = F.k + wt;
	for (auto& [y, T] : G.coef) {
		if (y[0] != m) continue;
		const NuPoly* p = T.find(0);
		if (!p) continue;
		NuPoly lim = fj_limit(*p);
		if (lim.is_zero()) continue;
		IVec alpha(y.begin() + 2, y.end());
		auto key = std::make_pair(y[1], alpha);
		auto it = out.coef.find(key);
		if (it == out.coef.end()) out.coef[key] = lim;
		else it->second = it->second + lim;
	}
	return out;
}

JacobiSlice fj_lower_residual(const OrthoSeries& F, long m, const std::vector<FJInsertion>& v) {
	if (F.frame.K.rank() > 0 && F.frame.s != F.frame.N)
		throw std::domain_error("fj_lower_residual: frame rescale mismatch");
	long r = F.frame.N; // M = U + L(r) with (e1,f1)_L = 1
	JacobiSlice lhs = fj_slice(F, m, v).du();
	auto vext = v;
	vext.push_back(fj_e1(F.frame));
	JacobiSlice rhs = fj_slice(ortho_lower(F), m, vext);
	for (auto& [k, p] : rhs.coef) p = p * rat(2, r);
	return lhs - rhs;
}

JacobiSlice fj_xi_residual(const OrthoSeries& F, long m, const std::vector<FJInsertion>& v,
                           const RVec& mu) {
	long n = F.n();
	RVec muFull(n, Rat(0));
	for (size_t i = 0; i < mu.size(); ++i) muFull[2 + i] = mu[i];
	long r = F.frame.N;

	// twist rule: e1 -> 0, f1 -> mu, K-vector x -> (mu,x)_N e1
	JacobiSlice lhs;
	bool first = true;
	for (size_t j = 0; j < v.size(); ++j) {
		auto vmod = v;
		if (v[j].kind == FJInsertion::E1) continue;
		if (v[j].kind == FJInsertion::F1) {
			vmod[j].kind = FJInsertion::KVEC;
			vmod[j].v = muFull;
		} else {
			// (mu, x)_N = (mu, x)_K on the positive-definite part
			RVec xpart(F.frame.K.rank()), mpart(F.frame.K.rank());
			for (long i = 0; i < F.frame.K.rank(); ++i) {
				xpart[i] = v[j].v[2 + i];
				mpart[i] = muFull[2 + i];
			}
			Rat pairing = F.frame.K.pair_q(mpart, xpart);
			vmod[j].kind = FJInsertion::E1;
			vmod[j].v.assign(n, Rat(0));
			vmod[j].v[0] = pairing;
		}
		JacobiSlice piece = fj_slice(F, m, vmod);
		if (first) { lhs = piece; first = false; }
		else {
			for (auto& [k, p] : piece.coef) {
				auto it = lhs.coef.find(k);
				if (it == lhs.coef.end()) lhs.coef[k] = p;
				else it->second = it->second + p;
			}
		}
	}
	if (first) lhs.m = m;

	// generic route: insert (mu ^_L e1) v_j = (1/r)(mu ^_Lambda e1) v_j
	JacobiSlice rhs;
	first = true;
	RVec e1(n, Rat(0));
	e1[0] = 1;
	for (size_t j = 0; j < v.size(); ++j) {
		auto vmod = v;
		RVec w = eichler(F.frame.L, muFull, e1, v[j].v);
		bool zero = true;
		for (auto& c : w) {
			c /= r;
			if (c != 0) zero = false;
		}
		if (zero) continue;
		vmod[j].kind = FJInsertion::KVEC;
		vmod[j].v = w;
		JacobiSlice piece = fj_slice(F, m, vmod);
		if (first) { rhs = piece; first = false; }
		else {
			for (auto& [k, p] : piece.coef) {
				auto it = rhs.coef.find(k);
				if (it == rhs.coef.end()) rhs.coef[k] = p;
				else it->second = it->second + p;
			}
		}
	}
	if (first) rhs.m = m;
	return lhs - rhs;
}

} // namespace oqm
