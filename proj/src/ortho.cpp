#include "oqm/ortho.hpp"

#include <algorithm>

namespace oqm {

uint64_t NuPoly::mono_key(const std::vector<int>& exps) {
	uint64_t k = 0;
	for (size_t j = 0; j < exps.size(); ++j) {
		if (exps[j] < 0 || exps[j] > 15) throw std::domain_error("NuPoly: exponent out of range");
		k |= (uint64_t)exps[j] << (4 * j);
	}
	return k;
}

long NuPoly::mono_degree(uint64_t key) {
	long d = 0;
	while (key) { d += key & 0xF; key >>= 4; }
	return d;
}

long NuPoly::degree() const {
	long d = 0;
	for (auto& [k, v] : mono) d = std::max(d, mono_degree(k));
	return d;
}

Rat NuPoly::ct() const {
	for (auto& [k, v] : mono)
		if (k == 0) return v;
	return Rat(0);
}

NuPoly NuPoly::constant(const Rat& c) {
	NuPoly p;
	if (c != 0) p.mono.push_back({0, c});
	return p;
}

NuPoly NuPoly::var(long j) {
	NuPoly p;
	p.mono.push_back({(uint64_t)1 << (4 * j), Rat(1)});
	return p;
}

void NuPoly::add_mono(uint64_t key, const Rat& v) {
	if (v == 0) return;
	auto it = std::lower_bound(mono.begin(), mono.end(), key,
	                           [](const auto& a, uint64_t k) { return a.first < k; });
	if (it != mono.end() && it->first == key) {
		it->second += v;
		if (it->second == 0) mono.erase(it);
	} else {
		mono.insert(it, {key, v});
	}
}

NuPoly NuPoly::operator+(const NuPoly& o) const {
	NuPoly r = *this;
	for (auto& [k, v] : o.mono) r.add_mono(k, v);
	return r;
}

NuPoly NuPoly::operator-(const NuPoly& o) const {
	NuPoly r = *this;
	for (auto& [k, v] : o.mono) r.add_mono(k, -v);
	return r;
}

NuPoly NuPoly::operator*(const NuPoly& o) const {
	NuPoly r;
	for (auto& [k1, v1] : mono)
		for (auto& [k2, v2] : o.mono) r.add_mono(k1 + k2, v1 * v2);
	return r;
}

NuPoly NuPoly::operator*(const Rat& s) const {
	if (s == 0) return {};
	NuPoly r = *this;
	for (auto& [k, v] : r.mono) v *= s;
	return r;
}

NuPoly NuPoly::d_u(long j) const {
	NuPoly r;
	for (auto& [k, v] : mono) {
		long e = mono_exp(k, j);
		if (!e) continue;
		r.add_mono(k - ((uint64_t)1 << (4 * j)), v * Rat(e));
	}
	return r;
}

NuPoly NuPoly::mul_u(long j) const {
	NuPoly r;
	for (auto& [k, v] : mono) r.add_mono(k + ((uint64_t)1 << (4 * j)), v);
	return r;
}

NuPoly NuPoly::select_degree(long m) const {
	NuPoly r;
	for (auto& [k, v] : mono)
		if (mono_degree(k) == m) r.add_mono(k, v);
	return r;
}

uint32_t Tensor::flat(const std::vector<long>& idx, long n) {
	uint32_t f = 0;
	for (long i : idx) f = f * (uint32_t)n + (uint32_t)i;
	return f;
}

const NuPoly* Tensor::find(uint32_t i) const {
	auto it = std::lower_bound(a.begin(), a.end(), i,
	                           [](const auto& p, uint32_t k) { return p.first < k; });
	if (it != a.end() && it->first == i) return &it->second;
	return nullptr;
}

void Tensor::add(uint32_t i, const NuPoly& v) {
	if (v.is_zero()) return;
	auto it = std::lower_bound(a.begin(), a.end(), i,
	                           [](const auto& p, uint32_t k) { return p.first < k; });
	if (it != a.end() && it->first == i) {
		it->second = it->second + v;
		if (it->second.is_zero()) a.erase(it);
	} else {
		a.insert(it, {i, v});
	}
}

Tensor Tensor::operator+(const Tensor& o) const {
	Tensor r = *this;
	if (r.n == 0) { r.n = o.n; r.s = o.s; }
	for (auto& [i, v] : o.a) r.add(i, v);
	return r;
}

Tensor Tensor::operator*(const Rat& s_) const {
	Tensor r = *this;
	if (s_ == 0) { r.a.clear(); return r; }
	for (auto& [i, v] : r.a) v = v * s_;
	return r;
}

Tensor& OrthoSeries::at(const IVec& y) {
	auto& t = coef[y];
	if (t.n == 0) { t.n = n(); t.s = s; }
	return t;
}

void OrthoSeries::add(const IVec& y, uint32_t flatIdx, const NuPoly& v) {
	if (v.is_zero()) return;
	at(y).add(flatIdx, v);
}

void OrthoSeries::prune() {
	for (auto it = coef.begin(); it != coef.end();) {
		if (it->second.is_zero() || height(it->first) > heightBound) it = coef.erase(it);
		else ++it;
	}
}

bool OrthoSeries::is_zero() const {
	for (auto& [y, t] : coef)
		if (!t.is_zero()) return false;
	return true;
}

long OrthoSeries::depth() const {
	long d = 0;
	for (auto& [y, t] : coef)
		for (auto& [i, p] : t.a) d = std::max(d, p.degree());
	return d;
}

OrthoSeries OrthoSeries::operator+(const OrthoSeries& o) const {
	if (s != o.s) throw std::domain_error("OrthoSeries: rank mismatch in +");
	OrthoSeries r = *this;
	r.heightBound = std::min(heightBound, o.heightBound);
	for (auto& [y, t] : o.coef) {
		auto& dst = r.at(y);
		dst = dst + t;
	}
	r.prune();
	return r;
}

OrthoSeries OrthoSeries::operator-(const OrthoSeries& o) const { return *this + o * Rat(-1); }

OrthoSeries OrthoSeries::operator*(const Rat& s_) const {
	OrthoSeries r = *this;
	for (auto& [y, t] : r.coef) t = t * s_;
	r.prune();
	return r;
}

bool OrthoSeries::operator==(const OrthoSeries& o) const {
	if (s != o.s) return false;
	long hb = std::min(heightBound, o.heightBound);
	auto covered = [&](const OrthoSeries& a, const OrthoSeries& b) {
		for (auto& [y, t] : a.coef) {
			if (height(y) > hb) continue;
			auto it = b.coef.find(y);
			for (auto& [i, p] : t.a) {
				const NuPoly* bp = (it != b.coef.end()) ? it->second.find(i) : nullptr;
				if (!bp) {
					if (!p.is_zero()) return false;
				} else if (!(p == *bp)) {
					return false;
				}
			}
		}
		return true;
	};
	return covered(*this, o) && covered(o, *this);
}

OrthoSeries OrthoSeries::zero(const LorentzFrame& fr, long k, long s, long heightBound) {
	OrthoSeries r;
	r.frame = fr;
	r.k = k;
	r.s = s;
	r.heightBound = heightBound;
	return r;
}

OrthoSeries OrthoSeries::constant(const LorentzFrame& fr, long k, const Rat& c, long heightBound) {
	OrthoSeries r = zero(fr, k, 0, heightBound);
	if (c != 0) r.add(IVec(fr.rank(), 0), 0, NuPoly::constant(c));
	return r;
}

NuPoly uu_pairing(const LorentzFrame& fr) {
	auto ginv = fr.L.gram_inverse();
	long n = fr.rank();
	NuPoly r;
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) {
			if (ginv[i][j] == 0) continue;
			r = r + (NuPoly::var(i) * NuPoly::var(j)) * ginv[i][j];
		}
	return r;
}

NuPoly u_linear(const RVec& coeffs) {
	NuPoly r;
	for (size_t a = 0; a < coeffs.size(); ++a)
		if (coeffs[a] != 0) r = r + NuPoly::var((long)a) * coeffs[a];
	return r;
}

namespace {

struct OpCtx {
	long n;
	std::vector<RVec> g, ginv;
	NuPoly uu;
	std::vector<std::vector<NuPoly>> chain; // chain[a][j] = D_a(u_j)
	std::vector<NuPoly> udual;              // udual[c] = sum_b u_b g^{bc}

	explicit OpCtx(const LorentzFrame& fr) {
		n = fr.rank();
		g.assign(n, RVec(n));
		for (long i = 0; i < n; ++i)
			for (long j = 0; j < n; ++j) g[i][j] = Rat(fr.L.gram[i][j]);
		ginv = fr.L.gram_inverse();
		uu = uu_pairing(fr);
		chain.assign(n, std::vector<NuPoly>(n));
		for (long a = 0; a < n; ++a)
			for (long j = 0; j < n; ++j)
				chain[a][j] = uu * (g[a][j] / 2) - NuPoly::var(a) * NuPoly::var(j);
		udual.assign(n, NuPoly{});
		for (long c = 0; c < n; ++c)
			for (long b = 0; b < n; ++b)
				if (ginv[b][c] != 0) udual[c] = udual[c] + NuPoly::var(b) * ginv[b][c];
	}
};

std::vector<long> unflatten(uint32_t idx, long s, long n) {
	std::vector<long> I(s);
	for (long m = s - 1; m >= 0; --m) {
		I[m] = idx % n;
		idx /= n;
	}
	return I;
}

uint32_t flatten(const std::vector<long>& I, long n) {
	uint32_t f = 0;
	for (long i : I) f = f * (uint32_t)n + (uint32_t)i;
	return f;
}

} // namespace

OrthoSeries ortho_raise(const OrthoSeries& F) {
	OpCtx ctx(F.frame);
	long n = ctx.n, s = F.s;
	OrthoSeries R = OrthoSeries::zero(F.frame, F.k + 1, s + 1, F.heightBound);
	R.logarithmic = F.logarithmic;
	for (auto& [y, T] : F.coef) {
		Tensor out;
		out.n = n;
		out.s = s + 1;
		for (auto& [idx, P] : T.a) {
			auto I = unflatten(idx, s, n);
			std::vector<NuPoly> dP(n);
			for (long j = 0; j < n; ++j) dP[j] = P.d_u(j);
			for (long a = 0; a < n; ++a) {
				NuPoly acc = P * Rat(y[a]);
				for (long j = 0; j < n; ++j)
					if (!dP[j].is_zero()) acc = acc + dP[j] * ctx.chain[a][j];
				acc = acc + P.mul_u(a) * Rat(F.k);
				out.add(idx * (uint32_t)n + (uint32_t)a, acc);
			}
			for (long m = 0; m < s; ++m) {
				long c = I[m];
				// sigma_{m,s+1}: target (I[m->t], a = I[m]) gains u_t P
				auto Tg = I;
				for (long t = 0; t < n; ++t) {
					Tg[m] = t;
					out.add(flatten(Tg, n) * (uint32_t)n + (uint32_t)c, P.mul_u(t));
				}
				// trace: target (I[m->t], a) loses g[a][t] * udual_c * P
				NuPoly Pu = P * ctx.udual[c];
				for (long t = 0; t < n; ++t) {
					Tg[m] = t;
					uint32_t base = flatten(Tg, n) * (uint32_t)n;
					for (long a = 0; a < n; ++a) {
						if (ctx.g[a][t] == 0) continue;
						out.add(base + (uint32_t)a, Pu * (-ctx.g[a][t]));
					}
				}
				Tg[m] = c;
			}
		}
		if (!out.is_zero()) R.coef[y] = std::move(out);
	}
	R.prune();
	return R;
}

OrthoSeries ortho_lower(const OrthoSeries& F) {
	OpCtx ctx(F.frame);
	long n = ctx.n, s = F.s;
	OrthoSeries R = OrthoSeries::zero(F.frame, F.k - 1, s + 1, F.heightBound);
	R.logarithmic = F.logarithmic;
	for (auto& [y, T] : F.coef) {
		Tensor out;
		out.n = n;
		out.s = s + 1;
		for (auto& [idx, P] : T.a) {
			std::vector<NuPoly> dP(n);
			for (long j = 0; j < n; ++j) dP[j] = P.d_u(j);
			for (long a = 0; a < n; ++a) {
				NuPoly acc;
				for (long j = 0; j < n; ++j) {
					if (dP[j].is_zero() || ctx.g[a][j] == 0) continue;
					acc = acc + dP[j] * (ctx.g[a][j] / 2);
				}
				out.add(idx * (uint32_t)n + (uint32_t)a, acc);
			}
		}
		if (!out.is_zero()) R.coef[y] = std::move(out);
	}
	R.prune();
	return R;
}

OrthoSeries ortho_ct(const OrthoSeries& F) {
	OrthoSeries R = OrthoSeries::zero(F.frame, F.k, F.s, F.heightBound);
	R.logarithmic = F.logarithmic;
	for (auto& [y, T] : F.coef) {
		Tensor out;
		out.n = T.n;
		out.s = T.s;
		for (auto& [idx, P] : T.a) {
			Rat c = P.ct();
			if (c != 0) out.add(idx, NuPoly::constant(c));
		}
		if (!out.is_zero()) R.coef[y] = std::move(out);
	}
	return R;
}

OrthoSeries ortho_mul(const OrthoSeries& F, const OrthoSeries& G) {
	long n = F.n();
	if (G.n() != n) throw std::domain_error("ortho_mul: frame mismatch");
	OrthoSeries R = OrthoSeries::zero(F.frame, F.k + G.k, F.s + G.s,
	                                  std::min(F.heightBound, G.heightBound));
	uint32_t shift = 1;
	for (long i = 0; i < G.s; ++i) shift *= (uint32_t)n;
	// bucket G's keys by height so pairs beyond the bound are never visited
	std::vector<std::vector<const std::pair<const IVec, Tensor>*>> buckets(R.heightBound + 1);
	for (auto& kv : G.coef) {
		long h = OrthoSeries::height(kv.first);
		if (h >= 0 && h <= R.heightBound) buckets[h].push_back(&kv);
	}
	for (auto& [y1, T1] : F.coef) {
		long h1 = OrthoSeries::height(y1);
		if (h1 > R.heightBound) continue;
		for (long h2 = 0; h1 + h2 <= R.heightBound; ++h2) {
			for (auto* kv : buckets[h2]) {
				const IVec& y2 = kv->first;
				const Tensor& T2 = kv->second;
				IVec y(y1.size());
				for (size_t i = 0; i < y.size(); ++i) y[i] = y1[i] + y2[i];
				auto& dst = R.at(y);
				for (auto& [i1, p1] : T1.a)
					for (auto& [i2, p2] : T2.a)
						dst.add(i1 * shift + i2, p1 * p2);
			}
		}
	}
	R.prune();
	return R;
}

OrthoSeries contract_slot(const OrthoSeries& F, long slot, const RVec& v) {
	if (slot < 0 || slot >= F.s) throw std::domain_error("contract_slot: bad slot");
	long n = F.n(), s = F.s;
	OrthoSeries R = OrthoSeries::zero(F.frame, F.k, s - 1, F.heightBound);
	R.logarithmic = F.logarithmic;
	for (auto& [y, T] : F.coef) {
		Tensor out;
		out.n = n;
		out.s = s - 1;
		for (auto& [idx, P] : T.a) {
			auto I = unflatten(idx, s, n);
			Rat c = v[I[slot]];
			if (c == 0) continue;
			std::vector<long> J;
			J.reserve(s - 1);
			for (long m = 0; m < s; ++m)
				if (m != slot) J.push_back(I[m]);
			out.add(flatten(J, n), P * c);
		}
		if (!out.is_zero()) R.coef[y] = std::move(out);
	}
	R.prune();
	return R;
}

OrthoSeries commutator_residual(const OrthoSeries& F, const RVec& lambda, const RVec& mu) {
	long s = F.s;
	OrthoSeries LR = ortho_lower(ortho_raise(F)); // slots: (orig, R at s, L at s+1)
	OrthoSeries RL = ortho_raise(ortho_lower(F)); // slots: (orig, L at s, R at s+1)
	OrthoSeries lhs = contract_slot(contract_slot(LR, s + 1, lambda), s, mu) -
	                  contract_slot(contract_slot(RL, s + 1, mu), s, lambda);

	Rat lm = F.frame.L.pair_q(lambda, mu);
	OrthoSeries rhs = F * (Rat(F.k) * lm / 2);
	// (mu ^ lambda)(e_i) = (lambda, e_i) mu - (mu, e_i) lambda
	long n = F.n();
	RVec lam_e(n), mu_e(n);
	for (long i = 0; i < n; ++i) {
		RVec ei(n, Rat(0));
		ei[i] = 1;
		lam_e[i] = F.frame.L.pair_q(lambda, ei);
		mu_e[i] = F.frame.L.pair_q(mu, ei);
	}
	for (auto& [y, T] : F.coef) {
		for (auto& [idx, P] : T.a) {
			auto I = unflatten(idx, s, n);
			for (long m = 0; m < s; ++m) {
				// target slot j gains (1/2)[(lambda,e_j) mu^{i_m} - (mu,e_j) lambda^{i_m}] P
				auto J = I;
				for (long j = 0; j < n; ++j) {
					Rat w = (lam_e[j] * mu[I[m]] - mu_e[j] * lambda[I[m]]) / 2;
					if (w == 0) continue;
					J[m] = j;
					rhs.add(y, flatten(J, n), P * w);
				}
				J[m] = I[m];
			}
		}
	}
	rhs.prune();
	return lhs - rhs;
}

OrthoSeries trace_last_two(const OrthoSeries& F) {
	if (F.s < 2) throw std::domain_error("trace_last_two: rank < 2");
	long n = F.n(), s = F.s;
	auto ginv = F.frame.L.gram_inverse();
	OrthoSeries R = OrthoSeries::zero(F.frame, F.k, s - 2, F.heightBound);
	R.logarithmic = F.logarithmic;
	for (auto& [y, T] : F.coef) {
		Tensor out;
		out.n = n;
		out.s = s - 2;
		for (auto& [idx, P] : T.a) {
			long b = idx % n;
			long a = (idx / n) % n;
			uint32_t base = idx / (uint32_t)(n * n);
			if (ginv[a][b] == 0) continue;
			out.add(base, P * ginv[a][b]);
		}
		if (!out.is_zero()) R.coef[y] = std::move(out);
	}
	R.prune();
	return R;
}

OrthoSeries zemel_raise(const OrthoSeries& F) {
	if (F.s != 0) throw std::domain_error("zemel_raise: scalar input required");
	return trace_last_two(ortho_raise(ortho_raise(F)));
}

OrthoSeries zemel_lower(const OrthoSeries& F) {
	if (F.s != 0) throw std::domain_error("zemel_lower: scalar input required");
	return trace_last_two(ortho_lower(ortho_lower(F)));
}

OrthoSeries ortho_inverse(const OrthoSeries& F) {
	if (F.s != 0) throw std::domain_error("ortho_inverse: scalar input required");
	IVec zeroKey(F.n(), 0);
	auto it = F.coef.find(zeroKey);
	if (it == F.coef.end()) throw std::domain_error("ortho_inverse: vanishing leading coefficient");
	const NuPoly* lead = it->second.find(0);
	if (!lead || lead->degree() != 0)
		throw std::domain_error("ortho_inverse: leading coefficient must be a nonzero scalar");
	Rat c0 = lead->ct();
	// T = F/c0 - 1 has heights >= 1
	OrthoSeries T = F * (Rat(1) / c0);
	T.coef.erase(zeroKey);
	for (auto& [y, t] : T.coef)
		if (OrthoSeries::height(y) == 0)
			throw std::domain_error("ortho_inverse: nonscalar height-0 part");
	OrthoSeries S = OrthoSeries::constant(F.frame, -F.k, Rat(1), F.heightBound);
	OrthoSeries P = S;
	OrthoSeries negT = T * Rat(-1);
	for (long m = 1; m <= F.heightBound; ++m) {
		P = ortho_mul(P, negT);
		P.k = 0;
		if (P.is_zero()) break;
		S = S + P;
	}
	S = S * (Rat(1) / c0);
	S.k = -F.k;
	return S;
}

OrthoSeries log_derivative(const OrthoSeries& f) {
	OrthoSeries inv = ortho_inverse(f);
	OrthoSeries r = ortho_mul(ortho_raise(f), inv);
	r.k = 1;
	return r;
}

OrthoSeries serre_derivative(const OrthoSeries& F, const OrthoSeries& fdiv, long ell) {
	long n = F.n(), s = F.s;
	OpCtx ctx(F.frame);
	OrthoSeries G = log_derivative(fdiv) * (Rat(1) / Rat(ell)); // rank 1, weight 1
	OrthoSeries out = ortho_raise(F) - ortho_mul(F, G) * Rat(F.k);
	// - sum_r sigma_{r,s+1}(F x G) + sum_r tr sigma_{r,s+2}(F x g x G)
	for (auto& [y1, T1] : F.coef) {
		for (auto& [y2, T2] : G.coef) {
			if (OrthoSeries::height(y1) + OrthoSeries::height(y2) > out.heightBound) continue;
			IVec y(y1.size());
			for (size_t i = 0; i < y.size(); ++i) y[i] = y1[i] + y2[i];
			for (auto& [idx, P] : T1.a) {
				auto I = unflatten(idx, s, n);
				for (auto& [gidx, Q] : T2.a) {
					long w = (long)gidx;
					NuPoly PQ = P * Q;
					for (long m = 0; m < s; ++m) {
						long c = I[m];
						auto Tg = I;
						// sigma term: target (I[m->t], a=c) loses G_t-weighted:
						// sigma_{m,s+1}(F x G)_{T,a} = F_{T[m->a]} G_{T_m}
						Tg[m] = w;
						out.add(y, flatten(Tg, n) * (uint32_t)n + (uint32_t)c, PQ * Rat(-1));
						// trace term: target (I[m->t], a) gains g[a][t] Gup_c P
						for (long t = 0; t < n; ++t) {
							Tg[m] = t;
							uint32_t base = flatten(Tg, n) * (uint32_t)n;
							for (long a = 0; a < n; ++a) {
								if (ctx.g[a][t] == 0) continue;
								out.add(y, base + (uint32_t)a, PQ * (ctx.g[a][t] * ctx.ginv[w][c]));
							}
						}
						Tg[m] = c;
					}
				}
			}
		}
	}
	out.prune();
	return out;
}

OrthoSeries eps_form(const OrthoSeries& f, long ell) {
	if (f.s != 0) throw std::domain_error("eps_form: scalar input required");
	if (ell <= 0) throw std::domain_error("eps_form: weight must be positive");
	OrthoSeries inv = ortho_inverse(f);
	OrthoSeries inv2 = ortho_mul(inv, inv);
	OrthoSeries rf = ortho_raise(f);
	OrthoSeries r2 = ortho_raise(rf);
	OrthoSeries rr = ortho_mul(rf, rf);
	OrthoSeries out = ortho_mul(r2, inv) - ortho_mul(rr, inv2) * (Rat(ell + 1) / Rat(ell));
	// + (1/2l) tr(Rf x Rf)/f^2 * g
	OrthoSeries tr = ortho_mul(trace_last_two(rr), inv2) * (Rat(1) / Rat(2 * ell));
	long n = f.n();
	for (auto& [y, T] : tr.coef) {
		const NuPoly* P = T.find(0);
		if (!P) continue;
		for (long a = 0; a < n; ++a)
			for (long b = 0; b < n; ++b) {
				if (f.frame.L.gram[a][b] == 0) continue;
				out.add(y, (uint32_t)(a * n + b), *P * Rat(f.frame.L.gram[a][b]));
			}
	}
	out.prune();
	return out;
}

} // namespace oqm
