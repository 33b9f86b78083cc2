#include "oqm/lattice.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <tuple>

namespace oqm {

void EvenLattice::validate() const {
	long n = rank();
	for (long i = 0; i < n; ++i) {
		if ((long)gram[i].size() != n) throw std::domain_error("EvenLattice: gram not square");
		if (gram[i][i] % 2) throw std::domain_error("EvenLattice: odd diagonal");
		for (long j = 0; j < n; ++j)
			if (gram[i][j] != gram[j][i]) throw std::domain_error("EvenLattice: gram not symmetric");
	}
	if (det() == 0) throw std::domain_error("EvenLattice: degenerate gram");
}

long EvenLattice::pair(const IVec& a, const IVec& b) const {
	long n = rank(), acc = 0;
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) acc += a[i] * gram[i][j] * b[j];
	return acc;
}

Rat EvenLattice::pair_q(const RVec& a, const RVec& b) const {
	long n = rank();
	Rat acc(0);
	for (long i = 0; i < n; ++i) {
		if (a[i] == 0) continue;
		for (long j = 0; j < n; ++j) acc += a[i] * Rat(gram[i][j]) * b[j];
	}
	return acc;
}

namespace {

// fraction-free Gaussian determinant over mpz
Int det_mpz(std::vector<std::vector<Int>> m) {
	long n = (long)m.size();
	if (n == 0) return Int(1);
	Int det = 1, prev = 1;
	for (long k = 0; k < n - 1; ++k) {
		if (m[k][k] == 0) {
			long p = -1;
			for (long i = k + 1; i < n; ++i)
				if (m[i][k] != 0) { p = i; break; }
			if (p < 0) return Int(0);
			std::swap(m[k], m[p]);
			det = -det;
		}
		for (long i = k + 1; i < n; ++i)
			for (long j = k + 1; j < n; ++j)
				m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
		prev = m[k][k];
	}
	return det * m[n - 1][n - 1];
}

Rat mod1(const Rat& x) {
	Rat fl(x.get_num() % x.get_den(), x.get_den());
	fl.canonicalize();
	if (fl < 0) fl += 1;
	return fl;
}

} // namespace

Int EvenLattice::det() const {
	long n = rank();
	std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) m[i][j] = gram[i][j];
	return det_mpz(std::move(m));
}

std::pair<int, int> EvenLattice::signature() const {
	long n = rank();
	std::vector<RVec> m(n, RVec(n));
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) m[i][j] = Rat(gram[i][j]);
	int pos = 0, neg = 0;
	std::vector<bool> used(n, false);
	for (long step = 0; step < n; ++step) {
		long p = -1;
		for (long i = 0; i < n; ++i)
			if (!used[i] && m[i][i] != 0) { p = i; break; }
		if (p < 0) {
			// split a hyperbolic pair so a diagonal entry appears
			long a = -1, b = -1;
			for (long i = 0; i < n && a < 0; ++i) {
				if (used[i]) continue;
				for (long j = 0; j < n; ++j)
					if (!used[j] && j != i && m[i][j] != 0) { a = i; b = j; break; }
			}
			if (a < 0) break;
			for (long j = 0; j < n; ++j) m[a][j] += m[b][j];
			for (long i = 0; i < n; ++i) m[i][a] += m[i][b];
			--step;
			continue;
		}
		used[p] = true;
		if (m[p][p] > 0) ++pos; else ++neg;
		for (long i = 0; i < n; ++i) {
			if (used[i] || m[i][p] == 0) continue;
			Rat f = m[i][p] / m[p][p];
			for (long j = 0; j < n; ++j) m[i][j] -= f * m[p][j];
			for (long j = 0; j < n; ++j) m[j][i] = m[i][j];
		}
	}
	return {pos, neg};
}

std::vector<RVec> EvenLattice::gram_inverse() const {
	long n = rank();
	std::vector<RVec> a(n, RVec(2 * n, Rat(0)));
	for (long i = 0; i < n; ++i) {
		for (long j = 0; j < n; ++j) a[i][j] = Rat(gram[i][j]);
		a[i][n + i] = 1;
	}
	for (long col = 0; col < n; ++col) {
		long p = -1;
		for (long i = col; i < n; ++i)
			if (a[i][col] != 0) { p = i; break; }
		if (p < 0) throw std::domain_error("gram_inverse: singular");
		std::swap(a[col], a[p]);
		Rat piv = a[col][col];
		for (long j = 0; j < 2 * n; ++j) a[col][j] /= piv;
		for (long i = 0; i < n; ++i) {
			if (i == col || a[i][col] == 0) continue;
			Rat f = a[i][col];
			for (long j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
		}
	}
	std::vector<RVec> inv(n, RVec(n));
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
	return inv;
}

EvenLattice EvenLattice::rescaled(long r) const {
	EvenLattice out = *this;
	for (auto& row : out.gram)
		for (auto& v : row) v *= r;
	out.name = name + "(" + std::to_string(r) + ")";
	return out;
}

EvenLattice EvenLattice::U(long m) {
	EvenLattice l;
	l.gram = {{0, m}, {m, 0}};
	l.name = m == 1 ? "U" : "U(" + std::to_string(m) + ")";
	return l;
}

EvenLattice EvenLattice::A1(long m) {
	EvenLattice l;
	l.gram = {{2 * m}};
	l.name = "(" + std::to_string(2 * m) + ")";
	return l;
}

EvenLattice EvenLattice::E8(long s) {
	// Cartan matrix of E8: even, positive definite, determinant 1
	EvenLattice l;
	l.gram = {
		{2, -1, 0, 0, 0, 0, 0, 0},
		{-1, 2, -1, 0, 0, 0, 0, 0},
		{0, -1, 2, -1, 0, 0, 0, 0},
		{0, 0, -1, 2, -1, 0, 0, 0},
		{0, 0, 0, -1, 2, -1, 0, -1},
		{0, 0, 0, 0, -1, 2, -1, 0},
		{0, 0, 0, 0, 0, -1, 2, 0},
		{0, 0, 0, 0, -1, 0, 0, 2},
	};
	l.name = "E8";
	if (s != 1) l = l.rescaled(s);
	return l;
}

EvenLattice EvenLattice::dsum(const EvenLattice& a, const EvenLattice& b) {
	EvenLattice l;
	long n = a.rank() + b.rank();
	l.gram.assign(n, IVec(n, 0));
	for (long i = 0; i < a.rank(); ++i)
		for (long j = 0; j < a.rank(); ++j) l.gram[i][j] = a.gram[i][j];
	for (long i = 0; i < b.rank(); ++i)
		for (long j = 0; j < b.rank(); ++j) l.gram[a.rank() + i][a.rank() + j] = b.gram[i][j];
	l.name = a.name + "+" + b.name;
	return l;
}

namespace {

struct Smith {
	std::vector<std::vector<Int>> U, V;
	std::vector<Int> d;
};

// U * A * V diagonal via elementary row and column operations.
Smith smith_normal_form(std::vector<std::vector<Int>> A) {
	long n = (long)A.size();
	Smith s;
	s.U.assign(n, std::vector<Int>(n, 0));
	s.V.assign(n, std::vector<Int>(n, 0));
	for (long i = 0; i < n; ++i) s.U[i][i] = s.V[i][i] = 1;

	auto row_op = [&](long i, long j, const Int& f) {
		for (long k = 0; k < n; ++k) { A[i][k] -= f * A[j][k]; s.U[i][k] -= f * s.U[j][k]; }
	};
	auto col_op = [&](long i, long j, const Int& f) {
		for (long k = 0; k < n; ++k) { A[k][i] -= f * A[k][j]; s.V[k][i] -= f * s.V[k][j]; }
	};
	auto row_swap = [&](long i, long j) { std::swap(A[i], A[j]); std::swap(s.U[i], s.U[j]); };
	auto col_swap = [&](long i, long j) {
		for (long k = 0; k < n; ++k) { std::swap(A[k][i], A[k][j]); std::swap(s.V[k][i], s.V[k][j]); }
	};

	for (long t = 0; t < n; ++t) {
		while (true) {
			long pi = -1, pj = -1;
			Int best = 0;
			for (long i = t; i < n; ++i)
				for (long j = t; j < n; ++j) {
					if (A[i][j] == 0) continue;
					Int a = abs(A[i][j]);
					if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
				}
			if (pi < 0) break;
			if (pi != t) row_swap(t, pi);
			if (pj != t) col_swap(t, pj);
			bool dirty = false;
			for (long i = t + 1; i < n; ++i) {
				if (A[i][t] == 0) continue;
				row_op(i, t, A[i][t] / A[t][t]);
				if (A[i][t] != 0) dirty = true;
			}
			for (long j = t + 1; j < n; ++j) {
				if (A[t][j] == 0) continue;
				col_op(j, t, A[t][j] / A[t][t]);
				if (A[t][j] != 0) dirty = true;
			}
			if (!dirty) {
				bool zeroed = true;
				for (long i = t + 1; i < n && zeroed; ++i) if (A[i][t] != 0) zeroed = false;
				for (long j = t + 1; j < n && zeroed; ++j) if (A[t][j] != 0) zeroed = false;
				if (zeroed) break;
			}
		}
	}
	s.d.resize(n);
	for (long i = 0; i < n; ++i) s.d[i] = abs(A[i][i]);
	return s;
}

} // namespace

DiscGroup disc_group(const EvenLattice& L) {
	L.validate();
	long n = L.rank();
	std::vector<std::vector<Int>> A(n, std::vector<Int>(n));
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) A[i][j] = L.gram[i][j];
	Smith s = smith_normal_form(A);

	DiscGroup D;
	D.L = L;
	auto inv = L.gram_inverse();

	// invert U over the rationals (entries are exact; U is unimodular)
	std::vector<RVec> Uq(n, RVec(2 * n, Rat(0)));
	for (long i = 0; i < n; ++i) {
		for (long j = 0; j < n; ++j) Uq[i][j] = Rat(s.U[i][j]);
		Uq[i][n + i] = 1;
	}
	for (long col = 0; col < n; ++col) {
		long p = -1;
		for (long i = col; i < n; ++i)
			if (Uq[i][col] != 0) { p = i; break; }
		std::swap(Uq[col], Uq[p]);
		Rat piv = Uq[col][col];
		for (long j = 0; j < 2 * n; ++j) Uq[col][j] /= piv;
		for (long i = 0; i < n; ++i) {
			if (i == col || Uq[i][col] == 0) continue;
			Rat f = Uq[i][col];
			for (long j = 0; j < 2 * n; ++j) Uq[i][j] -= f * Uq[col][j];
		}
	}

	D.order = 1;
	for (long i = 0; i < n; ++i) {
		if (!s.d[i].fits_slong_p()) throw std::overflow_error("disc_group: divisor too large");
		long di = s.d[i].get_si();
		if (di <= 1) continue;
		D.divisors.push_back(di);
		D.order *= di;
		RVec ucol(n);
		for (long r = 0; r < n; ++r) ucol[r] = Uq[r][n + i];
		RVec g(n, Rat(0));
		for (long r = 0; r < n; ++r)
			for (long c = 0; c < n; ++c) g[r] += inv[r][c] * ucol[c];
		for (auto& v : g) v = mod1(v);
		D.gens.push_back(g);
	}
	return D;
}

std::vector<long> DiscGroup::unrank(long idx) const {
	std::vector<long> ks(divisors.size());
	for (size_t i = 0; i < divisors.size(); ++i) {
		ks[i] = idx % divisors[i];
		idx /= divisors[i];
	}
	return ks;
}

long DiscGroup::rank_of(const std::vector<long>& ks) const {
	long idx = 0, mul = 1;
	for (size_t i = 0; i < divisors.size(); ++i) {
		long k = ((ks[i] % divisors[i]) + divisors[i]) % divisors[i];
		idx += k * mul;
		mul *= divisors[i];
	}
	return idx;
}

RVec DiscGroup::representative(long idx) const {
	long n = L.rank();
	RVec r(n, Rat(0));
	auto ks = unrank(idx);
	for (size_t i = 0; i < gens.size(); ++i)
		for (long c = 0; c < n; ++c) r[c] += Rat(ks[i]) * gens[i][c];
	for (auto& v : r) v = mod1(v);
	return r;
}

Rat DiscGroup::Q_mod1(long idx) const {
	RVec r = representative(idx);
	return mod1(L.pair_q(r, r) / 2);
}

Rat DiscGroup::B_mod1(long i, long j) const {
	return mod1(L.pair_q(representative(i), representative(j)));
}

long DiscGroup::neg(long idx) const {
	auto ks = unrank(idx);
	for (size_t i = 0; i < ks.size(); ++i) ks[i] = (divisors[i] - ks[i]) % divisors[i];
	return rank_of(ks);
}

long DiscGroup::add(long i, long j) const {
	auto a = unrank(i), b = unrank(j);
	for (size_t t = 0; t < a.size(); ++t) a[t] = (a[t] + b[t]) % divisors[t];
	return rank_of(a);
}

long DiscGroup::coset_of_dual(const IVec& y) const {
	long n = L.rank();
	auto inv = L.gram_inverse();
	RVec frac(n, Rat(0));
	for (long r = 0; r < n; ++r) {
		for (long c = 0; c < n; ++c) frac[r] += inv[r][c] * Rat(y[c]);
		frac[r] = mod1(frac[r]);
	}
	for (long idx = 0; idx < order; ++idx)
		if (representative(idx) == frac) return idx;
	throw std::logic_error("coset_of_dual: no matching coset");
}

RVec eichler(const EvenLattice& L, const RVec& v, const RVec& w, const RVec& x) {
	Rat wx = L.pair_q(w, x), vx = L.pair_q(v, x);
	RVec r(v.size());
	for (size_t i = 0; i < v.size(); ++i) r[i] = wx * v[i] - vx * w[i];
	return r;
}

namespace {

Int floor_sqrt(const Rat& x) {
	if (x < 0) throw std::domain_error("floor_sqrt: negative");
	Int nd = x.get_num() * x.get_den();
	Int s = sqrt(nd);
	return s / x.get_den();
}

} // namespace

std::vector<IVec> enumerate_ball(const std::vector<RVec>& G, const Rat& bound) {
	long n = (long)G.size();
	std::vector<IVec> out;
	if (bound < 0) return out;
	if (n == 0) {
		out.push_back({});
		return out;
	}
	// LDL: Q(x) = sum_i d_i (x_i + sum_{j>i} l_{ij} x_j)^2
	std::vector<RVec> l(n, RVec(n, Rat(0)));
	RVec d(n, Rat(0));
	std::vector<RVec> m = G;
	for (long i = 0; i < n; ++i) {
		d[i] = m[i][i];
		if (d[i] <= 0) throw std::domain_error("enumerate_ball: not positive definite");
		for (long j = i; j < n; ++j) l[i][j] = m[i][j] / d[i];
		for (long r = i + 1; r < n; ++r)
			for (long c = i + 1; c < n; ++c)
				m[r][c] -= d[i] * l[i][r] * l[i][c];
	}
	IVec x(n, 0);
	auto rec = [&](auto&& self, long i, const Rat& budget) -> void {
		if (i < 0) {
			out.push_back(x);
			return;
		}
		Rat shift(0);
		for (long j = i + 1; j < n; ++j)
			if (x[j]) shift += l[i][j] * Rat(x[j]);
		Rat w = budget / d[i];
		long fs = floor_sqrt(w).get_si();
		// |x_i + shift| <= sqrt(w); integer window around -shift
		long center = (long)(-to_double(shift));
		for (long v = center - fs - 2; v <= center + fs + 2; ++v) {
			Rat t = Rat(v) + shift;
			Rat used = d[i] * t * t;
			if (used > budget) continue;
			x[i] = v;
			self(self, i - 1, budget - used);
		}
		x[i] = 0;
	};
	rec(rec, n - 1, bound);
	std::sort(out.begin(), out.end());
	return out;
}

Rat LorentzFrame::norm_dual(const IVec& y) const {
	Rat acc = Rat(2) * Rat(y[0]) * Rat(y[1]) / Rat(N);
	if (K.rank() > 0) {
		auto kinv = K.gram_inverse();
		for (long i = 0; i < K.rank(); ++i)
			for (long j = 0; j < K.rank(); ++j)
				acc -= Rat(y[2 + i]) * kinv[i][j] * Rat(y[2 + j]) / Rat(s);
	}
	return acc;
}

Rat LorentzFrame::norm_lattice(const IVec& x) const { return Rat(L.pair(x, x)); }

IVec LorentzFrame::to_dual_coords(const IVec& x) const {
	long n = rank();
	IVec y(n, 0);
	for (long i = 0; i < n; ++i)
		for (long j = 0; j < n; ++j) y[i] += L.gram[i][j] * x[j];
	return y;
}

LorentzFrame LorentzFrame::U_with_K(long N, const EvenLattice& Kpos, long s, std::string name) {
	LorentzFrame fr;
	fr.N = N;
	fr.K = Kpos;
	fr.s = s;
	fr.name = std::move(name);
	if (Kpos.rank() > 0) fr.L = EvenLattice::dsum(EvenLattice::U(N), Kpos.rescaled(-s));
	else fr.L = EvenLattice::U(N);
	fr.L.name = fr.name;
	return fr;
}

LorentzFrame LorentzFrame::UU() { return U_with_K(1, EvenLattice{{}, "0"}, 1, "U"); }
LorentzFrame LorentzFrame::U_scaled(long N) {
	return U_with_K(N, EvenLattice{{}, "0"}, 1, "U(" + std::to_string(N) + ")");
}
LorentzFrame LorentzFrame::U_E8m1() { return U_with_K(1, EvenLattice::E8(), 1, "U+E8(-1)"); }
LorentzFrame LorentzFrame::U2_E8m2() { return U_with_K(2, EvenLattice::E8(), 2, "U(2)+E8(-2)"); }

namespace {

struct ConeKey {
	std::string frame;
	long bound;
	bool dual;
	std::string floor;
	bool operator<(const ConeKey& o) const {
		return std::tie(frame, bound, dual, floor) < std::tie(o.frame, o.bound, o.dual, o.floor);
	}
};

std::map<ConeKey, std::vector<ConeVector>> g_cone_cache;
std::mutex g_cone_mutex;

} // namespace

const std::vector<ConeVector>& enumerate_cone(const LorentzFrame& fr, long heightBound,
                                              bool dual, const Rat& normFloor) {
	ConeKey key{fr.name, heightBound, dual, rat_to_string(normFloor)};
	std::lock_guard<std::mutex> lock(g_cone_mutex);
	auto it = g_cone_cache.find(key);
	if (it != g_cone_cache.end()) return it->second;

	std::vector<ConeVector> out;
	long n = fr.rank();
	long kr = fr.K.rank();

	std::vector<RVec> kinv;
	if (kr) kinv = fr.K.gram_inverse();

	if (dual) {
		for (long ye = 0; ye <= heightBound; ++ye) {
			for (long yf = 0; ye + yf <= heightBound; ++yf) {
				Rat radius = Rat(2 * ye) * Rat(yf) / Rat(fr.N) - normFloor;
				if (radius < 0) continue;
				std::vector<IVec> ks;
				if (kr == 0) ks.push_back({});
				else {
					std::vector<RVec> pd(kr, RVec(kr));
					for (long i = 0; i < kr; ++i)
						for (long j = 0; j < kr; ++j) pd[i][j] = kinv[i][j] / Rat(fr.s);
					ks = enumerate_ball(pd, radius);
				}
				for (auto& yk : ks) {
					ConeVector cv;
					cv.y.resize(n);
					cv.y[0] = ye;
					cv.y[1] = yf;
					for (long i = 0; i < kr; ++i) cv.y[2 + i] = yk[i];
					cv.norm = fr.norm_dual(cv.y);
					cv.height = ye + yf;
					out.push_back(std::move(cv));
				}
			}
		}
	} else {
		for (long a = 0; fr.N * a <= heightBound; ++a) {
			for (long b = 0; fr.N * (a + b) <= heightBound; ++b) {
				Rat radius = (Rat(2 * fr.N) * Rat(a) * Rat(b) - normFloor) / Rat(fr.s);
				if (radius < 0) continue;
				std::vector<IVec> ks;
				if (kr == 0) ks.push_back({});
				else {
					std::vector<RVec> pd(kr, RVec(kr));
					for (long i = 0; i < kr; ++i)
						for (long j = 0; j < kr; ++j) pd[i][j] = Rat(fr.K.gram[i][j]);
					ks = enumerate_ball(pd, radius);
				}
				for (auto& mk : ks) {
					IVec x(n, 0);
					x[0] = a;
					x[1] = b;
					for (long i = 0; i < kr; ++i) x[2 + i] = mk[i];
					ConeVector cv;
					cv.y = fr.to_dual_coords(x);
					cv.norm = Rat(fr.L.pair(x, x));
					cv.height = fr.N * (a + b);
					out.push_back(std::move(cv));
				}
			}
		}
	}
	std::sort(out.begin(), out.end());
	auto [ins, ok] = g_cone_cache.emplace(std::move(key), std::move(out));
	(void)ok;
	return ins->second;
}

long dual_divisibility(const IVec& y) {
	long g = 0;
	for (long v : y) g = std::gcd(g, std::abs(v));
	return g == 0 ? 1 : g;
}

} // namespace oqm
