#include "oqm/jobs.hpp"

#include "oqm/gw.hpp"
#include "oqm/jacobi.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

namespace oqm {

namespace {

using Json = nlohmann::ordered_json;

Json qexp_json(const QExp& f) {
	Json j;
	j["P"] = f.P;
	j["trunc"] = f.trunc == QExp::kExact ? "exact" : rat_to_string(f.trunc_exponent());
	Json coeffs = Json::array();
	for (auto& [k, v] : f.c)
		coeffs.push_back({rat_to_string(rat(k, f.P)), rat_to_string(v)});
	j["coeffs"] = coeffs;
	return j;
}

Json nupoly_json(const NuPoly& p, long n) {
	Json arr = Json::array();
	for (auto& [key, v] : p.mono) {
		Json term;
		Json deg = Json::array();
		for (long i = 0; i < n; ++i) deg.push_back(NuPoly::mono_exp(key, i));
		term["udeg"] = deg;
		term["val"] = rat_to_string(v);
		arr.push_back(term);
	}
	return arr;
}

Json ortho_json(const OrthoSeries& F) {
	Json j;
	j["lattice"] = F.frame.name;
	Json gram = Json::array();
	for (auto& row : F.frame.L.gram) gram.push_back(row);
	j["gram"] = gram;
	j["weight"] = F.k;
	j["rank"] = F.s;
	j["height_bound"] = F.heightBound;
	Json coeffs = Json::array();
	long n = F.n();
	for (auto& [y, T] : F.coef) {
		for (auto& [idx, p] : T.a) {
			Json entry;
			entry["beta"] = y;
			IVec tidx;
			uint32_t rem = idx;
			for (long m = 0; m < F.s; ++m) { tidx.insert(tidx.begin(), rem % n); rem /= n; }
			entry["tensor_index"] = tidx;
			entry["upoly"] = nupoly_json(p, n);
			coeffs.push_back(entry);
		}
	}
	j["coeffs"] = coeffs;
	return j;
}

Json slice_json(const JacobiSlice& s) {
	Json j;
	j["m"] = s.m;
	j["weight"] = s.weight;
	Json entries = Json::array();
	for (auto& [key, p] : s.coef) {
		Json e;
		e["n"] = key.first;
		e["alpha"] = key.second;
		Json up = Json::array();
		for (auto& [mk, v] : p.mono)
			up.push_back({NuPoly::mono_exp(mk, s.uVar), rat_to_string(v)});
		e["upoly"] = up;
		entries.push_back(e);
	}
	j["entries"] = entries;
	return j;
}

long get_long(const Json& j, const std::string& key, long defv, bool required = false) {
	if (!j.contains(key)) {
		if (required) throw std::domain_error("missing field: " + key);
		return defv;
	}
	return j.at(key).get<long>();
}

// ---- the verify suites ----

struct SuiteResult {
	std::string name;
	bool pass = false;
	long cases = 0;
	std::string note;
};

OrthoSeries random_form(std::mt19937& rng, const LorentzFrame& fr, long k, long s,
                        long heightBound, long depth) {
	OrthoSeries F = OrthoSeries::zero(fr, k, s, heightBound);
	auto& cone = enumerate_cone(fr, heightBound, true);
	std::uniform_int_distribution<size_t> pickKey(0, cone.size() - 1);
	long n = fr.rank();
	uint32_t dim = 1;
	for (long i = 0; i < s; ++i) dim *= (uint32_t)n;
	std::uniform_int_distribution<uint32_t> pickIdx(0, dim - 1);
	std::uniform_int_distribution<long> pickVar(0, n - 1), pickDeg(0, depth), num(-5, 5);
	for (int rep = 0; rep < 8; ++rep) {
		NuPoly p = NuPoly::constant(Rat(num(rng)));
		long dd = pickDeg(rng);
		for (long i = 0; i < dd; ++i) p = p.mul_u(pickVar(rng));
		F.add(cone[pickKey(rng)].y, pickIdx(rng), p);
	}
	F.prune();
	return F;
}

SuiteResult suite_commutator() {
	SuiteResult r{"commutator", true, 0, ""};
	std::mt19937 rng(1234);
	for (int rep = 0; rep < 20; ++rep) {
		LorentzFrame fr = (rep % 2) ? LorentzFrame::U_E8m1() : LorentzFrame::UU();
		long s = rep % 3;
		OrthoSeries F = random_form(rng, fr, 1 + rep % 5, s, (rep % 2) ? 2 : 3, 2);
		RVec lam(fr.rank(), Rat(0)), mu(fr.rank(), Rat(0));
		std::uniform_int_distribution<long> c(-3, 3);
		for (long i = 0; i < fr.rank(); ++i) { lam[i] = Rat(c(rng)); mu[i] = Rat(c(rng)); }
		if (lam == RVec(fr.rank(), Rat(0))) lam[0] = 1;
		if (mu == RVec(fr.rank(), Rat(0))) mu[1] = 1;
		if (!commutator_residual(F, lam, mu).is_zero()) r.pass = false;
		++r.cases;
	}
	return r;
}

SuiteResult suite_derivation() {
	SuiteResult r{"derivation", true, 0, ""};
	std::mt19937 rng(77);
	LorentzFrame uu = LorentzFrame::UU();
	for (int rep = 0; rep < 10; ++rep) {
		OrthoSeries F = random_form(rng, uu, 2, 0, 4, 2);
		OrthoSeries G = random_form(rng, uu, 3, 0, 4, 2);
		OrthoSeries FG = ortho_mul(F, G);
		bool okL = ortho_lower(FG) == (ortho_mul(ortho_lower(F), G) + ortho_mul(F, ortho_lower(G)));
		bool okR = ortho_raise(FG) == (ortho_mul(ortho_raise(F), G) + ortho_mul(F, ortho_raise(G)));
		if (!okL || !okR) r.pass = false;
		++r.cases;
	}
	return r;
}

SuiteResult suite_symmetry() {
	SuiteResult r{"slot-symmetry", true, 0, ""};
	std::mt19937 rng(99);
	LorentzFrame fr = LorentzFrame::UU();
	for (int rep = 0; rep < 6; ++rep) {
		OrthoSeries F = random_form(rng, fr, 4, 1, 3, 2);
		long n = fr.rank();
		for (const OrthoSeries& T : {ortho_lower(ortho_lower(F)), ortho_raise(ortho_raise(F))}) {
			for (auto& [y, ten] : T.coef)
				for (auto& [idx, p] : ten.a) {
					long b = idx % n, a = (idx / n) % n;
					uint32_t swp = (uint32_t)(idx / (n * n)) * (uint32_t)(n * n) + (uint32_t)(b * n + a);
					const NuPoly* q = ten.find(swp);
					if (!q || !(*q == p)) r.pass = false;
				}
		}
		++r.cases;
	}
	return r;
}

SuiteResult suite_intertwining() {
	SuiteResult r{"intertwining", true, 0, ""};
	// U+U: L[Lift G2hat] = -R[Lift(lowered)]
	LorentzFrame uu = LorentzFrame::UU();
	TrivialLevelCoeffs C(g2_hat(Rat(40)));
	OrthoSeries lifted = lift_ah(C, uu, 5);
	OrthoSeries lhs = ortho_lower(lifted);
	OrthoSeries rhs = raise_of_k0_lift(*C.lowered(), uu, 5) * Rat(-1);
	if (!(lhs == rhs)) r.pass = false;
	++r.cases;
	// Enriques g = 2 (the recursion asserts the identity internally)
	try {
		enriques_fg_star(2, 2);
	} catch (...) {
		r.pass = false;
	}
	++r.cases;
	return r;
}

SuiteResult suite_zemel() {
	SuiteResult r{"zemel", true, 0, ""};
	QExp f82 = eta_quotient({{1, 8}, {2, 8}}, Rat(30));
	DepthForm f = DepthForm::holomorphic(Rat(8), f82);
	LorentzFrame fr = LorentzFrame::U_scaled(2);
	Gamma0pCoeffs C(f, f, 2, 0, Rat(1));
	OrthoSeries lhs = zemel_raise(lift_ct(C, fr, 5));
	Gamma0pCoeffs CR(maass_raise(f), maass_raise(f), 2, 0, rat(1, 2));
	OrthoSeries rhs = lift_ah(CR, fr, 5) * Rat(2);
	r.pass = (lhs == rhs);
	r.cases = 1;
	return r;
}

SuiteResult suite_enriques(long height) {
	SuiteResult r{"enriques-cross", true, 0, ""};
	for (long g = 2; g <= 3; ++g) {
		if (!(enriques_fg_lattice(g, height) == enriques_fg_lift_ct(g, height))) r.pass = false;
		++r.cases;
	}
	return r;
}

SuiteResult suite_hae(long height) {
	SuiteResult r{"hae", true, 1, ""};
	r.pass = enriques_hae_residual(3, height).is_zero();
	return r;
}

SuiteResult suite_fj(long height) {
	SuiteResult r{"fourier-jacobi", true, 0, ""};
	OrthoSeries star = enriques_fg_star(2, height);
	for (long m = 0; m <= 1; ++m) {
		if (!fj_lower_residual(star, m, {}).is_zero()) r.pass = false;
		++r.cases;
	}
	return r;
}

SuiteResult suite_phi4(long height) {
	SuiteResult r{"phi4", true, 1, ""};
	OrthoSeries phi = borcherds_phi4(height);
	OrthoSeries direct = borcherds_phi4_direct(std::min(height, 2L));
	r.pass = (phi == direct);
	return r;
}

Json suites_to_json(const std::vector<SuiteResult>& suites, bool& allPass) {
	Json arr = Json::array();
	allPass = true;
	for (auto& s : suites) {
		Json j;
		j["suite"] = s.name;
		j["cases"] = s.cases;
		j["pass"] = s.pass;
		if (!s.note.empty()) j["note"] = s.note;
		arr.push_back(j);
		if (!s.pass) allPass = false;
	}
	return arr;
}

Json run_command(const Json& cfg, int& status) {
	std::string cmd = cfg.at("command").get<std::string>();
	Json out;
	out["command"] = cmd;

	if (cmd == "enriques-fg") {
		long g = get_long(cfg, "g", 2, true);
		long height = get_long(cfg, "height", 3);
		if (g < 2) throw std::domain_error("enriques-fg: g >= 2 required");
		OrthoSeries lat = enriques_fg_lattice(g, height);
		out["series"] = ortho_json(lat);
		if (cfg.value("check_lift", false)) {
			bool ok = (lat == enriques_fg_lift_ct(g, height));
			out["lattice_sum_equals_lift"] = ok ? "PASS" : "FAIL";
			if (!ok) status = 1;
		}
		return out;
	}
	if (cmd == "phi4") {
		long height = get_long(cfg, "height", 3);
		out["series"] = ortho_json(borcherds_phi4(height));
		return out;
	}
	if (cmd == "lift-ct" || cmd == "lift-ah") {
		std::string input = cfg.value("input", "g2hat");
		long height = get_long(cfg, "height", 6);
		Rat qtrunc(get_long(cfg, "qtrunc", height * height + 4));
		LorentzFrame uu = LorentzFrame::UU();
		DepthForm F;
		if (input == "g2hat") F = g2_hat(qtrunc);
		else if (input == "delta") F = DepthForm::holomorphic(Rat(12), delta_cusp(qtrunc));
		else if (input == "e10-delta-completion")
			F = maass_raise(DepthForm::holomorphic(Rat(-2), e10_over_delta(qtrunc)));
		else throw std::domain_error("lift: unknown input " + input);
		TrivialLevelCoeffs C(F);
		OrthoSeries L = (cmd == "lift-ct") ? lift_ct(C, uu, height) : lift_ah(C, uu, height);
		out["series"] = ortho_json(L);
		return out;
	}
	if (cmd == "lift-g0p") {
		long height = get_long(cfg, "height", 4);
		std::string input = cfg.value("input", "enriques");
		if (input == "enriques") {
			long g = get_long(cfg, "g", 2);
			long pn = (height / 2 + 1) * (height / 2 + 1) * 2 + 4;
			Gamma0pCoeffs C(enriques_pair(g, Rat(pn)), enriques_pair_fricke(g, Rat(pn)), 2, 8);
			if (!coefficient_condition(C.f, C.fFr, 2, 10))
				throw std::domain_error("lift-g0p: coefficient condition failed");
			out["series"] = ortho_json(lift_ah(C, LorentzFrame::U2_E8m2(), height));
		} else if (input == "eta8-8") {
			Rat T(std::max(40L, height * height + 4));
			QExp f82 = eta_quotient({{1, 8}, {2, 8}}, T);
			DepthForm f = DepthForm::holomorphic(Rat(8), f82);
			if (!coefficient_condition(f, f, 2, 10))
				throw std::domain_error("lift-g0p: coefficient condition failed");
			Gamma0pCoeffs C(f, f, 2, 0, Rat(1));
			out["series"] = ortho_json(lift_ct(C, LorentzFrame::U_scaled(2), height));
		} else {
			throw std::domain_error("lift-g0p: unknown input " + input);
		}
		return out;
	}
	if (cmd == "lift-report") {
		std::string input = cfg.value("input", "one");
		Rat qtrunc(get_long(cfg, "qtrunc", 30));
		DepthForm F;
		long k = 0;
		if (input == "one") F = DepthForm::holomorphic(Rat(0), QExp(Rat(1)));
		else if (input == "d-e10-delta")
			F = maass_raise(DepthForm::holomorphic(Rat(-2), e10_over_delta(qtrunc)));
		else throw std::domain_error("lift-report: unknown input " + input);
		auto pt = [&](const std::string& key, double defx, double defy) {
			double x = defx, y = defy;
			if (cfg.contains(key)) {
				x = cfg.at(key).at(0).get<double>();
				y = cfg.at(key).at(1).get<double>();
			}
			return Cplx(x, y);
		};
		Cplx z1 = pt("z1", 0.0, 1.0), z2 = pt("z2", 0.0, 2.0);
		LiftReport rep = lift_report_uu(F, k, z1, z2);
		out["families"] = {
			{"main_pos", rep.main_pos}, {"main_neg", rep.main_neg},
			{"zeta_tower", rep.zeta_tower}, {"zeta_sub", rep.zeta_sub},
			{"digamma", rep.digamma}, {"euler_log", rep.euler_log},
			{"bernoulli", rep.bernoulli}, {"phi0", rep.phi0},
		};
		out["value"] = rep.total();
		out["atoms"] = rep.atoms;
		return out;
	}
	if (cmd == "fj-slice") {
		long g = get_long(cfg, "g", 2);
		long m = get_long(cfg, "m", 1);
		long height = get_long(cfg, "height", 4);
		bool star = cfg.value("completion", false);
		OrthoSeries F = star ? enriques_fg_star(g, height) : enriques_fg_lattice(g, height);
		out["slice"] = slice_json(fj_slice(F, m, {}));
		return out;
	}
	if (cmd == "weil-check") {
		Json arr = Json::array();
		std::vector<EvenLattice> mats = {
			EvenLattice::A1(1), EvenLattice::U(2), EvenLattice::U(3),
			EvenLattice::dsum(EvenLattice::A1(1), EvenLattice::A1(-3)),
			EvenLattice::dsum(EvenLattice::U(2), EvenLattice::U(2)),
			EvenLattice::dsum(EvenLattice::U(2), EvenLattice::A1(1)),
		};
		bool ok = true;
		for (auto& L : mats) {
			WeilCheckReport rep = weil_check(L, weil_matrices(L));
			Json j;
			j["lattice"] = L.name;
			j["defect_S8"] = rep.defect_S8;
			j["defect_ST6"] = rep.defect_ST6;
			j["defect_S4"] = rep.defect_S4;
			bool p = rep.max_defect() < 1e-10;
			j["pass"] = p;
			ok = ok && p;
			arr.push_back(j);
		}
		out["lattices"] = arr;
		if (!ok) status = 1;
		return out;
	}
	if (cmd == "stu") {
		long genus = get_long(cfg, "genus", 0);
		long dmax = get_long(cfg, "dmax", 3);
		K3Preset stu = stu_preset(Rat(dmax * dmax + 8));
		Json table = Json::array();
		for (long d1 = 1; d1 <= dmax; ++d1)
			for (long d2 = 1; d2 <= dmax; ++d2) {
				Json row;
				row["d"] = {d1, d2};
				row["N"] = rat_to_string(k3_fiber_invariant(stu, genus, {d1, d2}));
				table.push_back(row);
			}
		out["table"] = table;
		return out;
	}
	if (cmd == "banana") {
		long dmax = get_long(cfg, "dmax", 3);
		BananaSeries f0 = banana_f0(dmax);
		Json table = Json::array();
		for (auto& [d, v] : f0.coef) {
			Json row;
			row["d"] = {d[0], d[1], d[2]};
			row["N"] = rat_to_string(v);
			table.push_back(row);
		}
		out["table"] = table;
		if (cfg.value("support_audit", false)) out["absent_a_arguments"] = f0.missing_support;
		return out;
	}
	if (cmd == "verify") {
		std::string suite = cfg.value("suite", "all");
		long height = get_long(cfg, "height", 2);
		std::vector<SuiteResult> suites;
		auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
		if (want("commutator")) suites.push_back(suite_commutator());
		if (want("derivation")) suites.push_back(suite_derivation());
		if (want("slot-symmetry")) suites.push_back(suite_symmetry());
		if (want("intertwining")) suites.push_back(suite_intertwining());
		if (want("zemel")) suites.push_back(suite_zemel());
		if (want("enriques-cross")) suites.push_back(suite_enriques(height));
		if (want("hae")) suites.push_back(suite_hae(height));
		if (want("fourier-jacobi")) suites.push_back(suite_fj(height));
		if (want("phi4")) suites.push_back(suite_phi4(height));
		if (suites.empty() && suite != "all") {
			// unknown suite name: trivially empty run, flagged as such
			out["suites"] = Json::array();
			out["note"] = "no cases";
			out["pass"] = true;
			return out;
		}
		bool allPass = true;
		out["suites"] = suites_to_json(suites, allPass);
		out["pass"] = allPass;
		if (!allPass) status = 1;
		return out;
	}
	throw std::domain_error("unknown command: " + cmd);
}

} // namespace

JobResult run_job(const std::string& configJson) {
	JobResult res;
	Json cfg;
	try {
		cfg = Json::parse(configJson);
	} catch (const std::exception& e) {
		res.status = 2;
		res.error = std::string("invalid JSON: ") + e.what();
		return res;
	}
	try {
		int status = 0;
		Json out = run_command(cfg, status);
		res.status = status;
		res.output = out.dump(1, '\t');
	} catch (const std::domain_error& e) {
		res.status = 2; // precondition / configuration error
		res.error = e.what();
	} catch (const std::logic_error& e) {
		res.status = 3; // internal consistency (exactness assertions)
		res.error = e.what();
	} catch (const std::exception& e) {
		res.status = 2;
		res.error = e.what();
	}
	return res;
}

} // namespace oqm
