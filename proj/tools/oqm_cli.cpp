// Command-line front end. Builds a JSON job description from flags (or a
// flat key=value config file) and drives it through the C API in orthoqm.h.

#include <orthoqm.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using Json = nlohmann::ordered_json;

// flat key = value lines, optional [section] headers prefixing keys
std::map<std::string, std::string> parse_config_file(const std::string& path) {
	std::map<std::string, std::string> kv;
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open config file: " + path);
	std::string line, section;
	while (std::getline(in, line)) {
		auto hash = line.find('#');
		if (hash != std::string::npos) line = line.substr(0, hash);
		auto l = line.find_first_not_of(" \t");
		if (l == std::string::npos) continue;
		auto r = line.find_last_not_of(" \t\r");
		line = line.substr(l, r - l + 1);
		if (line.empty()) continue;
		if (line.front() == '[' && line.back() == ']') {
			section = line.substr(1, line.size() - 2) + ".";
			continue;
		}
		auto eq = line.find('=');
		if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
		auto trim = [](std::string s) {
			auto a = s.find_first_not_of(" \t");
			auto b = s.find_last_not_of(" \t");
			return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
		};
		kv[section + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
	}
	return kv;
}

uint64_t fnv1a(const std::string& s) {
	uint64_t h = 1469598103934665603ull;
	for (unsigned char c : s) {
		h ^= c;
		h *= 1099511628211ull;
	}
	return h;
}

bool cache_load(const std::string& dir, const std::string& key, std::string& out) {
	std::string path = dir + "/oqm-" + std::to_string(fnv1a(key)) + ".json";
	int fd = ::open(path.c_str(), O_RDONLY);
	if (fd < 0) return false;
	::flock(fd, LOCK_SH);
	std::ostringstream ss;
	char buf[4096];
	ssize_t n;
	while ((n = ::read(fd, buf, sizeof buf)) > 0) ss.write(buf, n);
	::flock(fd, LOCK_UN);
	::close(fd);
	out = ss.str();
	return !out.empty();
}

void cache_store(const std::string& dir, const std::string& key, const std::string& payload) {
	std::string path = dir + "/oqm-" + std::to_string(fnv1a(key)) + ".json";
	int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
	if (fd < 0) return;
	::flock(fd, LOCK_EX);
	size_t off = 0;
	while (off < payload.size()) {
		ssize_t n = ::write(fd, payload.data() + off, payload.size() - off);
		if (n <= 0) break;
		off += (size_t)n;
	}
	::flock(fd, LOCK_UN);
	::close(fd);
}

// rough cone-size estimate for the guard rail
double enumeration_estimate(const std::string& cmd, long height) {
	if (cmd == "enriques-fg" || cmd == "fj-slice" || cmd == "phi4" || cmd == "lift-g0p")
		return 0.8 * std::pow((double)std::max(height, 1L), 8.0);
	return std::pow((double)std::max(height, 1L) + 1.0, 2.0);
}

void emit_csv(const Json& out, std::ostream& os) {
	if (out.contains("table")) {
		os << "degree,value\n";
		for (auto& row : out.at("table")) {
			std::string d;
			for (auto& c : row.at("d")) {
				if (!d.empty()) d += " ";
				d += std::to_string(c.get<long>());
			}
			os << '"' << d << "\"," << row.at("N").get<std::string>() << "\n";
		}
		return;
	}
	if (out.contains("series")) {
		os << "beta,tensor_index,udeg,value\n";
		for (auto& e : out.at("series").at("coeffs")) {
			auto joined = [](const Json& arr) {
				std::string s;
				for (auto& c : arr) {
					if (!s.empty()) s += " ";
					s += std::to_string(c.get<long>());
				}
				return s;
			};
			for (auto& term : e.at("upoly")) {
				std::string udeg;
				for (auto& c : term.at("udeg")) {
					if (!udeg.empty()) udeg += " ";
					udeg += std::to_string(c.get<long>());
				}
				os << '"' << joined(e.at("beta")) << "\",\"" << joined(e.at("tensor_index"))
				   << "\",\"" << udeg << "\"," << term.at("val").get<std::string>() << "\n";
			}
		}
		return;
	}
	os << out.dump(1, '\t') << "\n";
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"orthoqm: orthogonal quasimodular forms, theta lifts and "
	             "Gromov-Witten generating series"};
	app.set_version_flag("--version", oqm_version());
	app.require_subcommand(1);

	std::string configFile, cacheDir, outputPath, format = "json";
	bool force = false;
	app.add_option("--config", configFile, "flat key=value configuration file");
	app.add_option("--cache-dir", cacheDir, "result cache directory (advisory-locked)");
	app.add_option("-o,--output", outputPath, "write the result to a file");
	app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
	app.add_flag("--force", force, "run even when the enumeration estimate is large");

	long g = 2, height = 3, m = 1, genus = 0, dmax = 3, qtrunc = 0;
	std::string input, suite = "all";
	bool checkLift = false, completion = false, audit = false;
	std::vector<double> z1{0.0, 1.0}, z2{0.0, 2.0};

	auto addHeight = [&](CLI::App* c) { c->add_option("--height", height, "height bound"); };
	CLI::App* cLiftCt = app.add_subcommand("lift-ct", "constant-term theta lift on U+U");
	CLI::App* cLiftAh = app.add_subcommand("lift-ah", "almost-holomorphic theta lift on U+U");
	for (CLI::App* c : {cLiftCt, cLiftAh}) {
		addHeight(c);
		c->add_option("--input", input, "g2hat | delta | e10-delta-completion");
		c->add_option("--qtrunc", qtrunc, "q-expansion truncation");
	}
	CLI::App* cG0p = app.add_subcommand("lift-g0p", "Gamma_0(p) pipeline lift");
	addHeight(cG0p);
	cG0p->add_option("--input", input, "enriques | eta8-8");
	cG0p->add_option("--g", g, "Enriques genus");
	CLI::App* cRep = app.add_subcommand("lift-report", "numeric lift families on U+U");
	cRep->add_option("--input", input, "one | d-e10-delta");
	cRep->add_option("--qtrunc", qtrunc, "q-expansion truncation");
	cRep->add_option("--z1", z1, "first point (re im)")->expected(2);
	cRep->add_option("--z2", z2, "second point (re im)")->expected(2);
	CLI::App* cFg = app.add_subcommand("enriques-fg", "Enriques Hodge series F_g");
	addHeight(cFg);
	cFg->add_option("--g", g, "genus (>= 2)");
	cFg->add_flag("--check-lift", checkLift, "cross-check the theta-lift pipeline");
	CLI::App* cPhi = app.add_subcommand("phi4", "Borcherds-Enriques product");
	addHeight(cPhi);
	CLI::App* cStu = app.add_subcommand("stu", "STU fiber invariants");
	cStu->add_option("--genus", genus, "genus");
	cStu->add_option("--dmax", dmax, "degree bound");
	CLI::App* cBan = app.add_subcommand("banana", "banana genus-0 potential");
	cBan->add_option("--dmax", dmax, "degree bound");
	cBan->add_flag("--support-audit", audit, "report absent a(n) lookups");
	CLI::App* cFj = app.add_subcommand("fj-slice", "Fourier-Jacobi slice of F_g");
	addHeight(cFj);
	cFj->add_option("--g", g, "genus");
	cFj->add_option("--m", m, "index");
	cFj->add_flag("--completion", completion, "slice the almost-holomorphic completion");
	CLI::App* cWeil = app.add_subcommand("weil-check", "Weil representation relations");
	CLI::App* cVer = app.add_subcommand("verify", "run the identity suites");
	addHeight(cVer);
	cVer->add_option("--suite", suite,
	                 "all | commutator | derivation | slot-symmetry | intertwining | zemel | "
	                 "enriques-cross | hae | fourier-jacobi | phi4");

	for (CLI::App* c : {cLiftCt, cLiftAh, cG0p, cRep, cFg, cPhi, cStu, cBan, cFj, cWeil, cVer})
		c->fallthrough();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	if (!configFile.empty()) {
		try {
			auto kv = parse_config_file(configFile);
			CLI::App* sub0 = app.get_subcommands().front();
			auto overridden = [&](const std::string& flag) {
				auto* o1 = sub0->get_option_no_throw("--" + flag);
				if (o1 && o1->count() > 0) return true;
				auto* o2 = app.get_option_no_throw("--" + flag);
				return o2 && o2->count() > 0;
			};
			auto use = [&](const std::string& key, auto& target) {
				auto it = kv.find(key);
				if (it == kv.end()) return;
				std::istringstream ss(it->second);
				ss >> target;
			};
			if (!overridden("height")) use("height", height);
			if (!overridden("g")) use("g", g);
			if (!overridden("m")) use("m", m);
			if (!overridden("genus")) use("genus", genus);
			if (!overridden("dmax")) use("dmax", dmax);
			if (!overridden("qtrunc")) use("qtrunc", qtrunc);
			if (!overridden("input") && kv.count("input")) input = kv["input"];
			if (!overridden("suite") && kv.count("suite")) suite = kv["suite"];
			if (kv.count("cache.dir") && cacheDir.empty()) cacheDir = kv["cache.dir"];
		} catch (const std::exception& e) {
			std::cerr << "oqm: " << e.what() << "\n";
			return 2;
		}
	}

	CLI::App* sub = app.get_subcommands().front();
	std::string cmd = sub->get_name();

	Json cfg;
	cfg["command"] = cmd;
	if (cmd == "enriques-fg") {
		cfg["g"] = g;
		cfg["height"] = height;
		if (checkLift) cfg["check_lift"] = true;
	} else if (cmd == "phi4") {
		cfg["height"] = height;
	} else if (cmd == "lift-ct" || cmd == "lift-ah") {
		if (!input.empty()) cfg["input"] = input;
		cfg["height"] = height;
		if (qtrunc > 0) cfg["qtrunc"] = qtrunc;
	} else if (cmd == "lift-g0p") {
		if (!input.empty()) cfg["input"] = input;
		cfg["g"] = g;
		cfg["height"] = height;
	} else if (cmd == "lift-report") {
		if (!input.empty()) cfg["input"] = input;
		if (qtrunc > 0) cfg["qtrunc"] = qtrunc;
		cfg["z1"] = z1;
		cfg["z2"] = z2;
	} else if (cmd == "fj-slice") {
		cfg["g"] = g;
		cfg["m"] = m;
		cfg["height"] = height;
		if (completion) cfg["completion"] = true;
	} else if (cmd == "stu") {
		cfg["genus"] = genus;
		cfg["dmax"] = dmax;
	} else if (cmd == "banana") {
		cfg["dmax"] = dmax;
		if (audit) cfg["support_audit"] = true;
	} else if (cmd == "verify") {
		cfg["suite"] = suite;
		cfg["height"] = height;
	}

	if (enumeration_estimate(cmd, height) > 1e7 && !force) {
		std::cerr << "oqm: enumeration estimate exceeds 10^7 cone vectors; "
		             "re-run with --force to proceed\n";
		return 2;
	}

	std::string cfgStr = cfg.dump();
	std::string payload;
	bool fromCache = false;
	if (!cacheDir.empty() && cache_load(cacheDir, cfgStr, payload)) fromCache = true;

	if (!fromCache) {
		oqm_job* job = oqm_job_new(cfgStr.c_str());
		if (!job) {
			std::cerr << "oqm: allocation failure\n";
			return 2;
		}
		int status = oqm_job_run(job);
		if (status != 0) {
			std::cerr << "oqm: " << oqm_job_error(job) << "\n";
			oqm_job_free(job);
			return status;
		}
		payload = oqm_job_output(job);
		oqm_job_free(job);
		if (!cacheDir.empty()) cache_store(cacheDir, cfgStr, payload);
	}

	std::ostream* os = &std::cout;
	std::ofstream file;
	if (!outputPath.empty()) {
		file.open(outputPath);
		if (!file) {
			std::cerr << "oqm: cannot write " << outputPath << "\n";
			return 2;
		}
		os = &file;
	}
	if (format == "csv") emit_csv(Json::parse(payload), *os);
	else *os << payload << "\n";

	if (cmd == "verify") {
		Json out = Json::parse(payload);
		for (auto& s : out.at("suites"))
			std::cerr << (s.at("pass").get<bool>() ? "PASS " : "FAIL ")
			          << s.at("suite").get<std::string>() << " (" << s.at("cases").get<long>()
			          << " cases)\n";
		if (!out.value("pass", true)) return 1;
	}
	if (cmd == "enriques-fg") {
		Json out = Json::parse(payload);
		if (out.contains("lattice_sum_equals_lift")) {
			std::cerr << "lattice-sum == lift: "
			          << out.at("lattice_sum_equals_lift").get<std::string>() << "\n";
			if (out.at("lattice_sum_equals_lift").get<std::string>() != "PASS") return 1;
		}
	}
	return 0;
}
