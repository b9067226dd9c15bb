#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncdc/expression.hpp"
#include "ncdc/realization_io.hpp"
#include "ncdc/report.hpp"
#include "ncdc/structure_io.hpp"

namespace ncdc::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

inline int default_order()
{
	const char *env = std::getenv("NCDC_DEFAULT_ORDER");
	if (!env || !*env)
		return 6;
	std::size_t used = 0;
	int value = -1;
	try {
		value = std::stoi(env, &used);
	} catch (const std::exception &) {
		used = 0;
	}
	if (used != std::string(env).size() || value < 0)
		throw InputError(std::string("NCDC_DEFAULT_ORDER must be a non-negative integer, got '") + env + "'");
	return value;
}

inline std::string read_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw InputError("cannot read '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline void write_file(const std::string &path, const std::string &text)
{
	std::ofstream out(path, std::ios::binary);
	if (!out || !(out << text))
		throw InputError("cannot write '" + path + "'");
}

inline Rational parse_real(const std::string &text, const std::string &what)
{
	GaussianRational v;
	try {
		v = parse_value(text);
	} catch (const ParseError &e) {
		throw ParseError(what + ": " + e.reason(), e.text(), e.position());
	}
	if (!v.is_real())
		throw InputError(what + " must be real, got '" + text + "'");
	return v.re();
}

inline std::vector<Rational> parse_real_list(const std::string &text, const std::string &what)
{
	std::vector<Rational> out;
	std::size_t start = 0;
	while (true) {
		const auto comma = text.find(',', start);
		std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
		item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
		           item.end());
		out.push_back(parse_real(item, what));
		if (comma == std::string::npos)
			break;
		start = comma + 1;
	}
	return out;
}

inline KappaFamily parse_family(std::string name)
{
	std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
	if (name == "s1")
		return KappaFamily::S1;
	if (name == "s2")
		return KappaFamily::S2;
	if (name == "s3")
		return KappaFamily::S3;
	throw InputError("--family must be one of s1, s2, s3, got '" + name + "'");
}

inline const char *family_name(KappaFamily f)
{
	return f == KappaFamily::S1 ? "s1" : f == KappaFamily::S2 ? "s2" : "s3";
}

inline nlohmann::ordered_json momentum_json(const MomentumPolynomial &p)
{
	return terms_json(p.to_weyl());
}

inline CheckResult filtered_check(const std::string &name, const StructureReport &report)
{
	StructureReport part;
	for (const auto &v : report.violations)
		if (v.check == name)
			part.violations.push_back(v);
	return make_check(name, part);
}

inline int command_validate(RunReport &rep, const std::string &file, bool calculus)
{
	rep.inputs["file"] = file;
	rep.inputs["calculus"] = calculus;
	const SuperStructure s = read_structure(read_file(file));
	rep.inputs["n"] = s.n;
	rep.inputs["m"] = s.m;
	const StructureReport report = validate_structure(s);
	for (const char *name : {"antisymmetry", "jacobi-coordinates", "jacobi-forms"})
		rep.checks.push_back(filtered_check(name, report));
	if (calculus)
		rep.checks.push_back(make_check("leibniz-compatibility", check_calculus_condition(s)));
	return rep.passed() ? kExitPass : kExitFail;
}

inline int command_kappa(RunReport &rep, int dim, const std::string &family, const std::string &c,
                         const std::string &a, const std::string &out)
{
	const KappaFamily fam = parse_family(family);
	const Rational cv = parse_real(c, "--c");
	const std::vector<Rational> av = parse_real_list(a, "--a");
	rep.inputs["dim"] = dim;
	rep.inputs["family"] = family_name(fam);
	rep.inputs["c"] = detail::rational_string(cv);
	auto alist = nlohmann::ordered_json::array();
	for (const auto &v : av)
		alist.push_back(detail::rational_string(v));
	rep.inputs["a"] = alist;
	if (!out.empty())
		rep.inputs["out"] = out;
	SuperStructure s(1, 1);
	try {
		s = build_kappa(dim, fam, cv, av);
	} catch (const std::domain_error &e) {
		throw InputError(e.what());
	}
	std::size_t nonzero_c = 0, stored_c = 0, nonzero_k = 0;
	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = 0; nu < s.n; ++nu)
			for (int l = 0; l < s.n; ++l)
				if (!s.C(mu, nu, l).is_zero()) {
					++nonzero_c;
					if (mu < nu)
						++stored_c;
				}
	for (int p = 0; p < s.m; ++p)
		for (int mu = 0; mu < s.n; ++mu)
			for (int q = 0; q < s.m; ++q)
				if (!s.K(p, mu, q).is_zero())
					++nonzero_k;
	rep.results["nonzeroC"] = nonzero_c;
	rep.results["storedC"] = stored_c;
	rep.results["nonzeroK"] = nonzero_k;
	const std::string text = write_structure(s);
	if (out.empty())
		rep.results["structure"] = nlohmann::ordered_json::parse(text);
	else
		write_file(out, text);
	return kExitPass;
}

inline int command_verify(RunReport &rep, const std::string &file, int order, int trials, std::uint64_t seed,
                          const std::string &suite)
{
	if (suite != "brackets" && suite != "shift" && suite != "calculus" && suite != "all")
		throw InputError("--suite must be one of brackets, shift, calculus, all");
	if (order < 0 || trials < 0)
		throw InputError("--order and --trials must be non-negative");
	rep.inputs["file"] = file;
	rep.inputs["order"] = order;
	rep.inputs["trials"] = trials;
	rep.inputs["seed"] = seed;
	rep.inputs["suite"] = suite;
	const SuperStructure s = read_structure(read_file(file));
	if (suite == "calculus")
		require_calculus(s);
	const StructureReport valid = validate_structure(s);
	if (!valid.passed()) {
		rep.checks.push_back(make_check("structure-validation", valid));
		rep.checks.push_back(skipped_check(suite, "structure does not validate"));
		return kExitFail;
	}
	const SuiteOptions opts{order, trials, seed};
	auto append = [&](std::vector<CheckResult> part) {
		for (auto &c : part)
			rep.checks.push_back(std::move(c));
	};
	if (suite == "brackets" || suite == "all")
		append(brackets_suite(s, opts));
	if (suite == "shift" || suite == "all")
		append(shift_suite(s, opts));
	if (suite == "calculus")
		append(calculus_suite(s, opts));
	if (suite == "all") {
		if (has_calculus(s))
			append(calculus_suite(s, opts));
		else
			rep.checks.push_back(skipped_check(
			    "calculus", s.n != s.m ? "needs n == m" : "structure fails the Leibniz compatibility condition"));
	}
	return rep.passed() ? kExitPass : kExitFail;
}

inline nlohmann::ordered_json tensor_json(const std::vector<MomentumPolynomial> &T, int n, int m)
{
	auto out = nlohmann::ordered_json::array();
	for (int b = 0; b < m; ++b)
		for (int mu = 0; mu < n; ++mu)
			for (int a = 0; a < m; ++a) {
				const auto &p = T.at((static_cast<std::size_t>(b) * n + mu) * m + a);
				if (p.is_zero())
					continue;
				nlohmann::ordered_json e;
				e["b"] = b + 1;
				e["mu"] = mu + 1;
				e["a"] = a + 1;
				e["terms"] = momentum_json(p);
				out.push_back(std::move(e));
			}
	return out;
}

inline int command_conjecture(RunReport &rep, const std::string &file, int order)
{
	if (order < 0)
		throw InputError("--order must be non-negative");
	rep.inputs["file"] = file;
	rep.inputs["order"] = order;
	const SuperStructure s = read_structure(read_file(file));
	const StructureReport valid = validate_structure(s);
	if (!valid.passed()) {
		rep.checks.push_back(make_check("structure-validation", valid));
		return kExitFail;
	}
	const ConjectureReport cr = conjecture_test(s, order);
	CheckResult agree;
	agree.name = "h-equals-p";
	agree.agreement_order = cr.agreement_order;
	agree.status = cr.agreement_order >= std::min(order, 1) ? CheckStatus::Pass : CheckStatus::Fail;
	if (cr.first_mismatch)
		agree.note = "agreement reported, not assumed beyond first order";
	rep.checks.push_back(agree);
	CheckResult theta;
	theta.name = "theta-image-equality";
	theta.status = cr.theta_images_equal ? CheckStatus::Pass : CheckStatus::Fail;
	rep.checks.push_back(theta);

	rep.results["agreementOrder"] = cr.agreement_order;
	rep.results["requestedOrder"] = order;
	if (cr.first_mismatch) {
		const auto &mm = *cr.first_mismatch;
		nlohmann::ordered_json j;
		j["b"] = mm.b + 1;
		j["mu"] = mm.mu + 1;
		j["a"] = mm.a + 1;
		j["degree"] = mm.degree;
		j["H"] = momentum_json(mm.h);
		j["P"] = momentum_json(mm.p);
		rep.results["firstMismatch"] = std::move(j);
	} else {
		rep.results["firstMismatch"] = nullptr;
	}
	rep.results["H"] = tensor_json(cr.H, s.n, s.m);
	rep.results["P"] = tensor_json(cr.P, s.n, s.m);
	return rep.passed() ? kExitPass : kExitFail;
}

inline int command_shift(RunReport &rep, const std::string &file, const std::string &op, int A, int B,
                         const std::string &expr)
{
	if (op != "T" && op != "S")
		throw InputError("--op must be T or S");
	rep.inputs["file"] = file;
	rep.inputs["op"] = op;
	rep.inputs["A"] = A;
	rep.inputs["B"] = B;
	rep.inputs["expr"] = expr;
	const SuperStructure s = read_structure(read_file(file));
	const int N = s.n + s.m;
	if (A < 1 || A > N || B < 1 || B > N)
		throw InputError("--A and --B must lie in 1.." + std::to_string(N));
	Enveloping env(s);
	const PBWElement X = expression_to_pbw(env, expr);
	if (X.has_theta())
		throw InputError("expression contains theta generators; shifts are applied to coordinate expressions only");
	const ShiftIndex idx{A - 1, B - 1, op == "T" ? ShiftSide::Left : ShiftSide::Right};
	rep.results["result"] = format_pbw(env.act(idx, X));
	return kExitPass;
}

inline int command_realize(RunReport &rep, const std::string &file, int order, bool with_shifts, bool with_d,
                           const std::string &out, std::uint64_t seed)
{
	if (order < 0)
		throw InputError("--order must be non-negative");
	rep.inputs["file"] = file;
	rep.inputs["order"] = order;
	rep.inputs["withShifts"] = with_shifts;
	rep.inputs["withD"] = with_d;
	rep.inputs["seed"] = seed;
	if (!out.empty())
		rep.inputs["out"] = out;
	const SuperStructure s = read_structure(read_file(file));
	if (with_d)
		require_calculus(s);
	const StructureReport valid = validate_structure(s);
	if (!valid.passed()) {
		rep.checks.push_back(make_check("structure-validation", valid));
		return kExitFail;
	}
	const Realization r = with_shifts ? shift_realization(s, order) : weyl_linear_realization(s, order);
	rep.checks.push_back(make_check("realization-brackets", verify_realization(r, s)));
	std::optional<DerivativeOperator> d;
	if (with_d) {
		d = exterior_derivative(s, order);
		rep.checks.push_back(make_check("exterior-derivative", check_d_properties(*d, r, 4, seed)));
	}
	const auto doc = realization_json(r, d ? &*d : nullptr);
	if (out.empty())
		rep.results["realization"] = doc;
	else
		write_file(out, doc.dump(2) + "\n");
	return rep.passed() ? kExitPass : kExitFail;
}

/// Runs the command line; returns the process exit status.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
	CLI::App app{"Exact engine for Lie superalgebra realizations and differential calculi", "ncdc"};
	app.require_subcommand(1);
	app.fallthrough();
	bool human = false;
	app.add_flag("--human", human, "Print a table instead of JSON");

	std::string file, family, c = "0", a, outfile, op, expr, suite = "all";
	bool calculus = false, with_shifts = false, with_d = false;
	int dim = 0, trials = 100, A = 0, B = 0;
	int order = -1;
	std::uint64_t seed = 1;

	auto *validate = app.add_subcommand("validate", "Check a structure file");
	validate->add_option("file", file, "Structure file")->required();
	validate->add_flag("--calculus", calculus, "Also check the Leibniz compatibility condition");

	auto *kappa = app.add_subcommand("kappa", "Write a kappa-deformed structure file");
	kappa->add_option("--dim", dim, "Dimension n (= m)")->required();
	kappa->add_option("--family", family, "s1, s2 or s3")->required();
	kappa->add_option("--c", c, "Family parameter c");
	kappa->add_option("--a", a, "Comma-separated deformation vector")->required();
	kappa->add_option("--out", outfile, "Output structure file");

	auto *verify = app.add_subcommand("verify", "Run invariant suites");
	verify->add_option("file", file, "Structure file")->required();
	verify->add_option("--order", order, "Truncation order D");
	verify->add_option("--trials", trials, "Random samples per randomized check");
	verify->add_option("--seed", seed, "Random seed");
	verify->add_option("--suite", suite, "brackets, shift, calculus or all");

	auto *conjecture = app.add_subcommand("conjecture", "Compare H and P order by order");
	conjecture->add_option("file", file, "Structure file")->required();
	conjecture->add_option("--order", order, "Truncation order D");

	auto *shift = app.add_subcommand("shift", "Apply one shift operator to an expression");
	shift->add_option("file", file, "Structure file")->required();
	shift->add_option("--op", op, "T or S")->required();
	shift->add_option("--A", A, "First index (1..n+m)")->required();
	shift->add_option("--B", B, "Second index (1..n+m)")->required();
	shift->add_option("--expr", expr, "Expression in X generators")->required();

	auto *realize = app.add_subcommand("realize", "Write a realization file");
	realize->add_option("file", file, "Structure file")->required();
	realize->add_option("--order", order, "Truncation order D");
	realize->add_flag("--with-shifts", with_shifts, "Include shift operator images");
	realize->add_flag("--with-d", with_d, "Include the exterior derivative");
	realize->add_option("--out", outfile, "Output realization file");
	realize->add_option("--seed", seed, "Random seed for the sampled Leibniz checks");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? kExitPass : kExitInput;
	}

	RunReport rep;
	const auto start = std::chrono::steady_clock::now();
	int status = kExitPass;
	try {
		if (order < 0)
			order = default_order();
		if (validate->parsed()) {
			rep.command = "validate";
			status = command_validate(rep, file, calculus);
		} else if (kappa->parsed()) {
			rep.command = "kappa";
			status = command_kappa(rep, dim, family, c, a, outfile);
		} else if (verify->parsed()) {
			rep.command = "verify";
			status = command_verify(rep, file, order, trials, seed, suite);
		} else if (conjecture->parsed()) {
			rep.command = "conjecture";
			status = command_conjecture(rep, file, order);
		} else if (shift->parsed()) {
			rep.command = "shift";
			status = command_shift(rep, file, op, A, B, expr);
		} else {
			rep.command = "realize";
			status = command_realize(rep, file, order, with_shifts, with_d, outfile, seed);
		}
	} catch (const ParseError &e) {
		err << "error: " << e.what() << "\n" << e.caret() << "\n";
		return kExitInput;
	} catch (const InputError &e) {
		err << "error: " << e.what() << "\n";
		return kExitInput;
	} catch (const PreconditionError &e) {
		err << "error: " << e.what() << "\n";
		return kExitInput;
	} catch (const DimensionError &e) {
		err << "error: " << e.what() << "\n";
		return kExitInput;
	}
	rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	if (human)
		out << rep.to_human();
	else
		out << rep.to_json().dump(2) << "\n";
	return status;
}

} // namespace ncdc::cli
