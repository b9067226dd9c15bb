#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncdc/pbw.hpp"
#include "ncdc/realization.hpp"

namespace ncdc {

enum class CheckStatus { Pass, Fail, Skipped };

inline const char *to_string(CheckStatus s)
{
	switch (s) {
	case CheckStatus::Pass: return "pass";
	case CheckStatus::Fail: return "fail";
	default: return "skipped";
	}
}

struct CheckResult {
	std::string name;
	CheckStatus status = CheckStatus::Pass;
	std::size_t violations = 0;
	std::optional<Violation> first_violation;
	std::optional<int> agreement_order;
	std::string note;
};

inline CheckResult make_check(std::string name, const StructureReport &report)
{
	CheckResult c;
	c.name = std::move(name);
	c.violations = report.violations.size();
	if (!report.passed()) {
		c.status = CheckStatus::Fail;
		c.first_violation = report.violations.front();
	}
	return c;
}

inline CheckResult skipped_check(std::string name, std::string note)
{
	CheckResult c;
	c.name = std::move(name);
	c.status = CheckStatus::Skipped;
	c.note = std::move(note);
	return c;
}

inline bool all_passed(const std::vector<CheckResult> &checks)
{
	return std::none_of(checks.begin(), checks.end(),
	                    [](const CheckResult &c) { return c.status == CheckStatus::Fail; });
}

/// Random PBW monomial in the even generators of total degree <= max_degree.
inline PBWElement random_coordinate_monomial(std::mt19937_64 &rng, Dims dims, int max_degree)
{
	PBWMonomial mono;
	const int degree = static_cast<int>(rng() % (max_degree + 1));
	for (int k = 0; k < degree && dims.n > 0; ++k)
		++mono.x[rng() % dims.n];
	PBWElement e(dims);
	e.add_term(mono, 1);
	return e;
}

inline Word random_word(std::mt19937_64 &rng, int size, int max_len)
{
	Word w(rng() % (max_len + 1));
	for (auto &A : w)
		A = static_cast<int>(rng() % size);
	return w;
}

/// Z_A X - sum_B (T_AB X) Z_B = 0 in normal form for sampled X in U(g0).
inline StructureReport check_left_shift_kernel(Enveloping &env, int trials, std::uint64_t seed, int max_degree = 4)
{
	StructureReport report;
	std::mt19937_64 rng(seed);
	const int N = env.size();
	for (int t = 0; t < trials; ++t) {
		const PBWElement X = random_coordinate_monomial(rng, env.dims(), max_degree);
		for (int A = 0; A < N; ++A) {
			auto images = env.move_right(A, X);
			PBWElement res = env.multiply(env.generator(A), X);
			for (int B = 0; B < N; ++B)
				res -= env.multiply(images[B], env.generator(B));
			if (!res.is_zero())
				report.add("left-shift-kernel", {t + 1, A + 1}, res.terms().begin()->second,
				           "X = " + format_pbw(X) + ", residual " + format_pbw(res));
		}
	}
	return report;
}

/// X Z_A - sum_B Z_B (S_AB X) = 0 in normal form for sampled X in U(g0).
inline StructureReport check_right_shift_kernel(Enveloping &env, int trials, std::uint64_t seed, int max_degree = 4)
{
	StructureReport report;
	std::mt19937_64 rng(seed);
	const int N = env.size();
	for (int t = 0; t < trials; ++t) {
		const PBWElement X = random_coordinate_monomial(rng, env.dims(), max_degree);
		for (int A = 0; A < N; ++A) {
			auto images = env.move_left(A, X);
			PBWElement res = env.multiply(X, env.generator(A));
			for (int B = 0; B < N; ++B)
				res -= env.multiply(env.generator(B), images[B]);
			if (!res.is_zero())
				report.add("right-shift-kernel", {t + 1, A + 1}, res.terms().begin()->second,
				           "X = " + format_pbw(X) + ", residual " + format_pbw(res));
		}
	}
	return report;
}

/// Block product rules for T on XY against the recursive action, on sampled words X, Y.
inline StructureReport check_block_rules(Enveloping &env, int trials, std::uint64_t seed, int max_len = 2)
{
	StructureReport report;
	std::mt19937_64 rng(seed);
	const int N = env.size();
	for (int t = 0; t < trials; ++t) {
		const PBWElement X = env.normal_form(random_word(rng, N, max_len));
		const PBWElement Y = env.normal_form(random_word(rng, N, max_len));
		const PBWElement XY = env.multiply(X, Y);
		for (int A = 0; A < N; ++A)
			for (int B = 0; B < N; ++B) {
				PBWElement res = env.shift_left_block(A, B, X, Y) - env.shift_left(A, B, XY);
				if (!res.is_zero())
					report.add("block-rules", {t + 1, A + 1, B + 1}, res.terms().begin()->second,
					           "X = " + format_pbw(X) + ", Y = " + format_pbw(Y));
			}
	}
	return report;
}

namespace detail {

inline void compare_extension(StructureReport &report, const std::string &what, std::vector<int> indices,
                              const MomentumPolynomial &low, const MomentumPolynomial &high)
{
	MomentumPolynomial h = high;
	h.lower_order(low.order());
	if (h.order() != low.order() || h != low) {
		MomentumPolynomial diff = h - low;
		report.add("order-extension", std::move(indices), diff.is_zero() ? GaussianRational{} : diff.terms().begin()->second,
		           what + ": " + diff.to_string());
	}
}

inline void compare_extension(StructureReport &report, const std::string &what, std::vector<int> indices,
                              const WeylElement &low, const WeylElement &high)
{
	WeylElement h = high;
	h.lower_order(low.order());
	if (h.order() != low.order() || h != low) {
		WeylElement diff = h - low;
		report.add("order-extension", std::move(indices), diff.is_zero() ? GaussianRational{} : diff.terms().begin()->second,
		           what + ": " + diff.to_string());
	}
}

inline void compare_extension(StructureReport &report, const std::string &what, const MatrixSeries &low,
                              const MatrixSeries &high)
{
	for (int i = 0; i < low.rows(); ++i)
		for (int j = 0; j < low.cols(); ++j)
			compare_extension(report, what, {i + 1, j + 1}, low(i, j), high(i, j));
}

} // namespace detail

/// Recomputes series results at D + 2 and checks that they agree with the order-D results on every
/// coefficient the D results claim to be exact.
inline StructureReport check_order_extension(const SuperStructure &s, int D)
{
	StructureReport report;
	const int E = D + 2;
	const MatrixSeries C = build_momentum_matrix(s, MomentumMatrix::C);
	const MatrixSeries K = build_momentum_matrix(s, MomentumMatrix::K);
	detail::compare_extension(report, "psi(C)", matrix_function(bernoulli_psi_coeffs(D), C, D),
	                          matrix_function(bernoulli_psi_coeffs(E), C, E));
	detail::compare_extension(report, "exp(C)", matrix_function(exp_coeffs(D), C, D),
	                          matrix_function(exp_coeffs(E), C, E));
	detail::compare_extension(report, "exp(K)", matrix_function(exp_coeffs(D), K, D),
	                          matrix_function(exp_coeffs(E), K, E));
	detail::compare_extension(report, "psi(Ct)", build_super_tilde(s, D).psi, build_super_tilde(s, E).psi);
	const auto H = h_tensor(s, D), HE = h_tensor(s, E);
	for (std::size_t k = 0; k < H.size(); ++k)
		detail::compare_extension(report, "H", {static_cast<int>(k + 1)}, H[k], HE[k]);

	const Realization r = shift_realization(s, D), rE = shift_realization(s, E);
	const auto low = r.labelled(), high = rE.labelled();
	for (std::size_t k = 0; k < low.size(); ++k)
		detail::compare_extension(report, low[k].first, {static_cast<int>(k + 1)}, low[k].second, high[k].second);
	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = 0; nu < s.n; ++nu)
			detail::compare_extension(report, "x-product", {mu + 1, nu + 1}, r.x[mu] * r.x[nu], rE.x[mu] * rE.x[nu]);
	for (int mu = 0; mu < s.n; ++mu)
		for (int a = 0; a < s.m; ++a)
			detail::compare_extension(report, "T2-x-commutator", {mu + 1, a + 1},
			                          super_commutator(r.t2[mu][a], r.x[mu]), super_commutator(rE.t2[mu][a], rE.x[mu]));

	if (s.n == s.m && check_calculus_condition(s).passed()) {
		const DerivativeOperator d = exterior_derivative(s, D), dE = exterior_derivative(s, E);
		for (int al = 0; al < s.n; ++al)
			detail::compare_extension(report, "Lambda", {al + 1}, d.lambda[al], dE.lambda[al]);
		detail::compare_extension(report, "d", {}, d.d_hat, dE.d_hat);
		for (int mu = 0; mu < s.n; ++mu)
			detail::compare_extension(report, "d-x-commutator", {mu + 1}, super_commutator(d.d_hat, r.x[mu]),
			                          super_commutator(dE.d_hat, rE.x[mu]));
	}
	return report;
}

struct SuiteOptions {
	int order = 6;
	int trials = 100;
	std::uint64_t seed = 1;
};

inline std::vector<CheckResult> brackets_suite(const SuperStructure &s, const SuiteOptions &o)
{
	std::vector<CheckResult> out;
	out.push_back(make_check("structure-validation", validate_structure(s)));
	out.push_back(make_check("realization-brackets", verify_realization(weyl_linear_realization(s, o.order), s)));
	out.push_back(make_check("momentum-identity", check_momentum_identity(s, o.order)));
	out.push_back(make_check("similarity-brackets", verify_realization(similarity_transform(s, o.order), s)));
	out.push_back(make_check("order-extension", check_order_extension(s, o.order)));
	return out;
}

inline std::vector<CheckResult> shift_suite(const SuperStructure &s, const SuiteOptions &o)
{
	std::vector<CheckResult> out;
	out.push_back(make_check("shift-realization-brackets", verify_realization(shift_realization(s, o.order), s)));
	out.push_back(make_check("exp-k-transport", exp_k_transport_check(s, o.order)));
	Enveloping env(s);
	out.push_back(make_check("left-shift-kernel", check_left_shift_kernel(env, o.trials, o.seed)));
	out.push_back(make_check("right-shift-kernel", check_right_shift_kernel(env, o.trials, o.seed + 1)));
	out.push_back(make_check("block-rules", check_block_rules(env, std::max(1, o.trials / 5), o.seed + 2)));
	return out;
}

/// Throws PreconditionError when the structure does not carry a differential calculus.
inline std::vector<CheckResult> calculus_suite(const SuperStructure &s, const SuiteOptions &o)
{
	require_calculus(s);
	std::vector<CheckResult> out;
	out.push_back(make_check("leibniz-compatibility", check_calculus_condition(s)));
	const auto lambda = solve_lambda(s, o.order);
	StructureReport pde;
	const MatrixSeries res = lambda_pde_residual(s, lambda, o.order);
	for (int al = 0; al < s.n; ++al)
		for (int mu = 0; mu < s.n; ++mu)
			detail::record_nonzero(pde, "lambda-pde", {al + 1, mu + 1}, res(al, mu));
	out.push_back(make_check("lambda-pde", pde));
	StructureReport euler;
	const auto eres = lambda_euler_residual(s, lambda);
	for (int al = 0; al < s.n; ++al)
		detail::record_nonzero(euler, "lambda-euler", {al + 1}, eres[al]);
	out.push_back(make_check("lambda-euler", euler));
	out.push_back(make_check("exterior-derivative", check_d_properties(exterior_derivative(s, o.order),
	                                                                   weyl_linear_realization(s, o.order),
	                                                                   std::min(o.trials, 20), o.seed + 3)));
	return out;
}

inline bool has_calculus(const SuperStructure &s)
{
	return s.n == s.m && check_calculus_condition(s).passed();
}

} // namespace ncdc
