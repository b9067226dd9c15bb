#include <gtest/gtest.h>

#include "ncdc/matrix_series.hpp"
#include "series_oracle.hpp"
#include "structure_fixtures.hpp"

using namespace ncdc;
using fixtures::I;

namespace {

MomentumPolynomial dd(Dims dims, int mu) { return MomentumPolynomial::d(dims, mu); }
MomentumPolynomial cst(Dims dims, const GaussianRational &c) { return MomentumPolynomial::constant(dims, c); }

MomentumPolynomial truncated(MomentumPolynomial p, int D)
{
	p.lower_order(Order(D));
	return p;
}

} // namespace

TEST(Bernoulli, MatchesSeriesDivision)
{
	EXPECT_EQ(bernoulli_psi_coeffs(4),
	          (SeriesCoefficients{1, Rational(1, 2), Rational(1, 12), 0, Rational(-1, 720)}));
	auto oracle = series_oracle::psi_by_division(12);
	auto c = bernoulli_psi_coeffs(12);
	EXPECT_EQ(c, oracle);
	EXPECT_EQ(c[0], 1);
	EXPECT_EQ(c[9], 0);
}

TEST(MomentumMatrix, Sol2C)
{
	auto s = fixtures::sol2_adjoint();
	Dims dims = s.dims();
	auto C = build_momentum_matrix(s, MomentumMatrix::C);
	EXPECT_TRUE(C(0, 0).is_zero());
	EXPECT_EQ(C(0, 1), dd(dims, 1));
	EXPECT_TRUE(C(1, 0).is_zero());
	EXPECT_EQ(C(1, 1), -dd(dims, 0));
}

TEST(MomentumMatrix, KappaK)
{
	auto s = fixtures::kappa2();
	Dims dims = s.dims();
	auto K = build_momentum_matrix(s, MomentumMatrix::K);
	MomentumPolynomial A = I() * dd(dims, 1);
	EXPECT_EQ(K(0, 0), -A);
	EXPECT_EQ(K(1, 1), -A);
	EXPECT_TRUE(K(0, 1).is_zero());
	EXPECT_TRUE(build_momentum_matrix(SuperStructure(2, 2), MomentumMatrix::C).is_zero());
	EXPECT_TRUE(build_momentum_matrix(SuperStructure(2, 2), MomentumMatrix::K).is_zero());
}

TEST(MatrixFunction, PsiOfSol2ToOrderTwo)
{
	auto s = fixtures::sol2_adjoint();
	Dims dims = s.dims();
	auto psi = matrix_function(bernoulli_psi_coeffs(2), build_momentum_matrix(s, MomentumMatrix::C), 2);
	EXPECT_EQ(psi(0, 0), truncated(cst(dims, 1), 2));
	EXPECT_EQ(psi(0, 1), truncated(GaussianRational(Rational(1, 2)) * dd(dims, 1) -
	                                   GaussianRational(Rational(1, 12)) * dd(dims, 0) * dd(dims, 1),
	                               2));
	EXPECT_TRUE(psi(1, 0).is_zero());
	EXPECT_EQ(psi(1, 1), truncated(cst(dims, 1) - GaussianRational(Rational(1, 2)) * dd(dims, 0) +
	                                   GaussianRational(Rational(1, 12)) * dd(dims, 0) * dd(dims, 0),
	                               2));
}

TEST(MatrixFunction, ExpOfKappaK)
{
	auto s = fixtures::kappa2();
	Dims dims = s.dims();
	const int D = 6;
	auto e = matrix_function(exp_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
	MomentumPolynomial expected = series_oracle::scalar_series(exp_coeffs(D, -1), I() * dd(dims, 1), D);
	EXPECT_EQ(e(0, 0), expected);
	EXPECT_EQ(e(1, 1), expected);
	EXPECT_TRUE(e(0, 1).is_zero());
}

TEST(MatrixFunction, ZeroMatrixGivesConstant)
{
	MatrixSeries zero(2, 2, {2, 2});
	auto r = matrix_function(exp_coeffs(4, 3), zero, 4);
	EXPECT_EQ(r, MatrixSeries::identity(2, {2, 2}, Order(4)));
}

TEST(MatrixFunction, RejectsConstantTerm)
{
	EXPECT_THROW(matrix_function(exp_coeffs(3), MatrixSeries::identity(2, {2, 2}), 3), PreconditionError);
}

TEST(MatrixFunction, ExpTimesExpOfNegativeIsIdentity)
{
	const int D = 6;
	for (const auto &s : fixtures::all_structures())
		for (auto which : {MomentumMatrix::C, MomentumMatrix::K}) {
			auto M = build_momentum_matrix(s, which);
			auto e = matrix_function(exp_coeffs(D), M, D);
			auto einv = matrix_function(exp_coeffs(D, -1), M, D);
			EXPECT_EQ(multiply(e, einv), MatrixSeries::identity(M.rows(), s.dims(), Order(D)));
		}
}

TEST(MatrixFunction, PsiDefiningIdentity)
{
	const int D = 6;
	for (const auto &s : fixtures::all_structures())
		for (auto which : {MomentumMatrix::C, MomentumMatrix::K}) {
			auto M = build_momentum_matrix(s, which);
			auto psi = matrix_function(bernoulli_psi_coeffs(D), M, D);
			SeriesCoefficients one_minus_exp = exp_coeffs(D, -1);
			for (auto &c : one_minus_exp)
				c = -c;
			one_minus_exp[0] = 0;
			auto denom = matrix_function(one_minus_exp, M, D);
			auto lhs = multiply(psi, denom);
			auto rhs = M;
			rhs.lower_order(Order(D));
			EXPECT_EQ(lhs, rhs);
		}
}

TEST(MatrixInverse, MultiplyBack)
{
	const int D = 6;
	Dims dims{2, 2};
	EXPECT_EQ(matrix_inverse_series(MatrixSeries::identity(2, dims), D), MatrixSeries::identity(2, dims, Order(D)));

	MatrixSeries M = MatrixSeries::identity(2, dims);
	M(0, 1) = dd(dims, 0);
	auto inv = matrix_inverse_series(M, D);
	EXPECT_EQ(inv(0, 1), truncated(-dd(dims, 0), D));
	EXPECT_EQ(multiply(M, inv), MatrixSeries::identity(2, dims, Order(D)));

	for (const auto &s : fixtures::all_structures()) {
		auto psiK = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
		auto psiK_inv = matrix_inverse_series(psiK, D);
		EXPECT_EQ(multiply(psiK, psiK_inv), MatrixSeries::identity(s.m, s.dims(), Order(D)));
		EXPECT_EQ(multiply(psiK_inv, psiK), MatrixSeries::identity(s.m, s.dims(), Order(D)));
	}
	MatrixSeries bad = MatrixSeries::identity(2, dims) + MatrixSeries::identity(2, dims);
	EXPECT_THROW(matrix_inverse_series(bad, D), PreconditionError);
}

TEST(SuperTilde, AbelianIsTrivial)
{
	auto st = build_super_tilde(SuperStructure(2, 2), 4);
	EXPECT_EQ(st.psi, MatrixSeries::identity(4, {2, 2}, Order(4)));
	EXPECT_TRUE(st.F.is_zero());
}

TEST(SuperTilde, BlocksAndQLinearity)
{
	const int D = 5;
	for (const auto &s : fixtures::all_structures()) {
		auto st = build_super_tilde(s, D);
		auto psiC = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::C), D);
		auto psiK = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
		EXPECT_EQ(st.psi.block(0, 0, s.n, s.n), psiC);
		EXPECT_EQ(st.psi.block(s.n, s.n, s.m, s.m), psiK);
		EXPECT_TRUE(st.psi.block(s.n, 0, s.m, s.n).is_zero());
		for (int mu = 0; mu < s.n; ++mu)
			for (int a = 0; a < s.m; ++a)
				for (const auto &[mono, c] : st.F(mu, a).terms())
					EXPECT_GE(mono.q, 0);
	}
}

TEST(SuperTilde, PMatchesStraightLineExpansion)
{
	const int D = 4;
	for (const auto &s : fixtures::all_structures()) {
		auto st = build_super_tilde(s, D);
		auto F = series_oracle::f_block_expansion(s, D);
		EXPECT_EQ(st.F, F);
	}
}

TEST(SuperTilde, LowOrderCoefficientsOfP)
{
	const int D = 3;
	for (const auto &s : fixtures::all_structures()) {
		auto st = build_super_tilde(s, D);
		Dims dims = s.dims();
		for (int b = 0; b < s.m; ++b)
			for (int mu = 0; mu < s.n; ++mu)
				for (int a = 0; a < s.m; ++a) {
					const auto &p = st.p(b, mu, a);
					EXPECT_EQ(p.homogeneous_part(0), cst(dims, GaussianRational(Rational(-1, 2)) * s.K(b, mu, a)));
					EXPECT_EQ(p.homogeneous_part(1), series_oracle::first_order_formula(s, b, mu, a));
				}
	}
}

TEST(Lambda, Abelian)
{
	auto lambda = solve_lambda(SuperStructure(3, 3), 6);
	for (int al = 0; al < 3; ++al)
		EXPECT_EQ(lambda[al], truncated(dd({3, 3}, al), 6));
}

TEST(Lambda, KappaClosedForm)
{
	const int D = 6;
	auto s = fixtures::kappa2();
	Dims dims = s.dims();
	auto lambda = solve_lambda(s, D);
	// (e^A - 1)/A = sum A^k/(k+1)!
	SeriesCoefficients f(D + 1);
	mpz_class fact = 1;
	for (int k = 0; k <= D; ++k) {
		fact *= k + 1;
		f[k] = Rational(1) / Rational(fact);
	}
	auto g = series_oracle::scalar_series(f, I() * dd(dims, 1), D - 1);
	for (int al = 0; al < 2; ++al)
		EXPECT_EQ(lambda[al], series_oracle::times_d(g, al, D));
}

TEST(Lambda, MatchesRecurrenceAndSatisfiesPde)
{
	const int D = 6;
	for (const auto &s : fixtures::all_structures()) {
		if (s.n != s.m || !check_calculus_condition(s).passed())
			continue;
		auto lambda = solve_lambda(s, D);
		auto rec = series_oracle::lambda_by_recurrence(s, D);
		for (int al = 0; al < s.n; ++al)
			EXPECT_EQ(lambda[al], rec[al]);
		auto pde = lambda_pde_residual(s, lambda, D);
		EXPECT_TRUE(pde.is_zero());
		EXPECT_EQ(pde.order(), Order(D - 1));
		for (const auto &r : lambda_euler_residual(s, lambda))
			EXPECT_TRUE(r.is_zero());
	}
}

TEST(Lambda, FirstCorrection)
{
	auto s = build_kappa(3, KappaFamily::S1, 1, {1, 0, 2});
	Dims dims = s.dims();
	auto lambda = solve_lambda(s, 3);
	for (int al = 0; al < 3; ++al) {
		MomentumPolynomial expected(dims);
		for (int be = 0; be < 3; ++be)
			for (int rho = 0; rho < 3; ++rho)
				expected += GaussianRational(Rational(-1, 2)) * s.K(be, rho, al) * dd(dims, rho) * dd(dims, be);
		EXPECT_EQ(lambda[al].homogeneous_part(2), expected);
	}
}

TEST(Lambda, Preconditions)
{
	EXPECT_THROW(solve_lambda(SuperStructure(2, 1), 4), PreconditionError);
	EXPECT_THROW(solve_lambda(fixtures::sol2_adjoint(), 4), PreconditionError);
}

TEST(MomentumIdentity, HoldsOnAllStructures)
{
	for (const auto &s : fixtures::all_structures())
		EXPECT_TRUE(check_momentum_identity(s, 6).passed());
}

TEST(MomentumIdentity, Sol2FirstPower)
{
	auto s = fixtures::sol2_adjoint();
	Dims dims = s.dims();
	auto C = build_momentum_matrix(s, MomentumMatrix::C);
	MomentumPolynomial r = C(0, 1) * dd(dims, 0) + C(1, 1) * dd(dims, 1);
	EXPECT_TRUE(r.is_zero());
}

TEST(MomentumIdentity, DetectsNonAntisymmetricConstants)
{
	SuperStructure s(2, 0);
	s.C(0, 1, 1) = 1;
	EXPECT_FALSE(check_momentum_identity(s, 3).passed());
}

TEST(ExpKTransport, HoldsOnAllStructures)
{
	for (const auto &s : fixtures::all_structures())
		EXPECT_TRUE(exp_k_transport_check(s, 6).passed());
}

TEST(ExpKTransport, KappaDerivativeOfExp)
{
	const int D = 6;
	auto s = fixtures::kappa2();
	Dims dims = s.dims();
	auto expK = matrix_function(exp_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
	auto e = series_oracle::scalar_series(exp_coeffs(D, -1), I() * dd(dims, 1), D);
	// C = 0, so d(e^{-A})/dd_l = -i a_l e^{-A} with a = (0, 1)
	EXPECT_TRUE(expK(0, 0).derivative(0).is_zero());
	EXPECT_EQ(expK(0, 0).derivative(1), truncated(-I() * e, D - 1));
	EXPECT_EQ(expK(1, 1).derivative(1), truncated(-I() * e, D - 1));
}

TEST(MomentumPolynomial, RejectsQuadraticInQ)
{
	Dims dims{2, 2};
	EXPECT_THROW(MomentumPolynomial::q(dims, 0) * MomentumPolynomial::q(dims, 1), AlgebraError);
}
