#include <gtest/gtest.h>

#include "ncdc/realization.hpp"
#include "series_oracle.hpp"
#include "structure_fixtures.hpp"

using namespace ncdc;
using fixtures::I;

namespace ncdc {
inline void PrintTo(const WeylElement &e, std::ostream *os) { *os << e.to_string() << " [order " << e.order().to_string() << "]"; }
} // namespace ncdc

namespace {

WeylElement W(const MomentumPolynomial &p) { return p.to_weyl(); }
WeylElement x(Dims d, int mu) { return WeylElement::x(d, mu); }
WeylElement xi(Dims d, int a) { return WeylElement::xi(d, a); }
WeylElement q(Dims d, int a) { return WeylElement::q(d, a); }
MomentumPolynomial dd(Dims d, int mu) { return MomentumPolynomial::d(d, mu); }

bool has_check(const StructureReport &r, const std::string &name)
{
	for (const auto &v : r.violations)
		if (v.check == name)
			return true;
	return false;
}

std::string describe(const StructureReport &r)
{
	std::string out;
	for (const auto &v : r.violations) {
		out += v.check + " (";
		for (int i : v.indices)
			out += std::to_string(i) + ",";
		out += ") " + v.detail + "\n";
		if (out.size() > 2000)
			break;
	}
	return out;
}

WeylElement truncated(WeylElement e, int D)
{
	e.lower_order(Order(D));
	return e;
}

} // namespace

TEST(WeylLinear, Abelian)
{
	Dims dims{2, 2};
	auto r = weyl_linear_realization(SuperStructure(2, 2), 4);
	for (int mu = 0; mu < 2; ++mu)
		EXPECT_EQ(r.x[mu], truncated(x(dims, mu), 4));
	for (int a = 0; a < 2; ++a)
		EXPECT_EQ(r.theta[a], xi(dims, a));
	EXPECT_FALSE(r.has_shifts());
	EXPECT_TRUE(verify_realization(r, SuperStructure(2, 2)).passed());
}

TEST(WeylLinear, KappaOddPart)
{
	auto s = fixtures::kappa2();
	auto r = weyl_linear_realization(s, 4);
	// the xi q part of x_mu is i a_mu sum xi_al q_al with a = (0, 1)
	for (int mu = 0; mu < 2; ++mu)
		for (int al = 0; al < 2; ++al)
			for (int be = 0; be < 2; ++be) {
				SuperMonomial m;
				m.xi = static_cast<std::uint16_t>(1u << al);
				m.q = static_cast<std::uint16_t>(1u << be);
				GaussianRational expected = (mu == 1 && al == be) ? I() : GaussianRational{};
				EXPECT_EQ(r.x[mu].coefficient(m), expected);
			}
}

TEST(WeylLinear, Sol2ToOrderTwo)
{
	auto s = fixtures::sol2_adjoint();
	Dims dims = s.dims();
	auto r = weyl_linear_realization(s, 2);
	const GaussianRational half(Rational(1, 2)), twelfth(Rational(1, 12));
	WeylElement expected = x(dims, 0) + x(dims, 1) * W(half * dd(dims, 1) - twelfth * dd(dims, 0) * dd(dims, 1));
	for (int a = 0; a < 2; ++a)
		for (int b = 0; b < 2; ++b)
			if (!s.K(b, 0, a).is_zero())
				expected -= s.K(b, 0, a) * (xi(dims, a) * q(dims, b));
	EXPECT_EQ(r.x[0], truncated(expected, 2));
	EXPECT_LE(r.x[0].max_x_degree(), 1);
	EXPECT_EQ(s.K(1, 0, 1), GaussianRational(1));
}

TEST(Realization, AllStructuresVerify)
{
	for (const auto &s : fixtures::all_structures()) {
		auto r = shift_realization(s, 4);
		auto rep = verify_realization(r, s);
		EXPECT_TRUE(rep.passed()) << describe(rep);
		EXPECT_EQ(r.order(), Order(4));
	}
}

TEST(Realization, AbelianShiftsAreTrivial)
{
	Dims dims{2, 2};
	auto r = shift_realization(SuperStructure(2, 2), 3);
	for (int i = 0; i < 2; ++i)
		for (int j = 0; j < 2; ++j) {
			WeylElement delta(dims, Order(3));
			if (i == j)
				delta += WeylElement::constant(dims, 1);
			EXPECT_EQ(r.t1[i][j], delta);
			EXPECT_EQ(r.t4[i][j], delta);
			EXPECT_TRUE(r.t2[i][j].is_zero());
		}
}

TEST(Realization, TransposedKIsDetectedAtOrderZero)
{
	auto s = fixtures::sol2_adjoint();
	SuperStructure bad = s;
	for (int a = 0; a < s.m; ++a)
		for (int mu = 0; mu < s.n; ++mu)
			for (int b = 0; b < s.m; ++b)
				bad.K(a, mu, b) = s.K(b, mu, a);
	ASSERT_NE(bad.K, s.K);
	auto rep = verify_realization(weyl_linear_realization(bad, 4), s);
	ASSERT_TRUE(has_check(rep, "bracket-theta-x"));
	bool order_zero = false;
	auto r = weyl_linear_realization(bad, 4);
	for (int a = 0; a < s.m; ++a)
		for (int mu = 0; mu < s.n; ++mu) {
			WeylElement res = super_commutator(r.theta[a], r.x[mu]);
			for (int b = 0; b < s.m; ++b)
				res -= s.K(a, mu, b) * r.theta[b];
			for (const auto &[m, c] : res.terms())
				order_zero = order_zero || m.d_degree() == 0;
		}
	EXPECT_TRUE(order_zero);
}

TEST(KappaClosedForms, MatchGenericConstruction)
{
	for (int n : {2, 3}) {
		std::vector<Rational> a(n);
		a[n - 1] = 1;
		if (n == 3)
			a[0] = Rational(1, 2);
		const int D = 5;
		auto closed = kappa_closed_forms(n, KappaFamily::S1, 0, a, D);
		auto generic = shift_realization(build_kappa(n, KappaFamily::S1, 0, a), D);
		for (int mu = 0; mu < n; ++mu) {
			EXPECT_EQ(closed.x[mu], generic.x[mu]) << "x" << mu;
			EXPECT_EQ(closed.theta[mu], generic.theta[mu]);
			for (int nu = 0; nu < n; ++nu) {
				EXPECT_EQ(closed.t1[mu][nu], generic.t1[mu][nu]) << "T1 " << mu << nu;
				EXPECT_EQ(closed.t2[mu][nu], generic.t2[mu][nu]) << "T2 " << mu << nu;
				EXPECT_EQ(closed.t4[mu][nu], generic.t4[mu][nu]) << "T4 " << mu << nu;
			}
		}
	}
}

TEST(KappaClosedForms, ClassicalLimitAndT4)
{
	Dims dims{2, 2};
	auto r = kappa_closed_forms(2, KappaFamily::S1, 0, {0, 1}, 4);
	SuperMonomial x1;
	x1.x[0] = 1;
	EXPECT_EQ(r.x[0].coefficient(x1), GaussianRational(1));
	auto e = series_oracle::scalar_series(exp_coeffs(4, -1), I() * dd(dims, 1), 4);
	EXPECT_EQ(r.t4[0][0], W(e));
	EXPECT_TRUE(r.t4[0][1].is_zero());
	EXPECT_EQ(r.t2[1][0], I() * (W(e) * q(dims, 0)));
}

TEST(KappaClosedForms, PrintedShiftFormFailsTheBracket)
{
	// delta e^{-A} - i a_mu d_nu (e^A - 1)/A is not e^C and breaks [T1, x] = C T1
	const int D = 4;
	auto s = fixtures::kappa2();
	Dims dims = s.dims();
	auto r = kappa_closed_forms(2, KappaFamily::S1, 0, {0, 1}, D);
	SeriesCoefficients f(D);
	mpz_class fact = 1;
	for (int k = 0; k < D; ++k) {
		fact *= k + 1;
		f[k] = Rational(1) / Rational(fact);
	}
	auto e = series_oracle::scalar_series(exp_coeffs(D, -1), I() * dd(dims, 1), D);
	auto g = series_oracle::scalar_series(f, I() * dd(dims, 1), D - 1);
	const std::vector<int> a{0, 1};
	for (int mu = 0; mu < 2; ++mu)
		for (int nu = 0; nu < 2; ++nu) {
			MomentumPolynomial t(dims, Order(D));
			if (mu == nu)
				t += e;
			if (a[mu] != 0)
				t -= I() * series_oracle::times_d(g, nu, D);
			r.t1[mu][nu] = W(t);
		}
	auto rep = verify_realization(r, s);
	EXPECT_TRUE(has_check(rep, "shift-t1-x"));
	EXPECT_NE(r.t1[1][0], shift_realization(s, D).t1[1][0]);
}

TEST(KappaClosedForms, RejectsOtherCalculi)
{
	EXPECT_THROW(kappa_closed_forms(2, KappaFamily::S2, 0, {0, 1}, 3), PreconditionError);
	EXPECT_THROW(kappa_closed_forms(2, KappaFamily::S1, 1, {0, 1}, 3), PreconditionError);
}

TEST(ExteriorDerivative, Abelian)
{
	Dims dims{3, 3};
	auto op = exterior_derivative(SuperStructure(3, 3), 5);
	WeylElement expected(dims, Order(5));
	for (int al = 0; al < 3; ++al)
		expected += xi(dims, al) * WeylElement::d(dims, al);
	EXPECT_EQ(op.d_hat, expected);
}

TEST(ExteriorDerivative, FirstCorrection)
{
	auto s = build_kappa(3, KappaFamily::S2, Rational(1, 2), {1, 0, 2});
	Dims dims = s.dims();
	auto op = exterior_derivative(s, 4);
	WeylElement expected(dims);
	for (int rho = 0; rho < 3; ++rho)
		for (int al = 0; al < 3; ++al)
			for (int be = 0; be < 3; ++be)
				expected += GaussianRational(Rational(-1, 2)) * s.K(be, al, rho) *
				            (xi(dims, rho) * WeylElement::d(dims, al) * WeylElement::d(dims, be));
	WeylElement second(dims);
	for (const auto &[m, c] : op.d_hat.terms())
		if (m.d_degree() == 2)
			second.add_term(m, c);
	EXPECT_EQ(second, expected);
}

TEST(ExteriorDerivative, PropertiesOnCalculusStructures)
{
	const int D = 5;
	int checked = 0;
	for (const auto &s : fixtures::all_structures()) {
		if (s.n != s.m || !check_calculus_condition(s).passed())
			continue;
		++checked;
		auto op = exterior_derivative(s, D);
		auto r = weyl_linear_realization(s, D);
		auto rep = check_d_properties(op, r, 6, 17);
		EXPECT_TRUE(rep.passed()) << describe(rep);
		for (int mu = 0; mu < s.n; ++mu)
			EXPECT_EQ(super_commutator(op.d_hat, r.x[mu]).order(), Order(D - 1));
	}
	EXPECT_GE(checked, 4);
}

TEST(ExteriorDerivative, LeibnizOnCoordinatePair)
{
	auto s = fixtures::kappa2();
	auto op = exterior_derivative(s, 6);
	auto r = weyl_linear_realization(s, 6);
	auto d = [&](const WeylElement &f) { return super_commutator(op.d_hat, f); };
	WeylElement lhs = d(r.x[0] * r.x[1]);
	WeylElement rhs = d(r.x[0]) * r.x[1] + r.x[0] * d(r.x[1]);
	EXPECT_TRUE((lhs - rhs).is_zero());
	EXPECT_EQ((lhs - rhs).order(), Order(4));
	EXPECT_EQ(d(r.x[0]), truncated(xi(s.dims(), 0), 5));
}

TEST(ExteriorDerivative, DetectsWrongLambda)
{
	auto s = fixtures::kappa2();
	auto op = exterior_derivative(s, 4);
	op.d_hat = WeylElement(s.dims(), Order(4));
	for (int al = 0; al < 2; ++al)
		op.d_hat += xi(s.dims(), al) * WeylElement::d(s.dims(), al);
	auto rep = check_d_properties(op, weyl_linear_realization(s, 4), 2, 1);
	EXPECT_TRUE(has_check(rep, "d-on-coordinates"));
}

TEST(ExteriorDerivative, Preconditions)
{
	EXPECT_THROW(exterior_derivative(fixtures::sol2_adjoint(), 4), PreconditionError);
	EXPECT_THROW(exterior_derivative(SuperStructure(2, 1), 4), PreconditionError);
}

TEST(Similarity, AbelianIsIdentity)
{
	Dims dims{2, 2};
	auto H = h_tensor(SuperStructure(2, 2), 4);
	for (const auto &h : H)
		EXPECT_TRUE(h.is_zero());
	auto r = similarity_transform(SuperStructure(2, 2), 4);
	EXPECT_EQ(r.x[0], truncated(x(dims, 0), 4));
	EXPECT_EQ(r.theta[1], truncated(xi(dims, 1), 4));
}

TEST(Similarity, HSolvesItsDefiningEquation)
{
	// sum_b M_{cb} H_{b mu a} = sum_rho dM_{ca}/dd_rho psi(C)_{mu rho} - sum_d K(c,mu,d) M_{da}
	const int D = 4;
	for (const auto &s : fixtures::all_structures()) {
		auto H = h_tensor(s, D);
		auto M = matrix_function(bernoulli_psi_coeffs(D + 1), series_oracle::k_matrix(s), D + 1);
		auto psiC = matrix_function(bernoulli_psi_coeffs(D + 1), series_oracle::c_matrix(s), D + 1);
		for (int c = 0; c < s.m; ++c)
			for (int mu = 0; mu < s.n; ++mu)
				for (int a = 0; a < s.m; ++a) {
					MomentumPolynomial lhs(s.dims(), Order(D)), rhs(s.dims(), Order(D));
					for (int b = 0; b < s.m; ++b)
						lhs += multiply(M(c, b), H[(b * s.n + mu) * s.m + a], Order(D));
					for (int rho = 0; rho < s.n; ++rho)
						rhs += multiply(M(c, a).derivative(rho), psiC(mu, rho), Order(D));
					for (int d = 0; d < s.m; ++d)
						rhs -= s.K(c, mu, d) * M(d, a);
					EXPECT_EQ(lhs, rhs);
				}
	}
}

TEST(Similarity, LowOrderCoefficientsOfH)
{
	for (const auto &s : fixtures::all_structures()) {
		auto H = h_tensor(s, 2);
		for (int b = 0; b < s.m; ++b)
			for (int mu = 0; mu < s.n; ++mu)
				for (int a = 0; a < s.m; ++a) {
					const auto &h = H[(b * s.n + mu) * s.m + a];
					EXPECT_EQ(h.homogeneous_part(0),
					          MomentumPolynomial::constant(s.dims(), GaussianRational(Rational(-1, 2)) * s.K(b, mu, a)));
					EXPECT_EQ(h.homogeneous_part(1), series_oracle::first_order_formula(s, b, mu, a));
				}
	}
}

TEST(Similarity, TransformedRealizationVerifies)
{
	for (const auto &s : fixtures::all_structures()) {
		auto rep = verify_realization(similarity_transform(s, 4), s);
		EXPECT_TRUE(rep.passed()) << describe(rep);
	}
}

TEST(Conjecture, AbelianAgreesToRequestedOrder)
{
	auto rep = conjecture_test(SuperStructure(2, 2), 5);
	EXPECT_EQ(rep.agreement_order, 5);
	EXPECT_FALSE(rep.first_mismatch);
	EXPECT_TRUE(rep.theta_images_equal);
}

TEST(Conjecture, AtLeastFirstOrderOnAllStructures)
{
	for (const auto &s : fixtures::all_structures()) {
		auto rep = conjecture_test(s, 4);
		EXPECT_GE(rep.agreement_order, 1);
		EXPECT_LE(rep.agreement_order, 4);
		EXPECT_EQ(rep.first_mismatch.has_value(), rep.agreement_order < 4);
		EXPECT_TRUE(rep.theta_images_equal);
		auto F = series_oracle::f_block_expansion(s, 4);
		for (int b = 0; b < s.m; ++b)
			for (int mu = 0; mu < s.n; ++mu)
				for (int a = 0; a < s.m; ++a)
					EXPECT_EQ(rep.p(b, mu, a), F(mu, a).q_coefficient(b));
	}
}

TEST(Conjecture, MismatchIsReportedWhenInjected)
{
	auto s = fixtures::sol2_adjoint();
	auto rep = conjecture_test(s, 3);
	auto P = rep.H;
	EXPECT_FALSE(first_disagreement(rep.H, P, s.n, s.m, 3));
	// perturb slot (b, mu, a) = (1, 0, 1) at degree 2
	const int idx = (1 * s.n + 0) * s.m + 1;
	P[idx] += MomentumPolynomial::d(s.dims(), 0) * MomentumPolynomial::d(s.dims(), 1);
	auto mm = first_disagreement(rep.H, P, s.n, s.m, 3);
	ASSERT_TRUE(mm);
	EXPECT_EQ(mm->degree, 2);
	EXPECT_EQ(mm->b, 1);
	EXPECT_EQ(mm->mu, 0);
	EXPECT_EQ(mm->a, 1);
	EXPECT_FALSE(first_disagreement(rep.H, P, s.n, s.m, 1));
}
