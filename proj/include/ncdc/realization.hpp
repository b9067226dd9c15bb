#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ncdc/matrix_series.hpp"

namespace ncdc {

using WeylMatrix = std::vector<std::vector<WeylElement>>;

/// Images of the generators of g (and optionally of the shift operators) in the Weyl superalgebra.
struct Realization {
	SuperStructure structure;
	std::vector<WeylElement> x;
	std::vector<WeylElement> theta;
	WeylMatrix t1; // n x n, empty without shifts
	WeylMatrix t2; // n x m
	WeylMatrix t4; // m x m

	bool has_shifts() const { return !t1.empty() || !t4.empty() || !t2.empty(); }

	std::vector<std::pair<std::string, WeylElement>> labelled() const
	{
		std::vector<std::pair<std::string, WeylElement>> out;
		for (std::size_t mu = 0; mu < x.size(); ++mu)
			out.emplace_back("X" + std::to_string(mu + 1), x[mu]);
		for (std::size_t a = 0; a < theta.size(); ++a)
			out.emplace_back("theta" + std::to_string(a + 1), theta[a]);
		auto add_block = [&](const char *name, const WeylMatrix &t) {
			for (std::size_t i = 0; i < t.size(); ++i)
				for (std::size_t j = 0; j < t[i].size(); ++j)
					out.emplace_back(std::string(name) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
					                 t[i][j]);
		};
		add_block("T1", t1);
		add_block("T2", t2);
		add_block("T4", t4);
		return out;
	}

	Order order() const
	{
		Order o = Order::infinite();
		for (const auto &[label, e] : labelled())
			o = min_order(o, e.order());
		return o;
	}
};

struct DerivativeOperator {
	WeylElement d_hat{Dims{0, 0}};
	std::vector<MomentumPolynomial> lambda;
};

namespace detail {

inline void record_nonzero(StructureReport &report, const std::string &check, std::vector<int> indices,
                           const WeylElement &residual)
{
	if (residual.is_zero())
		return;
	std::string text = residual.to_string();
	if (text.size() > 400)
		text = text.substr(0, 400) + " ...";
	report.add(check, std::move(indices), residual.terms().begin()->second, std::move(text));
}

inline WeylMatrix to_weyl(const MatrixSeries &M)
{
	WeylMatrix out(M.rows());
	for (int i = 0; i < M.rows(); ++i)
		for (int j = 0; j < M.cols(); ++j)
			out[i].push_back(M(i, j).to_weyl());
	return out;
}

// sum_al x_al psi(C)_{mu al}
inline WeylElement x_times_row(const MatrixSeries &psiC, int mu)
{
	const Dims dims = psiC.dims();
	WeylElement out(dims, psiC.order());
	for (int al = 0; al < psiC.cols(); ++al)
		out += WeylElement::x(dims, al) * psiC(mu, al).to_weyl();
	return out;
}

} // namespace detail

/// x_mu -> sum_al x_al psi(C)_{mu al} - sum_{a,b} K(b,mu,a) xi_a q_b, theta_a -> xi_a.
inline Realization weyl_linear_realization(const SuperStructure &s, int D)
{
	const Dims dims = s.dims();
	Realization r;
	r.structure = s;
	const MatrixSeries psiC = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::C), D);
	for (int mu = 0; mu < s.n; ++mu) {
		WeylElement xm = detail::x_times_row(psiC, mu);
		for (int a = 0; a < s.m; ++a)
			for (int b = 0; b < s.m; ++b)
				if (!s.K(b, mu, a).is_zero())
					xm -= s.K(b, mu, a) * (WeylElement::xi(dims, a) * WeylElement::q(dims, b));
		r.x.push_back(std::move(xm));
	}
	for (int a = 0; a < s.m; ++a)
		r.theta.push_back(WeylElement::xi(dims, a));
	return r;
}

/// Weyl-linear realization extended by T1 = e^C, T2_{mu a} = -sum K(b,mu,c) (e^K)_{ca} q_b, T4 = e^K.
inline Realization shift_realization(const SuperStructure &s, int D)
{
	const Dims dims = s.dims();
	Realization r = weyl_linear_realization(s, D);
	r.t1 = detail::to_weyl(matrix_function(exp_coeffs(D), build_momentum_matrix(s, MomentumMatrix::C), D));
	const MatrixSeries expK = matrix_function(exp_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
	r.t4 = detail::to_weyl(expK);
	r.t2.assign(s.n, {});
	for (int mu = 0; mu < s.n; ++mu)
		for (int a = 0; a < s.m; ++a) {
			WeylElement t(dims, Order(D));
			for (int b = 0; b < s.m; ++b)
				for (int c = 0; c < s.m; ++c)
					if (!s.K(b, mu, c).is_zero())
						t -= s.K(b, mu, c) * (r.t4[c][a] * WeylElement::q(dims, b));
			r.t2[mu].push_back(std::move(t));
		}
	return r;
}

/// Checks the brackets of g on the images, and the shift relations when shift images are present.
inline StructureReport verify_realization(const Realization &r, const SuperStructure &s)
{
	StructureReport report;
	if (static_cast<int>(r.x.size()) != s.n || static_cast<int>(r.theta.size()) != s.m)
		throw DimensionError("realization does not match the structure dimensions");

	auto check_parity = [&](const std::string &label, const WeylElement &e, int expected) {
		auto p = e.parity();
		if (!e.is_zero() && (!p || *p != expected))
			report.add("parity", {}, GaussianRational{}, label + " does not have parity " + std::to_string(expected));
	};
	for (int mu = 0; mu < s.n; ++mu)
		check_parity("X" + std::to_string(mu + 1), r.x[mu], 0);
	for (int a = 0; a < s.m; ++a)
		check_parity("theta" + std::to_string(a + 1), r.theta[a], 1);
	if (!report.passed())
		return report;

	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = mu + 1; nu < s.n; ++nu) {
			WeylElement res = super_commutator(r.x[mu], r.x[nu]);
			for (int rho = 0; rho < s.n; ++rho)
				if (!s.C(mu, nu, rho).is_zero())
					res -= s.C(mu, nu, rho) * r.x[rho];
			detail::record_nonzero(report, "bracket-xx", {mu + 1, nu + 1}, res);
		}
	for (int a = 0; a < s.m; ++a)
		for (int mu = 0; mu < s.n; ++mu) {
			WeylElement res = super_commutator(r.theta[a], r.x[mu]);
			for (int b = 0; b < s.m; ++b)
				if (!s.K(a, mu, b).is_zero())
					res -= s.K(a, mu, b) * r.theta[b];
			detail::record_nonzero(report, "bracket-theta-x", {a + 1, mu + 1}, res);
		}
	for (int a = 0; a < s.m; ++a)
		for (int b = a; b < s.m; ++b)
			detail::record_nonzero(report, "bracket-theta-theta", {a + 1, b + 1},
			                       super_commutator(r.theta[a], r.theta[b]));
	if (!r.has_shifts())
		return report;

	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = 0; nu < s.n; ++nu)
			check_parity("T1_" + std::to_string(mu + 1) + "_" + std::to_string(nu + 1), r.t1[mu][nu], 0);
	for (int mu = 0; mu < s.n; ++mu)
		for (int a = 0; a < s.m; ++a)
			check_parity("T2_" + std::to_string(mu + 1) + "_" + std::to_string(a + 1), r.t2[mu][a], 1);
	for (int a = 0; a < s.m; ++a)
		for (int b = 0; b < s.m; ++b)
			check_parity("T4_" + std::to_string(a + 1) + "_" + std::to_string(b + 1), r.t4[a][b], 0);
	if (!report.passed())
		return report;

	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = 0; nu < s.n; ++nu)
			for (int l = 0; l < s.n; ++l) {
				WeylElement res = super_commutator(r.t1[mu][nu], r.x[l]);
				for (int rho = 0; rho < s.n; ++rho)
					if (!s.C(mu, l, rho).is_zero())
						res -= s.C(mu, l, rho) * r.t1[rho][nu];
				detail::record_nonzero(report, "shift-t1-x", {mu + 1, nu + 1, l + 1}, res);
			}
	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = 0; nu < s.n; ++nu)
			for (int a = 0; a < s.m; ++a)
				detail::record_nonzero(report, "shift-t1-theta", {mu + 1, nu + 1, a + 1},
				                       super_commutator(r.t1[mu][nu], r.theta[a]));
	for (int mu = 0; mu < s.n; ++mu)
		for (int a = 0; a < s.m; ++a) {
			for (int l = 0; l < s.n; ++l) {
				WeylElement res = super_commutator(r.t2[mu][a], r.x[l]);
				for (int rho = 0; rho < s.n; ++rho)
					if (!s.C(mu, l, rho).is_zero())
						res -= s.C(mu, l, rho) * r.t2[rho][a];
				detail::record_nonzero(report, "shift-t2-x", {mu + 1, a + 1, l + 1}, res);
			}
			for (int b = 0; b < s.m; ++b) {
				WeylElement res = super_commutator(r.t2[mu][a], r.theta[b]);
				for (int c = 0; c < s.m; ++c)
					if (!s.K(b, mu, c).is_zero())
						res += s.K(b, mu, c) * r.t4[c][a];
				detail::record_nonzero(report, "shift-t2-theta", {mu + 1, a + 1, b + 1}, res);
			}
		}
	for (int a = 0; a < s.m; ++a)
		for (int b = 0; b < s.m; ++b) {
			for (int l = 0; l < s.n; ++l) {
				WeylElement res = super_commutator(r.t4[a][b], r.x[l]);
				for (int c = 0; c < s.m; ++c)
					if (!s.K(a, l, c).is_zero())
						res -= s.K(a, l, c) * r.t4[c][b];
				detail::record_nonzero(report, "shift-t4-x", {a + 1, b + 1, l + 1}, res);
			}
			for (int c = 0; c < s.m; ++c)
				detail::record_nonzero(report, "shift-t4-theta", {a + 1, b + 1, c + 1},
				                       super_commutator(r.t4[a][b], r.theta[c]));
		}

	std::vector<const WeylElement *> shifts;
	for (const auto *block : {&r.t1, &r.t2, &r.t4})
		for (const auto &row : *block)
			for (const auto &e : row)
				shifts.push_back(&e);
	for (std::size_t i = 0; i < shifts.size(); ++i)
		for (std::size_t j = i + 1; j < shifts.size(); ++j)
			detail::record_nonzero(report, "shift-shift", {static_cast<int>(i + 1), static_cast<int>(j + 1)},
			                       super_commutator(*shifts[i], *shifts[j]));
	return report;
}

/// d = sum_al xi_al Lambda_al(d); needs n == m and the Leibniz compatibility condition.
inline DerivativeOperator exterior_derivative(const SuperStructure &s, int D)
{
	DerivativeOperator op;
	op.lambda = solve_lambda(s, D);
	const Dims dims = s.dims();
	op.d_hat = WeylElement(dims, Order(D));
	for (int al = 0; al < s.n; ++al)
		op.d_hat += WeylElement::xi(dims, al) * op.lambda[al].to_weyl();
	return op;
}

/// Nilpotency, d x_mu = theta_mu, Leibniz on sampled products of x-images, and the observed
/// anticommutation of d with the theta images.
inline StructureReport check_d_properties(const DerivativeOperator &op, const Realization &r, int samples,
                                          std::uint64_t seed)
{
	StructureReport report;
	const int n = static_cast<int>(r.x.size());
	detail::record_nonzero(report, "d-nilpotent", {}, op.d_hat * op.d_hat);
	for (int mu = 0; mu < n; ++mu)
		detail::record_nonzero(report, "d-on-coordinates", {mu + 1},
		                       super_commutator(op.d_hat, r.x[mu]) - r.theta.at(mu));
	for (std::size_t a = 0; a < r.theta.size(); ++a)
		detail::record_nonzero(report, "d-theta-anticommutator", {static_cast<int>(a + 1)},
		                       super_commutator(op.d_hat, r.theta[a]));

	std::mt19937_64 rng(seed);
	auto sample = [&](std::vector<int> &word) {
		const int degree = 1 + static_cast<int>(rng() % 3);
		word.clear();
		WeylElement f = WeylElement::constant(op.d_hat.dims(), 1);
		for (int k = 0; k < degree; ++k) {
			const int mu = static_cast<int>(rng() % n);
			word.push_back(mu + 1);
			f = f * r.x[mu];
		}
		return f;
	};
	std::vector<int> fw, gw;
	for (int t = 0; t < samples; ++t) {
		const WeylElement f = sample(fw);
		const WeylElement g = sample(gw);
		WeylElement lhs = super_commutator(op.d_hat, f * g);
		WeylElement rhs = super_commutator(op.d_hat, f) * g + f * super_commutator(op.d_hat, g);
		std::vector<int> indices{t + 1};
		indices.insert(indices.end(), fw.begin(), fw.end());
		indices.push_back(0);
		indices.insert(indices.end(), gw.begin(), gw.end());
		detail::record_nonzero(report, "d-leibniz", indices, lhs - rhs);
	}
	return report;
}

/// H_{b mu a} = sum_c M^{-1}_{bc} (sum_rho dM_{ca}/dd_rho psi(C)_{mu rho} - sum_d K(c,mu,d) M_{da})
/// with M = psi(K), flattened as (b, mu, a) and valid to order D.
inline std::vector<MomentumPolynomial> h_tensor(const SuperStructure &s, int D)
{
	const Dims dims = s.dims();
	const Order order(D);
	const MatrixSeries M = matrix_function(bernoulli_psi_coeffs(D + 1), build_momentum_matrix(s, MomentumMatrix::K), D + 1);
	const MatrixSeries Minv = matrix_inverse_series(M, D + 1);
	const MatrixSeries psiC =
	    matrix_function(bernoulli_psi_coeffs(D + 1), build_momentum_matrix(s, MomentumMatrix::C), D + 1);
	std::vector<MatrixSeries> dM;
	for (int rho = 0; rho < s.n; ++rho)
		dM.push_back(M.derivative(rho));

	std::vector<MomentumPolynomial> H;
	for (int b = 0; b < s.m; ++b)
		for (int mu = 0; mu < s.n; ++mu)
			for (int a = 0; a < s.m; ++a) {
				MomentumPolynomial h(dims, order);
				for (int c = 0; c < s.m; ++c) {
					MomentumPolynomial inner(dims, order);
					for (int rho = 0; rho < s.n; ++rho)
						inner += multiply(dM[rho](c, a), psiC(mu, rho), order);
					for (int d = 0; d < s.m; ++d)
						if (!s.K(c, mu, d).is_zero())
							inner -= s.K(c, mu, d) * M(d, a);
					h += multiply(Minv(b, c), inner, order);
				}
				H.push_back(std::move(h));
			}
	return H;
}

/// Realization in the transformed generators: x_mu -> sum x_al psi(C)_{mu al} + sum xi_a q_b H_{b mu a},
/// theta_a -> sum_b xi_b psi(K)_{ab}.
inline Realization similarity_transform(const SuperStructure &s, int D)
{
	const Dims dims = s.dims();
	Realization r;
	r.structure = s;
	const MatrixSeries psiC = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::C), D);
	const MatrixSeries M = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
	const auto H = h_tensor(s, D);
	auto h = [&](int b, int mu, int a) -> const MomentumPolynomial & {
		return H[(static_cast<std::size_t>(b) * s.n + mu) * s.m + a];
	};
	for (int mu = 0; mu < s.n; ++mu) {
		WeylElement xm = detail::x_times_row(psiC, mu);
		for (int a = 0; a < s.m; ++a)
			for (int b = 0; b < s.m; ++b)
				if (!h(b, mu, a).is_zero())
					xm += WeylElement::xi(dims, a) * WeylElement::q(dims, b) * h(b, mu, a).to_weyl();
		r.x.push_back(std::move(xm));
	}
	for (int a = 0; a < s.m; ++a) {
		WeylElement t(dims, Order(D));
		for (int b = 0; b < s.m; ++b)
			t += WeylElement::xi(dims, b) * M(a, b).to_weyl();
		r.theta.push_back(std::move(t));
	}
	return r;
}

struct ConjectureMismatch {
	int b = 0;
	int mu = 0;
	int a = 0;
	int degree = 0;
	MomentumPolynomial h;
	MomentumPolynomial p;
};

struct ConjectureReport {
	int n = 0;
	int m = 0;
	int requested_order = 0;
	std::vector<MomentumPolynomial> H;
	std::vector<MomentumPolynomial> P;
	int agreement_order = 0;
	std::optional<ConjectureMismatch> first_mismatch;
	bool theta_images_equal = false;

	const MomentumPolynomial &h(int b, int mu, int a) const
	{
		return H.at((static_cast<std::size_t>(b) * n + mu) * m + a);
	}
	const MomentumPolynomial &p(int b, int mu, int a) const
	{
		return P.at((static_cast<std::size_t>(b) * n + mu) * m + a);
	}
};

/// First (degree, b, mu, a) at which two flattened (b, mu, a) tensors differ, up to degree D.
inline std::optional<ConjectureMismatch> first_disagreement(const std::vector<MomentumPolynomial> &H,
                                                           const std::vector<MomentumPolynomial> &P, int n, int m,
                                                           int D)
{
	for (int k = 0; k <= D; ++k)
		for (int b = 0; b < m; ++b)
			for (int mu = 0; mu < n; ++mu)
				for (int a = 0; a < m; ++a) {
					const std::size_t idx = (static_cast<std::size_t>(b) * n + mu) * m + a;
					auto hk = H.at(idx).homogeneous_part(k);
					auto pk = P.at(idx).homogeneous_part(k);
					if (hk != pk)
						return ConjectureMismatch{b, mu, a, k, hk, pk};
				}
	return std::nullopt;
}

/// Compares H from the similarity transformation with P from psi of the super matrix, degree by degree.
inline ConjectureReport conjecture_test(const SuperStructure &s, int D)
{
	ConjectureReport rep;
	rep.n = s.n;
	rep.m = s.m;
	rep.requested_order = D;
	rep.H = h_tensor(s, D);
	const SuperTilde st = build_super_tilde(s, D);
	rep.P = st.P;
	rep.first_mismatch = first_disagreement(rep.H, rep.P, s.n, s.m, D);
	rep.agreement_order = rep.first_mismatch ? rep.first_mismatch->degree - 1 : D;
	const MatrixSeries M = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
	rep.theta_images_equal = st.psi.block(s.n, s.n, s.m, s.m) == M;
	return rep;
}

namespace detail {

inline MomentumPolynomial scalar_series(const SeriesCoefficients &f, const MomentumPolynomial &A, int D)
{
	MomentumPolynomial out(A.dims(), Order(D));
	MomentumPolynomial power = MomentumPolynomial::constant(A.dims(), 1);
	for (std::size_t k = 0; k < f.size() && !power.is_zero(); ++k) {
		out += GaussianRational(f[k]) * power;
		power = multiply(power, A, Order(D));
	}
	if (!power.is_zero())
		throw PrecisionError("series coefficients exhausted before the truncation order was reached");
	return out;
}

// p * d_be for p exact to order D - 1.
inline MomentumPolynomial times_momentum(const MomentumPolynomial &p, int be, int D)
{
	MomentumPolynomial out(p.dims(), Order(D));
	for (const auto &[mono, c] : p.terms()) {
		MomentumMonomial r = mono;
		r.d[be] += 1;
		out.add_term(r, c);
	}
	return out;
}

} // namespace detail

/// Closed-form realization of the kappa space with the S1, c = 0 calculus, A = i sum a_nu d_nu:
/// x_mu = x_mu A/(e^A - 1) + i a_mu (x.d)(1/A - 1/(e^A - 1)) + i a_mu sum xi_al q_al,
/// T1 = delta e^{-A} + i a_mu d_nu (1 - e^{-A})/A, T2 = i a_mu e^{-A} q_nu, T4 = delta e^{-A}.
inline Realization kappa_closed_forms(int n, KappaFamily family, const Rational &c, const std::vector<Rational> &a,
                                      int D)
{
	if (family != KappaFamily::S1 || c != 0)
		throw PreconditionError("closed forms are available only for family S1 with c = 0; "
		                        "use the generic realization for other calculi");
	Realization r;
	r.structure = build_kappa(n, family, c, a);
	const Dims dims{n, n};
	const GaussianRational I = GaussianRational::i();
	MomentumPolynomial A(dims);
	for (int nu = 0; nu < n; ++nu)
		A += (I * GaussianRational(a[nu])) * MomentumPolynomial::d(dims, nu);

	const SeriesCoefficients psi = bernoulli_psi_coeffs(D + 1);
	SeriesCoefficients psi_neg(D + 1), h(D);
	for (int k = 0; k <= D; ++k)
		psi_neg[k] = k % 2 == 0 ? psi[k] : Rational(-psi[k]);
	// 1/A - 1/(e^A - 1) = sum_k (-1)^k psi_{k+1} A^k
	for (int k = 0; k < D; ++k)
		h[k] = k % 2 == 0 ? psi[k + 1] : Rational(-psi[k + 1]);
	const MomentumPolynomial psiA = detail::scalar_series(psi_neg, A, D);
	const MomentumPolynomial hA = detail::scalar_series(h, A, D - 1);
	const MomentumPolynomial expA = detail::scalar_series(exp_coeffs(D, -1), A, D);
	const MomentumPolynomial gA = detail::scalar_series(one_minus_exp_over_t_coeffs(D - 1), A, D - 1);

	for (int mu = 0; mu < n; ++mu) {
		const GaussianRational ia = I * GaussianRational(a[mu]);
		WeylElement xm = WeylElement::x(dims, mu) * psiA.to_weyl();
		for (int al = 0; al < n; ++al) {
			if (!ia.is_zero())
				xm += ia * (WeylElement::x(dims, al) * detail::times_momentum(hA, al, D).to_weyl());
			xm += ia * (WeylElement::xi(dims, al) * WeylElement::q(dims, al));
		}
		r.x.push_back(std::move(xm));
		r.theta.push_back(WeylElement::xi(dims, mu));
	}
	r.t1.assign(n, {});
	r.t2.assign(n, {});
	r.t4.assign(n, {});
	for (int mu = 0; mu < n; ++mu) {
		const GaussianRational ia = I * GaussianRational(a[mu]);
		for (int nu = 0; nu < n; ++nu) {
			MomentumPolynomial t1 = ia * detail::times_momentum(gA, nu, D);
			MomentumPolynomial t4(dims, Order(D));
			if (mu == nu) {
				t1 += expA;
				t4 += expA;
			}
			r.t1[mu].push_back(t1.to_weyl());
			r.t4[mu].push_back(t4.to_weyl());
			r.t2[mu].push_back(ia * (expA.to_weyl() * WeylElement::q(dims, nu)));
		}
	}
	return r;
}

} // namespace ncdc
