#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ncdc/momentum.hpp"
#include "ncdc/structure.hpp"

namespace ncdc {

/// Taylor coefficients f_0, f_1, ... of a scalar function.
using SeriesCoefficients = std::vector<Rational>;

/// Coefficients of psi(t) = t / (1 - e^{-t}) = sum B_k (-1)^k / k! t^k through degree D.
inline SeriesCoefficients bernoulli_psi_coeffs(int D)
{
	if (D < 0)
		throw InputError("series degree must be non-negative");
	// B_k from sum_{j<=k} binom(k+1, j) B_j = 0 (convention B_1 = -1/2)
	std::vector<Rational> B(D + 1);
	B[0] = 1;
	for (int k = 1; k <= D; ++k) {
		Rational s = 0;
		mpz_class binom = 1; // binom(k+1, j)
		for (int j = 0; j < k; ++j) {
			s += Rational(binom) * B[j];
			binom = binom * (k + 1 - j) / (j + 1);
		}
		B[k] = -s / (k + 1);
	}
	SeriesCoefficients c(D + 1);
	mpz_class fact = 1;
	for (int k = 0; k <= D; ++k) {
		if (k > 0)
			fact *= k;
		c[k] = B[k] / Rational(fact);
		if (k % 2 == 1)
			c[k] = -c[k];
		c[k].canonicalize();
	}
	return c;
}

/// e^{s t}: s^k / k!.
inline SeriesCoefficients exp_coeffs(int D, const Rational &s = 1)
{
	SeriesCoefficients c(D + 1);
	Rational term = 1;
	for (int k = 0; k <= D; ++k) {
		c[k] = term;
		term = term * s / (k + 1);
	}
	return c;
}

/// (1 - e^{-t}) / t: (-1)^k / (k+1)!.
inline SeriesCoefficients one_minus_exp_over_t_coeffs(int D)
{
	SeriesCoefficients c(D + 1);
	mpz_class fact = 1;
	for (int k = 0; k <= D; ++k) {
		fact *= (k + 1);
		c[k] = Rational(k % 2 == 0 ? 1 : -1) / Rational(fact);
	}
	return c;
}

/// Dense matrix of momentum series sharing one validity order.
class MatrixSeries {
public:
	MatrixSeries() = default;
	MatrixSeries(int rows, int cols, Dims dims, Order order = Order::infinite())
	    : rows_(rows), cols_(cols), dims_(dims), order_(order),
	      entries_(static_cast<std::size_t>(rows) * cols, MomentumPolynomial(dims, order))
	{
	}

	static MatrixSeries identity(int size, Dims dims, Order order = Order::infinite())
	{
		MatrixSeries out(size, size, dims, order);
		for (int i = 0; i < size; ++i)
			out(i, i).add_term({}, 1);
		return out;
	}

	int rows() const { return rows_; }
	int cols() const { return cols_; }
	Dims dims() const { return dims_; }
	Order order() const { return order_; }

	const MomentumPolynomial &operator()(int i, int j) const { return entries_.at(index(i, j)); }
	MomentumPolynomial &operator()(int i, int j) { return entries_.at(index(i, j)); }

	bool is_zero() const
	{
		for (const auto &e : entries_)
			if (!e.is_zero())
				return false;
		return true;
	}

	void lower_order(Order o)
	{
		if (o >= order_)
			return;
		order_ = o;
		for (auto &e : entries_)
			e.lower_order(o);
	}

	MatrixSeries &operator+=(const MatrixSeries &o)
	{
		check_shape(o);
		lower_order(o.order_);
		for (std::size_t k = 0; k < entries_.size(); ++k)
			entries_[k] += o.entries_[k];
		return *this;
	}
	MatrixSeries &operator-=(const MatrixSeries &o)
	{
		check_shape(o);
		lower_order(o.order_);
		for (std::size_t k = 0; k < entries_.size(); ++k)
			entries_[k] -= o.entries_[k];
		return *this;
	}
	MatrixSeries &operator*=(const GaussianRational &k)
	{
		for (auto &e : entries_)
			e *= k;
		return *this;
	}

	friend MatrixSeries operator+(MatrixSeries a, const MatrixSeries &b) { return a += b; }
	friend MatrixSeries operator-(MatrixSeries a, const MatrixSeries &b) { return a -= b; }
	friend MatrixSeries operator*(MatrixSeries a, const GaussianRational &k) { return a *= k; }
	friend MatrixSeries operator*(const GaussianRational &k, MatrixSeries a) { return a *= k; }

	/// Matrix product truncated at min(order(a), order(b), limit).
	friend MatrixSeries multiply(const MatrixSeries &a, const MatrixSeries &b, Order limit = Order::infinite())
	{
		if (a.cols_ != b.rows_ || a.dims_ != b.dims_)
			throw DimensionError("matrix series shapes do not compose");
		const Order order = min_order(min_order(a.order_, b.order_), limit);
		MatrixSeries out(a.rows_, b.cols_, a.dims_, order);
		for (int i = 0; i < a.rows_; ++i)
			for (int k = 0; k < a.cols_; ++k) {
				const auto &lhs = a(i, k);
				if (lhs.is_zero())
					continue;
				for (int j = 0; j < b.cols_; ++j)
					if (!b(k, j).is_zero())
						out(i, j) += multiply(lhs, b(k, j), order);
			}
		return out;
	}

	friend MatrixSeries operator*(const MatrixSeries &a, const MatrixSeries &b) { return multiply(a, b); }

	friend bool operator==(const MatrixSeries &a, const MatrixSeries &b)
	{
		return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.dims_ == b.dims_ && a.order_ == b.order_ &&
		       a.entries_ == b.entries_;
	}

	/// Sub-block [r0, r0+rows) x [c0, c0+cols).
	MatrixSeries block(int r0, int c0, int rows, int cols) const
	{
		MatrixSeries out(rows, cols, dims_, order_);
		for (int i = 0; i < rows; ++i)
			for (int j = 0; j < cols; ++j)
				out(i, j) = (*this)(r0 + i, c0 + j);
		return out;
	}

	MatrixSeries derivative(int rho) const
	{
		MatrixSeries out(rows_, cols_, dims_, order_ - 1);
		for (int i = 0; i < rows_; ++i)
			for (int j = 0; j < cols_; ++j)
				out(i, j) = (*this)(i, j).derivative(rho);
		return out;
	}

private:
	std::size_t index(int i, int j) const
	{
		if (i < 0 || j < 0 || i >= rows_ || j >= cols_)
			throw InputError("matrix index out of range");
		return static_cast<std::size_t>(i) * cols_ + j;
	}

	void check_shape(const MatrixSeries &o) const
	{
		if (rows_ != o.rows_ || cols_ != o.cols_ || dims_ != o.dims_)
			throw DimensionError("matrix series shapes differ");
	}

	int rows_ = 0;
	int cols_ = 0;
	Dims dims_{0, 0};
	Order order_ = Order::infinite();
	std::vector<MomentumPolynomial> entries_;
};

enum class MomentumMatrix { C, K };

/// C-matrix (C)_{mu nu} = sum_al C(mu,al,nu) d_al, or K-matrix (K)_{ab} = sum_rho K(a,rho,b) d_rho.
inline MatrixSeries build_momentum_matrix(const SuperStructure &s, MomentumMatrix which)
{
	const Dims dims = s.dims();
	if (which == MomentumMatrix::C) {
		MatrixSeries out(s.n, s.n, dims);
		for (int mu = 0; mu < s.n; ++mu)
			for (int nu = 0; nu < s.n; ++nu)
				for (int al = 0; al < s.n; ++al)
					if (!s.C(mu, al, nu).is_zero())
						out(mu, nu) += s.C(mu, al, nu) * MomentumPolynomial::d(dims, al);
		return out;
	}
	MatrixSeries out(s.m, s.m, dims);
	for (int a = 0; a < s.m; ++a)
		for (int b = 0; b < s.m; ++b)
			for (int rho = 0; rho < s.n; ++rho)
				if (!s.K(a, rho, b).is_zero())
					out(a, b) += s.K(a, rho, b) * MomentumPolynomial::d(dims, rho);
	return out;
}

/// sum_k f_k M^k truncated at d-degree D. M must have no constant term; q-linear entries
/// are allowed, so powers are accumulated until they vanish after truncation.
inline MatrixSeries matrix_function(const SeriesCoefficients &f, const MatrixSeries &M, int D)
{
	if (M.rows() != M.cols())
		throw DimensionError("matrix function of a non-square matrix");
	for (int i = 0; i < M.rows(); ++i)
		for (int j = 0; j < M.cols(); ++j)
			if (M(i, j).has_constant_term())
				throw PreconditionError("matrix function needs a matrix without constant term");
	const Order order = min_order(Order(D), M.order());
	MatrixSeries result(M.rows(), M.cols(), M.dims(), order);
	MatrixSeries power = MatrixSeries::identity(M.rows(), M.dims(), order);
	for (std::size_t k = 0;; ++k) {
		if (power.is_zero())
			break;
		if (k >= f.size())
			throw PrecisionError("series coefficients exhausted before the truncation order was reached");
		if (sgn(f[k]) != 0)
			result += GaussianRational(f[k]) * power;
		power = multiply(power, M, order);
	}
	return result;
}

/// Inverse of I + N as sum_k (-N)^k truncated at D.
inline MatrixSeries matrix_inverse_series(const MatrixSeries &M, int D)
{
	if (M.rows() != M.cols())
		throw DimensionError("inverse of a non-square matrix");
	MatrixSeries N = M - MatrixSeries::identity(M.rows(), M.dims());
	for (int i = 0; i < N.rows(); ++i)
		for (int j = 0; j < N.cols(); ++j)
			if (N(i, j).has_constant_term())
				throw PreconditionError("series inverse needs a constant term equal to the identity");
	SeriesCoefficients alternating(D + 2);
	for (int k = 0; k <= D + 1; ++k)
		alternating[k] = k % 2 == 0 ? 1 : -1;
	return matrix_function(alternating, N, D);
}

/// Blocks of the super matrix Ct_{AB} = sum_J table(A,J,B) Dt_J with Dt = (d, q), its image
/// under psi, and the off-diagonal block F with F_{mu a} = sum_b q_b P(b, mu, a).
struct SuperTilde {
	MatrixSeries ctilde;
	MatrixSeries psi;
	MatrixSeries F;
	std::vector<MomentumPolynomial> P; // flattened (b, mu, a)
	int n = 0;
	int m = 0;

	const MomentumPolynomial &p(int b, int mu, int a) const
	{
		return P.at((static_cast<std::size_t>(b) * n + mu) * m + a);
	}
};

inline MatrixSeries build_ctilde(const SuperStructure &s)
{
	const Dims dims = s.dims();
	const MergedTable table(s);
	const int N = s.n + s.m;
	MatrixSeries out(N, N, dims);
	for (int A = 0; A < N; ++A)
		for (int J = 0; J < N; ++J)
			for (const auto &[B, v] : table.row(A, J)) {
				MomentumPolynomial dj =
				    J < s.n ? MomentumPolynomial::d(dims, J) : MomentumPolynomial::q(dims, J - s.n);
				out(A, B) += v * dj;
			}
	return out;
}

inline SuperTilde build_super_tilde(const SuperStructure &s, int D)
{
	SuperTilde st;
	st.n = s.n;
	st.m = s.m;
	st.ctilde = build_ctilde(s);
	st.psi = matrix_function(bernoulli_psi_coeffs(D + 1), st.ctilde, D);
	st.F = st.psi.block(0, s.n, s.n, s.m);
	for (int b = 0; b < s.m; ++b)
		for (int mu = 0; mu < s.n; ++mu)
			for (int a = 0; a < s.m; ++a)
				st.P.push_back(st.F(mu, a).q_coefficient(b));
	return st;
}

inline void require_calculus(const SuperStructure &s)
{
	if (s.n != s.m)
		throw PreconditionError("the exterior derivative needs n == m (got n=" + std::to_string(s.n) +
		                        ", m=" + std::to_string(s.m) + ")");
	auto report = check_calculus_condition(s);
	if (!report.passed()) {
		const auto &v = report.violations.front();
		throw PreconditionError("structure fails the Leibniz compatibility condition at (" +
		                        std::to_string(v.indices[0]) + "," + std::to_string(v.indices[1]) + "," +
		                        std::to_string(v.indices[2]) + ") with residual " + to_string(v.residual));
	}
}

/// Lambda_al = sum_be g(K)_{be al} d_be with g(t) = (1 - e^{-t}) / t, valid to order D.
inline std::vector<MomentumPolynomial> solve_lambda(const SuperStructure &s, int D)
{
	require_calculus(s);
	const Dims dims = s.dims();
	MatrixSeries g = matrix_function(one_minus_exp_over_t_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K),
	                                 std::max(D - 1, 0));
	std::vector<MomentumPolynomial> lambda;
	for (int al = 0; al < s.n; ++al) {
		MomentumPolynomial l(dims, Order(D));
		for (int be = 0; be < s.n; ++be)
			for (const auto &[mono, c] : g(be, al).terms()) {
				MomentumMonomial r = mono;
				r.d[be] += 1;
				l.add_term(r, c);
			}
		lambda.push_back(l);
	}
	return lambda;
}

/// Residual matrix (al, mu) of sum_be dLambda_al/dd_be psi(C)_{mu be} + sum_be K(be,mu,al) Lambda_be - delta.
inline MatrixSeries lambda_pde_residual(const SuperStructure &s, const std::vector<MomentumPolynomial> &lambda,
                                        int D)
{
	const Dims dims = s.dims();
	MatrixSeries psiC = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::C), D);
	Order order = Order(D);
	for (const auto &l : lambda)
		order = min_order(order, l.order() - 1);
	MatrixSeries out(s.n, s.n, dims, order);
	for (int al = 0; al < s.n; ++al)
		for (int mu = 0; mu < s.n; ++mu) {
			MomentumPolynomial r(dims, order);
			for (int be = 0; be < s.n; ++be) {
				r += multiply(lambda[al].derivative(be), psiC(mu, be), order);
				if (!s.K(be, mu, al).is_zero())
					r += s.K(be, mu, al) * lambda[be];
			}
			if (al == mu)
				r -= MomentumPolynomial::constant(dims, 1);
			out(al, mu) = r;
		}
	return out;
}

/// Residual vector of the Euler form sum_be dLambda_al/dd_be d_be + sum_be K_{be al} Lambda_be - d_al.
inline std::vector<MomentumPolynomial> lambda_euler_residual(const SuperStructure &s,
                                                             const std::vector<MomentumPolynomial> &lambda)
{
	const Dims dims = s.dims();
	MatrixSeries K = build_momentum_matrix(s, MomentumMatrix::K);
	std::vector<MomentumPolynomial> out;
	for (int al = 0; al < s.n; ++al) {
		Order order = lambda[al].order() - 1;
		for (const auto &l : lambda)
			order = min_order(order, l.order());
		MomentumPolynomial r(dims, order);
		for (int be = 0; be < s.n; ++be) {
			r += multiply(lambda[al].derivative(be), MomentumPolynomial::d(dims, be), order);
			r += multiply(K(be, al), lambda[be], order);
		}
		r -= MomentumPolynomial::d(dims, al);
		out.push_back(r);
	}
	return out;
}

namespace detail {

inline void record_nonzero(StructureReport &report, const std::string &check, std::vector<int> indices,
                           const MomentumPolynomial &residual)
{
	if (residual.is_zero())
		return;
	report.add(check, std::move(indices), residual.terms().begin()->second, residual.to_string());
}

} // namespace detail

/// sum_mu (C^k)_{mu be} d_mu = 0 for 1 <= k <= D and sum_mu psi(C)_{mu be} d_mu = d_be to order D.
inline StructureReport check_momentum_identity(const SuperStructure &s, int D)
{
	StructureReport report;
	const Dims dims = s.dims();
	const MatrixSeries C = build_momentum_matrix(s, MomentumMatrix::C);
	MatrixSeries power = C;
	for (int k = 1; k <= D; ++k) {
		for (int be = 0; be < s.n; ++be) {
			MomentumPolynomial r(dims);
			for (int mu = 0; mu < s.n; ++mu)
				r += multiply(power(mu, be), MomentumPolynomial::d(dims, mu));
			detail::record_nonzero(report, "momentum-power-contraction", {be + 1, k}, r);
		}
		power = multiply(power, C);
	}
	const MatrixSeries psiC = matrix_function(bernoulli_psi_coeffs(D), C, D);
	for (int be = 0; be < s.n; ++be) {
		MomentumPolynomial r(dims, Order(D));
		for (int mu = 0; mu < s.n; ++mu)
			r += multiply(psiC(mu, be), MomentumPolynomial::d(dims, mu), Order(D));
		r -= MomentumPolynomial::d(dims, be);
		detail::record_nonzero(report, "momentum-psi-contraction", {be + 1}, r);
	}
	return report;
}

/// sum_al d(e^K)_{ab}/dd_al psi(C)_{l al} = sum_c K(a,l,c) (e^K)_{cb} to order D - 1.
inline StructureReport exp_k_transport_check(const SuperStructure &s, int D)
{
	StructureReport report;
	const Dims dims = s.dims();
	const MatrixSeries expK = matrix_function(exp_coeffs(D), build_momentum_matrix(s, MomentumMatrix::K), D);
	const MatrixSeries psiC = matrix_function(bernoulli_psi_coeffs(D), build_momentum_matrix(s, MomentumMatrix::C), D);
	const Order order(D - 1);
	for (int a = 0; a < s.m; ++a)
		for (int b = 0; b < s.m; ++b)
			for (int l = 0; l < s.n; ++l) {
				MomentumPolynomial r(dims, order);
				for (int al = 0; al < s.n; ++al)
					r += multiply(expK(a, b).derivative(al), psiC(l, al), order);
				for (int c = 0; c < s.m; ++c)
					if (!s.K(a, l, c).is_zero())
						r -= s.K(a, l, c) * expK(c, b);
				detail::record_nonzero(report, "exp-k-transport", {a + 1, b + 1, l + 1}, r);
			}
	return report;
}

} // namespace ncdc
