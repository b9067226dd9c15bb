#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ncdc/errors.hpp"
#include "ncdc/gaussian_rational.hpp"
#include "ncdc/weyl.hpp"

namespace ncdc {

/// Dense rank-3 tensor of exact scalars, 0-based indices.
class Tensor3 {
public:
	Tensor3() = default;
	Tensor3(int d0, int d1, int d2)
	    : dims_{d0, d1, d2}, data_(static_cast<std::size_t>(d0) * d1 * d2)
	{
	}

	std::array<int, 3> shape() const { return dims_; }

	const GaussianRational &operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
	GaussianRational &operator()(int i, int j, int k) { return data_[index(i, j, k)]; }

	bool in_range(int i, int j, int k) const
	{
		return i >= 0 && j >= 0 && k >= 0 && i < dims_[0] && j < dims_[1] && k < dims_[2];
	}

	bool is_zero() const
	{
		for (const auto &v : data_)
			if (!v.is_zero())
				return false;
		return true;
	}

	friend bool operator==(const Tensor3 &, const Tensor3 &) = default;

private:
	std::size_t index(int i, int j, int k) const
	{
		if (!in_range(i, j, k))
			throw InputError("tensor index (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
			                 std::to_string(k + 1) + ") out of range");
		return (static_cast<std::size_t>(i) * dims_[1] + j) * dims_[2] + k;
	}

	std::array<int, 3> dims_{0, 0, 0};
	std::vector<GaussianRational> data_;
};

/// Structure constants of g = g0 + g1:
///   [X_mu, X_nu] = sum C(mu,nu,l) X_l,   [theta_a, X_nu] = sum K(a,nu,b) theta_b.
struct SuperStructure {
	int n = 0;
	int m = 0;
	Tensor3 C; // n x n x n
	Tensor3 K; // m x n x m

	SuperStructure() = default;
	SuperStructure(int n_, int m_) : n(n_), m(m_), C(n_, n_, n_), K(m_, n_, m_)
	{
		check_dims({n_, m_});
	}

	Dims dims() const { return {n, m}; }

	/// Sets C(mu,nu,l) = v and C(nu,mu,l) = -v.
	void set_c_antisymmetric(int mu, int nu, int l, const GaussianRational &v)
	{
		C(mu, nu, l) = v;
		C(nu, mu, l) = -v;
	}

	friend bool operator==(const SuperStructure &, const SuperStructure &) = default;
};

/// One failed identity instance: which check, the 1-based index tuple, the exact residual.
struct Violation {
	std::string check;
	std::vector<int> indices;
	GaussianRational residual;
	std::string detail;
};

struct StructureReport {
	std::vector<Violation> violations;

	bool passed() const { return violations.empty(); }

	void add(std::string check, std::vector<int> indices, GaussianRational residual,
	         std::string detail = {})
	{
		violations.push_back({std::move(check), std::move(indices), std::move(residual), std::move(detail)});
	}

	void append(const StructureReport &o)
	{
		violations.insert(violations.end(), o.violations.begin(), o.violations.end());
	}
};

/// Checks antisymmetry of C, the Lie algebra Jacobi identity for C and the
/// representation identity linking K to C. Exhaustive over all index tuples.
inline StructureReport validate_structure(const SuperStructure &s)
{
	if (s.C.shape() != std::array<int, 3>{s.n, s.n, s.n} || s.K.shape() != std::array<int, 3>{s.m, s.n, s.m})
		throw InputError("structure tensors do not match (n, m)");
	StructureReport report;
	const int n = s.n, m = s.m;
	for (int mu = 0; mu < n; ++mu)
		for (int nu = mu; nu < n; ++nu)
			for (int l = 0; l < n; ++l) {
				GaussianRational r = s.C(mu, nu, l) + s.C(nu, mu, l);
				if (!r.is_zero())
					report.add("antisymmetry", {mu + 1, nu + 1, l + 1}, r);
			}
	for (int mu = 0; mu < n; ++mu)
		for (int al = 0; al < n; ++al)
			for (int be = 0; be < n; ++be)
				for (int nu = 0; nu < n; ++nu) {
					GaussianRational r;
					for (int rho = 0; rho < n; ++rho) {
						r += s.C(mu, al, rho) * s.C(rho, be, nu);
						r += s.C(al, be, rho) * s.C(rho, mu, nu);
						r += s.C(be, mu, rho) * s.C(rho, al, nu);
					}
					if (!r.is_zero())
						report.add("jacobi-coordinates", {mu + 1, al + 1, be + 1, nu + 1}, r);
				}
	for (int a = 0; a < m; ++a)
		for (int mu = 0; mu < n; ++mu)
			for (int nu = 0; nu < n; ++nu)
				for (int c = 0; c < m; ++c) {
					GaussianRational r;
					for (int b = 0; b < m; ++b) {
						r += s.K(a, nu, b) * s.K(b, mu, c);
						r -= s.K(a, mu, b) * s.K(b, nu, c);
					}
					for (int rho = 0; rho < n; ++rho)
						r += s.C(mu, nu, rho) * s.K(a, rho, c);
					if (!r.is_zero())
						report.add("jacobi-forms", {a + 1, mu + 1, nu + 1, c + 1}, r);
				}
	return report;
}

/// Leibniz compatibility for a calculus of classical dimension:
/// K(mu,nu,a) - K(nu,mu,a) = C(mu,nu,a). Requires n == m.
inline StructureReport check_calculus_condition(const SuperStructure &s)
{
	if (s.n != s.m)
		throw PreconditionError("calculus condition requires n == m (got n=" + std::to_string(s.n) +
		                        ", m=" + std::to_string(s.m) + ")");
	StructureReport report;
	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = 0; nu < s.n; ++nu)
			for (int a = 0; a < s.n; ++a) {
				GaussianRational r = s.K(mu, nu, a) - s.K(nu, mu, a) - s.C(mu, nu, a);
				if (!r.is_zero())
					report.add("leibniz-compatibility", {mu + 1, nu + 1, a + 1}, r);
			}
	return report;
}

enum class KappaFamily { S1, S2, S3 };

/// kappa-deformed space [X_mu, X_nu] = i(a_mu X_nu - a_nu X_mu) with one of the three
/// families of one-form structure constants (n == m). |a|^2 is the Euclidean sum of squares.
inline SuperStructure build_kappa(int n, KappaFamily family, const Rational &c, const std::vector<Rational> &a)
{
	if (static_cast<int>(a.size()) != n)
		throw InputError("deformation vector has " + std::to_string(a.size()) + " components, expected " +
		                 std::to_string(n));
	Rational norm2 = 0;
	for (const auto &v : a)
		norm2 += v * v;
	if (sgn(c) != 0 && sgn(norm2) == 0)
		throw std::domain_error("c != 0 requires a nonzero deformation vector (division by |a|^2)");

	SuperStructure s(n, n);
	const GaussianRational i = GaussianRational::i();
	auto delta = [](int p, int r) { return p == r ? 1 : 0; };
	for (int mu = 0; mu < n; ++mu)
		for (int nu = 0; nu < n; ++nu)
			for (int l = 0; l < n; ++l) {
				Rational cv = a[mu] * delta(nu, l) - a[nu] * delta(mu, l);
				s.C(mu, nu, l) = i * GaussianRational(cv);

				Rational kv = 0;
				if (sgn(c) != 0)
					kv += c / norm2 * a[mu] * a[nu] * a[l];
				switch (family) {
				case KappaFamily::S1:
					kv -= delta(mu, l) * a[nu];
					break;
				case KappaFamily::S2:
					kv -= c * delta(mu, l) * a[nu];
					kv += (1 - c) * delta(nu, l) * a[mu];
					break;
				case KappaFamily::S3:
					kv -= (1 + c) * delta(mu, nu) * a[l];
					kv -= delta(mu, l) * a[nu];
					break;
				}
				s.K(mu, nu, l) = i * GaussianRational(kv);
			}
	return s;
}

using ScalarMatrix = std::vector<std::vector<GaussianRational>>;

/// Builds K(a,nu,c) = (R_nu)(a,c) from matrices satisfying [R_mu, R_nu] = sum C(mu,nu,rho) R_rho.
inline SuperStructure build_from_representation(int n, const Tensor3 &C, const std::vector<ScalarMatrix> &R)
{
	if (C.shape() != std::array<int, 3>{n, n, n})
		throw InputError("structure constants must be n x n x n");
	if (static_cast<int>(R.size()) != n)
		throw InputError("expected " + std::to_string(n) + " representation matrices");
	const int m = R.empty() ? 0 : static_cast<int>(R[0].size());
	for (const auto &mat : R) {
		if (static_cast<int>(mat.size()) != m)
			throw InputError("representation matrices must all be m x m");
		for (const auto &row : mat)
			if (static_cast<int>(row.size()) != m)
				throw InputError("representation matrices must be square");
	}
	for (int mu = 0; mu < n; ++mu)
		for (int nu = 0; nu < n; ++nu)
			for (int a = 0; a < m; ++a)
				for (int c = 0; c < m; ++c) {
					GaussianRational r;
					for (int b = 0; b < m; ++b)
						r += R[mu][a][b] * R[nu][b][c] - R[nu][a][b] * R[mu][b][c];
					for (int rho = 0; rho < n; ++rho)
						r -= C(mu, nu, rho) * R[rho][a][c];
					if (!r.is_zero())
						throw InputError("representation property fails for (mu,nu) = (" + std::to_string(mu + 1) +
						                 "," + std::to_string(nu + 1) + ")");
				}
	SuperStructure s(n, m);
	s.C = C;
	for (int nu = 0; nu < n; ++nu)
		for (int a = 0; a < m; ++a)
			for (int c = 0; c < m; ++c)
				s.K(a, nu, c) = R[nu][a][c];
	auto report = validate_structure(s);
	if (!report.passed())
		throw InputError("structure built from representation fails validation (" +
		                 report.violations.front().check + ")");
	return s;
}

/// Structure constants of the whole superalgebra in the basis Z = (X_1..X_n, theta_1..theta_m):
/// [Z_A, Z_B} = sum_J table(A,B,J) Z_J.
class MergedTable {
public:
	MergedTable() = default;
	explicit MergedTable(const SuperStructure &s) : n_(s.n), m_(s.m), table_(s.n + s.m, s.n + s.m, s.n + s.m)
	{
		for (int mu = 0; mu < n_; ++mu)
			for (int nu = 0; nu < n_; ++nu)
				for (int l = 0; l < n_; ++l)
					table_(mu, nu, l) = s.C(mu, nu, l);
		for (int mu = 0; mu < n_; ++mu)
			for (int a = 0; a < m_; ++a)
				for (int b = 0; b < m_; ++b) {
					table_(mu, n_ + a, n_ + b) = -s.K(a, mu, b);
					table_(n_ + a, mu, n_ + b) = s.K(a, mu, b);
				}
		for (int a = 0; a < n_ + m_; ++a)
			for (int b = 0; b < n_ + m_; ++b) {
				std::vector<std::pair<int, GaussianRational>> row;
				for (int j = 0; j < n_ + m_; ++j)
					if (!table_(a, b, j).is_zero())
						row.emplace_back(j, table_(a, b, j));
				sparse_.push_back(std::move(row));
			}
	}

	int n() const { return n_; }
	int m() const { return m_; }
	int size() const { return n_ + m_; }

	/// Grading of Z_A: 0 for coordinates, 1 for one-forms.
	int parity(int A) const { return A >= n_ ? 1 : 0; }

	const GaussianRational &operator()(int A, int B, int J) const { return table_(A, B, J); }

	/// Nonzero (J, value) pairs of table(A, B, .).
	const std::vector<std::pair<int, GaussianRational>> &row(int A, int B) const
	{
		return sparse_[static_cast<std::size_t>(A) * size() + B];
	}

	/// Nonzero entries as ((A,B,J) 0-based, value), lexicographic.
	std::map<std::array<int, 3>, GaussianRational> entries() const
	{
		std::map<std::array<int, 3>, GaussianRational> out;
		for (int a = 0; a < size(); ++a)
			for (int b = 0; b < size(); ++b)
				for (const auto &[j, v] : row(a, b))
					out.emplace(std::array<int, 3>{a, b, j}, v);
		return out;
	}

private:
	int n_ = 0;
	int m_ = 0;
	Tensor3 table_;
	std::vector<std::vector<std::pair<int, GaussianRational>>> sparse_;
};

inline MergedTable merge_table(const SuperStructure &s) { return MergedTable(s); }

} // namespace ncdc
