#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ncdc/structure.hpp"

namespace ncdc {

/// Word in the generators Z_A of U(g): indices 0..n-1 are X_1..X_n, n..n+m-1 are theta_1..theta_m.
using Word = std::vector<int>;

/// PBW basis monomial X_1^{e_1} ... X_n^{e_n} theta_{a_1} ... theta_{a_k} with a_1 < ... < a_k.
struct PBWMonomial {
	Exponents x{};
	std::uint16_t theta = 0;

	int x_degree() const { return total_degree(x); }
	int degree() const { return x_degree() + std::popcount(theta); }
	int parity() const { return std::popcount(theta) & 1; }

	friend auto operator<=>(const PBWMonomial &, const PBWMonomial &) = default;
};

inline Word word_of(const PBWMonomial &mono, Dims dims)
{
	Word w;
	for (int mu = 0; mu < dims.n; ++mu)
		for (int k = 0; k < mono.x[mu]; ++k)
			w.push_back(mu);
	for (int a = 0; a < dims.m; ++a)
		if (mono.theta >> a & 1)
			w.push_back(dims.n + a);
	return w;
}

/// Element of U(g) in the PBW basis.
class PBWElement {
public:
	using Terms = std::map<PBWMonomial, GaussianRational>;

	explicit PBWElement(Dims dims) : dims_(dims) { check_dims(dims); }

	static PBWElement constant(Dims dims, const GaussianRational &c)
	{
		PBWElement e(dims);
		e.add_term(PBWMonomial{}, c);
		return e;
	}

	static PBWElement generator(Dims dims, int A)
	{
		if (A < 0 || A >= dims.n + dims.m)
			throw InputError("generator index " + std::to_string(A + 1) + " out of range");
		PBWMonomial mono;
		if (A < dims.n)
			mono.x[A] = 1;
		else
			mono.theta = static_cast<std::uint16_t>(1u << (A - dims.n));
		PBWElement e(dims);
		e.add_term(mono, 1);
		return e;
	}

	Dims dims() const { return dims_; }
	const Terms &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	GaussianRational coefficient(const PBWMonomial &mono) const
	{
		auto it = terms_.find(mono);
		return it == terms_.end() ? GaussianRational{} : it->second;
	}

	void add_term(const PBWMonomial &mono, const GaussianRational &c)
	{
		if (c.is_zero())
			return;
		auto [it, inserted] = terms_.try_emplace(mono, c);
		if (!inserted) {
			it->second += c;
			if (it->second.is_zero())
				terms_.erase(it);
		}
	}

	/// Highest PBW degree among the terms; -1 for zero.
	int degree() const
	{
		int d = -1;
		for (const auto &[mono, c] : terms_)
			d = std::max(d, mono.degree());
		return d;
	}

	bool has_theta() const
	{
		for (const auto &[mono, c] : terms_)
			if (mono.theta != 0)
				return true;
		return false;
	}

	PBWElement &operator+=(const PBWElement &o)
	{
		check_same(o);
		for (const auto &[mono, c] : o.terms_)
			add_term(mono, c);
		return *this;
	}
	PBWElement &operator-=(const PBWElement &o)
	{
		check_same(o);
		for (const auto &[mono, c] : o.terms_)
			add_term(mono, -c);
		return *this;
	}
	PBWElement &operator*=(const GaussianRational &k)
	{
		if (k.is_zero())
			terms_.clear();
		for (auto &[mono, c] : terms_)
			c *= k;
		return *this;
	}

	friend PBWElement operator+(PBWElement a, const PBWElement &b) { return a += b; }
	friend PBWElement operator-(PBWElement a, const PBWElement &b) { return a -= b; }
	friend PBWElement operator*(PBWElement a, const GaussianRational &k) { return a *= k; }
	friend PBWElement operator*(const GaussianRational &k, PBWElement a) { return a *= k; }
	friend PBWElement operator-(PBWElement a) { return a *= GaussianRational(-1); }
	friend bool operator==(const PBWElement &a, const PBWElement &b)
	{
		return a.dims_ == b.dims_ && a.terms_ == b.terms_;
	}

	void check_same(const PBWElement &o) const
	{
		if (dims_ != o.dims_)
			throw DimensionError("PBW elements over different (n, m)");
	}

private:
	Dims dims_;
	Terms terms_;
};

/// Readable form, highest degree first, such as "X1^2 theta1 - 1/2 X2 + i".
inline std::string format_pbw(const PBWElement &e)
{
	if (e.is_zero())
		return "0";
	const Dims dims = e.dims();
	std::vector<std::pair<PBWMonomial, GaussianRational>> terms(e.terms().begin(), e.terms().end());
	std::stable_sort(terms.begin(), terms.end(), [](const auto &l, const auto &r) {
		if (l.first.degree() != r.first.degree())
			return l.first.degree() > r.first.degree();
		return l.first > r.first;
	});
	std::string out;
	for (const auto &[mono, c] : terms) {
		std::string factors;
		for (int mu = 0; mu < dims.n; ++mu) {
			if (mono.x[mu] == 0)
				continue;
			factors += (factors.empty() ? "" : " ") + std::string("X") + std::to_string(mu + 1);
			if (mono.x[mu] > 1)
				factors += "^" + std::to_string(mono.x[mu]);
		}
		for (int a = 0; a < dims.m; ++a)
			if (mono.theta >> a & 1)
				factors += (factors.empty() ? "" : " ") + std::string("theta") + std::to_string(a + 1);

		const bool negative = sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
		const GaussianRational mag = negative ? -c : c;
		std::string coeff;
		if (mag.is_real() || sgn(mag.re()) == 0) {
			coeff = to_string(mag);
			if (coeff == "1i")
				coeff = "i";
		} else {
			coeff = "(" + to_string(mag) + ")";
		}
		std::string term;
		if (factors.empty())
			term = coeff;
		else if (coeff == "1")
			term = factors;
		else
			term = coeff + " " + factors;

		if (out.empty())
			out = negative ? "-" + term : term;
		else
			out += (negative ? " - " : " + ") + term;
	}
	return out;
}

enum class ShiftSide { Left, Right };

/// Names one extended generator: T_AB (left shift) or S_AB (right shift), 0-based indices.
struct ShiftIndex {
	int A = 0;
	int B = 0;
	ShiftSide side = ShiftSide::Left;
};

/// Enveloping algebra U(g) with PBW normal forms and the actions of the shift operators.
/// Results are memoized per instance; an instance must not be shared between threads.
class Enveloping {
public:
	explicit Enveloping(SuperStructure s) : s_(std::move(s)), table_(s_), dims_(s_.dims()) {}

	const SuperStructure &structure() const { return s_; }
	const MergedTable &table() const { return table_; }
	Dims dims() const { return dims_; }
	int size() const { return dims_.n + dims_.m; }
	int parity(int A) const { return table_.parity(A); }
	int shift_parity(int A, int B) const { return parity(A) ^ parity(B); }

	PBWElement generator(int A) const { return PBWElement::generator(dims_, A); }
	PBWElement one() const { return PBWElement::constant(dims_, 1); }

	/// (PBW monomial) * Z_A brought to normal form.
	const PBWElement &times_generator(const PBWMonomial &mono, int A)
	{
		auto key = std::make_pair(mono, A);
		if (auto it = right_cache_.find(key); it != right_cache_.end())
			return it->second;
		PBWElement result = compute_times_generator(mono, A);
		return right_cache_.emplace(std::move(key), std::move(result)).first->second;
	}

	PBWElement times_generator(const PBWElement &e, int A)
	{
		PBWElement out(dims_);
		for (const auto &[mono, c] : e.terms())
			add_scaled(out, times_generator(mono, A), c);
		return out;
	}

	/// PBW normal form of c * Z_{w_1} ... Z_{w_k}.
	PBWElement normal_form(const Word &w, const GaussianRational &c = 1)
	{
		check_word(w);
		PBWElement acc = PBWElement::constant(dims_, c);
		for (int A : w)
			acc = times_generator(acc, A);
		return acc;
	}

	PBWElement multiply(const PBWElement &a, const PBWElement &b)
	{
		a.check_same(b);
		PBWElement out(dims_);
		for (const auto &[mono, c] : b.terms()) {
			PBWElement acc = a;
			for (int A : word_of(mono, dims_))
				acc = times_generator(acc, A);
			add_scaled(out, acc, c);
		}
		return out;
	}

	/// T_AB acting on a word by T(Z_C w) = sum_J table(A,C,J) T_JB(w) + (-1)^{|T_AB||Z_C|} Z_C T_AB(w),
	/// starting from T_AB(1) = delta_AB.
	const PBWElement &shift_left(int A, int B, const Word &w)
	{
		check_index(A);
		check_index(B);
		auto key = std::make_tuple(A, B, w);
		if (auto it = left_cache_.find(key); it != left_cache_.end())
			return it->second;
		PBWElement result(dims_);
		if (parity(A) == 1 && parity(B) == 0) {
			// T^3 block vanishes identically
		} else if (w.empty()) {
			if (A == B)
				result = one();
		} else {
			const int C = w.front();
			const Word rest(w.begin() + 1, w.end());
			for (const auto &[J, v] : table_.row(A, C))
				add_scaled(result, shift_left(J, B, rest), v);
			const PBWElement inner = shift_left(A, B, rest);
			PBWElement moved = multiply(generator(C), inner);
			if (shift_parity(A, B) & parity(C))
				moved *= GaussianRational(-1);
			result += moved;
		}
		return left_cache_.emplace(std::move(key), std::move(result)).first->second;
	}

	PBWElement shift_left(int A, int B, const PBWElement &X)
	{
		PBWElement out(dims_);
		for (const auto &[mono, c] : X.terms())
			add_scaled(out, shift_left(A, B, word_of(mono, dims_)), c);
		return out;
	}

	/// T_AB acting on a product X Y through the block product rules, with the factors
	/// evaluated by the recursion in shift_left.
	PBWElement shift_left_block(int A, int B, const PBWElement &X, const PBWElement &Y)
	{
		check_index(A);
		check_index(B);
		const int n = dims_.n, m = dims_.m;
		PBWElement out(dims_);
		if (parity(A) == 1 && parity(B) == 0)
			return out;
		if (parity(A) == 0 && parity(B) == 0) {
			for (int al = 0; al < n; ++al)
				out += multiply(shift_left(A, al, X), shift_left(al, B, Y));
		} else if (parity(A) == 1 && parity(B) == 1) {
			for (int b = 0; b < m; ++b)
				out += multiply(shift_left(A, n + b, X), shift_left(n + b, B, Y));
		} else {
			for (int a = 0; a < m; ++a)
				out += multiply(shift_left(A, n + a, X), shift_left(n + a, B, Y));
			for (const auto &[mono, c] : X.terms()) {
				PBWElement Xh(dims_);
				Xh.add_term(mono, mono.parity() ? -c : c);
				for (int al = 0; al < n; ++al)
					out += multiply(shift_left(A, al, Xh), shift_left(al, B, Y));
			}
		}
		return out;
	}

	/// S_AB acting on a word by S(Z_D w) = sum_C S_CB(Z_D) (-1)^{|S_AC||Z_D|} S_AC(w), where
	/// S_CB(Z_D) = (-1)^{|S_CB||Z_D|} delta_CB Z_D - table(C,D,B) follows from
	/// [S_AB, Z_D] = -sum_J table(J,D,B) S_AJ applied to 1 with S_AB(1) = delta_AB.
	const PBWElement &shift_right(int A, int B, const Word &w)
	{
		check_index(A);
		check_index(B);
		auto key = std::make_tuple(A, B, w);
		if (auto it = right_shift_cache_.find(key); it != right_shift_cache_.end())
			return it->second;
		PBWElement result(dims_);
		if (w.empty()) {
			if (A == B)
				result = one();
		} else {
			const int D = w.front();
			const Word rest(w.begin() + 1, w.end());
			for (int C = 0; C < size(); ++C) {
				PBWElement base = PBWElement::constant(dims_, -table_(C, D, B));
				if (C == B)
					base += (shift_parity(C, B) & parity(D)) ? -generator(D) : generator(D);
				if (base.is_zero())
					continue;
				const PBWElement &tail = shift_right(A, C, rest);
				if (tail.is_zero())
					continue;
				PBWElement term = multiply(base, tail);
				if (shift_parity(A, C) & parity(D))
					term *= GaussianRational(-1);
				result += term;
			}
		}
		return right_shift_cache_.emplace(std::move(key), std::move(result)).first->second;
	}

	PBWElement shift_right(int A, int B, const PBWElement &X)
	{
		PBWElement out(dims_);
		for (const auto &[mono, c] : X.terms())
			add_scaled(out, shift_right(A, B, word_of(mono, dims_)), c);
		return out;
	}

	PBWElement act(const ShiftIndex &idx, const PBWElement &X)
	{
		return idx.side == ShiftSide::Left ? shift_left(idx.A, idx.B, X) : shift_right(idx.A, idx.B, X);
	}

	/// {B -> T_AB(X)} with Z_A X = sum_B T_AB(X) Z_B for X in U(g_0).
	std::vector<PBWElement> move_right(int A, const PBWElement &X)
	{
		require_even_subalgebra(X);
		std::vector<PBWElement> out;
		for (int B = 0; B < size(); ++B)
			out.push_back(shift_left(A, B, X));
		return out;
	}

	/// {B -> S_AB(X)} with X Z_A = sum_B Z_B S_AB(X) for X in U(g_0).
	std::vector<PBWElement> move_left(int A, const PBWElement &X)
	{
		require_even_subalgebra(X);
		std::vector<PBWElement> out;
		for (int B = 0; B < size(); ++B)
			out.push_back(shift_right(A, B, X));
		return out;
	}

private:
	static void add_scaled(PBWElement &out, const PBWElement &e, const GaussianRational &c)
	{
		for (const auto &[mono, v] : e.terms())
			out.add_term(mono, v * c);
	}

	void check_index(int A) const
	{
		if (A < 0 || A >= size())
			throw InputError("generator index " + std::to_string(A + 1) + " out of range 1.." +
			                 std::to_string(size()));
	}

	void check_word(const Word &w) const
	{
		for (int A : w)
			check_index(A);
	}

	void require_even_subalgebra(const PBWElement &X) const
	{
		if (X.dims() != dims_)
			throw DimensionError("element built over different (n, m)");
		if (X.has_theta())
			throw PreconditionError("shift of a generator past X is defined for X in U(g_0); the "
			                        "expression contains one-forms");
	}

	// Largest generator index occurring in a nonempty monomial.
	int last_generator(const PBWMonomial &mono) const
	{
		if (mono.theta != 0)
			return dims_.n + (15 - std::countl_zero(mono.theta));
		for (int mu = dims_.n - 1; mu >= 0; --mu)
			if (mono.x[mu] > 0)
				return mu;
		return -1;
	}

	PBWElement compute_times_generator(const PBWMonomial &mono, int A)
	{
		check_index(A);
		PBWElement out(dims_);
		const int L = last_generator(mono);
		if (L < 0 || L < A || (L == A && parity(A) == 0)) {
			PBWMonomial r = mono;
			if (A < dims_.n)
				++r.x[A];
			else
				r.theta |= static_cast<std::uint16_t>(1u << (A - dims_.n));
			out.add_term(r, 1);
			return out;
		}
		if (L == A)
			return out; // theta_a^2 = 0
		// mono = rest * Z_L with L > A: Z_L Z_A = (-1)^{|L||A|} Z_A Z_L + sum_J table(L,A,J) Z_J
		PBWMonomial rest = mono;
		if (L < dims_.n)
			--rest.x[L];
		else
			rest.theta &= static_cast<std::uint16_t>(~(1u << (L - dims_.n)));
		PBWElement swapped = times_generator(times_generator(rest, A), L);
		add_scaled(out, swapped, (parity(L) & parity(A)) ? -1 : 1);
		for (const auto &[J, v] : table_.row(L, A))
			add_scaled(out, times_generator(rest, J), v);
		return out;
	}

	SuperStructure s_;
	MergedTable table_;
	Dims dims_;
	std::map<std::pair<PBWMonomial, int>, PBWElement> right_cache_;
	std::map<std::tuple<int, int, Word>, PBWElement> left_cache_;
	std::map<std::tuple<int, int, Word>, PBWElement> right_shift_cache_;
};

} // namespace ncdc
