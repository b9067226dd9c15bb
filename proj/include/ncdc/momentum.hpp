#pragma once

#include <map>
#include <string>

#include "ncdc/weyl.hpp"

namespace ncdc {

/// d^dpow times at most one q factor (q < 0 means none).
struct MomentumMonomial {
	Exponents d{};
	int q = -1;

	int d_degree() const { return total_degree(d); }
	int degree() const { return d_degree() + (q >= 0 ? 1 : 0); }

	friend auto operator<=>(const MomentumMonomial &, const MomentumMonomial &) = default;
};

/// Series in the momenta d_mu that is at most linear in the odd momenta q_a, exact for
/// every term of d-degree <= order(). Momenta commute with each other and with q.
class MomentumPolynomial {
public:
	using Terms = std::map<MomentumMonomial, GaussianRational>;

	MomentumPolynomial() = default;
	explicit MomentumPolynomial(Dims dims, Order order = Order::infinite()) : dims_(dims), order_(order) {}

	static MomentumPolynomial constant(Dims dims, const GaussianRational &c)
	{
		MomentumPolynomial p(dims);
		p.add_term({}, c);
		return p;
	}
	static MomentumPolynomial d(Dims dims, int mu)
	{
		if (mu < 0 || mu >= dims.n)
			throw InputError("momentum index out of range");
		MomentumMonomial mono;
		mono.d[mu] = 1;
		MomentumPolynomial p(dims);
		p.add_term(mono, 1);
		return p;
	}
	static MomentumPolynomial q(Dims dims, int a)
	{
		if (a < 0 || a >= dims.m)
			throw InputError("odd momentum index out of range");
		MomentumMonomial mono;
		mono.q = a;
		MomentumPolynomial p(dims);
		p.add_term(mono, 1);
		return p;
	}

	Dims dims() const { return dims_; }
	Order order() const { return order_; }
	const Terms &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	GaussianRational coefficient(const MomentumMonomial &mono) const
	{
		auto it = terms_.find(mono);
		return it == terms_.end() ? GaussianRational{} : it->second;
	}

	void add_term(const MomentumMonomial &mono, const GaussianRational &c)
	{
		if (c.is_zero() || !order_.covers(mono.d_degree()))
			return;
		auto [it, inserted] = terms_.try_emplace(mono, c);
		if (!inserted) {
			it->second += c;
			if (it->second.is_zero())
				terms_.erase(it);
		}
	}

	void lower_order(Order o)
	{
		if (o >= order_)
			return;
		order_ = o;
		std::erase_if(terms_, [&](const auto &kv) { return !order_.covers(kv.first.d_degree()); });
	}

	bool has_constant_term() const { return terms_.count(MomentumMonomial{}) != 0; }

	bool q_free() const
	{
		for (const auto &[mono, c] : terms_)
			if (mono.q >= 0)
				return false;
		return true;
	}

	/// The q_b coefficient, a q-free series.
	MomentumPolynomial q_coefficient(int b) const
	{
		MomentumPolynomial out(dims_, order_);
		for (const auto &[mono, c] : terms_)
			if (mono.q == b) {
				MomentumMonomial r = mono;
				r.q = -1;
				out.add_term(r, c);
			}
		return out;
	}

	/// Terms of d-degree exactly k.
	MomentumPolynomial homogeneous_part(int k) const
	{
		MomentumPolynomial out(dims_);
		for (const auto &[mono, c] : terms_)
			if (mono.d_degree() == k)
				out.add_term(mono, c);
		return out;
	}

	MomentumPolynomial &operator+=(const MomentumPolynomial &o)
	{
		check_same(o);
		lower_order(o.order_);
		for (const auto &[mono, c] : o.terms_)
			add_term(mono, c);
		return *this;
	}
	MomentumPolynomial &operator-=(const MomentumPolynomial &o)
	{
		check_same(o);
		lower_order(o.order_);
		for (const auto &[mono, c] : o.terms_)
			add_term(mono, -c);
		return *this;
	}
	MomentumPolynomial &operator*=(const GaussianRational &k)
	{
		if (k.is_zero())
			terms_.clear();
		for (auto &[mono, c] : terms_)
			c *= k;
		return *this;
	}

	friend MomentumPolynomial operator+(MomentumPolynomial a, const MomentumPolynomial &b) { return a += b; }
	friend MomentumPolynomial operator-(MomentumPolynomial a, const MomentumPolynomial &b) { return a -= b; }
	friend MomentumPolynomial operator*(MomentumPolynomial a, const GaussianRational &k) { return a *= k; }
	friend MomentumPolynomial operator*(const GaussianRational &k, MomentumPolynomial a) { return a *= k; }
	friend MomentumPolynomial operator-(MomentumPolynomial a) { return a *= GaussianRational(-1); }

	/// Product truncated at min(order(a), order(b), limit). Two q-linear factors are rejected.
	friend MomentumPolynomial multiply(const MomentumPolynomial &a, const MomentumPolynomial &b,
	                                   Order limit = Order::infinite())
	{
		a.check_same(b);
		MomentumPolynomial out(a.dims_, min_order(min_order(a.order_, b.order_), limit));
		for (const auto &[ma, ca] : a.terms_)
			for (const auto &[mb, cb] : b.terms_) {
				if (ma.q >= 0 && mb.q >= 0)
					throw AlgebraError("product of two q-linear momentum series leaves the q-linear sector");
				MomentumMonomial r;
				for (int mu = 0; mu < a.dims_.n; ++mu)
					r.d[mu] = static_cast<std::uint8_t>(ma.d[mu] + mb.d[mu]);
				if (!out.order_.covers(r.d_degree()))
					continue;
				r.q = ma.q >= 0 ? ma.q : mb.q;
				out.add_term(r, ca * cb);
			}
		return out;
	}

	friend MomentumPolynomial operator*(const MomentumPolynomial &a, const MomentumPolynomial &b)
	{
		return multiply(a, b);
	}

	friend bool operator==(const MomentumPolynomial &a, const MomentumPolynomial &b)
	{
		return a.dims_ == b.dims_ && a.order_ == b.order_ && a.terms_ == b.terms_;
	}

	/// Formal derivative in d_rho; the validity order drops by one.
	MomentumPolynomial derivative(int rho) const
	{
		if (rho < 0 || rho >= dims_.n)
			throw InputError("momentum index " + std::to_string(rho + 1) + " out of range");
		MomentumPolynomial out(dims_, order_ - 1);
		for (const auto &[mono, c] : terms_) {
			if (mono.d[rho] == 0)
				continue;
			MomentumMonomial r = mono;
			r.d[rho] -= 1;
			GaussianRational k = c;
			k *= static_cast<long>(mono.d[rho]);
			out.add_term(r, k);
		}
		return out;
	}

	WeylElement to_weyl() const
	{
		WeylElement out(dims_, order_);
		for (const auto &[mono, c] : terms_) {
			SuperMonomial s;
			s.d = mono.d;
			if (mono.q >= 0)
				s.q = static_cast<std::uint16_t>(1u << mono.q);
			out.add_term(s, c);
		}
		return out;
	}

	std::string to_string() const
	{
		if (terms_.empty())
			return "0";
		std::string out;
		for (const auto &[mono, c] : terms_) {
			if (!out.empty())
				out += " + ";
			SuperMonomial s;
			s.d = mono.d;
			if (mono.q >= 0)
				s.q = static_cast<std::uint16_t>(1u << mono.q);
			out += "(" + ncdc::to_string(c) + ") " + ncdc::to_string(s, dims_);
		}
		return out;
	}

	void check_same(const MomentumPolynomial &o) const
	{
		if (dims_ != o.dims_)
			throw DimensionError("momentum series over different (n, m)");
	}

private:
	Dims dims_{0, 0};
	Order order_ = Order::infinite();
	Terms terms_;
};

/// Converts an x-free, xi-free Weyl element that is at most q-linear.
inline MomentumPolynomial momentum_from_weyl(const WeylElement &w)
{
	MomentumPolynomial out(w.dims(), w.order());
	for (const auto &[mono, c] : w.terms()) {
		if (mono.x_degree() != 0 || mono.xi != 0 || std::popcount(mono.q) > 1)
			throw AlgebraError("Weyl element is not a q-linear momentum series");
		MomentumMonomial m;
		m.d = mono.d;
		if (mono.q != 0)
			m.q = std::countr_zero(mono.q);
		out.add_term(m, c);
	}
	return out;
}

} // namespace ncdc
