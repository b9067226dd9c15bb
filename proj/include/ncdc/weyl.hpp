#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncdc/errors.hpp"
#include "ncdc/gaussian_rational.hpp"
#include "ncdc/order.hpp"

namespace ncdc {

/// Largest n (even generators) and m (odd generators) supported by the compact monomial layout.
inline constexpr int kMaxGenerators = 8;

/// Number of even (x, d) and odd (xi, q) generator pairs.
struct Dims {
	int n = 0;
	int m = 0;

	friend bool operator==(Dims, Dims) = default;
};

inline void check_dims(Dims d)
{
	if (d.n < 0 || d.m < 0 || d.n > kMaxGenerators || d.m > kMaxGenerators)
		throw InputError("dimensions (" + std::to_string(d.n) + ", " + std::to_string(d.m) +
		                 ") outside supported range 0.." + std::to_string(kMaxGenerators));
}

using Exponents = std::array<std::uint8_t, kMaxGenerators>;

inline int total_degree(const Exponents &e)
{
	int s = 0;
	for (auto v : e)
		s += v;
	return s;
}

/// Normal-ordered monomial x^xpow xi_{xi} d^dpow q_{q}. Odd index sets are bitmasks
/// (bit a set <=> factor with index a present, ascending order implied).
struct SuperMonomial {
	Exponents x{};
	std::uint16_t xi = 0;
	Exponents d{};
	std::uint16_t q = 0;

	int x_degree() const { return total_degree(x); }
	int d_degree() const { return total_degree(d); }
	int parity() const { return (std::popcount(xi) + std::popcount(q)) & 1; }

	friend auto operator<=>(const SuperMonomial &, const SuperMonomial &) = default;
};

/// Human-readable monomial, 1-based indices: "x1^2 xi1 d2 q1".
inline std::string to_string(const SuperMonomial &mono, Dims dims)
{
	std::string out;
	auto add = [&](const std::string &s) {
		if (!out.empty())
			out += ' ';
		out += s;
	};
	auto powers = [&](const char *name, const Exponents &e, int count) {
		for (int i = 0; i < count; ++i) {
			if (e[i] == 0)
				continue;
			std::string f = name + std::to_string(i + 1);
			if (e[i] > 1)
				f += "^" + std::to_string(e[i]);
			add(f);
		}
	};
	auto odd = [&](const char *name, std::uint16_t mask, int count) {
		for (int i = 0; i < count; ++i)
			if (mask >> i & 1)
				add(name + std::to_string(i + 1));
	};
	powers("x", mono.x, dims.n);
	odd("xi", mono.xi, dims.m);
	powers("d", mono.d, dims.n);
	odd("q", mono.q, dims.m);
	return out.empty() ? "1" : out;
}

namespace detail {

struct OddTerm {
	std::uint16_t xi;
	std::uint16_t q;
	int sign;
};

// Normal-orders a word of odd generators (kind 0 = xi, 1 = q) into xi-ascending, q-ascending
// form using xi_a xi_b = -xi_b xi_a, q_a q_b = -q_b q_a, q_a xi_b = delta_ab - xi_b q_a.
inline void normal_order_odd(std::vector<std::pair<int, int>> word, int sign,
                             std::map<std::pair<std::uint16_t, std::uint16_t>, int> &out)
{
	for (std::size_t i = 0; i + 1 < word.size(); ++i) {
		const auto g = word[i];
		const auto h = word[i + 1];
		if (g < h)
			continue;
		if (g == h)
			return; // square of an odd generator
		if (g.first == h.first) {
			std::swap(word[i], word[i + 1]);
			normal_order_odd(std::move(word), -sign, out);
			return;
		}
		// g = q_a, h = xi_b
		if (g.second == h.second) {
			auto contracted = word;
			contracted.erase(contracted.begin() + static_cast<long>(i),
			                 contracted.begin() + static_cast<long>(i) + 2);
			normal_order_odd(std::move(contracted), sign, out);
		}
		std::swap(word[i], word[i + 1]);
		normal_order_odd(std::move(word), -sign, out);
		return;
	}
	std::uint16_t xi = 0, q = 0;
	for (auto [kind, idx] : word)
		(kind == 0 ? xi : q) |= static_cast<std::uint16_t>(1u << idx);
	out[{xi, q}] += sign;
}

/// (xi_S q_T)(xi_U q_V) in normal order. Memoized per thread.
inline const std::vector<OddTerm> &odd_product(std::uint16_t s, std::uint16_t t, std::uint16_t u,
                                               std::uint16_t v)
{
	thread_local std::unordered_map<std::uint64_t, std::vector<OddTerm>> cache;
	const std::uint64_t key = std::uint64_t(s) | std::uint64_t(t) << 16 | std::uint64_t(u) << 32 |
	                          std::uint64_t(v) << 48;
	if (auto it = cache.find(key); it != cache.end())
		return it->second;

	std::vector<std::pair<int, int>> word;
	auto push = [&](int kind, std::uint16_t mask) {
		for (int i = 0; i < 16; ++i)
			if (mask >> i & 1)
				word.emplace_back(kind, i);
	};
	push(0, s);
	push(1, t);
	push(0, u);
	push(1, v);
	std::map<std::pair<std::uint16_t, std::uint16_t>, int> out;
	normal_order_odd(std::move(word), 1, out);
	std::vector<OddTerm> result;
	for (auto [k, c] : out)
		if (c != 0)
			result.push_back({k.first, k.second, c});
	return cache.emplace(key, std::move(result)).first->second;
}

inline long falling_factorial(int n, int k)
{
	long r = 1;
	for (int i = 0; i < k; ++i)
		r *= n - i;
	return r;
}

inline long binomial(int n, int k)
{
	long r = 1;
	for (int i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

} // namespace detail

/// Element of the semicompleted Weyl superalgebra: a sparse sum of normal-ordered
/// monomials, exact for every monomial of momentum degree <= order().
class WeylElement {
public:
	using Terms = std::map<SuperMonomial, GaussianRational>;

	explicit WeylElement(Dims dims, Order order = Order::infinite()) : dims_(dims), order_(order)
	{
		check_dims(dims);
	}

	static WeylElement constant(Dims dims, const GaussianRational &c)
	{
		WeylElement e(dims);
		e.add_term(SuperMonomial{}, c);
		return e;
	}
	static WeylElement x(Dims dims, int mu) { return generator(dims, mu, 'x'); }
	static WeylElement d(Dims dims, int mu) { return generator(dims, mu, 'd'); }
	static WeylElement xi(Dims dims, int a) { return generator(dims, a, 'e'); }
	static WeylElement q(Dims dims, int a) { return generator(dims, a, 'q'); }

	Dims dims() const { return dims_; }
	Order order() const { return order_; }
	const Terms &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	GaussianRational coefficient(const SuperMonomial &mono) const
	{
		auto it = terms_.find(mono);
		return it == terms_.end() ? GaussianRational{} : it->second;
	}

	/// Adds c * mono; terms beyond the validity order are dropped.
	void add_term(const SuperMonomial &mono, const GaussianRational &c)
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

	int max_x_degree() const
	{
		int p = 0;
		for (const auto &[mono, c] : terms_)
			p = std::max(p, mono.x_degree());
		return p;
	}

	/// Common parity of all terms, or nullopt when mixed. Zero counts as even.
	std::optional<int> parity() const
	{
		std::optional<int> p;
		for (const auto &[mono, c] : terms_) {
			if (!p)
				p = mono.parity();
			else if (*p != mono.parity())
				return std::nullopt;
		}
		return p.value_or(0);
	}

	WeylElement &operator+=(const WeylElement &o)
	{
		check_same(o);
		lower_order(o.order_);
		for (const auto &[mono, c] : o.terms_)
			add_term(mono, c);
		return *this;
	}
	WeylElement &operator-=(const WeylElement &o)
	{
		check_same(o);
		lower_order(o.order_);
		for (const auto &[mono, c] : o.terms_)
			add_term(mono, -c);
		return *this;
	}
	WeylElement &operator*=(const GaussianRational &k)
	{
		if (k.is_zero()) {
			terms_.clear();
			return *this;
		}
		for (auto &[mono, c] : terms_)
			c *= k;
		return *this;
	}

	friend WeylElement operator+(WeylElement a, const WeylElement &b) { return a += b; }
	friend WeylElement operator-(WeylElement a, const WeylElement &b) { return a -= b; }
	friend WeylElement operator*(WeylElement a, const GaussianRational &k) { return a *= k; }
	friend WeylElement operator*(const GaussianRational &k, WeylElement a) { return a *= k; }
	friend WeylElement operator-(WeylElement a) { return a *= GaussianRational(-1); }

	/// Exact equality of terms and order.
	friend bool operator==(const WeylElement &a, const WeylElement &b)
	{
		return a.dims_ == b.dims_ && a.order_ == b.order_ && a.terms_ == b.terms_;
	}

	/// Restricts the element to a lower validity order.
	void lower_order(Order o)
	{
		if (o >= order_)
			return;
		order_ = o;
		std::erase_if(terms_, [&](const auto &kv) { return !order_.covers(kv.first.d_degree()); });
	}

	std::string to_string() const
	{
		if (terms_.empty())
			return "0";
		std::string out;
		for (const auto &[mono, c] : terms_) {
			if (!out.empty())
				out += " + ";
			out += "(" + ncdc::to_string(c) + ") " + ncdc::to_string(mono, dims_);
		}
		return out;
	}

	void check_same(const WeylElement &o) const
	{
		if (dims_ != o.dims_)
			throw DimensionError("Weyl elements over different (n, m)");
	}

private:
	static WeylElement generator(Dims dims, int idx, char kind)
	{
		WeylElement e(dims);
		SuperMonomial mono;
		const int limit = (kind == 'x' || kind == 'd') ? dims.n : dims.m;
		if (idx < 0 || idx >= limit)
			throw InputError(std::string("generator index out of range for '") + kind + "'");
		switch (kind) {
		case 'x': mono.x[idx] = 1; break;
		case 'd': mono.d[idx] = 1; break;
		case 'e': mono.xi = static_cast<std::uint16_t>(1u << idx); break;
		default: mono.q = static_cast<std::uint16_t>(1u << idx); break;
		}
		e.add_term(mono, 1);
		return e;
	}

	Dims dims_;
	Order order_;
	Terms terms_;
};

namespace detail {

// Enumerates contraction vectors k (0 <= k_mu <= min(d_a[mu], x_b[mu])) for the product
// of x^xa d^da by x^xb d^db, calling f(k-weight, contracted degree).
template <class F>
void for_each_contraction(const SuperMonomial &a, const SuperMonomial &b, int n, int mu,
                          Exponents &k, long weight, int contracted, F &&f)
{
	if (mu == n) {
		f(k, weight, contracted);
		return;
	}
	const int limit = std::min(a.d[mu], b.x[mu]);
	for (int kk = 0; kk <= limit; ++kk) {
		k[mu] = static_cast<std::uint8_t>(kk);
		const long w = binomial(a.d[mu], kk) * falling_factorial(b.x[mu], kk);
		for_each_contraction(a, b, n, mu + 1, k, weight * w, contracted + kk, f);
	}
	k[mu] = 0;
}

} // namespace detail

/// Normal-ordered product. The result is valid to min(O_a - Px(b), O_b) where Px(b) is the
/// maximal x-degree of b: each x in b can absorb one momentum of an unknown term of a.
inline WeylElement normal_product(const WeylElement &a, const WeylElement &b)
{
	a.check_same(b);
	const Dims dims = a.dims();
	const Order order = min_order(a.order() - b.max_x_degree(), b.order());
	WeylElement out(dims, order);
	if (!order.is_infinite() && order.value() < 0)
		return out;

	std::map<SuperMonomial, GaussianRational> acc;
	for (const auto &[ma, ca] : a.terms()) {
		for (const auto &[mb, cb] : b.terms()) {
			const auto &odd = detail::odd_product(ma.xi, ma.q, mb.xi, mb.q);
			if (odd.empty())
				continue;
			const int base = ma.d_degree() + mb.d_degree();
			int max_contract = 0;
			for (int mu = 0; mu < dims.n; ++mu)
				max_contract += std::min(ma.d[mu], mb.x[mu]);
			if (!order.covers(base - max_contract))
				continue;
			const GaussianRational cab = ca * cb;
			Exponents k{};
			detail::for_each_contraction(
			    ma, mb, dims.n, 0, k, 1, 0, [&](const Exponents &kv, long w, int contracted) {
				    if (!order.covers(base - contracted))
					    return;
				    SuperMonomial r;
				    for (int mu = 0; mu < dims.n; ++mu) {
					    r.x[mu] = static_cast<std::uint8_t>(ma.x[mu] + mb.x[mu] - kv[mu]);
					    r.d[mu] = static_cast<std::uint8_t>(ma.d[mu] + mb.d[mu] - kv[mu]);
				    }
				    for (const auto &t : odd) {
					    r.xi = t.xi;
					    r.q = t.q;
					    GaussianRational c = cab;
					    c *= w * t.sign;
					    auto [it, inserted] = acc.try_emplace(r, std::move(c));
					    if (!inserted)
						    it->second += c;
				    }
			    });
		}
	}
	for (auto &[mono, c] : acc)
		out.add_term(mono, c);
	return out;
}

inline WeylElement operator*(const WeylElement &a, const WeylElement &b)
{
	return normal_product(a, b);
}

/// Graded commutator A B - (-1)^{|A||B|} B A. Both operands must have homogeneous parity.
inline WeylElement super_commutator(const WeylElement &a, const WeylElement &b)
{
	const auto pa = a.parity();
	const auto pb = b.parity();
	if (!pa || !pb)
		throw ParityError("supercommutator of an element without homogeneous parity");
	WeylElement ab = normal_product(a, b);
	WeylElement ba = normal_product(b, a);
	if ((*pa & *pb) != 0)
		return ab + ba;
	return ab - ba;
}

/// Formal derivative with respect to the momentum generator d_rho (0-based).
inline WeylElement partial_wrt_momentum(const WeylElement &a, int rho)
{
	if (rho < 0 || rho >= a.dims().n)
		throw InputError("momentum index " + std::to_string(rho + 1) + " out of range");
	WeylElement out(a.dims(), a.order() - 1);
	for (const auto &[mono, c] : a.terms()) {
		if (mono.d[rho] == 0)
			continue;
		SuperMonomial r = mono;
		r.d[rho] -= 1;
		GaussianRational k = c;
		k *= static_cast<long>(mono.d[rho]);
		out.add_term(r, k);
	}
	return out;
}

/// Keeps only terms free of d and q (the part that survives acting on 1).
inline WeylElement vacuum_project(const WeylElement &a)
{
	const bool valid = a.order().is_infinite() || a.order().value() >= 0;
	WeylElement out(a.dims(), valid ? Order::infinite() : a.order());
	for (const auto &[mono, c] : a.terms())
		if (mono.d_degree() == 0 && mono.q == 0)
			out.add_term(mono, c);
	return out;
}

/// Drops terms of momentum degree above `order` and lowers the validity order to it.
inline WeylElement truncate(const WeylElement &a, Order order)
{
	if (order > a.order())
		throw PrecisionError("cannot truncate a series valid to order " + a.order().to_string() +
		                     " at order " + order.to_string());
	WeylElement out = a;
	out.lower_order(order);
	return out;
}

/// True when a and b agree on every coefficient up to their common validity order.
inline bool agree_to_common_order(const WeylElement &a, const WeylElement &b)
{
	WeylElement diff = a - b;
	return diff.is_zero();
}

} // namespace ncdc
