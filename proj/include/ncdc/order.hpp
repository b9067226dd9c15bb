#pragma once

#include <algorithm>
#include <climits>
#include <compare>
#include <string>

namespace ncdc {

/// Validity order of a truncated series: coefficients of every monomial with
/// momentum degree <= value() are exact. Infinite for exact polynomials.
/// A negative finite order means no coefficient is known.
class Order {
public:
	constexpr Order() = default;
	constexpr Order(int v) : value_(v) {}

	static constexpr Order infinite() { return Order(kInfinite); }

	constexpr bool is_infinite() const { return value_ == kInfinite; }
	constexpr int value() const { return value_; }

	/// True when a monomial of momentum degree `deg` is covered.
	constexpr bool covers(int deg) const { return is_infinite() || deg <= value_; }

	friend constexpr Order operator-(Order o, int k)
	{
		return o.is_infinite() ? o : Order(o.value_ - k);
	}
	friend constexpr Order operator+(Order o, int k)
	{
		return o.is_infinite() ? o : Order(o.value_ + k);
	}
	friend constexpr auto operator<=>(Order, Order) = default;

	std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

private:
	static constexpr int kInfinite = INT_MAX;
	int value_ = kInfinite;
};

inline constexpr Order min_order(Order a, Order b) { return a < b ? a : b; }

} // namespace ncdc
