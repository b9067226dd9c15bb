#pragma once

#include <random>

#include "ncdc/weyl.hpp"

namespace testing_support {

inline ncdc::GaussianRational small_scalar(std::mt19937_64 &rng)
{
	const long re = static_cast<long>(rng() % 7) - 3;
	const long im = static_cast<long>(rng() % 5) - 2;
	const long den = static_cast<long>(rng() % 3) + 1;
	return {ncdc::Rational(re, den), ncdc::Rational(im, 1)};
}

/// Random exact element with at most `terms` monomials, x-degree <= max_x, d-degree <= max_d.
/// When parity >= 0 every term has that parity.
inline ncdc::WeylElement random_element(std::mt19937_64 &rng, ncdc::Dims dims, int terms, int max_x,
                                        int max_d, int parity = -1)
{
	ncdc::WeylElement e(dims);
	for (int t = 0; t < terms; ++t) {
		ncdc::SuperMonomial m;
		int xd = static_cast<int>(rng() % (max_x + 1));
		for (int k = 0; k < xd && dims.n > 0; ++k)
			++m.x[rng() % dims.n];
		int dd = static_cast<int>(rng() % (max_d + 1));
		for (int k = 0; k < dd && dims.n > 0; ++k)
			++m.d[rng() % dims.n];
		if (dims.m > 0) {
			m.xi = static_cast<std::uint16_t>(rng() % (1u << dims.m));
			m.q = static_cast<std::uint16_t>(rng() % (1u << dims.m));
			if (parity >= 0 && m.parity() != parity) {
				m.xi ^= 1u; // flip one odd factor to fix parity
			}
		} else if (parity == 1) {
			continue;
		}
		e.add_term(m, small_scalar(rng));
	}
	return e;
}

} // namespace testing_support
