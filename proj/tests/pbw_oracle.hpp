#pragma once

// Straightening oracle for U(g): rewrites one adjacent out-of-order pair at a time
// using the defining relations, choosing the pair either leftmost or at random.

#include <map>
#include <random>
#include <vector>

#include "ncdc/pbw.hpp"

namespace pbw_oracle {

using ncdc::GaussianRational;
using ncdc::Word;
using WordSum = std::map<Word, GaussianRational>;

inline void add(WordSum &s, const Word &w, const GaussianRational &c)
{
	if (c.is_zero())
		return;
	auto &slot = s[w];
	slot += c;
	if (slot.is_zero())
		s.erase(w);
}

class Straightener {
public:
	explicit Straightener(const ncdc::SuperStructure &s) : table_(s), n_(s.n), m_(s.m) {}

	// rng == nullptr selects the leftmost offending pair.
	ncdc::PBWElement normalize(WordSum s, std::mt19937_64 *rng = nullptr) const
	{
		for (;;) {
			WordSum next;
			bool changed = false;
			for (const auto &[w, c] : s) {
				std::vector<std::size_t> bad;
				for (std::size_t i = 0; i + 1 < w.size(); ++i)
					if (w[i] > w[i + 1] || (w[i] == w[i + 1] && w[i] >= n_))
						bad.push_back(i);
				if (bad.empty()) {
					add(next, w, c);
					continue;
				}
				changed = true;
				const std::size_t i = rng ? bad[(*rng)() % bad.size()] : bad.front();
				const int g = w[i], h = w[i + 1];
				if (g == h)
					continue;
				Word swapped = w;
				std::swap(swapped[i], swapped[i + 1]);
				add(next, swapped, (g >= n_ && h >= n_) ? -c : c);
				for (int J = 0; J < n_ + m_; ++J) {
					const auto &v = table_(g, h, J);
					if (v.is_zero())
						continue;
					Word shorter(w.begin(), w.begin() + static_cast<long>(i));
					shorter.push_back(J);
					shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
					add(next, shorter, c * v);
				}
			}
			s = std::move(next);
			if (!changed)
				break;
		}
		ncdc::PBWElement out({n_, m_});
		for (const auto &[w, c] : s) {
			ncdc::PBWMonomial mono;
			for (int A : w) {
				if (A < n_)
					++mono.x[A];
				else
					mono.theta |= static_cast<std::uint16_t>(1u << (A - n_));
			}
			out.add_term(mono, c);
		}
		return out;
	}

	ncdc::PBWElement normalize_word(const Word &w, std::mt19937_64 *rng = nullptr) const
	{
		WordSum s;
		add(s, w, 1);
		return normalize(std::move(s), rng);
	}

	// Normal form of sum_i left_i * right_i with each factor given in PBW form.
	ncdc::PBWElement product(const ncdc::PBWElement &a, const ncdc::PBWElement &b) const
	{
		WordSum s;
		for (const auto &[ma, ca] : a.terms())
			for (const auto &[mb, cb] : b.terms()) {
				Word w = ncdc::word_of(ma, a.dims());
				Word wb = ncdc::word_of(mb, b.dims());
				w.insert(w.end(), wb.begin(), wb.end());
				add(s, w, ca * cb);
			}
		return normalize(std::move(s));
	}

private:
	ncdc::MergedTable table_;
	int n_;
	int m_;
};

} // namespace pbw_oracle
