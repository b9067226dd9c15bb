#pragma once

// Word-level rewriting oracle for the Weyl superalgebra. Applies one defining
// relation at a time to the leftmost out-of-order pair until every word is in
// x-xi-d-q normal order. Deliberately slow and independent of normal_product.

#include <map>
#include <utility>
#include <vector>

#include "ncdc/weyl.hpp"

namespace oracle {

enum Kind { X = 0, Xi = 1, D = 2, Q = 3 };

struct Letter {
	int kind;
	int idx;
	friend auto operator<=>(const Letter &, const Letter &) = default;
};

using Word = std::vector<Letter>;
using WordSum = std::map<Word, ncdc::GaussianRational>;

inline bool odd(const Letter &l) { return l.kind == Xi || l.kind == Q; }

inline void add(WordSum &s, const Word &w, const ncdc::GaussianRational &c)
{
	if (c.is_zero())
		return;
	auto &slot = s[w];
	slot += c;
	if (slot.is_zero())
		s.erase(w);
}

/// One rewriting step on the leftmost offending pair. Returns false when already normal.
inline bool step(const Word &w, const ncdc::GaussianRational &c, WordSum &out)
{
	for (std::size_t i = 0; i + 1 < w.size(); ++i) {
		const Letter g = w[i], h = w[i + 1];
		if (g < h)
			continue;
		if (g == h) {
			if (odd(g))
				return true; // nilpotent: word vanishes
			continue;
		}
		Word swapped = w;
		std::swap(swapped[i], swapped[i + 1]);
		const bool both_odd = odd(g) && odd(h);
		add(out, swapped, both_odd ? -c : c);
		const bool contract = (g.kind == D && h.kind == X && g.idx == h.idx) ||
		                      (g.kind == Q && h.kind == Xi && g.idx == h.idx);
		if (contract) {
			Word shorter = w;
			shorter.erase(shorter.begin() + static_cast<long>(i),
			              shorter.begin() + static_cast<long>(i) + 2);
			add(out, shorter, c);
		}
		return true;
	}
	return false;
}

inline WordSum normalize(WordSum s)
{
	for (;;) {
		WordSum next;
		bool changed = false;
		for (const auto &[w, c] : s) {
			if (step(w, c, next))
				changed = true;
			else
				add(next, w, c);
		}
		s = std::move(next);
		if (!changed)
			return s;
	}
}

inline Word word_of(const ncdc::SuperMonomial &m, ncdc::Dims dims)
{
	Word w;
	for (int i = 0; i < dims.n; ++i)
		for (int k = 0; k < m.x[i]; ++k)
			w.push_back({X, i});
	for (int a = 0; a < dims.m; ++a)
		if (m.xi >> a & 1)
			w.push_back({Xi, a});
	for (int i = 0; i < dims.n; ++i)
		for (int k = 0; k < m.d[i]; ++k)
			w.push_back({D, i});
	for (int a = 0; a < dims.m; ++a)
		if (m.q >> a & 1)
			w.push_back({Q, a});
	return w;
}

inline ncdc::SuperMonomial monomial_of(const Word &w)
{
	ncdc::SuperMonomial m;
	for (const auto &l : w) {
		switch (l.kind) {
		case X: ++m.x[l.idx]; break;
		case D: ++m.d[l.idx]; break;
		case Xi: m.xi |= static_cast<std::uint16_t>(1u << l.idx); break;
		default: m.q |= static_cast<std::uint16_t>(1u << l.idx); break;
		}
	}
	return m;
}

/// Product of two exact elements computed by word concatenation and rewriting.
inline ncdc::WeylElement product(const ncdc::WeylElement &a, const ncdc::WeylElement &b)
{
	WordSum s;
	for (const auto &[ma, ca] : a.terms())
		for (const auto &[mb, cb] : b.terms()) {
			Word w = word_of(ma, a.dims());
			Word wb = word_of(mb, b.dims());
			w.insert(w.end(), wb.begin(), wb.end());
			add(s, w, ca * cb);
		}
	ncdc::WeylElement out(a.dims());
	for (const auto &[w, c] : normalize(std::move(s)))
		out.add_term(monomial_of(w), c);
	return out;
}

} // namespace oracle
