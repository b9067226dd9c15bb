#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdc/pbw.hpp"

namespace ncdc {

/// One parsed term: coefficient times the word of generators in written order.
struct ExpressionTerm {
	GaussianRational coeff;
	Word word;
};

namespace detail {

class ExpressionScanner {
public:
	ExpressionScanner(std::string_view text, Dims dims) : text_(text), dims_(dims) {}

	std::vector<ExpressionTerm> parse()
	{
		std::vector<ExpressionTerm> out;
		skip_ws();
		bool negative = false;
		if (peek() == '+' || peek() == '-') {
			negative = peek() == '-';
			++pos_;
			skip_ws();
		}
		out.push_back(term(negative));
		for (;;) {
			skip_ws();
			if (at_end())
				break;
			if (peek() != '+' && peek() != '-')
				fail("expected '+' or '-' between terms");
			negative = peek() == '-';
			++pos_;
			skip_ws();
			out.push_back(term(negative));
		}
		return out;
	}

private:
	ExpressionTerm term(bool negative)
	{
		ExpressionTerm t{negative ? GaussianRational(-1) : GaussianRational(1), {}};
		bool any = false;
		if (peek() == '(') {
			++pos_;
			const std::size_t start = pos_;
			const std::size_t close = text_.find(')', pos_);
			if (close == std::string_view::npos)
				fail("unclosed '('");
			try {
				t.coeff *= parse_value(text_.substr(start, close - start));
			} catch (const ParseError &e) {
				pos_ = start + e.position();
				fail("invalid coefficient: " + e.reason());
			}
			pos_ = close + 1;
			any = true;
			skip_ws();
		} else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == 'i') {
			t.coeff *= scalar();
			any = true;
			skip_ws();
		}
		while (peek() == 'X' || peek() == 't') {
			factor(t.word);
			any = true;
			skip_ws();
		}
		if (!any)
			fail("expected a coefficient or a generator (X<k> or theta<k>)");
		return t;
	}

	GaussianRational scalar()
	{
		if (peek() == 'i') {
			++pos_;
			return GaussianRational::i();
		}
		Rational r = integer();
		if (peek() == '/') {
			++pos_;
			const std::size_t den_pos = pos_;
			Rational d = integer();
			if (sgn(d) == 0) {
				pos_ = den_pos;
				fail("zero denominator");
			}
			r /= d;
		}
		if (peek() == 'i') {
			++pos_;
			return GaussianRational(Rational(0), r);
		}
		return GaussianRational(r);
	}

	Rational integer()
	{
		const std::size_t start = pos_;
		while (std::isdigit(static_cast<unsigned char>(peek())))
			++pos_;
		if (pos_ == start)
			fail("expected digits");
		return Rational(std::string(text_.substr(start, pos_ - start)));
	}

	void factor(Word &w)
	{
		bool theta = false;
		if (text_.substr(pos_, 5) == "theta") {
			theta = true;
			pos_ += 5;
		} else if (peek() == 'X') {
			++pos_;
		} else {
			fail("expected X<k> or theta<k>");
		}
		const std::size_t idx_pos = pos_;
		const Rational idx = integer();
		const int limit = theta ? dims_.m : dims_.n;
		if (idx < 1 || idx > limit) {
			pos_ = idx_pos;
			fail(std::string(theta ? "theta" : "X") + " index out of range 1.." + std::to_string(limit));
		}
		int power = 1;
		if (peek() == '^') {
			++pos_;
			const std::size_t pow_pos = pos_;
			const Rational p = integer();
			if (p > 64) {
				pos_ = pow_pos;
				fail("exponent too large");
			}
			power = static_cast<int>(p.get_num().get_si());
		}
		const int A = (theta ? dims_.n : 0) + static_cast<int>(idx.get_num().get_si()) - 1;
		for (int k = 0; k < power; ++k)
			w.push_back(A);
	}

	char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
	bool at_end() const { return pos_ >= text_.size(); }
	void skip_ws()
	{
		while (std::isspace(static_cast<unsigned char>(peek())))
			++pos_;
	}
	[[noreturn]] void fail(const std::string &what) const { throw ParseError(what, std::string(text_), pos_); }

	std::string_view text_;
	Dims dims_;
	std::size_t pos_ = 0;
};

} // namespace detail

/// Parses expr := term (("+"|"-") term)* with term := coeff? factor*, factor := ("X"|"theta") int ("^" int)?.
/// A coefficient is a value-grammar term (rat, rat? "i") or a full value in parentheses.
inline std::vector<ExpressionTerm> parse_expression(std::string_view text, Dims dims)
{
	return detail::ExpressionScanner(text, dims).parse();
}

/// Parses an expression and brings it to PBW normal form.
inline PBWElement expression_to_pbw(Enveloping &env, std::string_view text)
{
	PBWElement out(env.dims());
	for (const auto &t : parse_expression(text, env.dims()))
		out += env.normal_form(t.word, t.coeff);
	return out;
}

} // namespace ncdc
