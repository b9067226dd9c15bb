#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "ncdc/errors.hpp"

namespace ncdc {

using Rational = mpq_class;

/// Exact element re + im*i of Q(i). Both parts are kept in canonical (reduced) form.
class GaussianRational {
public:
	GaussianRational() = default;
	GaussianRational(int v) : re_(v) {}
	GaussianRational(long v) : re_(v) {}
	GaussianRational(long long v) : re_(static_cast<long>(v)) {}
	GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
	GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
	{
		re_.canonicalize();
		im_.canonicalize();
	}

	static GaussianRational i() { return {Rational(0), Rational(1)}; }

	const Rational &re() const { return re_; }
	const Rational &im() const { return im_; }

	bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
	bool is_real() const { return sgn(im_) == 0; }

	GaussianRational conj() const { return {re_, -im_}; }

	GaussianRational &operator+=(const GaussianRational &o)
	{
		re_ += o.re_;
		im_ += o.im_;
		return *this;
	}
	GaussianRational &operator-=(const GaussianRational &o)
	{
		re_ -= o.re_;
		im_ -= o.im_;
		return *this;
	}
	GaussianRational &operator*=(const GaussianRational &o)
	{
		if (o.is_real()) {
			re_ *= o.re_;
			im_ *= o.re_;
		} else if (is_real()) {
			im_ = re_ * o.im_;
			re_ *= o.re_;
		} else {
			Rational r = re_ * o.re_ - im_ * o.im_;
			im_ = re_ * o.im_ + im_ * o.re_;
			re_ = std::move(r);
		}
		return *this;
	}
	GaussianRational &operator*=(long k)
	{
		re_ *= k;
		im_ *= k;
		return *this;
	}
	GaussianRational &operator/=(const GaussianRational &o)
	{
		if (o.is_zero())
			throw std::domain_error("division by zero in Q(i)");
		if (o.is_real()) {
			re_ /= o.re_;
			im_ /= o.re_;
			return *this;
		}
		Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
		*this *= o.conj();
		re_ /= norm;
		im_ /= norm;
		return *this;
	}

	friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
	friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
	friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
	friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
	friend GaussianRational operator-(const GaussianRational &a) { return {-a.re_, -a.im_}; }

	friend bool operator==(const GaussianRational &a, const GaussianRational &b)
	{
		return a.re_ == b.re_ && a.im_ == b.im_;
	}

private:
	Rational re_{0};
	Rational im_{0};
};

namespace detail {

inline std::string rational_string(const Rational &r)
{
	return r.get_str(10);
}

} // namespace detail

/// Canonical value-grammar text: "0", "3/2", "-1i", "1/2-3i".
inline std::string to_string(const GaussianRational &z)
{
	const bool has_re = sgn(z.re()) != 0;
	const bool has_im = sgn(z.im()) != 0;
	if (!has_re && !has_im)
		return "0";
	if (!has_im)
		return detail::rational_string(z.re());
	if (!has_re)
		return detail::rational_string(z.im()) + "i";
	std::string out = detail::rational_string(z.re());
	out += sgn(z.im()) < 0 ? "-" : "+";
	out += detail::rational_string(abs(z.im())) + "i";
	return out;
}

namespace detail {

class ValueScanner {
public:
	explicit ValueScanner(std::string_view text) : text_(text) {}

	GaussianRational value()
	{
		GaussianRational v = term(true);
		if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
			const bool minus = text_[pos_] == '-';
			++pos_;
			GaussianRational t = term(true);
			v += minus ? -t : t;
		}
		if (pos_ != text_.size())
			fail("unexpected character");
		return v;
	}

	// rat | rat? "i"
	GaussianRational term(bool allow_sign)
	{
		if (pos_ < text_.size() && text_[pos_] == 'i') {
			++pos_;
			return GaussianRational::i();
		}
		Rational r = rational(allow_sign);
		if (pos_ < text_.size() && text_[pos_] == 'i') {
			++pos_;
			return {Rational(0), r};
		}
		return r;
	}

	std::size_t position() const { return pos_; }

private:
	Rational rational(bool allow_sign)
	{
		bool negative = false;
		if (allow_sign && pos_ < text_.size() && text_[pos_] == '-') {
			negative = true;
			++pos_;
		}
		std::string num = digits();
		std::string den = "1";
		if (pos_ < text_.size() && text_[pos_] == '/') {
			++pos_;
			den = digits();
			if (den.find_first_not_of('0') == std::string::npos)
				fail("zero denominator");
		}
		Rational r(num + "/" + den, 10);
		r.canonicalize();
		return negative ? Rational(-r) : r;
	}

	std::string digits()
	{
		const std::size_t start = pos_;
		while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
			++pos_;
		if (start == pos_)
			fail("expected digit");
		return std::string(text_.substr(start, pos_ - start));
	}

	[[noreturn]] void fail(const std::string &what) const
	{
		throw ParseError(what, std::string(text_), pos_);
	}

	std::string_view text_;
	std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the value grammar: value := term | term ("+"|"-") term ; term := rat | rat? "i".
inline GaussianRational parse_value(std::string_view text)
{
	return detail::ValueScanner(text).value();
}

} // namespace ncdc
