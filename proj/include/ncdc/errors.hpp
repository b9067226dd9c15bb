#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncdc {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (files, value strings, expressions, indices).
class InputError : public Error {
public:
	using Error::Error;
};

/// Parse failure carrying the byte offset into the offending text.
class ParseError : public InputError {
public:
	ParseError(std::string message, std::string text, std::size_t position)
	    : InputError(message + " at position " + std::to_string(position)),
	      text_(std::move(text)), position_(position), reason_(std::move(message))
	{
	}

	const std::string &text() const { return text_; }
	std::size_t position() const { return position_; }
	const std::string &reason() const { return reason_; }

	/// The input line followed by a caret under the failing position.
	std::string caret() const
	{
		return text_ + "\n" + std::string(position_, ' ') + "^";
	}

private:
	std::string text_;
	std::size_t position_;
	std::string reason_;
};

/// Operands built over different (n, m).
class DimensionError : public Error {
public:
	using Error::Error;
};

/// Supercommutator requested on an element without homogeneous parity.
class ParityError : public Error {
public:
	using Error::Error;
};

/// An operation was called outside its stated domain (n != m, missing condition, ...).
class PreconditionError : public Error {
public:
	using Error::Error;
};

/// Request for more precision than a truncated series carries.
class PrecisionError : public Error {
public:
	using Error::Error;
};

/// Algebraic misuse detected at runtime (e.g. two q-linear entries multiplied).
class AlgebraError : public Error {
public:
	using Error::Error;
};

} // namespace ncdc
