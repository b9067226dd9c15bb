#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncdc/realization.hpp"
#include "ncdc/structure_io.hpp"

namespace ncdc {

inline constexpr const char *kRealizationFormat = "ncdc-realization/1";

struct RealizationDocument {
	Dims dims{0, 0};
	Order order = Order::infinite();
	std::vector<std::pair<std::string, WeylElement>> images;
};

namespace detail {

inline nlohmann::ordered_json exponent_array(const Exponents &e, int count)
{
	auto out = nlohmann::ordered_json::array();
	for (int k = 0; k < count; ++k)
		out.push_back(static_cast<int>(e[k]));
	return out;
}

inline nlohmann::ordered_json mask_array(std::uint16_t mask, int count)
{
	auto out = nlohmann::ordered_json::array();
	for (int k = 0; k < count; ++k)
		out.push_back((mask >> k) & 1u);
	return out;
}

inline nlohmann::ordered_json order_json(Order o)
{
	return o.is_infinite() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(o.value());
}

} // namespace detail

inline nlohmann::ordered_json terms_json(const WeylElement &e)
{
	const Dims dims = e.dims();
	auto terms = nlohmann::ordered_json::array();
	for (const auto &[mono, c] : e.terms()) {
		nlohmann::ordered_json t;
		t["x"] = detail::exponent_array(mono.x, dims.n);
		t["xi"] = detail::mask_array(mono.xi, dims.m);
		t["d"] = detail::exponent_array(mono.d, dims.n);
		t["q"] = detail::mask_array(mono.q, dims.m);
		t["val"] = to_string(c);
		terms.push_back(std::move(t));
	}
	return terms;
}

inline nlohmann::ordered_json realization_json(const Realization &r, const DerivativeOperator *d = nullptr)
{
	const Dims dims = r.structure.dims();
	Order order = r.order();
	auto images = nlohmann::ordered_json::array();
	auto push = [&](const std::string &label, const WeylElement &e) {
		nlohmann::ordered_json img;
		img["gen"] = label;
		img["terms"] = terms_json(e);
		images.push_back(std::move(img));
	};
	for (const auto &[label, e] : r.labelled())
		push(label, e);
	if (d) {
		order = min_order(order, d->d_hat.order());
		push("d", d->d_hat);
		for (std::size_t al = 0; al < d->lambda.size(); ++al)
			push("Lambda" + std::to_string(al + 1), d->lambda[al].to_weyl());
	}
	nlohmann::ordered_json doc;
	doc["format"] = kRealizationFormat;
	doc["n"] = dims.n;
	doc["m"] = dims.m;
	doc["order"] = detail::order_json(order);
	doc["images"] = std::move(images);
	return doc;
}

inline std::string write_realization(const Realization &r, const DerivativeOperator *d = nullptr)
{
	return realization_json(r, d).dump(2) + "\n";
}

namespace detail {

inline RealizationDocument realization_from_json(const nlohmann::json &doc)
{
	if (!doc.is_object() || doc.value("format", "") != kRealizationFormat)
		throw InputError(std::string("/format: expected \"") + kRealizationFormat + "\"");
	RealizationDocument out;
	out.dims = {detail::json_int(doc.at("n"), "/n"), detail::json_int(doc.at("m"), "/m")};
	check_dims(out.dims);
	if (!doc.at("order").is_null())
		out.order = Order(detail::json_int(doc.at("order"), "/order"));
	const auto &images = doc.at("images");
	if (!images.is_array())
		throw InputError("/images: expected an array");
	for (std::size_t i = 0; i < images.size(); ++i) {
		const std::string where = "/images/" + std::to_string(i);
		const auto &img = images[i];
		if (!img.is_object() || !img.contains("gen") || !img["gen"].is_string() || !img.contains("terms"))
			throw InputError(where + ": expected {\"gen\", \"terms\"}");
		WeylElement e(out.dims, out.order);
		const auto &terms = img["terms"];
		for (std::size_t k = 0; k < terms.size(); ++k) {
			const std::string tw = where + "/terms/" + std::to_string(k);
			const auto &t = terms[k];
			SuperMonomial mono;
			auto read_exponents = [&](const char *key, int count, Exponents &target) {
				const auto &arr = t.at(key);
				if (!arr.is_array() || static_cast<int>(arr.size()) != count)
					throw InputError(tw + "/" + key + ": expected " + std::to_string(count) + " entries");
				for (int j = 0; j < count; ++j) {
					const int v = detail::json_int(arr[j], tw + "/" + key + "/" + std::to_string(j));
					if (v < 0 || v > 255)
						throw InputError(tw + "/" + key + "/" + std::to_string(j) + ": exponent out of range");
					target[j] = static_cast<std::uint8_t>(v);
				}
			};
			auto read_mask = [&](const char *key, std::uint16_t &target) {
				Exponents bits{};
				read_exponents(key, out.dims.m, bits);
				for (int j = 0; j < out.dims.m; ++j) {
					if (bits[j] > 1)
						throw InputError(tw + "/" + key + "/" + std::to_string(j) + ": odd exponent must be 0 or 1");
					if (bits[j])
						target = static_cast<std::uint16_t>(target | (1u << j));
				}
			};
			read_exponents("x", out.dims.n, mono.x);
			read_mask("xi", mono.xi);
			read_exponents("d", out.dims.n, mono.d);
			read_mask("q", mono.q);
			e.add_term(mono, detail::json_value(t.at("val"), tw + "/val"));
		}
		out.images.emplace_back(img["gen"].get<std::string>(), std::move(e));
	}
	return out;
}

} // namespace detail

inline RealizationDocument read_realization(std::string_view bytes)
{
	nlohmann::json doc;
	try {
		doc = nlohmann::json::parse(bytes);
	} catch (const nlohmann::json::parse_error &e) {
		throw ParseError(std::string("malformed JSON: ") + e.what(), std::string(bytes),
		                 e.byte == 0 ? 0 : e.byte - 1);
	}
	try {
		return detail::realization_from_json(doc);
	} catch (const nlohmann::json::exception &e) {
		throw InputError(std::string("malformed realization document: ") + e.what());
	}
}

} // namespace ncdc
