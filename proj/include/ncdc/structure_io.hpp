#pragma once

#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ncdc/structure.hpp"

namespace ncdc {

inline constexpr const char *kStructureFormat = "ncdc-structure/1";

namespace detail {

inline GaussianRational json_value(const nlohmann::json &node, const std::string &where)
{
	if (!node.is_string())
		throw InputError(where + ": value must be a string");
	const std::string text = node.get<std::string>();
	try {
		return parse_value(text);
	} catch (const ParseError &e) {
		throw ParseError(where + ": " + e.reason(), text, e.position());
	}
}

inline int json_int(const nlohmann::json &node, const std::string &where)
{
	if (!node.is_number_integer())
		throw InputError(where + ": expected an integer");
	return node.get<int>();
}

inline std::array<int, 3> json_index(const nlohmann::json &entry, const std::string &where,
                                     std::array<int, 3> bounds)
{
	if (!entry.is_object())
		throw InputError(where + ": entry must be an object");
	for (const auto &[key, v] : entry.items())
		if (key != "idx" && key != "val")
			throw InputError(where + ": unknown key '" + key + "'");
	if (!entry.contains("idx") || !entry.contains("val"))
		throw InputError(where + ": entry needs both 'idx' and 'val'");
	const auto &idx = entry["idx"];
	if (!idx.is_array() || idx.size() != 3)
		throw InputError(where + "/idx: expected three indices");
	std::array<int, 3> out{};
	for (int k = 0; k < 3; ++k) {
		int v = json_int(idx[k], where + "/idx/" + std::to_string(k));
		if (v < 1 || v > bounds[k])
			throw InputError(where + "/idx/" + std::to_string(k) + ": index " + std::to_string(v) +
			                 " out of range 1.." + std::to_string(bounds[k]));
		out[k] = v - 1;
	}
	return out;
}

} // namespace detail

/// Parses a structure file. C entries may be listed for either ordering of the first
/// two indices; the antisymmetric partner is filled in and must not contradict.
inline SuperStructure read_structure(std::string_view bytes)
{
	nlohmann::json doc;
	try {
		doc = nlohmann::json::parse(bytes);
	} catch (const nlohmann::json::parse_error &e) {
		throw ParseError(std::string("malformed JSON: ") + e.what(), std::string(bytes), e.byte == 0 ? 0 : e.byte - 1);
	}
	if (!doc.is_object())
		throw InputError("structure file must be a JSON object");
	static const std::set<std::string> allowed{"format", "n", "m", "C", "K"};
	for (const auto &[key, v] : doc.items())
		if (!allowed.count(key))
			throw InputError("unknown top-level key '" + key + "'");
	if (!doc.contains("format") || doc["format"] != kStructureFormat)
		throw InputError(std::string("missing or unsupported format (expected \"") + kStructureFormat + "\")");
	if (!doc.contains("n") || !doc.contains("m"))
		throw InputError("structure file needs 'n' and 'm'");
	const int n = detail::json_int(doc["n"], "/n");
	const int m = detail::json_int(doc["m"], "/m");
	check_dims({n, m});
	SuperStructure s(n, m);

	std::map<std::array<int, 3>, GaussianRational> c_seen;
	if (doc.contains("C")) {
		const auto &list = doc["C"];
		if (!list.is_array())
			throw InputError("/C: expected an array");
		for (std::size_t k = 0; k < list.size(); ++k) {
			const std::string where = "/C/" + std::to_string(k);
			auto idx = detail::json_index(list[k], where, {n, n, n});
			auto val = detail::json_value(list[k]["val"], where + "/val");
			if (idx[0] == idx[1] && !val.is_zero())
				throw InputError(where + ": C with equal first indices must vanish");
			std::array<int, 3> partner{idx[1], idx[0], idx[2]};
			for (auto [key, v] : {std::pair{idx, val}, std::pair{partner, -val}}) {
				auto [it, inserted] = c_seen.try_emplace(key, v);
				if (!inserted && !(it->second == v))
					throw InputError(where + ": entry inconsistent with antisymmetry or an earlier entry");
			}
			s.C(idx[0], idx[1], idx[2]) = val;
			s.C(idx[1], idx[0], idx[2]) = -val;
		}
	}
	if (doc.contains("K")) {
		const auto &list = doc["K"];
		if (!list.is_array())
			throw InputError("/K: expected an array");
		std::map<std::array<int, 3>, GaussianRational> seen;
		for (std::size_t k = 0; k < list.size(); ++k) {
			const std::string where = "/K/" + std::to_string(k);
			auto idx = detail::json_index(list[k], where, {m, n, m});
			auto val = detail::json_value(list[k]["val"], where + "/val");
			auto [it, inserted] = seen.try_emplace(idx, val);
			if (!inserted && !(it->second == val))
				throw InputError(where + ": duplicate entry with a different value");
			s.K(idx[0], idx[1], idx[2]) = val;
		}
	}
	return s;
}

/// Canonical form: nonzero C entries with mu < nu and nonzero K entries, lexicographic.
inline std::string write_structure(const SuperStructure &s)
{
	nlohmann::ordered_json doc;
	doc["format"] = kStructureFormat;
	doc["n"] = s.n;
	doc["m"] = s.m;
	auto entry = [](int a, int b, int c, const GaussianRational &v) {
		nlohmann::ordered_json e;
		e["idx"] = {a + 1, b + 1, c + 1};
		e["val"] = to_string(v);
		return e;
	};
	doc["C"] = nlohmann::ordered_json::array();
	for (int mu = 0; mu < s.n; ++mu)
		for (int nu = mu + 1; nu < s.n; ++nu)
			for (int l = 0; l < s.n; ++l)
				if (!s.C(mu, nu, l).is_zero())
					doc["C"].push_back(entry(mu, nu, l, s.C(mu, nu, l)));
	doc["K"] = nlohmann::ordered_json::array();
	for (int a = 0; a < s.m; ++a)
		for (int nu = 0; nu < s.n; ++nu)
			for (int b = 0; b < s.m; ++b)
				if (!s.K(a, nu, b).is_zero())
					doc["K"].push_back(entry(a, nu, b, s.K(a, nu, b)));
	return doc.dump(2) + "\n";
}

} // namespace ncdc
