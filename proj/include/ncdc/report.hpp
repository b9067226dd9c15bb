#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdc/suites.hpp"

namespace ncdc {

/// Outcome of one CLI command. The JSON form leaves out the elapsed time so that equal inputs
/// give byte-identical reports.
struct RunReport {
	std::string command;
	nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
	std::vector<CheckResult> checks;
	nlohmann::ordered_json results = nlohmann::ordered_json::object();
	double elapsed_ms = 0;

	bool passed() const { return all_passed(checks); }

	nlohmann::ordered_json to_json() const
	{
		nlohmann::ordered_json out;
		out["command"] = command;
		out["inputs"] = inputs;
		auto arr = nlohmann::ordered_json::array();
		for (const auto &c : checks) {
			nlohmann::ordered_json j;
			j["name"] = c.name;
			j["status"] = to_string(c.status);
			if (c.status != CheckStatus::Skipped)
				j["violations"] = c.violations;
			if (c.agreement_order)
				j["agreementOrder"] = *c.agreement_order;
			if (c.first_violation) {
				nlohmann::ordered_json v;
				v["check"] = c.first_violation->check;
				v["indices"] = c.first_violation->indices;
				v["residual"] = ncdc::to_string(c.first_violation->residual);
				if (!c.first_violation->detail.empty())
					v["detail"] = c.first_violation->detail;
				j["firstViolation"] = std::move(v);
			}
			if (!c.note.empty())
				j["note"] = c.note;
			arr.push_back(std::move(j));
		}
		out["checks"] = std::move(arr);
		if (!results.empty())
			out["results"] = results;
		out["status"] = passed() ? "pass" : "fail";
		return out;
	}

	std::string to_human() const
	{
		std::ostringstream os;
		os << command;
		for (const auto &[k, v] : inputs.items())
			os << "  " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
		os << "\n";
		std::size_t width = 5;
		for (const auto &c : checks)
			width = std::max(width, c.name.size());
		for (const auto &c : checks) {
			os << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << to_string(c.status);
			if (c.agreement_order)
				os << "  agreementOrder=" << *c.agreement_order;
			if (c.first_violation) {
				os << "  " << c.violations << " violation(s), first " << c.first_violation->check << " (";
				for (std::size_t i = 0; i < c.first_violation->indices.size(); ++i)
					os << (i ? "," : "") << c.first_violation->indices[i];
				os << ")";
			}
			if (!c.note.empty())
				os << "  " << c.note;
			os << "\n";
		}
		for (const auto &[k, v] : results.items()) {
			const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
			os << "  " << k << ": ";
			if (text.size() > 160)
				os << "(" << (v.is_array() ? v.size() : text.size()) << (v.is_array() ? " entries" : " bytes")
				   << ", see the JSON report)";
			else
				os << text;
			os << "\n";
		}
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.1f ms", elapsed_ms);
		os << (passed() ? "PASS" : "FAIL") << "  " << buf << "\n";
		return os.str();
	}
};

} // namespace ncdc
