#pragma once

#include "logcy/io.hpp"

namespace logcy {

struct SuiteResult {
	std::string name;
	bool ok = true;
	bool skipped = false;
	size_t checked = 0;
	std::string failure;
};

const std::vector<std::string> &suite_names();
// which: one suite name or "all"
std::vector<SuiteResult> run_suite(const Problem &p, const std::string &which);

} // namespace logcy
