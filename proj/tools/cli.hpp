#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "grasspenta/scalar.hpp"

namespace grasspenta::cli {

// Exit codes: 0 success, 1 domain error (error JSON on err), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "re", "imi", "re+imi" or "re-imi".
Complex parse_complex(const std::string& text);
std::vector<Complex> parse_mu_list(const std::string& csv);

}  // namespace grasspenta::cli
