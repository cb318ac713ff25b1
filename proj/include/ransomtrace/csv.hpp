#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ransomtrace::csv {

/// Quotes a field if it contains a comma, quote, or newline.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

/// Splits one CSV line honoring double-quote escaping. Throws Error on
/// unbalanced quotes.
std::vector<std::string> split_row(std::string_view line);

}  // namespace ransomtrace::csv
