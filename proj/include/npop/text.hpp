#ifndef NPOP_TEXT_HPP
#define NPOP_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace npop {

// Shortest decimal text that parses back to the identical double.
std::string format_exact(double v);
// %.<digits>g
std::string format_sig(double v, int digits);

// Strict: the whole token must be a number. Throws InvalidInput otherwise.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace npop

#endif  // NPOP_TEXT_HPP
