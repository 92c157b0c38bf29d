#ifndef EONSIM_CLI_HPP
#define EONSIM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace eonsim {

/// `args` excludes the program name.
/// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a:b:step" (inclusive), "a,b,c" or a single number. Throws ConfigError.
[[nodiscard]] std::vector<double> parse_load_list(const std::string& text);

}  // namespace eonsim

#endif  // EONSIM_CLI_HPP
