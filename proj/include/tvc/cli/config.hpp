#pragma once

#include <istream>
#include <string>
#include <vector>

namespace tvc::cli {

/**
 * @brief Turns `key = value` lines into `--key=value` arguments.
 *
 * Blank lines and lines starting with `#` are skipped, as is anything after
 * a `#` that follows whitespace. Malformed lines throw Error(Parse) with the
 * line number.
 */
std::vector<std::string> config_to_args(std::istream& in, const std::string& source = "config");
std::vector<std::string> load_config_args(const std::string& path);

/**
 * @brief Expands `--config FILE` / `--config=FILE` in a subcommand's arguments.
 *
 * `args[0]` is the subcommand name. The file's arguments are inserted right
 * after it, so explicit flags, which come later, take precedence.
 */
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace tvc::cli
