#include "tvc/cli/config.hpp"

#include "tvc/core/errors.hpp"

#include <fstream>

namespace tvc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> config_to_args(std::istream& in, const std::string& source) {
    std::vector<std::string> args;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        for (std::size_t pos = text.find('#'); pos != std::string::npos; pos = text.find('#', pos + 1)) {
            if (pos > 0 && (text[pos - 1] == ' ' || text[pos - 1] == '\t')) {
                text = trim(text.substr(0, pos));
                break;
            }
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            fail(ErrorCode::Parse, source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || key.find(' ') != std::string::npos) {
            fail(ErrorCode::Parse, source + ":" + std::to_string(line_no) + ": invalid key '" + key + "'");
        }
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

std::vector<std::string> load_config_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open config file '" + path + "'");
    return config_to_args(in, path);
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    if (args.empty()) return args;
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) fail(ErrorCode::BadInput, "--config needs a file name");
            const auto extra = load_config_args(args[++i]);
            from_file.insert(from_file.end(), extra.begin(), extra.end());
        } else if (a.rfind("--config=", 0) == 0) {
            const auto extra = load_config_args(a.substr(9));
            from_file.insert(from_file.end(), extra.begin(), extra.end());
        } else {
            rest.push_back(a);
        }
    }
    std::vector<std::string> out{args[0]};
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace tvc::cli
