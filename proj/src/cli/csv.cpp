#include "tvc/cli/csv.hpp"

#include "tvc/core/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

namespace tvc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& what) {
    fail(ErrorCode::Parse, source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, const std::string& source, std::size_t line) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (field.empty() || res.ec != std::errc() || res.ptr != end) {
        parse_error(source, line, "field '" + field + "' is not a number");
    }
    if (!std::isfinite(value)) parse_error(source, line, "non-finite value '" + field + "'");
    return value;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

CsvSample read_sample_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    if (header.empty()) parse_error(source, line_no, "missing header line");
    const bool has_t = header.front() == "t";
    const std::size_t y_col = has_t ? 1 : 0;
    if (header.size() < y_col + 2 || header[y_col] != "y") {
        parse_error(source, line_no, "header must be 't,y,x1,...,xp' or 'y,x1,...,xp'");
    }
    const std::size_t p = header.size() - y_col - 1;

    std::vector<double> ys;
    std::vector<double> xs;
    double last_t = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            parse_error(source, line_no, "expected " + std::to_string(header.size()) +
                                             " fields, found " + std::to_string(fields.size()));
        }
        if (has_t) {
            const double t = parse_number(fields[0], source, line_no);
            if (!(t > last_t && t <= 1.0)) {
                parse_error(source, line_no, "time values must increase strictly within (0, 1]");
            }
            last_t = t;
        }
        ys.push_back(parse_number(fields[y_col], source, line_no));
        for (std::size_t r = 0; r < p; ++r) {
            xs.push_back(parse_number(fields[y_col + 1 + r], source, line_no));
        }
    }
    if (ys.empty()) parse_error(source, line_no, "no data rows");

    const auto n = static_cast<Eigen::Index>(ys.size());
    const auto pp = static_cast<Eigen::Index>(p);
    Matrix x(n, pp);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] = ys[static_cast<std::size_t>(i)];
        for (Eigen::Index r = 0; r < pp; ++r) {
            x(i, r) = xs[static_cast<std::size_t>(i * pp + r)];
        }
    }
    CsvSample out{TimeSeriesSample(std::move(x), std::move(y)), {}, has_t};
    out.regressor_names.assign(header.begin() + static_cast<std::ptrdiff_t>(y_col + 1), header.end());
    return out;
}

CsvSample read_sample_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
    return read_sample_csv(in, path);
}

void write_sample_csv(std::ostream& out, const TimeSeriesSample& sample) {
    out << "t,y";
    for (std::size_t r = 0; r < sample.p(); ++r) out << ",x" << r + 1;
    out << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < sample.n(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        out << sample.t(i) << ',' << sample.y()[ii];
        for (Eigen::Index r = 0; r < sample.x().cols(); ++r) out << ',' << sample.x()(ii, r);
        out << '\n';
    }
}

}  // namespace tvc::cli
