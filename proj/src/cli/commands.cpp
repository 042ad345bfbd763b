#include "tvc/cli/commands.hpp"

#include "tvc/calibrate/asymptotic.hpp"
#include "tvc/calibrate/iid_bootstrap.hpp"
#include "tvc/calibrate/wild_bootstrap.hpp"
#include "tvc/cli/config.hpp"
#include "tvc/cli/csv.hpp"
#include "tvc/core/errors.hpp"
#include "tvc/core/rng.hpp"
#include "tvc/dgp/scenario.hpp"
#include "tvc/glrt/prewhiten.hpp"
#include "tvc/loclin/gcv.hpp"
#include "tvc/loclin/local_linear.hpp"
#include "tvc/mc/table1.hpp"
#include "tvc/power/local_power.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

namespace tvc::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small parsing helpers

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    for (auto& f : split_csv_line(text)) {
        if (!f.empty()) out.push_back(f);
    }
    if (out.empty()) fail(ErrorCode::BadInput, "empty list '" + text + "'");
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
        fail(ErrorCode::BadInput, what + ": '" + text + "' is not a number");
    }
    return v;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        fail(ErrorCode::BadInput, what + ": '" + text + "' is not a nonnegative integer");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& f : split_list(text)) out.push_back(parse_double(f, what));
    return out;
}

/// Output files must land in an existing directory.
void check_output_path(const std::string& path, const std::string& flag) {
    if (path.empty()) return;
    namespace fs = std::filesystem;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        fail(ErrorCode::BadInput, flag + ": directory '" + parent.string() + "' does not exist");
    }
    if (fs::is_directory(path)) fail(ErrorCode::BadInput, flag + ": '" + path + "' is a directory");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(ErrorCode::BadInput, "cannot write '" + path + "'");
    return f;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

Json json_number(double v) {
    if (!std::isfinite(v)) return Json();
    return v;
}

// ---------------------------------------------------------------------------
// Null grammar: zero | constant | linear | component:<j>=0

struct NullChoice {
    enum class Kind { Zero, Constant, Linear, Component } kind = Kind::Zero;
    std::size_t column = 0;  // 1-based regressor index for component nulls
    std::string text;
};

NullChoice parse_null(const std::string& text) {
    NullChoice c;
    c.text = text;
    const std::string t = lower(text);
    if (t == "zero") return c;
    if (t == "constant") {
        c.kind = NullChoice::Kind::Constant;
        return c;
    }
    if (t == "linear") {
        c.kind = NullChoice::Kind::Linear;
        return c;
    }
    const std::string prefix = "component:";
    if (t.rfind(prefix, 0) == 0) {
        const std::string rest = t.substr(prefix.size());
        const auto eq = rest.find('=');
        if (eq == std::string::npos || rest.substr(eq + 1) != "0") {
            fail(ErrorCode::BadInput, "component null must read component:<j>=0");
        }
        c.kind = NullChoice::Kind::Component;
        c.column = parse_size(rest.substr(0, eq), "component index");
        if (c.column < 1) fail(ErrorCode::BadInput, "component index is 1-based");
        return c;
    }
    fail(ErrorCode::BadInput, "unknown null '" + text +
                                  "' (zero, constant, linear, component:<j>=0)");
}

/// Puts regressor column j (0-based) first, keeping the others in order.
TimeSeriesSample move_column_first(const TimeSeriesSample& s, std::size_t j) {
    const auto p = static_cast<Eigen::Index>(s.p());
    Matrix x(s.x().rows(), p);
    x.col(0) = s.x().col(static_cast<Eigen::Index>(j));
    Eigen::Index c = 1;
    for (Eigen::Index r = 0; r < p; ++r) {
        if (r != static_cast<Eigen::Index>(j)) x.col(c++) = s.x().col(r);
    }
    return TimeSeriesSample(std::move(x), s.y());
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string scenario = "A";
    std::size_t n = 400;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    check_output_path(a.out, "--out");
    const TimeSeriesSample s = dgp::simulate_scenario(dgp::parse_scenario(a.scenario), a.n, a.seed);
    if (a.out.empty()) {
        write_sample_csv(out, s);
    } else {
        auto f = open_output(a.out);
        write_sample_csv(f, s);
        out << "wrote " << s.n() << " rows to " << a.out << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string data;
    std::string kernel = "epanechnikov";
    std::string bandwidth = "auto";
    std::string out;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
    check_output_path(a.out, "--out");
    const Kernel k = Kernel::from_name(a.kernel);
    const CsvSample data = read_sample_csv_file(a.data);
    const TimeSeriesSample& s = data.sample;
    double b = 0.0;
    if (lower(a.bandwidth) == "auto") {
        b = gcv_bandwidth(s, k, log_bandwidth_candidates()).b_star;
    } else {
        b = parse_double(a.bandwidth, "--bandwidth");
    }
    const LocalLinearFit fit = local_linear_fit(s, k, b);
    out << "bandwidth " << format_number(b) << "\nrss " << format_number(fit.rss) << '\n';
    if (!a.out.empty()) {
        auto f = open_output(a.out);
        f << 't';
        for (std::size_t r = 0; r < s.p(); ++r) f << ",beta" << r + 1;
        f << ",resid\n";
        for (std::size_t i = 0; i < s.n(); ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            f << format_number(s.t(i));
            for (Eigen::Index r = 0; r < fit.beta_hat.cols(); ++r) {
                f << ',' << format_number(fit.beta_hat(ii, r));
            }
            f << ',' << format_number(fit.residuals[ii]) << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
    std::string data;
    std::string null = "zero";
    std::string method = "wild";
    std::string test = "averaged";
    std::string grid = "auto";
    std::string bandwidth = "auto";
    double gamma = 2.0 / 9.0;
    std::size_t B = kDefaultBootstrap;
    std::uint64_t seed = 1;
    double alpha = 0.10;
    std::string kernel = "epanechnikov";
    std::string lrcov_m = "auto";
    std::string lrcov_tau = "auto";
    std::size_t workers = 0;
    std::string out;
    std::string draws_out;
    std::string lrcov_out;
};

Json plugins_json(const PlugIns& p) {
    Json j = Json::object();
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = json_number(*v);
    };
    put("v_hat", p.v_hat);
    put("avg_tr_h", p.avg_tr_h);
    put("avg_tr_h2", p.avg_tr_h2);
    put("sigma_hat", p.sigma_hat);
    put("sigma_star_hat", p.sigma_star_hat);
    put("sigma1_hat", p.sigma1_hat);
    put("lambda_integral", p.lambda_integral);
    put("z", p.z);
    return j;
}

int cmd_test(const TestArgs& a, std::ostream& out, std::ostream& err) {
    check_output_path(a.out, "--out");
    check_output_path(a.draws_out, "--draws-out");
    check_output_path(a.lrcov_out, "--lrcov-out");
    const Kernel k = Kernel::from_name(a.kernel);
    const Method method = parse_method(a.method);
    const TestKind kind = parse_test_kind(a.test);
    const NullChoice null_choice = parse_null(a.null);
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) fail(ErrorCode::BadRange, "--alpha must lie in (0, 1)");
    if (method != Method::Asym) check_bootstrap_size(a.B);
    const std::size_t workers = a.workers == 0 ? default_workers() : a.workers;

    const CsvSample data = read_sample_csv_file(a.data);
    TimeSeriesSample sample = data.sample;
    NullSpec null = NullSpec::zero();
    Json prewhitening;
    std::string tested = "beta = 0";
    switch (null_choice.kind) {
        case NullChoice::Kind::Zero: break;
        case NullChoice::Kind::Constant:
        case NullChoice::Kind::Linear: {
            const NullSpec family = null_choice.kind == NullChoice::Kind::Constant
                                        ? NullSpec::constant()
                                        : NullSpec::linear();
            PrewhitenResult pw = prewhiten(sample, family);
            prewhitening = {{"family", lower(null_choice.text)},
                            {"theta_hat", std::vector<double>(pw.theta_hat.data(),
                                                              pw.theta_hat.data() +
                                                                  pw.theta_hat.size())}};
            sample = std::move(pw.sample);
            tested = "beta(t) in the " + lower(null_choice.text) + " family";
            break;
        }
        case NullChoice::Kind::Component: {
            if (null_choice.column > sample.p()) {
                fail(ErrorCode::BadInput, "component index " + std::to_string(null_choice.column) +
                                              " exceeds p = " + std::to_string(sample.p()));
            }
            if (sample.p() < 2) fail(ErrorCode::BadInput, "component null needs p >= 2");
            if (method == Method::Asym) {
                fail(ErrorCode::BadInput,
                     "component nulls are calibrated by wild or iid only");
            }
            sample = move_column_first(sample, null_choice.column - 1);
            null = NullSpec::component(1);
            tested = "beta_" + std::to_string(null_choice.column) + " = 0";
            break;
        }
    }

    // Bandwidths.
    std::optional<GcvResult> gcv;
    auto anchor = [&]() {
        if (lower(a.bandwidth) != "auto") return parse_double(a.bandwidth, "--bandwidth");
        if (!gcv) gcv = gcv_bandwidth(sample, k, log_bandwidth_candidates());
        return gcv->b_test;
    };
    std::optional<BandwidthGrid> grid;
    if (kind == TestKind::Single) {
        grid = BandwidthGrid::single(anchor());
    } else if (lower(a.grid) == "auto") {
        grid = BandwidthGrid::from_anchor(anchor(), sample.n(),
                                          BandwidthGrid::default_multipliers(), a.gamma);
    } else {
        const std::vector<double> values = parse_double_list(a.grid, "--grid");
        std::optional<RateForm> rate;
        if (values.size() > 1) {
            const double scale = std::pow(static_cast<double>(sample.n()), a.gamma);
            rate = RateForm{a.gamma, values.front() * scale, values.back() * scale};
        }
        grid = BandwidthGrid(values, rate);
    }

    std::optional<LongRunCov> lrcov;
    if (method != Method::Iid) {
        const LocalLinearFit alt = local_linear_fit(sample, k, grid->middle());
        const std::size_t m = lower(a.lrcov_m) == "auto" ? default_lrcov_window(sample.n())
                                                         : parse_size(a.lrcov_m, "--lrcov-m");
        const double tau = lower(a.lrcov_tau) == "auto" ? default_lrcov_tau(sample.n())
                                                        : parse_double(a.lrcov_tau, "--lrcov-tau");
        lrcov = longrun_cov(sample, alt.residuals, m, tau, k);
    }

    TestOutcome outcome;
    switch (method) {
        case Method::Wild:
            outcome = wild_bootstrap_pvalue(sample, null, k, *grid, *lrcov,
                                            {a.B, a.seed, kind, workers, DrawMode::Auto});
            break;
        case Method::Asym:
            outcome = kind == TestKind::Averaged
                          ? asym_pvalue_averaged(sample, null, k, *grid, *lrcov)
                          : asym_pvalue_single(sample, null, k, (*grid)[0], *lrcov);
            break;
        case Method::Iid:
            outcome = iid_residual_bootstrap_pvalue(sample, null, k, *grid,
                                                    {a.B, a.seed, kind, workers});
            break;
    }

    out << std::setprecision(10);
    out << "null            " << tested << '\n';
    out << "method          " << to_string(method) << " (" << to_string(kind) << ")\n";
    out << "bandwidths     ";
    for (const double b : grid->values()) out << ' ' << b;
    out << '\n';
    out << "statistic       " << outcome.statistic.value << " [" << to_string(outcome.statistic.kind)
        << "]\n";
    out << "p-value         " << outcome.p_value << '\n';
    out << "reject          " << (outcome.p_value <= a.alpha ? "yes" : "no") << " at alpha = " << a.alpha
        << '\n';
    const Json plug = plugins_json(outcome.plugins);
    for (const auto& [key, value] : plug.items()) {
        out << std::left << std::setw(16) << key << value.dump() << '\n';
    }
    for (const auto& w : outcome.warnings) err << "warning: " << w << '\n';

    if (!a.out.empty()) {
        Json report;
        report["command"] = "test";
        report["input"] = a.data;
        report["n"] = sample.n();
        report["p"] = sample.p();
        report["regressors"] = data.regressor_names;
        report["kernel"] = k.name();
        report["null"] = a.null;
        report["hypothesis"] = tested;
        report["method"] = std::string(to_string(method));
        report["test"] = std::string(to_string(kind));
        report["bandwidths"] = grid->values();
        if (grid->rate()) {
            report["rate_form"] = {{"gamma", grid->rate()->gamma},
                                   {"c_min", grid->rate()->c_min},
                                   {"c_max", grid->rate()->c_max}};
        }
        if (gcv) report["gcv"] = {{"b_star", gcv->b_star}, {"b_test", gcv->b_test}};
        if (!prewhitening.is_null()) report["prewhitening"] = prewhitening;
        Json ledger = Json::array();
        for (const auto& e : outcome.statistic.ledger) {
            ledger.push_back({{"bandwidth", e.bandwidth},
                              {"rss_null", e.rss_null},
                              {"rss_alt", e.rss_alt}});
        }
        report["statistic"] = {{"kind", std::string(to_string(outcome.statistic.kind))},
                               {"value", json_number(outcome.statistic.value)},
                               {"ledger", ledger}};
        report["p_value"] = outcome.p_value;
        report["alpha"] = a.alpha;
        report["reject"] = outcome.p_value <= a.alpha;
        if (method != Method::Asym) {
            report["B"] = a.B;
            report["seed"] = a.seed;
        }
        report["plugins"] = plug;
        if (lrcov) {
            report["lrcov"] = {{"m", lrcov->m},
                               {"tau", lrcov->tau},
                               {"min_eigenvalue", lrcov->min_eigenvalue}};
        }
        report["warnings"] = outcome.warnings;
        auto f = open_output(a.out);
        f << report.dump(2) << '\n';
    }
    if (!a.draws_out.empty()) {
        auto f = open_output(a.draws_out);
        f << "draw\n";
        for (const double d : outcome.bootstrap_draws) f << format_number(d) << '\n';
    }
    if (!a.lrcov_out.empty() && lrcov) {
        auto f = open_output(a.lrcov_out);
        const std::size_t p = sample.p();
        f << 't';
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t c = 0; c < p; ++c) f << ",l" << r + 1 << c + 1;
        }
        f << '\n';
        for (std::size_t i = 0; i < sample.n(); ++i) {
            f << format_number(sample.t(i));
            for (std::size_t r = 0; r < p; ++r) {
                for (std::size_t c = 0; c < p; ++c) {
                    f << ',' << format_number(lrcov->lambda_hat[i](static_cast<Eigen::Index>(r),
                                                                   static_cast<Eigen::Index>(c)));
                }
            }
            f << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// table1

struct Table1Args {
    std::string n_list = "200,400";
    std::string scenarios = "a,b,c,d";
    std::string methods = "wild,asym,iid";
    std::string tests = "averaged,single";
    std::string bandwidths = "0.15,0.25,0.35";
    std::size_t replicates = 500;
    std::size_t B = kDefaultBootstrap;
    double alpha = 0.10;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
    std::string kernel = "epanechnikov";
    std::string out;
    std::string csv_out;
};

int cmd_table1(const Table1Args& a, std::ostream& out, std::ostream& err) {
    check_output_path(a.out, "--out");
    check_output_path(a.csv_out, "--csv-out");
    mc::Table1Options opt;
    opt.n_list.clear();
    for (const auto& f : split_list(a.n_list)) opt.n_list.push_back(parse_size(f, "--n"));
    opt.scenarios.clear();
    for (const auto& f : split_list(a.scenarios)) opt.scenarios.push_back(dgp::parse_scenario(f));
    opt.methods.clear();
    for (const auto& f : split_list(a.methods)) opt.methods.push_back(parse_method(f));
    opt.kinds.clear();
    for (const auto& f : split_list(a.tests)) opt.kinds.push_back(parse_test_kind(f));
    opt.bandwidths = parse_double_list(a.bandwidths, "--bandwidths");
    opt.replicates = a.replicates;
    opt.B = a.B;
    opt.alpha = a.alpha;
    opt.seed = a.seed;
    opt.workers = a.workers == 0 ? default_workers() : a.workers;
    opt.kernel = Kernel::from_name(a.kernel);
    // Validate every block before spending time on any of them.
    for (const auto kind : opt.kinds) {
        for (const double b : opt.bandwidths) {
            for (const auto n : opt.n_list) {
                for (const auto s : opt.scenarios) {
                    mc::table1_block_config(opt, n, s, kind, b).validate();
                }
            }
        }
    }

    const mc::ExperimentReport report = mc::reproduce_table1(opt);
    const std::string table = mc::format_table1(report);
    out << "Rejection rates (%) at nominal level " << a.alpha << ", " << a.replicates
        << " replicates, B = " << a.B << ", seed " << a.seed << "\n\n"
        << table;
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (!a.out.empty()) {
        auto f = open_output(a.out);
        f << table;
    }
    if (!a.csv_out.empty()) {
        auto f = open_output(a.csv_out);
        f << report.csv();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// power-curve

struct PowerArgs {
    std::string kernel = "uniform";
    int points = 19;
    std::string out;
};

int cmd_power_curve(const PowerArgs& a, std::ostream& out) {
    check_output_path(a.out, "--out");
    const Kernel k = Kernel::from_name(a.kernel);
    const auto curve = power::power_curve(k, a.points);
    std::ostringstream csv;
    csv << "c_min_tilde,c_max_tilde,ratio\n";
    for (const auto& pt : curve) {
        csv << format_number(pt.c_min_tilde) << ',' << format_number(pt.c_max_tilde) << ','
            << format_number(pt.ratio) << '\n';
    }
    if (a.out.empty()) {
        out << csv.str();
    } else {
        auto f = open_output(a.out);
        f << csv.str();
        out << "wrote " << curve.size() << " points to " << a.out << '\n';
    }
    return kExitOk;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::SingularDesign:
        case ErrorCode::AllSingular: return kExitSingular;
        default: return kExitBadInput;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Specification tests for time-varying coefficient regression", "tvcspec"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    const std::string config_help = "Read key = value defaults from FILE (flags override)";

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate one of the null scenarios A-D");
    simulate->add_option("--scenario", sim.scenario, "Scenario letter A, B, C or D")->capture_default_str();
    simulate->add_option("--n", sim.n, "Sample size (>= 20)")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output CSV (t,y,x1,x2); stdout when omitted");

    FitArgs fit;
    auto* fitcmd = app.add_subcommand("fit", "Local linear fit of the coefficient curves");
    fitcmd->add_option("data,--data", fit.data, "Input CSV")->required()->check(CLI::ExistingFile);
    fitcmd->add_option("--kernel", fit.kernel, "uniform | epanechnikov | triangular")->capture_default_str();
    fitcmd->add_option("--bandwidth", fit.bandwidth, "Bandwidth in (0,1) or 'auto' (GCV)")->capture_default_str();
    fitcmd->add_option("--out", fit.out, "Output CSV t,beta1..betap,resid");

    TestArgs test;
    auto* testcmd = app.add_subcommand("test", "Test a null hypothesis on a data set");
    testcmd->add_option("data,--data", test.data, "Input CSV with header t,y,x1.. or y,x1..")
        ->required()
        ->check(CLI::ExistingFile);
    testcmd->add_option("--null", test.null, "zero | constant | linear | component:<j>=0")->capture_default_str();
    testcmd->add_option("--method", test.method, "wild | asym | iid")->capture_default_str();
    testcmd->add_option("--test", test.test, "averaged | single")->capture_default_str();
    testcmd->add_option("--grid", test.grid, "'auto' (anchor/1.5, anchor, 1.5 anchor) or a list b1,b2,..")->capture_default_str();
    testcmd->add_option("--bandwidth", test.bandwidth, "Grid anchor or single bandwidth; 'auto' uses GCV")->capture_default_str();
    testcmd->add_option("--gamma", test.gamma, "Rate exponent of the bandwidth range")->capture_default_str();
    testcmd->add_option("--B", test.B, "Bootstrap draws (>= 99)")->capture_default_str();
    testcmd->add_option("--seed", test.seed, "Bootstrap seed")->capture_default_str();
    testcmd->add_option("--alpha", test.alpha, "Nominal level")->capture_default_str();
    testcmd->add_option("--kernel", test.kernel, "uniform | epanechnikov | triangular")->capture_default_str();
    testcmd->add_option("--lrcov-m", test.lrcov_m, "Lag window m or 'auto' (floor(n^(2/7)))")->capture_default_str();
    testcmd->add_option("--lrcov-tau", test.lrcov_tau, "Smoothing bandwidth tau or 'auto' (n^(-1/7))")->capture_default_str();
    testcmd->add_option("--workers", test.workers, "Worker threads (0: TVC_WORKERS or all cores)")->capture_default_str();
    testcmd->add_option("--out", test.out, "JSON report");
    testcmd->add_option("--draws-out", test.draws_out, "Sorted bootstrap draws as one-column CSV");
    testcmd->add_option("--lrcov-out", test.lrcov_out, "Long-run covariance estimate as CSV");

    Table1Args t1;
    auto* table1 = app.add_subcommand("table1", "Monte Carlo size study over scenarios and methods");
    table1->add_option("--n", t1.n_list, "Sample sizes, comma separated")->capture_default_str();
    table1->add_option("--scenarios", t1.scenarios, "Scenario letters, comma separated")->capture_default_str();
    table1->add_option("--methods", t1.methods, "Methods, comma separated")->capture_default_str();
    table1->add_option("--tests", t1.tests, "averaged and/or single")->capture_default_str();
    table1->add_option("--bandwidths", t1.bandwidths, "Bandwidths (anchors for averaged tests)")->capture_default_str();
    table1->add_option("--replicates", t1.replicates, "Monte Carlo replicates per cell")->capture_default_str();
    table1->add_option("--B", t1.B, "Bootstrap draws")->capture_default_str();
    table1->add_option("--alpha", t1.alpha, "Nominal level")->capture_default_str();
    table1->add_option("--seed", t1.seed, "Master seed")->capture_default_str();
    table1->add_option("--workers", t1.workers, "Worker threads (0: TVC_WORKERS or all cores)")->capture_default_str();
    table1->add_option("--kernel", t1.kernel, "uniform | epanechnikov | triangular")->capture_default_str();
    table1->add_option("--out", t1.out, "Write the table to this file as well");
    table1->add_option("--csv-out", t1.csv_out, "Per-cell results as CSV");

    PowerArgs pw;
    auto* powercmd = app.add_subcommand("power-curve", "Ratio R2/R1 of the averaged and single-bandwidth tests");
    powercmd->add_option("--kernel", pw.kernel, "uniform | epanechnikov | triangular")->capture_default_str();
    powercmd->add_option("--points", pw.points, "Number of c_min_tilde values in (0,1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    powercmd->add_option("--out", pw.out, "Output CSV c_min_tilde,c_max_tilde,ratio; stdout when omitted");

    for (auto* sub : {simulate, fitcmd, testcmd, table1, powercmd}) {
        sub->add_option("--config", config_help);
    }

    try {
        // Expand --config inside the subcommand's own arguments.
        std::vector<std::string> args = raw_args;
        const auto sub_pos = std::find_if(args.begin(), args.end(), [](const std::string& s) {
            return !s.empty() && s.front() != '-';
        });
        if (sub_pos != args.end()) {
            std::vector<std::string> tail(sub_pos, args.end());
            tail = expand_config(tail);
            args.erase(sub_pos, args.end());
            args.insert(args.end(), tail.begin(), tail.end());
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitBadInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim, out);
        if (fitcmd->parsed()) return cmd_fit(fit, out);
        if (testcmd->parsed()) return cmd_test(test, out, err);
        if (table1->parsed()) return cmd_table1(t1, out, err);
        if (powercmd->parsed()) return cmd_power_curve(pw, out);
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}

}  // namespace tvc::cli
