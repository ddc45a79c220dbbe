// Command-line front end for the corner search and its checks.

#include <charconv>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdm/bounds.hpp"
#include "mdm/cases.hpp"
#include "mdm/error.hpp"
#include "mdm/figure.hpp"
#include "mdm/scene.hpp"
#include "mdm/search.hpp"
#include "mdm/steiner.hpp"

using namespace mdm;

namespace {

constexpr int kOk = 0;
constexpr int kIncomplete = 1;
constexpr int kUsage = 2;

std::string shortest(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// 12 significant digits, rounded away from the enclosed value.
std::string digits12(double v, bool up) {
    char buf[40];
    for (double w = v;;) {
        std::snprintf(buf, sizeof buf, "%.12g", w);
        double back = std::strtod(buf, nullptr);
        if (up ? back >= v : back <= v) return buf;
        w = up ? w + std::fabs(w) * 1e-12 + 1e-300 : w - std::fabs(w) * 1e-12 - 1e-300;
    }
}

std::string show12(const Interval& v) {
    return "[" + digits12(v.lo(), false) + ", " + digits12(v.hi(), true) + "]";
}

std::string show(const Interval& v) {
    return "[" + shortest(v.lo()) + ", " + shortest(v.hi()) + "]";
}

int default_threads() {
    if (const char* env = std::getenv("MDM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// "30", "30s", "5m", "2h" or "unlimited".
std::optional<double> parse_duration(const std::string& s) {
    if (s == "unlimited" || s == "inf") return std::nullopt;
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    std::string unit = s.substr(pos);
    double scale = unit.empty() || unit == "s" ? 1.0
                   : unit == "ms"              ? 1e-3
                   : unit == "m"               ? 60.0
                   : unit == "h"               ? 3600.0
                                               : -1.0;
    if (scale < 0 || v < 0) throw std::invalid_argument("bad duration '" + s + "'");
    return v * scale;
}

int cmd_search(double l0, int depth, bool full, const std::string& budget, int threads,
               const std::vector<double>& region, const std::string& preset,
               const std::string& out_path) {
    SearchConfig cfg;
    try {
        cfg.time_budget_s = parse_duration(budget);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    cfg.L0 = std::isnan(l0) ? default_L0() : l0;
    cfg.depth_limit = full ? INT_MAX : depth;
    cfg.workers = threads;
    if (!region.empty()) {
        if (region.size() != 12) {
            std::cerr << "error: --region takes six min/max pairs\n";
            return kUsage;
        }
        std::array<double, 6> lo, hi;
        for (int i = 0; i < 6; ++i) {
            lo[i] = region[2 * i];
            hi[i] = region[2 * i + 1];
        }
        try {
            cfg.root = ParamBox::from_bounds(lo, hi);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kUsage;
        }
        if (!in_parameter_space(cfg.root.enclosure())) {
            std::cerr << "error: region is not inside the parameter space\n";
            return kUsage;
        }
    } else if (preset == "P0") {
        cfg.root = target_box();
    }
    if (cfg.depth_limit < 1 || !(cfg.L0 > 0)) {
        std::cerr << "error: need --depth >= 1 and --l0 > 0\n";
        return kUsage;
    }

    SearchResult res = run_search(cfg);
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return kUsage;
    }
    write_certificate(os, res.records);

    const auto& s = res.summary;
    std::cout << "L0 " << shortest(cfg.L0) << "\n";
    for (int i = 0; i < 5; ++i)
        std::cout << to_string(static_cast<Reason>(i)) << ' ' << s.counts[i] << '\n';
    std::cout << "records " << res.records.size() << "\nmax_depth " << s.max_depth
              << "\nwall_seconds " << shortest(s.wall_seconds) << '\n';
    if (s.success) {
        std::cout << "SUCCESS\n";
        return kOk;
    }
    std::cout << "INCOMPLETE: " << s.count(Reason::BudgetExhausted) << " exhausted leaves\n";
    return kIncomplete;
}

int cmd_verify_cases() {
    const std::pair<const char*, std::function<CaseReport()>> cases[] = {
        {"1", case1_reference},  {"2", case2_eliminate},  {"3a", case3a_verify_optimal},
        {"3b", case3b_eliminate}, {"4", case4_eliminate}, {"5", case5_eliminate}};
    bool all = true;
    for (const auto& [id, run] : cases) {
        try {
            CaseReport rep = run();
            std::cout << "PASS case " << rep.id << ' ' << to_string(rep.verdict) << ": "
                      << rep.summary() << '\n';
        } catch (const std::exception& e) {
            all = false;
            std::cout << "FAIL case " << id << ": " << e.what() << '\n';
        }
    }
    return all ? kOk : kIncomplete;
}

int cmd_steiner(const std::vector<std::string>& pts) {
    Terminals t;
    for (const auto& s : pts) {
        auto comma = s.find(',');
        if (comma == std::string::npos) {
            std::cerr << "error: points are written x,y\n";
            return kUsage;
        }
        try {
            t.push_back({Interval(std::stod(s.substr(0, comma))),
                         Interval(std::stod(s.substr(comma + 1)))});
        } catch (const std::exception&) {
            std::cerr << "error: bad point '" << s << "'\n";
            return kUsage;
        }
    }
    try {
        SteinerBound b = melzak_lower_bound(t);
        std::cout << "lower " << shortest(b.lower) << "\nupper " << shortest(b.upper)
                  << "\nwitness " << b.witness.describe() << "\nreconstructs "
                  << (b.witness_reconstructs ? "yes" : "no") << '\n';
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

int cmd_eval(const std::vector<double>& v) {
    if (v.size() != 6) {
        std::cerr << "error: eval takes x y alpha xi1 xi2 xi\n";
        return kUsage;
    }
    ConfigPoint p = ConfigPoint::at({v[0], v[1], v[2], v[3], v[4], v[5]});
    if (!in_parameter_space(p)) {
        std::cerr << "error: point outside the parameter space\n";
        return kUsage;
    }
    if (v[0] * v[0] + v[1] * v[1] < 4.0) std::cout << "warning: unobtainable region\n";
    try {
        Scene s = derive_scene(p);
        Interval c = curve_length_C(p, s, ChainPolicy::Extended);
        SteinerBound st = melzak_lower_bound({s.V, s.Q2, s.Q1, s.Q});
        std::cout << "L " << show12(total_length_L(p, ChainPolicy::Extended)) << '\n';
        std::cout << "C " << show12(c) << '\n';
        std::cout << "steiner [" << digits12(st.lower, false) << ", " << digits12(st.upper, true)
                  << "]\n";
        const std::pair<const char*, const Point*> named[] = {
            {"Z1", &s.Z1}, {"W1", &s.W1}, {"V", &s.V},   {"W2", &s.W2},   {"Z2", &s.Z2},
            {"Q1", &s.Q1}, {"Q2", &s.Q2}, {"Q", &s.Q},   {"yW1", &s.yW1}, {"yW2", &s.yW2}};
        for (const auto& [name, pt] : named)
            std::cout << name << ' ' << show12(pt->x) << ' ' << show12(pt->y) << '\n';
        std::cout << "l1 " << show12(s.l1) << "\nl2 " << show12(s.l2) << '\n';
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIncomplete;
    }
    return kOk;
}

int cmd_falsify(long long samples, unsigned long long seed, double l0) {
    if (samples < 0) {
        std::cerr << "error: --samples must be non-negative\n";
        return kUsage;
    }
    if (samples == 0) return kOk;
    FalsifyReport rep = falsify(static_cast<std::size_t>(samples), seed,
                                std::isnan(l0) ? default_L0() : l0);
    for (const auto& q : rep.violations) {
        std::cout << "violation";
        for (double x : q) std::cout << ' ' << shortest(x);
        std::cout << '\n';
    }
    std::cout << "samples " << rep.samples << "\nseed " << rep.seed << "\nL0 " << shortest(rep.L0)
              << "\nmin_L_upper " << shortest(rep.min_upper) << "\nargmin";
    for (double x : rep.argmin) std::cout << ' ' << shortest(x);
    std::cout << "\nviolations " << rep.violations.size() << '\n';
    return rep.violations.empty() ? kOk : kIncomplete;
}

int cmd_replay(const std::string& path, double l0) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "error: cannot read " << path << '\n';
        return kUsage;
    }
    ReplayResult r = replay_certificate(is, std::isnan(l0) ? default_L0() : l0);
    if (r.ok) {
        std::cout << "PASS replay: " << r.records << " records, " << r.leaves << " leaves, "
                  << r.exhausted << " exhausted\n";
        return kOk;
    }
    std::cout << "FAIL replay: " << r.failure << ": " << r.detail << '\n';
    return kIncomplete;
}

int cmd_figure(const FigureSpec& spec, const std::string& out_path) {
    Figure f;
    try {
        f = build_minimizer_figure(spec);
    } catch (const RTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return kUsage;
    }
    os << render_svg(f);
    double worst = 0;
    for (double a : tripod_angles(f)) worst = std::max(worst, std::fabs(a - 2 * M_PI / 3));
    std::cout << "segments " << f.segments.size() << "\nmax_angle_error " << shortest(worst)
              << "\nlength " << show(f.total_length) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximal distance minimizer corner search"};
    app.require_subcommand(1);

    const double none = NAN;

    auto* search = app.add_subcommand("search", "Run the box search and write a certificate");
    double s_l0 = none;
    int s_depth = 4;
    bool s_full = false;
    std::string s_budget = "unlimited";
    int s_threads = default_threads();
    std::vector<double> s_region;
    std::string s_preset = "P";
    std::string s_out = "certificate.jsonl";
    search->add_option("--l0", s_l0, "Target bound (default: certified lower end of L(p0))");
    search->add_option("--depth", s_depth, "Depth limit")->check(CLI::PositiveNumber);
    search->add_flag("--full", s_full, "No depth limit");
    search->add_option("--time-budget", s_budget, "e.g. 30s, 5m, unlimited");
    search->add_option("--threads", s_threads, "Workers (default $MDM_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    search->add_option("--region", s_region, "Root box as six min/max pairs")->expected(12);
    search->add_option("--preset", s_preset, "Root box when --region is absent")
        ->check(CLI::IsMember({"P", "P0"}));
    search->add_option("--out", s_out, "Certificate path");

    auto* verify = app.add_subcommand("verify-cases", "Certify cases 1-5");

    auto* steiner = app.add_subcommand("steiner", "Steiner tree bounds for 2-4 points");
    std::vector<std::string> st_points;
    steiner->add_option("points", st_points, "x,y pairs")->required()->expected(1, 4);

    auto* eval = app.add_subcommand("eval", "Evaluate L, C and the scene at a point");
    std::vector<double> ev_point;
    eval->add_option("p", ev_point, "x y alpha xi1 xi2 xi")->required()->expected(6);

    auto* falsify = app.add_subcommand("falsify", "Sample P \\ P0 for points beating L0");
    long long f_samples = 100000;
    unsigned long long f_seed = 1;
    double f_l0 = none;
    falsify->add_option("--samples", f_samples);
    falsify->add_option("--seed", f_seed);
    falsify->add_option("--l0", f_l0);

    auto* replay = app.add_subcommand("replay", "Re-check a certificate");
    std::string r_path;
    double r_l0 = none;
    replay->add_option("path", r_path)->required();
    replay->add_option("--l0", r_l0);

    auto* figure = app.add_subcommand("figure", "Draw the minimizer of a rectangle as SVG");
    FigureSpec spec;
    std::string fig_out = "minimizer.svg";
    figure->add_option("--width", spec.width);
    figure->add_option("--height", spec.height);
    figure->add_option("--r", spec.r);
    figure->add_option("--out", fig_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*search)
            return cmd_search(s_l0, s_depth, s_full, s_budget, s_threads, s_region, s_preset, s_out);
        if (*verify) return cmd_verify_cases();
        if (*steiner) return cmd_steiner(st_points);
        if (*eval) return cmd_eval(ev_point);
        if (*falsify) return cmd_falsify(f_samples, f_seed, f_l0);
        if (*replay) return cmd_replay(r_path, r_l0);
        if (*figure) return cmd_figure(spec, fig_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIncomplete;
    }
    return kUsage;
}
