// Command line front end: norms and minimizer tables, extremal ratio
// certificates, section lower bounds, and the inequality verification suites.
// Exit codes: 0 all requested checks passed, 1 a numeric check failed,
// 2 usage or parse error.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cesaro/estimation.hpp"
#include "cesaro/extremal.hpp"
#include "cesaro/inequalities.hpp"
#include "cesaro/minimizer.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/reports.hpp"

namespace {

using nlohmann::json;

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file " + path);
            }
        }
    }

    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    bool is_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
};

std::uint64_t parse_seed(const std::string& text) {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(text, &used, 16);
    if (used != text.size()) {
        throw std::domain_error("seed must be a hex value, e.g. 0x5EED");
    }
    return value;
}

cesaro::Exponent require_exponent(const std::string& text) {
    const auto p = cesaro::Exponent::parse(text);
    if (!p) {
        throw std::domain_error("cannot parse exponent '" + text + "'");
    }
    return *p;
}

double require_supercritical(const std::string& text) {
    const cesaro::Exponent p = require_exponent(text);
    if (p.is_infinite() || !(p.value() > 2.0)) {
        throw std::domain_error("this command requires finite p > 2");
    }
    return p.value();
}

void emit(Sink& sink, const std::string& text) { sink.os() << text << '\n'; }

// ---------------------------------------------------------------- norm / mp

int run_norm(const std::string& p_text, const std::string& format, Sink& sink) {
    const cesaro::Exponent p = require_exponent(p_text);
    const double norm = cesaro::cesaro_minus_identity_norm(p);

    std::string branch = "2";
    if (!p.is_infinite()) {
        branch = p.value() <= 2.0 ? "1/(p-1)" : "m_p^(-1/p)";
    }

    json j;
    j["p"] = p.is_infinite() ? json("inf") : json(p.value());
    j["branch"] = branch;
    j["norm"] = norm;
    if (!p.is_infinite() && p.value() > 2.0) {
        const auto mp = cesaro::minimize_envelope(p.value());
        j["t_p"] = mp.t;
        j["m_p"] = mp.value;
        j["r"] = 1.0 / mp.t;
    }

    if (format == "json") {
        emit(sink, j.dump());
        return 0;
    }
    emit(sink, "p = " + std::string(p.is_infinite()
                                        ? "inf"
                                        : cesaro::format_double(p.value())));
    emit(sink, "branch = " + branch);
    emit(sink, "norm = " + cesaro::format_double(norm));
    if (j.contains("t_p")) {
        emit(sink, "t_p = " + cesaro::format_double(j["t_p"].get<double>()));
        emit(sink, "m_p = " + cesaro::format_double(j["m_p"].get<double>()));
        emit(sink, "r = " + cesaro::format_double(j["r"].get<double>()));
    }
    return 0;
}

int run_mp(const std::string& p_text, const std::string& format, Sink& sink) {
    const double p = require_supercritical(p_text);
    const auto mp = cesaro::minimize_envelope(p);
    if (format == "json") {
        emit(sink, json{{"p", mp.p},
                        {"t_p", mp.t},
                        {"m_p", mp.value},
                        {"residual", mp.residual},
                        {"iterations", mp.iterations}}
                       .dump());
        return 0;
    }
    emit(sink, "p = " + cesaro::format_double(mp.p));
    emit(sink, "t_p = " + cesaro::format_double(mp.t));
    emit(sink, "m_p = " + cesaro::format_double(mp.value));
    emit(sink, "residual = " + cesaro::format_double(mp.residual));
    emit(sink, "iterations = " + std::to_string(mp.iterations));
    return 0;
}

// -------------------------------------------------------------------- table

struct TableRow {
    double p;
    std::string csv;
    json j;
};

TableRow table_row(double p) {
    const cesaro::Exponent ep(p);
    TableRow row;
    row.p = p;
    const double norm = cesaro::cesaro_minus_identity_norm(ep);
    const double dual = ep.dual();
    const double transpose =
        cesaro::analytic_norm(cesaro::OperatorKind::cesaro_transpose, ep);
    std::string t_cell;
    std::string m_cell;
    row.j = json{{"p", p},        {"norm", norm},
                 {"t_p", nullptr}, {"m_p", nullptr},
                 {"dual", dual},  {"transpose_norm", transpose}};
    if (p > 2.0) {
        const auto mp = cesaro::minimize_envelope(p);
        t_cell = cesaro::format_double(mp.t);
        m_cell = cesaro::format_double(mp.value);
        row.j["t_p"] = mp.t;
        row.j["m_p"] = mp.value;
    }
    row.csv = cesaro::format_double(p) + ',' + cesaro::format_double(norm) +
              ',' + t_cell + ',' + m_cell + ',' + cesaro::format_double(dual) +
              ',' + cesaro::format_double(transpose);
    return row;
}

int run_table(double from, double to, double step, const std::string& format,
              int threads, Sink& sink) {
    if (!(from > 1.0) || !(step > 0.0) || !(from < to)) {
        throw std::domain_error("table requires 1 < from < to and step > 0");
    }
    std::vector<double> ps;
    for (std::int64_t k = 0;; ++k) {
        // snap to 12 decimal digits so decimal steps land on decimal points
        double p = from + static_cast<double>(k) * step;
        p = std::round(p * 1e12) / 1e12;
        if (p > to + 1e-12) {
            break;
        }
        ps.push_back(p);
    }

    std::vector<TableRow> rows(ps.size());
    const int workers = std::max(1, threads == 0
                                        ? static_cast<int>(
                                              std::thread::hardware_concurrency())
                                        : threads);
    if (workers <= 1 || ps.size() < 16) {
        for (std::size_t i = 0; i < ps.size(); ++i) {
            rows[i] = table_row(ps[i]);
        }
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = static_cast<std::size_t>(t); i < ps.size();
                     i += static_cast<std::size_t>(workers)) {
                    rows[i] = table_row(ps[i]);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(r.j);
        }
        emit(sink, arr.dump());
        return 0;
    }
    emit(sink, "p,norm,t_p,m_p,dual,transpose_norm");
    for (const auto& r : rows) {
        emit(sink, r.csv);
    }
    return 0;
}

// ----------------------------------------------------------------- extremal

int run_extremal(const std::string& p_text, std::int64_t m, std::int64_t N,
                 const std::string& format, Sink& sink) {
    const double p = require_supercritical(p_text);
    if (N == 0) {
        N = 1000 * m;
    }
    const cesaro::ExtremalReport rep = cesaro::discrete_ratio(p, m, N);
    const double bound = cesaro::ratio_lower_bound_at_cutoff(p, rep.r, m);

    if (format == "csv") {
        emit(sink, cesaro::csv_header(rep));
        emit(sink, cesaro::to_csv_row(rep));
        return 0;
    }
    if (format == "json") {
        emit(sink, cesaro::to_json(rep).dump());
        return 0;
    }
    emit(sink, "p = " + cesaro::format_double(rep.p));
    emit(sink, "r = " + cesaro::format_double(rep.r));
    emit(sink, "m = " + std::to_string(rep.m));
    emit(sink, "N = " + std::to_string(rep.N));
    emit(sink, "sum_x_p = " + cesaro::format_double(rep.sum_x_p));
    emit(sink, "sum_z_p = " + cesaro::format_double(rep.sum_z_p));
    emit(sink, "computed ratio_p = " + cesaro::format_double(rep.ratio_p));
    emit(sink, "bound at this m = " + cesaro::format_double(bound));
    emit(sink, "analytic limit = " + cesaro::format_double(rep.analytic_limit));
    emit(sink, "gap = " + cesaro::format_double(rep.gap));
    return 0;
}

// ------------------------------------------------------------------ section

int run_section(const std::string& p_text, std::int64_t N,
                const std::string& kind_text, int starts, int max_iter,
                double tol, const std::string& seed_text, int threads,
                const std::string& x0_path, const std::string& trace_path,
                const std::string& format, Sink& sink) {
    const cesaro::Exponent ep = require_exponent(p_text);
    if (ep.is_infinite()) {
        throw std::domain_error("section requires finite p");
    }
    if (!(tol >= 1e-15 && tol <= 1e-2)) {
        throw std::domain_error("tol must lie in [1e-15, 1e-2]");
    }
    cesaro::OperatorKind kind = cesaro::OperatorKind::cesaro;
    if (kind_text == "transpose" || kind_text == "cesaro_transpose") {
        kind = cesaro::OperatorKind::cesaro_transpose;
    } else if (kind_text != "cesaro") {
        throw std::domain_error("kind must be cesaro or transpose");
    }

    cesaro::NormEstimate est;
    if (!x0_path.empty()) {
        const cesaro::RealVector x0 = cesaro::read_vector(x0_path);
        est = cesaro::dual_power_lower_bound(kind, ep.value(), N, x0, max_iter,
                                             tol);
    } else {
        cesaro::MultiStartOptions opt;
        opt.starts = starts;
        opt.max_iter = max_iter;
        opt.tol = tol;
        opt.seed = parse_seed(seed_text);
        opt.threads = threads == 0
                          ? static_cast<int>(std::thread::hardware_concurrency())
                          : threads;
        est = cesaro::multi_start_lower_bound(kind, ep.value(), N, opt);
    }

    if (!trace_path.empty()) {
        cesaro::write_vector(trace_path, est.ratio_trace);
    }

    if (format == "csv") {
        emit(sink, cesaro::csv_header(est));
        emit(sink, cesaro::to_csv_row(est));
    } else if (format == "json") {
        emit(sink, cesaro::to_json(est).dump());
    } else {
        emit(sink, "kind = " + std::string(cesaro::to_string(est.kind)));
        emit(sink, "p = " + cesaro::format_double(est.p));
        emit(sink, "N = " + std::to_string(est.N));
        emit(sink, "lower_bound = " + cesaro::format_double(est.lower_bound));
        emit(sink, "analytic = " + cesaro::format_double(est.analytic));
        emit(sink, "rel_gap = " + cesaro::format_double(est.rel_gap));
        emit(sink, "iterations = " + std::to_string(est.iterations));
    }
    return 0;
}

// ------------------------------------------------------------------- verify

std::vector<cesaro::EvenRational> default_exponents() {
    return {cesaro::EvenRational::make(12, 5), cesaro::EvenRational::make(8, 3),
            cesaro::EvenRational::make(4, 1), cesaro::EvenRational::make(10, 3),
            cesaro::EvenRational::make(6, 1), cesaro::EvenRational::make(22, 3)};
}

cesaro::EvenRational gated_exponent(const std::string& text) {
    const auto q = cesaro::EvenRational::parse(text);  // throws when not gated
    if (!q) {
        throw std::domain_error("cannot parse '" + text +
                                "' as a rational exponent a/b");
    }
    return *q;
}

int run_verify(const std::string& suite, const std::string& p_text,
               std::int64_t points, std::int64_t pairs,
               const std::string& seed_text, int threads,
               const std::string& format, Sink& sink) {
    cesaro::SweepOptions opt;
    opt.points = points;
    opt.pairs = pairs;
    opt.seed = parse_seed(seed_text);

    std::vector<cesaro::EvenRational> exponents;
    if (!p_text.empty()) {
        exponents.push_back(gated_exponent(p_text));
    } else {
        exponents = default_exponents();
    }

    const bool all = suite == "all";
    using Task = std::function<std::vector<cesaro::CheckReport>()>;
    std::vector<Task> tasks;
    bool known = false;
    if (all || suite == "lemma1") {
        known = true;
        for (const auto& q : exponents) {
            tasks.push_back([q, opt] { return cesaro::sweep_lemma1(q, opt); });
        }
    }
    if (all || suite == "lemma2") {
        known = true;
        for (const auto& q : exponents) {
            tasks.push_back([q, opt] { return cesaro::sweep_lemma2(q, opt); });
        }
    }
    if (all || suite == "mvt") {
        known = true;
        for (const auto& q : exponents) {
            tasks.push_back([q, opt] { return cesaro::sweep_mvt(q, opt); });
        }
    }
    if (all || suite == "tangent") {
        known = true;
        tasks.push_back([opt] { return cesaro::sweep_tangent(opt); });
    }
    if (all || suite == "logpiece") {
        known = true;
        tasks.push_back([opt] { return cesaro::sweep_logpiece(opt); });
    }
    if (all || suite == "identities") {
        known = true;
        tasks.push_back([opt] { return cesaro::sweep_identities(opt); });
    }
    if (!known) {
        throw std::domain_error(
            "unknown suite '" + suite +
            "' (expected lemma1, lemma2, mvt, tangent, logpiece, identities, all)");
    }

    std::vector<std::vector<cesaro::CheckReport>> cell_reports(tasks.size());
    const int workers =
        std::max(1, threads == 0
                        ? static_cast<int>(std::thread::hardware_concurrency())
                        : threads);
    if (workers <= 1 || tasks.size() < 2) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            cell_reports[i] = tasks[i]();
        }
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = static_cast<std::size_t>(t);
                     i < tasks.size(); i += static_cast<std::size_t>(workers)) {
                    cell_reports[i] = tasks[i]();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::int64_t passed = 0;
    std::int64_t total = 0;
    const cesaro::CheckReport header_probe;
    if (format == "csv") {
        emit(sink, cesaro::csv_header(header_probe));
    }
    json arr = json::array();
    for (const auto& cell : cell_reports) {
        for (const auto& rep : cell) {
            ++total;
            passed += rep.passed ? 1 : 0;
            if (format == "csv") {
                emit(sink, cesaro::to_csv_row(rep));
            } else if (format == "json") {
                arr.push_back(cesaro::to_json(rep));
            } else {
                emit(sink, (rep.passed ? std::string("pass ") : std::string("FAIL ")) +
                               rep.name + " p=" + cesaro::format_double(rep.p) +
                               " grid=" + std::to_string(rep.grid_size) +
                               " worst_margin=" +
                               cesaro::format_double(rep.worst_margin) +
                               " at=" + cesaro::format_double(rep.worst_point));
            }
        }
    }
    if (format == "json") {
        emit(sink, arr.dump());
    }
    std::ostream& summary = sink.is_file() ? std::cout : std::cerr;
    summary << "verify " << suite << ": " << passed << "/" << total
            << " checks passed\n";
    return passed == total ? 0 : 1;
}

// --------------------------------------------------------------- continuous

int run_continuous(const std::string& p_text, int panels, double cut,
                   int families, const std::string& format, Sink& sink) {
    const double p = require_supercritical(p_text);
    const auto mp = cesaro::minimize_envelope(p);
    const auto integrals = cesaro::continuous_extremal_integrals(p);
    const double ratio = integrals.integral_z_p / integrals.integral_x_p;
    const double identity_defect = std::fabs(ratio * mp.value - 1.0);

    std::optional<double> quad_disc;
    std::optional<double> dual_worst;
    if (const auto q = cesaro::EvenRational::parse(p_text)) {
        cesaro::QuadratureSpec spec;
        spec.panels = panels;
        spec.cut = cut;
        quad_disc = cesaro::quadrature_check_continuous(*q, spec);
        dual_worst = cesaro::dual_continuous_check(*q, families);
    }

    json j{{"p", p},
           {"r", 1.0 / mp.t},
           {"integral_x_p", integrals.integral_x_p},
           {"integral_z_p", integrals.integral_z_p},
           {"ratio", ratio},
           {"identity_defect", identity_defect}};
    if (quad_disc) {
        j["quadrature_discrepancy"] = *quad_disc;
        j["dual_step_worst_ratio"] = *dual_worst;
    }
    if (format == "json") {
        emit(sink, j.dump());
        return 0;
    }
    emit(sink, "p = " + cesaro::format_double(p));
    emit(sink, "r = " + cesaro::format_double(1.0 / mp.t));
    emit(sink, "integral_x_p = " + cesaro::format_double(integrals.integral_x_p));
    emit(sink, "integral_z_p = " + cesaro::format_double(integrals.integral_z_p));
    emit(sink, "computed ratio = " + cesaro::format_double(ratio));
    emit(sink, "analytic 1/m_p = " + cesaro::format_double(1.0 / mp.value));
    emit(sink, "identity defect = " + cesaro::format_double(identity_defect));
    if (quad_disc) {
        emit(sink, "quadrature discrepancy = " + cesaro::format_double(*quad_disc));
        emit(sink,
             "dual step worst ratio = " + cesaro::format_double(*dual_worst));
    }
    return 0;
}

// ------------------------------------------------------------------- interp

int run_interp(double p0, double p, double p1, std::int64_t N,
               const std::string& format, Sink& sink) {
    const cesaro::InterpolationReport rep =
        cesaro::interpolation_spot_check(p0, p, p1, N);
    if (format == "json") {
        emit(sink, cesaro::to_json(rep).dump());
    } else {
        emit(sink, "theta = " + cesaro::format_double(rep.theta));
        emit(sink, "analytic norm at p = " + cesaro::format_double(rep.lhs));
        emit(sink, "interpolated bound = " + cesaro::format_double(rep.rhs));
        emit(sink, std::string("holds = ") + (rep.holds ? "true" : "false"));
        emit(sink, "section bounds = " + cesaro::format_double(rep.section_p0) +
                       ", " + cesaro::format_double(rep.section_p) + ", " +
                       cesaro::format_double(rep.section_p1));
    }
    return rep.holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact operator norms of the discrete averaging operator minus "
        "identity, with numeric certification suites"};
    app.require_subcommand(1);

    std::string p_text;
    std::string format;  // per-command default applied at dispatch
    std::string out_path;
    std::string seed_text = "0x5EED";
    int threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "text, csv or json");
        cmd->add_option("--out", out_path, "output path (default stdout)");
    };

    auto pick = [&](const char* fallback) {
        return format.empty() ? std::string(fallback) : format;
    };

    auto* cmd_norm = app.add_subcommand("norm", "operator norm at one exponent");
    cmd_norm->add_option("--p", p_text, "exponent: decimal, a/b or inf")
        ->required();
    add_common(cmd_norm);

    auto* cmd_mp = app.add_subcommand("mp", "critical point and minimum, p > 2");
    cmd_mp->add_option("--p", p_text)->required();
    add_common(cmd_mp);

    double from = 1.1, to = 10.0, step = 0.1;
    auto* cmd_table = app.add_subcommand("table", "norm table over a p range");
    cmd_table->add_option("--from", from)->default_val(1.1);
    cmd_table->add_option("--to", to)->default_val(10.0);
    cmd_table->add_option("--step", step)->default_val(0.1);
    cmd_table->add_option("--threads", threads, "0 = auto")->default_val(1);
    add_common(cmd_table);

    std::int64_t m = 1000, N = 0;
    auto* cmd_extremal =
        app.add_subcommand("extremal", "discrete extremal ratio certificate");
    cmd_extremal->add_option("--p", p_text)->required();
    cmd_extremal->add_option("--m", m, "cutoff")->default_val(1000);
    cmd_extremal->add_option("--N", N, "truncation (default 1000*m)");
    add_common(cmd_extremal);

    std::string kind_text = "cesaro";
    std::string x0_path;
    std::string trace_path;
    int starts = 8, max_iter = 10000;
    double tol = 1e-12;
    auto* cmd_section =
        app.add_subcommand("section", "dual power lower bound on a section");
    cmd_section->add_option("--p", p_text)->required();
    cmd_section->add_option("--N", N, "section size (default 4096)");
    cmd_section->add_option("--kind", kind_text, "cesaro or transpose")
        ->default_val("cesaro");
    cmd_section->add_option("--starts", starts)->default_val(8);
    cmd_section->add_option("--max-iter", max_iter)->default_val(10000);
    cmd_section->add_option("--tol", tol)->default_val(1e-12);
    cmd_section->add_option("--seed", seed_text, "hex")->default_val("0x5EED");
    cmd_section->add_option("--threads", threads, "0 = auto")->default_val(1);
    cmd_section->add_option("--x0", x0_path, "start vector file");
    cmd_section->add_option("--trace-out", trace_path,
                            "dump the ratio trace, one value per line");
    add_common(cmd_section);

    std::string suite;
    std::int64_t points = 100000, pairs = 10000;
    auto* cmd_verify = app.add_subcommand(
        "verify", "inequality suites: lemma1 lemma2 mvt tangent logpiece "
                  "identities all");
    cmd_verify->add_option("suite", suite)->required();
    cmd_verify->add_option("--p", p_text,
                           "single rational exponent a/b (even/odd, > 2)");
    cmd_verify->add_option("--points", points)->default_val(100000);
    cmd_verify->add_option("--pairs", pairs)->default_val(10000);
    cmd_verify->add_option("--seed", seed_text, "hex")->default_val("0x5EED");
    cmd_verify->add_option("--threads", threads, "0 = auto")->default_val(1);
    add_common(cmd_verify);

    int panels = 10000, families = 16;
    double cut = 1000.0;
    auto* cmd_continuous = app.add_subcommand(
        "continuous", "continuous extremal integrals and quadrature checks");
    cmd_continuous->add_option("--p", p_text)->required();
    cmd_continuous->add_option("--panels", panels)->default_val(10000);
    cmd_continuous->add_option("--cut", cut)->default_val(1000.0);
    cmd_continuous->add_option("--families", families)->default_val(16);
    add_common(cmd_continuous);

    double ip0 = 3.0, ip = 3.5, ip1 = 4.0;
    auto* cmd_interp =
        app.add_subcommand("interp", "interpolation bound spot check");
    cmd_interp->add_option("--p0", ip0)->required();
    cmd_interp->add_option("--p", ip)->required();
    cmd_interp->add_option("--p1", ip1)->required();
    cmd_interp->add_option("--N", N, "section size (default 256)");
    add_common(cmd_interp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Sink sink(out_path);
        if (app.got_subcommand(cmd_norm)) {
            return run_norm(p_text, pick("text"), sink);
        }
        if (app.got_subcommand(cmd_mp)) {
            return run_mp(p_text, pick("text"), sink);
        }
        if (app.got_subcommand(cmd_table)) {
            return run_table(from, to, step, pick("csv"), threads, sink);
        }
        if (app.got_subcommand(cmd_extremal)) {
            return run_extremal(p_text, m, N, pick("text"), sink);
        }
        if (app.got_subcommand(cmd_section)) {
            return run_section(p_text, N == 0 ? 4096 : N, kind_text, starts,
                               max_iter, tol, seed_text, threads, x0_path,
                               trace_path, pick("text"), sink);
        }
        if (app.got_subcommand(cmd_verify)) {
            return run_verify(suite, p_text, points, pairs, seed_text, threads,
                              pick("csv"), sink);
        }
        if (app.got_subcommand(cmd_continuous)) {
            return run_continuous(p_text, panels, cut, families, pick("text"), sink);
        }
        if (app.got_subcommand(cmd_interp)) {
            return run_interp(ip0, ip, ip1, N == 0 ? 256 : N, pick("text"), sink);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 1;
    }
}
