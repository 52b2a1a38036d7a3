// Command-line interface: violation scans, reference-table and figure-series
// generation, cycle-polytope checks and detector-inefficiency reports.
//
// Exit codes: 0 success, 1 cycle-check found a violation, 2 usage or input
// error, 3 internal numerical failure.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbell/inefficiency.hpp"
#include "qbell/scan.hpp"
#include "qbell/scenarios.hpp"

using json = nlohmann::ordered_json;
using namespace qbell;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<double> kTableQList = {1.0, 1.1, 1.2, 1.4, 1.6, 1.8,
                                         2.0, 2.5, 3.0, 5.0, 8.0, 11.0};

struct OutputSpec {
    std::string format = "csv";
    std::string path;  // empty = stdout
    int precision = 6;
};

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

void write_text(const OutputSpec& spec, const std::string& text) {
    if (spec.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(spec.path);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + spec.path);
    }
    out << text;
    if (!out.good()) {
        throw std::invalid_argument("failed writing output file: " + spec.path);
    }
}

void emit(const OutputSpec& spec, const std::string& header,
          const std::vector<std::vector<double>>& rows,
          const std::vector<std::string>& json_keys) {
    if (spec.format == "csv") {
        std::string text = header + "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) text += ',';
                text += fmt(row[i], spec.precision);
            }
            text += '\n';
        }
        write_text(spec, text);
    } else {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t i = 0; i < row.size(); ++i) obj[json_keys[i]] = row[i];
            arr.push_back(obj);
        }
        write_text(spec, arr.dump(2) + "\n");
    }
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("cannot parse number: " + item);
        }
        out.push_back(v);
    }
    return out;
}

std::pair<double, double> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("range must look like lo:hi, got " + s);
    }
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

std::vector<double> series_grid(std::pair<double, double> range, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    std::vector<double> xs;
    for (double x = range.first; x <= range.second + 0.5 * step; x += step) {
        xs.push_back(std::min(x, range.second));
    }
    return xs;
}

void add_output_options(CLI::App* cmd, OutputSpec& spec) {
    cmd->add_option("--format", spec.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", spec.path, "Output path (default: stdout)");
    cmd->add_option("--precision", spec.precision, "Decimal digits")
        ->check(CLI::Range(1, 15))
        ->capture_default_str();
}

void print_error(const std::string& msg) {
    const bool color = isatty(2) && std::getenv("NO_COLOR") == nullptr;
    std::cerr << (color ? "\033[31merror:\033[0m " : "error: ") << msg << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"q-entropic Bell and contextuality inequality toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file with key=value defaults");

    // ---- table1 ----------------------------------------------------------
    auto* table1 = app.add_subcommand(
        "table1", "Maximal pentagon violations per entropic order");
    std::string t1_qlist;
    int t1_points = 400;
    OutputSpec t1_out;
    table1->add_option("--q-list", t1_qlist, "Comma-separated entropic orders");
    table1->add_option("--points", t1_points, "Coarse grid points per axis")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(table1, t1_out);
    table1->callback([&] {
        ScanGrid grid;
        grid.points_per_axis = t1_points;
        const auto qs = t1_qlist.empty() ? kTableQList : parse_list(t1_qlist);
        std::vector<std::vector<double>> rows;
        for (double qv : qs) {
            const auto s = scan_kcbs(QOrder(qv), grid);
            rows.push_back({qv, s.best.max_cq, s.best.max_cq_relative,
                            s.best.argmax[0].second, s.best.argmax[1].second});
        }
        emit(t1_out, "q,max_cq,max_cq_rel,alpha_max,theta_max", rows,
             {"q", "max_cq", "max_cq_rel", "alpha_max", "theta_max"});
    });

    // ---- table2 ----------------------------------------------------------
    auto* table2 = app.add_subcommand(
        "table2", "Two-detector inefficiency ratios at the violation maxima");
    std::string t2_qlist;
    double t2_eta = 0.99;
    int t2_points = 400;
    OutputSpec t2_out;
    table2->add_option("--q-list", t2_qlist, "Comma-separated entropic orders");
    table2->add_option("--eta", t2_eta, "Detector efficiency in (0, 1]")
        ->capture_default_str();
    table2->add_option("--points", t2_points, "Coarse grid points per axis")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(table2, t2_out);
    table2->callback([&] {
        if (!(t2_eta > 0.0 && t2_eta <= 1.0)) {
            throw std::invalid_argument("eta must lie in (0, 1]");
        }
        ScanGrid grid;
        grid.points_per_axis = t2_points;
        const auto qs = t2_qlist.empty() ? kTableQList : parse_list(t2_qlist);
        const auto ratios = table2_ratios(qs, Efficiency(t2_eta), grid);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < qs.size(); ++i) rows.push_back({qs[i], ratios[i]});
        emit(t2_out, "q,r_q", rows, {"q", "r_q"});
    });

    // ---- fig1 ------------------------------------------------------------
    auto* fig1 = app.add_subcommand(
        "fig1", "Relative two-party violation versus gamma, per order");
    std::string f1_qlist = "1.0,1.15,1.3,1.7,2.3";
    std::string f1_range = "0.005:3.136";
    double f1_step = 0.005;
    OutputSpec f1_out;
    fig1->add_option("--q-list", f1_qlist, "Comma-separated entropic orders")
        ->capture_default_str();
    fig1->add_option("--gamma-range", f1_range, "lo:hi in radians")
        ->capture_default_str();
    fig1->add_option("--step", f1_step, "Gamma step")->capture_default_str();
    add_output_options(fig1, f1_out);
    fig1->callback([&] {
        const auto range = parse_range(f1_range);
        std::vector<std::vector<double>> rows;
        for (double qv : parse_list(f1_qlist)) {
            const QOrder q(qv);
            const double scale = q_ln(2.0, q);
            for (double g : series_grid(range, f1_step)) {
                rows.push_back({qv, g, chsh_cq(g, q).c_q / scale});
            }
        }
        emit(f1_out, "q,gamma,c_rel", rows, {"q", "gamma", "c_rel"});
    });

    // ---- fig2 ------------------------------------------------------------
    auto* fig2 = app.add_subcommand(
        "fig2", "Relative pentagon violation versus theta at fixed alpha");
    std::string f2_qlist = "1.0,1.13,1.3,1.6,2.2";
    std::string f2_range = "0:1.5707963267948966";
    double f2_alpha = 0.1885;
    double f2_step = 0.005;
    OutputSpec f2_out;
    fig2->add_option("--q-list", f2_qlist, "Comma-separated entropic orders")
        ->capture_default_str();
    fig2->add_option("--alpha", f2_alpha, "Test geometry angle")
        ->capture_default_str();
    fig2->add_option("--theta-range", f2_range, "lo:hi in radians")
        ->capture_default_str();
    fig2->add_option("--step", f2_step, "Theta step")->capture_default_str();
    add_output_options(fig2, f2_out);
    fig2->callback([&] {
        const auto range = parse_range(f2_range);
        const auto thetas = series_grid(range, f2_step);
        std::vector<std::vector<double>> rows;
        for (double qv : parse_list(f2_qlist)) {
            for (const auto& [t, c] : kcbs_theta_series(f2_alpha, QOrder(qv), thetas)) {
                rows.push_back({qv, t, c});
            }
        }
        emit(f2_out, "q,theta,c_rel", rows, {"q", "theta", "c_rel"});
    });

    // ---- chsh-scan -------------------------------------------------------
    auto* cscan = app.add_subcommand(
        "chsh-scan", "Maximal two-party violation over gamma");
    std::string cs_qlist = "1.0";
    std::string cs_range;
    int cs_points = 400;
    OutputSpec cs_out;
    cscan->add_option("--q-list", cs_qlist, "Comma-separated entropic orders")
        ->capture_default_str();
    cscan->add_option("--q", cs_qlist, "Single entropic order");
    cscan->add_option("--gamma-range", cs_range, "lo:hi in radians");
    cscan->add_option("--points", cs_points, "Coarse grid points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(cscan, cs_out);
    cscan->callback([&] {
        ScanGrid grid;
        grid.points_per_axis = cs_points;
        if (!cs_range.empty()) grid.gamma_range = parse_range(cs_range);
        std::vector<std::vector<double>> rows;
        for (double qv : parse_list(cs_qlist)) {
            const auto s = scan_chsh(QOrder(qv), grid);
            rows.push_back({qv, s.best.max_cq, s.best.max_cq_relative,
                            s.best.argmax[0].second});
        }
        emit(cs_out, "q,max_cq,max_cq_rel,gamma_max", rows,
             {"q", "max_cq", "max_cq_rel", "gamma_max"});
    });

    // ---- kcbs-scan -------------------------------------------------------
    auto* kscan = app.add_subcommand(
        "kcbs-scan", "Maximal pentagon violation over (alpha, theta)");
    std::string ks_qlist = "1.0";
    int ks_points = 400;
    OutputSpec ks_out;
    kscan->add_option("--q-list", ks_qlist, "Comma-separated entropic orders")
        ->capture_default_str();
    kscan->add_option("--q", ks_qlist, "Single entropic order");
    kscan->add_option("--points", ks_points, "Coarse grid points per axis")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(kscan, ks_out);
    kscan->callback([&] {
        ScanGrid grid;
        grid.points_per_axis = ks_points;
        std::vector<std::vector<double>> rows;
        for (double qv : parse_list(ks_qlist)) {
            const auto s = scan_kcbs(QOrder(qv), grid);
            rows.push_back({qv, s.best.max_cq, s.best.max_cq_relative,
                            s.best.argmax[0].second, s.best.argmax[1].second});
        }
        emit(ks_out, "q,max_cq,max_cq_rel,alpha_max,theta_max", rows,
             {"q", "max_cq", "max_cq_rel", "alpha_max", "theta_max"});
    });

    // ---- q-threshold -----------------------------------------------------
    auto* qth = app.add_subcommand(
        "q-threshold", "Locate the entropic order where the violation appears");
    double qt_alpha = 0.1885, qt_theta = 0.4765;
    std::string qt_range = "1:3";
    OutputSpec qt_out;
    qth->add_option("--alpha", qt_alpha, "Test geometry angle")->capture_default_str();
    qth->add_option("--theta", qt_theta, "State angle")->capture_default_str();
    qth->add_option("--q-range", qt_range, "lo:hi")->capture_default_str();
    add_output_options(qth, qt_out);
    qth->callback([&] {
        const auto range = parse_range(qt_range);
        const auto r = q_threshold(qt_alpha, qt_theta, range);
        if (qt_out.format == "csv") {
            std::string text = "alpha,theta,q_lo,q_hi,crossed,q_star\n";
            text += fmt(qt_alpha, qt_out.precision) + ',' +
                    fmt(qt_theta, qt_out.precision) + ',' +
                    fmt(range.first, qt_out.precision) + ',' +
                    fmt(range.second, qt_out.precision) + ',' +
                    (r.crossed ? "1" : "0") + ',' +
                    (r.crossed ? fmt(r.q_star, qt_out.precision) : "") + '\n';
            write_text(qt_out, text);
        } else {
            json obj{{"alpha", qt_alpha},      {"theta", qt_theta},
                     {"q_lo", range.first},    {"q_hi", range.second},
                     {"crossed", r.crossed}};
            if (r.crossed) {
                obj["q_star"] = r.q_star;
            } else {
                obj["q_star"] = nullptr;
                obj["note"] = "no sign change in the given q range";
            }
            write_text(qt_out, obj.dump(2) + "\n");
        }
    });

    // ---- cycle-check -----------------------------------------------------
    auto* cyc = app.add_subcommand(
        "cycle-check", "Membership test against the cycle inequalities");
    int cy_n = 0;
    std::string cy_corr;
    OutputSpec cy_out;
    cyc->add_option("--n", cy_n, "Number of observables in the cycle")->required();
    cyc->add_option("--corr", cy_corr,
                    "Comma-separated correlations, or @file with one list")
        ->required();
    add_output_options(cyc, cy_out);
    bool cycle_violated = false;
    cyc->callback([&] {
        std::string raw = cy_corr;
        if (!raw.empty() && raw.front() == '@') {
            std::ifstream in(raw.substr(1));
            if (!in) {
                throw std::invalid_argument("cannot read correlations file: " +
                                            raw.substr(1));
            }
            std::stringstream ss;
            ss << in.rdbuf();
            raw = ss.str();
            for (auto& ch : raw) {
                if (ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t') ch = ',';
            }
        }
        const auto v = cycle_polytope_check(CycleCorrelations(cy_n, parse_list(raw)));
        cycle_violated = v.violated;
        if (cy_out.format == "json") {
            json obj{{"n", cy_n},
                     {"verdict", v.violated ? "violated" : "inside"},
                     {"max_lhs", v.max_lhs},
                     {"margin", v.margin},
                     {"worst_signs", v.worst_signs}};
            write_text(cy_out, obj.dump(2) + "\n");
        } else {
            std::string text = std::string("verdict: ") +
                               (v.violated ? "violated" : "inside") + "\n";
            text += "max_lhs: " + fmt(v.max_lhs, cy_out.precision) + "\n";
            text += "margin: " + fmt(v.margin, cy_out.precision) + "\n";
            text += "worst_signs:";
            for (int s : v.worst_signs) text += (s > 0 ? " +1" : " -1");
            text += "\n";
            write_text(cy_out, text);
        }
    });

    // ---- kcbs-eta --------------------------------------------------------
    auto* keta = app.add_subcommand(
        "kcbs-eta", "Detector-inefficiency report for a pentagon configuration");
    double ke_alpha = 0.0, ke_theta = 0.0, ke_q = 1.0, ke_eta = 0.99;
    std::string ke_model = "two";
    OutputSpec ke_out;
    keta->add_option("--alpha", ke_alpha, "Test geometry angle")->required();
    keta->add_option("--theta", ke_theta, "State angle")->required();
    keta->add_option("--q", ke_q, "Entropic order")->capture_default_str();
    keta->add_option("--eta", ke_eta, "Detector efficiency")->capture_default_str();
    keta->add_option("--model", ke_model, "Inefficiency model")
        ->check(CLI::IsMember({"single", "two"}))
        ->capture_default_str();
    keta->add_option("--out", ke_out.path, "Output path (default: stdout)");
    keta->callback([&] {
        const KcbsConfig cfg(ke_alpha, ke_theta);
        const QOrder q(ke_q);
        const Efficiency eta(ke_eta);
        json obj{{"alpha", ke_alpha}, {"theta", ke_theta}, {"q", ke_q},
                 {"eta", ke_eta},     {"model", ke_model}};
        if (ke_model == "single") {
            const double c_q = kcbs_cq(cfg, q).c_q;
            obj["c_q"] = c_q;
            obj["c_q_eta"] = single_detector_cq(c_q, eta, q);
            obj["delta_q"] = 0.0;
            obj["ratio"] = 0.0;
        } else {
            const EtaReport r = two_detector_report(cfg, eta, q);
            obj["c_q"] = r.c_q;
            obj["c_q_eta"] = r.c_q_eta;
            obj["delta_q"] = r.delta_q;
            if (r.ratio) {
                obj["ratio"] = *r.ratio;
            } else {
                obj["ratio"] = nullptr;
                obj["note"] = "ratio undefined: c_q <= 0 at this configuration";
            }
        }
        write_text(ke_out, obj.dump(2) + "\n");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        app.exit(e);
        return 2;
    }
    return cycle_violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        print_error(e.what());
        return 2;
    } catch (const std::domain_error& e) {
        print_error(e.what());
        return 2;
    } catch (const std::length_error& e) {
        print_error(e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error(std::string("numerical failure: ") + e.what());
        return 3;
    }
}
