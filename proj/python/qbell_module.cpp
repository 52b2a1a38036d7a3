#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbell/entropy.hpp"
#include "qbell/inefficiency.hpp"
#include "qbell/quantum.hpp"
#include "qbell/scan.hpp"
#include "qbell/scenarios.hpp"

namespace py = pybind11;
using namespace qbell;

namespace {

JointDist make_joint(const std::vector<std::vector<double>>& rows) {
    return JointDist::from_rows(rows);
}

std::vector<std::vector<double>> table_of(const JointDist& j) {
    std::vector<std::vector<double>> out(j.rows(), std::vector<double>(j.cols()));
    for (std::size_t a = 0; a < j.rows(); ++a)
        for (std::size_t b = 0; b < j.cols(); ++b) out[a][b] = j.at(a, b);
    return out;
}

InefficiencyModel model_of(const std::string& kind, double eta) {
    if (kind == "single") return {DetectorKind::single_detector, Efficiency(eta)};
    if (kind == "two") return {DetectorKind::two_detector, Efficiency(eta)};
    throw std::invalid_argument("model must be 'single' or 'two'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "q-entropic Bell and contextuality inequalities";

    // --- entropy ---------------------------------------------------------
    m.def("q_ln", [](double x, double q) { return q_ln(x, QOrder(q)); },
          py::arg("x"), py::arg("q"),
          "Deformed logarithm (x^(1-q) - 1)/(1 - q); ln x at q = 1.");
    m.def("tsallis_entropy",
          [](const std::vector<double>& p, double q) {
              return tsallis_entropy(ProbDist(p), QOrder(q));
          },
          py::arg("probs"), py::arg("q"));
    m.def("joint_entropy",
          [](const std::vector<std::vector<double>>& t, double q) {
              return joint_entropy(make_joint(t), QOrder(q));
          },
          py::arg("table"), py::arg("q"));
    m.def("conditional_entropy",
          [](const std::vector<std::vector<double>>& t, double q) {
              return conditional_entropy(make_joint(t), QOrder(q));
          },
          py::arg("table"), py::arg("q"),
          "H_q(A|B); the column index is the conditioning variable.");
    m.def("mutual_information",
          [](const std::vector<std::vector<double>>& t, double q) {
              return mutual_information(make_joint(t), QOrder(q));
          },
          py::arg("table"), py::arg("q"));
    m.def("binary_q_entropy",
          [](double eta, double q) {
              return binary_q_entropy(Efficiency(eta), QOrder(q));
          },
          py::arg("eta"), py::arg("q"));
    m.def("chain_rule_residual",
          [](const std::vector<std::vector<double>>& t, double q) {
              return chain_rule_residual(make_joint(t), QOrder(q));
          },
          py::arg("table"), py::arg("q"));

    // --- quantum ---------------------------------------------------------
    m.def("chsh_joint_dist",
          [](double angle) { return table_of(chsh_joint_dist(angle)); },
          py::arg("angle"),
          "Singlet outcome table for directions separated by the angle.");
    m.def("chsh_correlation", &chsh_correlation, py::arg("angle"));
    m.def("kcbs_vectors",
          [](double alpha) {
              std::vector<std::vector<Complex>> out;
              for (const auto& v : kcbs_vectors(KcbsConfig(alpha, 0.0))) {
                  out.emplace_back(v.vector().begin(), v.vector().end());
              }
              return out;
          },
          py::arg("alpha"));
    m.def("kcbs_sequential_joint",
          [](double alpha, double theta, int first, int second) {
              const KcbsConfig cfg(alpha, theta);
              const auto x = kcbs_vectors(cfg);
              return table_of(kcbs_sequential_joint(x.at(first - 1),
                                                    x.at(second - 1),
                                                    kcbs_state(cfg)));
          },
          py::arg("alpha"), py::arg("theta"), py::arg("first"), py::arg("second"),
          "Sequential pair table; `first` is measured before `second`.");
    m.def("kcbs_pair_correlation",
          [](int j, int k, double alpha, double theta) {
              const KcbsConfig cfg(alpha, theta);
              return kcbs_pair_correlation(j, k, cfg, kcbs_state(cfg));
          },
          py::arg("j"), py::arg("k"), py::arg("alpha"), py::arg("theta"));

    // --- scenarios -------------------------------------------------------
    py::class_<ViolationReport>(m, "ViolationReport")
        .def_readonly("c_q", &ViolationReport::c_q)
        .def_readonly("c_q_relative", &ViolationReport::c_q_relative)
        .def_readonly("q", &ViolationReport::q)
        .def_readonly("params", &ViolationReport::params)
        .def_readonly("violated", &ViolationReport::violated)
        .def("__repr__", [](const ViolationReport& r) {
            return "<ViolationReport c_q=" + std::to_string(r.c_q) + ">";
        });

    py::class_<PolytopeVerdict>(m, "PolytopeVerdict")
        .def_readonly("violated", &PolytopeVerdict::violated)
        .def_readonly("max_lhs", &PolytopeVerdict::max_lhs)
        .def_readonly("margin", &PolytopeVerdict::margin)
        .def_readonly("worst_signs", &PolytopeVerdict::worst_signs);

    m.def("cycle_entropic_lhs",
          [](const std::vector<double>& entropies) {
              return cycle_entropic_lhs(CycleEntropies(
                  static_cast<int>(entropies.size()), entropies));
          },
          py::arg("cond_entropies"),
          "H_q(X1|Xn) minus the chain sum; the last entry is H_q(X1|Xn).");
    m.def("chsh_cq",
          [](double gamma, double q) { return chsh_cq(gamma, QOrder(q)); },
          py::arg("gamma"), py::arg("q"));
    m.def("kcbs_cq",
          [](double alpha, double theta, double q) {
              return kcbs_cq(KcbsConfig(alpha, theta), QOrder(q));
          },
          py::arg("alpha"), py::arg("theta"), py::arg("q"));
    m.def("chsh_mutual_info_form",
          [](double gamma, double q) {
              return chsh_mutual_info_form(gamma, QOrder(q));
          },
          py::arg("gamma"), py::arg("q"));
    m.def("cycle_polytope_check",
          [](const std::vector<double>& correlations) {
              return cycle_polytope_check(CycleCorrelations(
                  static_cast<int>(correlations.size()), correlations));
          },
          py::arg("correlations"));

    // --- inefficiency ----------------------------------------------------
    py::class_<EtaReport>(m, "EtaReport")
        .def_readonly("c_q", &EtaReport::c_q)
        .def_readonly("c_q_eta", &EtaReport::c_q_eta)
        .def_readonly("delta_q", &EtaReport::delta_q)
        .def_readonly("ratio", &EtaReport::ratio)
        .def_readonly("q", &EtaReport::q)
        .def_readonly("eta", &EtaReport::eta);

    m.def("deform_joint",
          [](const std::vector<std::vector<double>>& t, const std::string& kind,
             double eta) {
              const JointDist j = make_joint(t);
              return table_of(deform_joint(j, model_of(kind, eta),
                                           j.marginal_first(), j.marginal_second()));
          },
          py::arg("table"), py::arg("model"), py::arg("eta"),
          "Extend a table with explicit no-click outcomes ('single' or 'two').");
    m.def("single_detector_cq",
          [](double c_q, double eta, double q) {
              return single_detector_cq(c_q, Efficiency(eta), QOrder(q));
          },
          py::arg("c_q"), py::arg("eta"), py::arg("q"));
    m.def("kcbs_deformed_cq",
          [](double alpha, double theta, const std::string& kind, double eta,
             double q) {
              return kcbs_deformed_cq(KcbsConfig(alpha, theta),
                                      model_of(kind, eta), QOrder(q));
          },
          py::arg("alpha"), py::arg("theta"), py::arg("model"), py::arg("eta"),
          py::arg("q"));
    m.def("two_detector_report",
          [](double alpha, double theta, double eta, double q) {
              return two_detector_report(KcbsConfig(alpha, theta),
                                         Efficiency(eta), QOrder(q));
          },
          py::arg("alpha"), py::arg("theta"), py::arg("eta"), py::arg("q"));
    m.def("ratio_linear_fit",
          [](double alpha, double theta, double q,
             const std::vector<double>& eta_grid) {
              const auto rep =
                  ratio_linear_fit(KcbsConfig(alpha, theta), QOrder(q), eta_grid);
              py::dict out;
              out["slope"] = rep.slope ? py::cast(*rep.slope) : py::none();
              out["max_rel_dev"] = rep.max_rel_dev;
              out["points"] = rep.points;
              return out;
          },
          py::arg("alpha"), py::arg("theta"), py::arg("q"), py::arg("eta_grid"));

    // --- scan --------------------------------------------------------------
    py::class_<MaxViolation>(m, "MaxViolation")
        .def_readonly("q", &MaxViolation::q)
        .def_readonly("max_cq", &MaxViolation::max_cq)
        .def_readonly("max_cq_relative", &MaxViolation::max_cq_relative)
        .def_readonly("argmax", &MaxViolation::argmax);

    m.def("scan_chsh",
          [](double q, int points) {
              ScanGrid grid;
              grid.points_per_axis = points;
              const auto s = scan_chsh(QOrder(q), grid);
              return py::make_tuple(s.best, s.series);
          },
          py::arg("q"), py::arg("points") = 400,
          "Returns (best, series of (gamma, relative C_q)).");
    m.def("scan_kcbs",
          [](double q, int points) {
              ScanGrid grid;
              grid.points_per_axis = points;
              const auto s = scan_kcbs(QOrder(q), grid);
              return py::make_tuple(s.best, s.samples);
          },
          py::arg("q"), py::arg("points") = 400,
          "Returns (best, decimated (alpha, theta, relative C_q) samples).");
    m.def("kcbs_theta_series",
          [](double alpha, double q, const std::vector<double>& thetas) {
              return kcbs_theta_series(alpha, QOrder(q), thetas);
          },
          py::arg("alpha"), py::arg("q"), py::arg("thetas"));
    m.def("q_threshold",
          [](double alpha, double theta, double q_lo, double q_hi) {
              const auto r = q_threshold(alpha, theta, {q_lo, q_hi});
              return r.crossed ? py::cast(r.q_star) : py::none().cast<py::object>();
          },
          py::arg("alpha"), py::arg("theta"), py::arg("q_lo"), py::arg("q_hi"),
          "The order at which C_q changes sign, or None if it never does.");
    m.def("table2_ratios",
          [](const std::vector<double>& q_list, double eta, int points) {
              ScanGrid grid;
              grid.points_per_axis = points;
              return table2_ratios(q_list, Efficiency(eta), grid);
          },
          py::arg("q_list"), py::arg("eta") = 0.99, py::arg("points") = 400);
}
