#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sharkswim/analytics.hpp"
#include "sharkswim/forest.hpp"
#include "sharkswim/stats.hpp"
#include "sharkswim/verifier.hpp"
#include "sharkswim/walk.hpp"
#include "sharkswim/yule.hpp"

namespace py = pybind11;
using namespace sharkswim;

namespace {

py::array_t<double> sample_stable_array(double alpha, int dimension, double scale_alpha,
                                        int64_t count, uint64_t seed, uint64_t stream) {
    StableSpec spec{alpha, dimension, scale_alpha};
    spec.validate();
    RngStream rng(seed, stream);
    py::array_t<double> out({count, int64_t(dimension)});
    auto buf = out.mutable_unchecked<2>();
    std::vector<double> tmp(static_cast<std::size_t>(dimension), 0.0);
    for (int64_t r = 0; r < count; ++r) {
        sample_isotropic_stable(spec, rng, tmp);
        for (int j = 0; j < dimension; ++j) buf(r, j) = tmp[std::size_t(j)];
    }
    return out;
}

py::array_t<double> sample_ml_array(double p, int64_t count, uint64_t seed,
                                    uint64_t stream) {
    RngStream rng(seed, stream);
    py::array_t<double> out(count);
    auto buf = out.mutable_unchecked<1>();
    for (int64_t r = 0; r < count; ++r) buf(r) = sample_mittag_leffler(p, rng);
    return out;
}

py::dict regime_report_dict(const RegimeReport& report) {
    py::dict d;
    d["regime"] = report.regime;
    d["alpha"] = report.alpha;
    d["p"] = report.p;
    d["n_list"] = report.n_list;
    d["replicates"] = report.replicates;
    d["seed"] = report.seed;
    d["target_constant"] = report.target_constant;
    d["pass"] = report.pass;
    py::list verdicts;
    for (const auto& v : report.verdicts) {
        py::dict vd;
        vd["name"] = v.name;
        vd["pass"] = v.pass;
        vd["statistic"] = v.statistic;
        vd["threshold"] = v.threshold;
        vd["detail"] = v.detail;
        verdicts.append(vd);
    }
    d["verdicts"] = verdicts;
    py::list per_n;
    for (const auto& per : report.per_n) {
        py::dict pd;
        pd["n"] = per.n;
        pd["stat_mean"] = per.stat_mean;
        pd["stat_se"] = per.stat_se;
        pd["stat_deviation"] = per.stat_deviation;
        pd["max_ecf_deviation"] = per.max_ecf_deviation;
        pd["coupling_gap_q90"] = per.coupling_gap_q90;
        pd["alpha_gap_q90"] = per.alpha_gap_q90;
        pd["median_norm"] = per.median_norm;
        per_n.append(pd);
    }
    d["per_n"] = per_n;
    d["json"] = to_json_string(report);
    return d;
}

ExperimentConfig make_config(double alpha, double p, int dimension,
                             std::vector<int64_t> n_list, int64_t replicates,
                             uint64_t seed, int workers) {
    ExperimentConfig cfg;
    cfg.alpha = alpha;
    cfg.p = p;
    cfg.dimension = dimension;
    cfg.n_list = std::move(n_list);
    cfg.replicates = replicates;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Memory-reinforced random walks with stable steps: samplers, "
              "percolated recursive trees, Yule processes, closed-form analytics "
              "and regime verification experiments";

    m.def("sample_isotropic_stable", &sample_stable_array, py::arg("alpha"),
          py::arg("dimension") = 1, py::arg("scale_alpha") = 1.0, py::arg("count") = 1,
          py::arg("seed") = 0, py::arg("stream") = 0,
          "Draw count x dimension samples with CF exp(-scale*|theta|^alpha)");
    m.def("sample_mittag_leffler", &sample_ml_array, py::arg("p"), py::arg("count") = 1,
          py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "stable_cf",
        [](double alpha, double scale_alpha, double theta_norm) {
            return stable_cf_radial(StableSpec{alpha, 1, scale_alpha}, theta_norm);
        },
        py::arg("alpha"), py::arg("scale_alpha"), py::arg("theta_norm"));

    m.def(
        "grow_cluster_sizes",
        [](int64_t n, double p, uint64_t seed, uint64_t stream) {
            RngStream rng(seed, stream);
            ClusterForest forest(n, p, rng);
            auto sizes = forest.sizes();
            auto roots = forest.roots();
            return py::make_tuple(std::vector<int64_t>(roots.begin(), roots.end()),
                                  std::vector<int64_t>(sizes.begin(), sizes.end()));
        },
        py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("stream") = 0,
        "Grow one percolated recursive tree; returns (roots, sizes)");
    m.def(
        "enumerate_root_cluster_pmf",
        [](int n, double p) {
            std::map<int64_t, double> pmf = enumerate_exact(n, p).root_cluster_pmf();
            return pmf;
        },
        py::arg("n"), py::arg("p"), "Exact |c_1| pmf by enumeration (n <= 8)");

    m.def(
        "yule_type_counts",
        [](int64_t n, double p, uint64_t seed, uint64_t stream) {
            RngStream rng(seed, stream);
            YuleState state(n, p, rng);
            auto counts = state.type_counts();
            return std::vector<int64_t>(counts.begin(), counts.end());
        },
        py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("stream") = 0);

    m.def(
        "walk_final_position",
        [](double alpha, double p, int dimension, int64_t n, uint64_t seed,
           uint64_t stream) {
            ModelParams params{WalkMode::P_MODE, alpha, p, dimension, n};
            RngStream rng(seed, stream);
            return p_mode_final_position(params, rng);
        },
        py::arg("alpha"), py::arg("p"), py::arg("dimension"), py::arg("n"),
        py::arg("seed") = 0, py::arg("stream") = 0);

    auto an = m.def_submodule("analytics");
    an.def("beta_binomial_pmf", &analytics::beta_binomial_pmf);
    an.def("root_cluster_moment", &analytics::root_cluster_moment);
    an.def("ml_moment", &analytics::ml_moment);
    an.def("xi_moment", &analytics::xi_moment);
    an.def("geometric_alpha_moment",
           [](double r, double alpha) { return analytics::geometric_alpha_moment(r, alpha); });
    an.def("c_constant", [](double alpha, double p) { return analytics::c_constant(alpha, p); });
    an.def("critical_constant", &analytics::critical_constant);

    m.def(
        "classify_regime",
        [](double alpha, double p) { return regime_name(classify_regime(alpha, p)); },
        py::arg("alpha"), py::arg("p"));

    m.def(
        "subcritical_experiment",
        [](double alpha, double p, int dimension, std::vector<int64_t> n_list,
           int64_t replicates, uint64_t seed, int workers) {
            return regime_report_dict(subcritical_experiment(
                make_config(alpha, p, dimension, std::move(n_list), replicates, seed,
                            workers)));
        },
        py::arg("alpha"), py::arg("p"), py::arg("dimension"), py::arg("n_list"),
        py::arg("replicates"), py::arg("seed") = 0, py::arg("workers") = 0);
    m.def(
        "critical_experiment",
        [](double alpha, double p, int dimension, std::vector<int64_t> n_list,
           int64_t replicates, uint64_t seed, int workers) {
            return regime_report_dict(critical_experiment(
                make_config(alpha, p, dimension, std::move(n_list), replicates, seed,
                            workers)));
        },
        py::arg("alpha"), py::arg("p"), py::arg("dimension"), py::arg("n_list"),
        py::arg("replicates"), py::arg("seed") = 0, py::arg("workers") = 0);
    m.def(
        "supercritical_experiment",
        [](double alpha, double p, int dimension, std::vector<int64_t> n_list,
           int64_t replicates, uint64_t seed, int workers) {
            return regime_report_dict(supercritical_experiment(
                make_config(alpha, p, dimension, std::move(n_list), replicates, seed,
                            workers)));
        },
        py::arg("alpha"), py::arg("p"), py::arg("dimension"), py::arg("n_list"),
        py::arg("replicates"), py::arg("seed") = 0, py::arg("workers") = 0);
    m.def(
        "cf_identity_check",
        [](double alpha, double p, int dimension, int64_t n, int64_t replicates,
           uint64_t seed, int workers) {
            auto report = cf_identity_check(
                make_config(alpha, p, dimension, {n}, replicates, seed, workers), n);
            py::dict d;
            d["alpha"] = report.alpha;
            d["p"] = report.p;
            d["n"] = report.n;
            d["scaling"] = report.scaling;
            d["max_z"] = report.max_z;
            d["pass"] = report.pass;
            return d;
        },
        py::arg("alpha"), py::arg("p"), py::arg("dimension"), py::arg("n"),
        py::arg("replicates"), py::arg("seed") = 0, py::arg("workers") = 0);
}
