// Command-line front end: simulate walks, grow percolated trees, run Yule
// processes, evaluate constants, and run the regime verification experiments.
// All outputs are deterministic functions of (config, seed) for any worker
// count; every emitted file embeds the full config in a metadata block.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sharkswim/analytics.hpp"
#include "sharkswim/forest.hpp"
#include "sharkswim/verifier.hpp"
#include "sharkswim/walk.hpp"
#include "sharkswim/yule.hpp"

namespace {

using nlohmann::ordered_json;

struct RationalProb {
    double value = 0.5;
    std::string text = "0.5"; // as given, e.g. "3/4"
};

RationalProb parse_prob(const std::string& text, const char* what) {
    RationalProb out;
    out.text = text;
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(text.substr(0, slash));
            double den = std::stod(text.substr(slash + 1));
            if (den == 0.0) throw std::invalid_argument("zero denominator");
            out.value = num / den;
        } else {
            out.value = std::stod(text);
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + ": cannot parse '" + text + "'");
    }
    return out;
}

std::vector<int64_t> parse_n_list(const std::vector<std::string>& items) {
    std::vector<int64_t> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            double v = std::stod(tok); // accepts 1e5 style
            if (!(v >= 1.0) || v > 9.0e15 || std::floor(v) != v)
                throw CLI::ValidationError("--n: '" + tok + "' is not a positive integer");
            out.push_back(int64_t(v));
        }
    }
    return out;
}

void write_metadata_block(std::ostream& os, const std::map<std::string, std::string>& cfg) {
    os << "# sharkswim schema=1\n";
    for (const auto& [k, v] : cfg) os << "# " << k << '=' << v << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

struct CommonOpts {
    std::uint64_t seed = 0;
    int workers = 0;
    std::string out;
};

void add_seed_option(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed")->envname("SHARKSWIM_SEED");
}

int run_simulate(const std::string& mode, double alpha, const RationalProb& memory,
                 int dimension, int64_t n, int erw_first, const CommonOpts& opts) {
    sharkswim::RngStream rng(opts.seed, 0);
    sharkswim::Trajectory traj;
    std::map<std::string, std::string> meta{
        {"cmd", "simulate"},   {"mode", mode},
        {"alpha", std::to_string(alpha)}, {"memory", memory.text},
        {"d", std::to_string(dimension)}, {"n", std::to_string(n)},
        {"seed", std::to_string(opts.seed)}};
    if (mode == "p") {
        sharkswim::ModelParams params{sharkswim::WalkMode::P_MODE, alpha, memory.value,
                                      dimension, n};
        traj = sharkswim::simulate_p_mode(params, rng);
    } else if (mode == "q") {
        sharkswim::ModelParams params{sharkswim::WalkMode::Q_MODE, alpha, memory.value,
                                      dimension, n};
        traj = sharkswim::simulate_q_mode(params, rng);
    } else if (mode == "erw") {
        traj = sharkswim::simulate_erw(memory.value, n, rng, erw_first);
    } else {
        throw CLI::ValidationError("--mode must be p, q or erw");
    }
    std::ostringstream os;
    write_metadata_block(os, meta);
    os << "k";
    for (int j = 1; j <= traj.dimension; ++j) os << ",s" << j;
    os << ",tag\n";
    for (int64_t k = 1; k <= traj.size(); ++k) {
        os << k;
        auto pos = traj.position(k);
        for (double x : pos) os << ',' << x;
        const auto& prov = traj.provenance[std::size_t(k - 1)];
        switch (prov.tag) {
        case sharkswim::StepTag::FRESH: os << ",FRESH"; break;
        case sharkswim::StepTag::REPEATED: os << ",REPEATED:" << prov.source; break;
        case sharkswim::StepTag::FLIPPED: os << ",FLIPPED:" << prov.source; break;
        }
        os << '\n';
    }
    if (opts.out.empty())
        std::cout << os.str();
    else
        write_text_file(opts.out, os.str());
    return 0;
}

int run_clusters(int64_t n, const RationalProb& p, bool exact, double alpha,
                 int64_t reps, const CommonOpts& opts) {
    std::map<std::string, std::string> meta{{"cmd", "clusters"},
                                            {"n", std::to_string(n)},
                                            {"p", p.text},
                                            {"seed", std::to_string(opts.seed)}};
    if (exact) {
        auto law = sharkswim::enumerate_exact(int(n), p.value);
        ordered_json j;
        j["schema"] = 1;
        for (const auto& [k, v] : meta) j["config"][k] = v;
        ordered_json pmf;
        for (const auto& [size, prob] : law.root_cluster_pmf())
            pmf[std::to_string(size)] = prob;
        j["root_cluster_pmf"] = pmf;
        j["mean_root_cluster"] = law.mean_root_cluster(1);
        ordered_json alpha_law = ordered_json::array();
        for (const auto& [value, prob] : law.alpha_sum_law(alpha))
            alpha_law.push_back({{"alpha_sum", value}, {"prob", prob}});
        j["alpha"] = alpha;
        j["alpha_sum_law"] = alpha_law;
        std::string text = j.dump(2) + "\n";
        if (opts.out.empty())
            std::cout << text;
        else
            write_text_file(opts.out, text);
        return 0;
    }
    meta["reps"] = std::to_string(reps);
    std::ostringstream os;
    write_metadata_block(os, meta);
    os << (reps > 1 ? "replicate,root,size\n" : "root,size\n");
    for (int64_t r = 0; r < reps; ++r) {
        sharkswim::RngStream rng(opts.seed, std::uint64_t(r));
        sharkswim::ClusterForest forest(n, p.value, rng);
        auto roots = forest.roots();
        auto sizes = forest.sizes();
        for (int64_t c = 0; c < forest.cluster_count(); ++c) {
            if (reps > 1) os << r << ',';
            os << roots[std::size_t(c)] << ',' << sizes[std::size_t(c)] << '\n';
        }
    }
    if (opts.out.empty())
        std::cout << os.str();
    else
        write_text_file(opts.out, os.str());
    return 0;
}

int run_yule(int64_t n, const RationalProb& p, const CommonOpts& opts) {
    sharkswim::RngStream rng(opts.seed, 0);
    sharkswim::YuleState state(n, p.value, rng);
    std::ostringstream os;
    write_metadata_block(os, {{"cmd", "yule"},
                              {"n", std::to_string(n)},
                              {"p", p.text},
                              {"seed", std::to_string(opts.seed)}});
    os << "type,birth_time,count\n";
    auto counts = state.type_counts();
    auto births = state.type_birth_times();
    for (int64_t i = 0; i < state.num_types(); ++i)
        os << (i + 1) << ',' << births[std::size_t(i)] << ',' << counts[std::size_t(i)]
           << '\n';
    if (opts.out.empty())
        std::cout << os.str();
    else
        write_text_file(opts.out, os.str());
    return 0;
}

int run_constants(double alpha, const RationalProb& p, const CommonOpts& opts) {
    namespace an = sharkswim::analytics;
    auto regime = sharkswim::classify_regime(alpha, p.value);
    ordered_json entry;
    entry["regime"] = sharkswim::regime_name(regime);
    if (regime == sharkswim::Regime::SUB) entry["c"] = an::c_constant(alpha, p.value);
    if (regime == sharkswim::Regime::CRIT)
        entry["critical_constant"] = an::critical_constant(alpha, p.value);
    entry["ml_mean"] = an::ml_moment(p.value, 1.0);
    entry["ml_second_moment"] = an::ml_moment(p.value, 2.0);
    ordered_json j;
    j["schema"] = 1;
    j["config"] = {{"cmd", "constants"},
                   {"alpha", std::to_string(alpha)},
                   {"p", p.text}};
    std::ostringstream key;
    key << "alpha=" << alpha << ",p=" << p.text;
    j["table"][key.str()] = entry;
    std::string text = j.dump(2) + "\n";
    if (opts.out.empty())
        std::cout << text;
    else
        write_text_file(opts.out, text);
    return 0;
}

int run_verify(const std::string& regime_flag, double alpha, const RationalProb& p,
               int dimension, std::vector<int64_t> n_list, int64_t reps,
               double theta_lo, double theta_hi, int theta_points,
               const std::string& out_dir, const CommonOpts& opts) {
    namespace ss = sharkswim;
    if (n_list.empty()) throw CLI::ValidationError("--n: at least one horizon required");
    ss::ExperimentConfig cfg;
    cfg.alpha = alpha;
    cfg.p = p.value;
    cfg.dimension = dimension;
    cfg.n_list = n_list;
    cfg.replicates = reps;
    cfg.seed = opts.seed;
    cfg.workers = opts.workers;
    cfg.theta_lo = theta_lo;
    cfg.theta_hi = theta_hi;
    cfg.theta_points = theta_points;

    std::map<std::string, std::string> meta{
        {"cmd", "verify"},           {"regime", regime_flag},
        {"alpha", std::to_string(alpha)}, {"p", p.text},
        {"d", std::to_string(dimension)}, {"reps", std::to_string(reps)},
        {"seed", std::to_string(opts.seed)},
        {"theta_lo", std::to_string(theta_lo)},
        {"theta_hi", std::to_string(theta_hi)},
        {"theta_points", std::to_string(theta_points)}};
    {
        std::ostringstream ns;
        for (std::size_t i = 0; i < n_list.size(); ++i)
            ns << (i ? "," : "") << n_list[i];
        meta["n_list"] = ns.str();
    }

    std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);
    auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(out_dir.empty() ? "." : out_dir) / name).string();
    };

    auto detected = ss::classify_regime(alpha, p.value);
    if (regime_flag == "identity") {
        auto report = ss::cf_identity_check(cfg, n_list.front());
        ordered_json j;
        j["schema"] = 1;
        for (const auto& [k, v] : meta) j["config"][k] = v;
        j["detected_regime"] = ss::regime_name(detected);
        j["n"] = report.n;
        j["scaling"] = report.scaling;
        j["z_limit"] = report.z_limit;
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows)
            rows.push_back({{"theta_norm", row.theta_norm},
                            {"walk_re", row.walk_re},
                            {"walk_se_re", row.walk_se_re},
                            {"walk_im", row.walk_im},
                            {"walk_se_im", row.walk_se_im},
                            {"cond_mean", row.cond_mean},
                            {"cond_se", row.cond_se},
                            {"z_real", row.z_real},
                            {"z_imag", row.z_imag}});
        j["rows"] = rows;
        j["max_z"] = report.max_z;
        j["pass"] = report.pass;
        write_text_file(out_path("identity_report.json"), j.dump(2) + "\n");
        std::cout << (report.pass ? "PASS" : "FAIL") << " cf_identity max_z=" << report.max_z
                  << "\n";
        return report.pass ? 0 : 2;
    }

    // Regime sub-mode must agree with the (alpha, p) classification.
    if ((regime_flag == "sub" && detected != ss::Regime::SUB) ||
        (regime_flag == "crit" && detected != ss::Regime::CRIT) ||
        (regime_flag == "super" && detected != ss::Regime::SUPER)) {
        std::cerr << "error: --regime " << regime_flag << " but alpha*p = "
                  << alpha * p.value << " detects '" << ss::regime_name(detected)
                  << "'\n";
        return 1;
    }

    ss::RegimeReport report;
    if (regime_flag == "sub")
        report = ss::subcritical_experiment(cfg);
    else if (regime_flag == "crit")
        report = ss::critical_experiment(cfg);
    else
        report = ss::supercritical_experiment(cfg);
    report.config_echo = meta;

    write_text_file(out_path("report_" + regime_flag + ".json"),
                    ss::to_json_string(report) + "\n");
    std::ostringstream csv;
    write_metadata_block(csv, meta);
    ss::write_plot_csv(report, csv);
    write_text_file(out_path("report_" + regime_flag + ".csv"), csv.str());

    for (const auto& v : report.verdicts)
        std::cout << (v.pass ? "PASS" : "FAIL") << ' ' << v.name << " statistic="
                  << v.statistic << " threshold=" << v.threshold << '\n';
    std::cout << (report.pass ? "PASS" : "FAIL") << " overall regime=" << regime_flag
              << '\n';
    return report.pass ? 0 : 2;
}

} // namespace

namespace {

int run_app(int argc, char** argv) {
    CLI::App app{"Simulation and verification of memory-reinforced random walks "
                 "with stable increments"};
    app.set_config("--config", "", "Read options from a TOML file (flags override)");
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Simulate one walk and export a CSV");
    std::string sim_mode = "p";
    double sim_alpha = 2.0;
    std::string sim_memory = "0.5";
    int sim_d = 1;
    int64_t sim_n = 100;
    int sim_erw_first = 0;
    CommonOpts sim_opts;
    sim->add_option("--mode", sim_mode, "p | q | erw");
    sim->add_option("--alpha", sim_alpha, "stability index in (0,2]");
    sim->add_option("--p,--q,--memory", sim_memory, "memory parameter (accepts a/b)");
    sim->add_option("--d", sim_d, "dimension");
    sim->add_option("--n", sim_n, "horizon");
    sim->add_option("--erw-first-step", sim_erw_first, "-1, 0 (fair coin) or +1");
    sim->add_option("--out", sim_opts.out, "output CSV path (stdout when omitted)");
    add_seed_option(sim, sim_opts);

    // clusters
    auto* clu = app.add_subcommand("clusters", "Grow percolated trees / exact laws");
    int64_t clu_n = 100;
    std::string clu_p = "0.5";
    bool clu_exact = false;
    double clu_alpha = 2.0;
    int64_t clu_reps = 1;
    CommonOpts clu_opts;
    clu->add_option("--n", clu_n, "tree size");
    clu->add_option("--p", clu_p, "retention probability (accepts a/b)");
    clu->add_flag("--exact", clu_exact, "emit the exact law (n <= 8) as JSON");
    clu->add_option("--alpha", clu_alpha, "alpha for the exact alpha-sum law");
    clu->add_option("--reps", clu_reps, "forests to grow");
    clu->add_option("--out", clu_opts.out, "output path (stdout when omitted)");
    add_seed_option(clu, clu_opts);

    // yule
    auto* yul = app.add_subcommand("yule", "Simulate a Yule process with mutation");
    int64_t yul_n = 1000;
    std::string yul_p = "0.5";
    CommonOpts yul_opts;
    yul->add_option("--n", yul_n, "individuals to grow");
    yul->add_option("--p", yul_p, "clone probability (accepts a/b)");
    yul->add_option("--out", yul_opts.out, "output CSV path (stdout when omitted)");
    add_seed_option(yul, yul_opts);

    // constants
    auto* con = app.add_subcommand("constants", "Evaluate closed-form constants");
    double con_alpha = 2.0;
    std::string con_p = "0.5";
    CommonOpts con_opts;
    con->add_option("--alpha", con_alpha, "stability index");
    con->add_option("--p", con_p, "memory parameter (accepts a/b)");
    con->add_option("--out", con_opts.out, "output JSON path (stdout when omitted)");
    add_seed_option(con, con_opts);

    // verify
    auto* ver = app.add_subcommand("verify", "Run a regime verification experiment");
    std::string ver_regime = "sub";
    double ver_alpha = 2.0;
    std::string ver_p = "0.25";
    int ver_d = 1;
    std::vector<std::string> ver_n{"1000,10000,100000"};
    int64_t ver_reps = 1000;
    double ver_theta_lo = 0.1, ver_theta_hi = 3.0;
    int ver_theta_points = 8;
    std::string ver_out_dir = ".";
    CommonOpts ver_opts;
    ver->add_option("--regime", ver_regime, "sub | crit | super | identity");
    ver->add_option("--alpha", ver_alpha, "stability index");
    ver->add_option("--p", ver_p, "memory parameter (accepts a/b)");
    ver->add_option("--d", ver_d, "dimension");
    ver->add_option("--n", ver_n, "horizon list (repeatable or comma separated)");
    ver->add_option("--reps", ver_reps, "replicates");
    ver->add_option("--theta-lo", ver_theta_lo, "theta grid lower magnitude");
    ver->add_option("--theta-hi", ver_theta_hi, "theta grid upper magnitude");
    ver->add_option("--theta-points", ver_theta_points, "theta grid size");
    ver->add_option("--out-dir", ver_out_dir, "directory for report files");
    ver->add_option("--workers", ver_opts.workers, "worker threads (0 = all cores)");
    add_seed_option(ver, ver_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*sim)
            return run_simulate(sim_mode, sim_alpha, parse_prob(sim_memory, "--p"), sim_d,
                                sim_n, sim_erw_first, sim_opts);
        if (*clu)
            return run_clusters(clu_n, parse_prob(clu_p, "--p"), clu_exact, clu_alpha,
                                clu_reps, clu_opts);
        if (*yul) return run_yule(yul_n, parse_prob(yul_p, "--p"), yul_opts);
        if (*con) return run_constants(con_alpha, parse_prob(con_p, "--p"), con_opts);
        if (*ver)
            return run_verify(ver_regime, ver_alpha, parse_prob(ver_p, "--p"), ver_d,
                              parse_n_list(ver_n), ver_reps, ver_theta_lo, ver_theta_hi,
                              ver_theta_points, ver_out_dir, ver_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
