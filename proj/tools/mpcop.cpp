// mpcop - Manneville-Pomeau maps, invariant-measure and copula
// approximations, singular-copula sampling, and intermittency-parameter
// estimation from the command line.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpcop/copula.hpp"
#include "mpcop/estimator.hpp"
#include "mpcop/experiments.hpp"
#include "mpcop/map.hpp"
#include "mpcop/measure.hpp"
#include "mpcop/nodes.hpp"
#include "mpcop/sampler.hpp"

using namespace mpcop;

namespace {

constexpr double kDefaultX0 = 0.14159265358979323846;  // pi mod 1

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file " + path);
    }
    return out;
}

std::vector<double> read_path_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file " + path);
    }
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line == "x") continue;  // header
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": not a number: " + line);
        }
        if (pos != line.size()) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": trailing characters");
        }
        if (!(v > 0.0) || !(v < 1.0)) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": value outside (0,1): " + line);
        }
        values.push_back(v);
    }
    return values;
}

double clamp_unit(double c) { return std::clamp(c, 0.0, 1.0); }

CopulaModel assemble_from_flags(double s, int h, std::int64_t n, std::size_t m, double x0,
                                bool decreasing) {
    const MapModel model = MapModel::from_s(s);
    auto mu = std::make_shared<const EmpiricalMeasure>(build_measure(model, x0, n));
    return CopulaModel::assemble(model, std::move(mu), {h}, m,
                                 decreasing ? Direction::decreasing : Direction::increasing);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Manneville-Pomeau invariant-measure and copula toolkit"};
    app.require_subcommand(1);
    // --h is a domain option (the lag), so help stays on --help only
    app.set_help_flag("--help", "print help");
    const auto add_sub = [&app](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    // ---- iterate ----------------------------------------------------------
    double it_s = 0.5, it_x0 = kDefaultX0;
    std::int64_t it_n = 1000;
    std::string it_out;
    auto* it = add_sub("iterate", "Write an orbit of the map as CSV");
    it->add_option("--s", it_s, "intermittency parameter in (0,1]")->required();
    it->add_option("--x0", it_x0, "initial point in (0,1)")->required();
    it->add_option("--n", it_n, "orbit length")->required();
    it->add_option("--out", it_out, "output CSV path")->required();

    // ---- measure ----------------------------------------------------------
    double me_s = 0.5, me_x0 = kDefaultX0;
    std::int64_t me_n = 1000000, me_burnin = 0;
    std::vector<double> me_interval;
    auto* me = add_sub("measure", "Print the orbit mass of an interval");
    me->add_option("--s", me_s)->required();
    me->add_option("--x0", me_x0)->required();
    me->add_option("--n", me_n)->required();
    me->add_option("--interval", me_interval, "interval lo,hi")
        ->required()
        ->delimiter(',')
        ->expected(2);
    me->add_option("--burnin", me_burnin, "steps discarded before recording");

    // ---- cdf --------------------------------------------------------------
    double cd_s = 0.5, cd_x0 = kDefaultX0, cd_eval = -1.0, cd_quant = -1.0;
    std::int64_t cd_n = 1000000, cd_burnin = 0;
    auto* cd = add_sub("cdf", "Evaluate the interpolated CDF or its inverse");
    cd->add_option("--s", cd_s)->required();
    cd->add_option("--x0", cd_x0)->required();
    cd->add_option("--n", cd_n)->required();
    auto* cd_e = cd->add_option("--eval", cd_eval, "point at which to evaluate F_n");
    auto* cd_q = cd->add_option("--quantile", cd_quant, "probability at which to invert F_n");
    cd->add_option("--burnin", cd_burnin);
    cd_e->excludes(cd_q);

    // ---- nodes ------------------------------------------------------------
    double no_s = 0.5;
    int no_h = 1;
    std::size_t no_m = 10000;
    std::string no_out;
    auto* no = add_sub("nodes", "Write the node endpoints of the iterated map");
    no->add_option("--s", no_s)->required();
    no->add_option("--h", no_h)->required();
    no->add_option("--m", no_m)->required();
    no->add_option("--out", no_out, "output CSV path (stdout when omitted)");

    // ---- copula -----------------------------------------------------------
    double co_s = 0.5, co_x0 = kDefaultX0;
    int co_h = 1, co_grid = 0;
    std::int64_t co_n = 1000000;
    std::size_t co_m = 10000;
    std::vector<double> co_eval;
    std::string co_out;
    bool co_dec = false;
    auto* co = add_sub("copula", "Evaluate the lag-h copula approximation");
    co->add_option("--s", co_s)->required();
    co->add_option("--h", co_h)->required();
    co->add_option("--n", co_n, "orbit length");
    co->add_option("--m", co_m, "node grid size");
    co->add_option("--x0", co_x0, "orbit initial point");
    auto* co_e = co->add_option("--eval", co_eval, "point u,v")->delimiter(',')->expected(2);
    auto* co_g = co->add_option("--grid", co_grid, "write a GxG evaluation grid");
    co->add_option("--out", co_out, "grid CSV path");
    co->add_flag("--decreasing", co_dec, "decreasing-direction copula");
    co_e->excludes(co_g);

    // ---- support ----------------------------------------------------------
    double su_s = 0.5, su_x0 = kDefaultX0;
    int su_h = 1;
    std::int64_t su_n = 1000000;
    std::size_t su_m = 10000;
    std::string su_out;
    bool su_dec = false;
    auto* su = add_sub("support", "Write the support polyline segments");
    su->add_option("--s", su_s)->required();
    su->add_option("--h", su_h)->required();
    su->add_option("--out", su_out)->required();
    su->add_option("--n", su_n);
    su->add_option("--m", su_m);
    su->add_option("--x0", su_x0);
    su->add_flag("--decreasing", su_dec);

    // ---- sample -----------------------------------------------------------
    double sa_s = 0.5, sa_x0 = kDefaultX0;
    int sa_h = 1;
    std::int64_t sa_count = 1000, sa_n = 1000000;
    std::size_t sa_m = 10000;
    std::uint64_t sa_seed = 1;
    std::string sa_out;
    bool sa_dec = false;
    auto* sa = add_sub("sample", "Draw pairs from the copula support");
    sa->add_option("--s", sa_s)->required();
    sa->add_option("--h", sa_h)->required();
    sa->add_option("--count", sa_count)->required();
    sa->add_option("--seed", sa_seed)->required();
    sa->add_option("--out", sa_out)->required();
    sa->add_option("--n", sa_n);
    sa->add_option("--m", sa_m);
    sa->add_option("--x0", sa_x0);
    sa->add_flag("--decreasing", sa_dec);

    // ---- estimate ---------------------------------------------------------
    std::string es_input, es_method = "minmax";
    double es_eps = 0.01;
    auto* es = add_sub("estimate", "Estimate the parameter from a path CSV");
    es->add_option("--input", es_input, "single-column CSV of path values")->required();
    es->add_option("--method", es_method, "minmax | ls | refined")
        ->check(CLI::IsMember({"minmax", "ls", "refined"}));
    es->add_option("--eps", es_eps, "accuracy of the refined procedure");

    // ---- experiment -------------------------------------------------------
    std::string ex_which;
    ExperimentConfig ex_cfg;
    std::int64_t ex_n = 0;
    int ex_reps = 0, ex_paths = 0, ex_threads = 0;
    auto* ex = add_sub("experiment", "Run a reproduction experiment");
    ex->add_option("which", ex_which, "table51 | table52 | table61 | figures")
        ->required()
        ->check(CLI::IsMember({"table51", "table52", "table61", "figures"}));
    ex->add_option("--seed", ex_cfg.seed, "top-level seed");
    ex->add_option("--out", ex_cfg.out_dir, "output directory")->required();
    ex->add_option("--n", ex_n, "override orbit length");
    ex->add_option("--replications", ex_reps, "override replication count");
    ex->add_option("--paths", ex_paths, "override estimator path length N");
    ex->add_option("--threads", ex_threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*it) {
            const Orbit o = orbit(MapModel::from_s(it_s), it_x0, static_cast<std::size_t>(it_n));
            std::ofstream out = open_out(it_out);
            out << "x\n";
            for (double x : o.points) out << fmt17(x) << "\n";
        } else if (*me) {
            const EmpiricalMeasure mu =
                build_measure(MapModel::from_s(me_s), me_x0, me_n, me_burnin);
            std::cout << fmt17(mu.interval_mass(me_interval[0], me_interval[1])) << "\n";
        } else if (*cd) {
            if (!*cd_e && !*cd_q) {
                throw std::runtime_error("cdf: need --eval or --quantile");
            }
            const EmpiricalMeasure mu =
                build_measure(MapModel::from_s(cd_s), cd_x0, cd_n, cd_burnin);
            std::cout << fmt17(*cd_e ? mu.cdf(cd_eval) : mu.quantile(cd_quant)) << "\n";
        } else if (*no) {
            const NodeTable table = node_endpoints(MapModel::from_s(no_s), no_h, no_m);
            std::ostringstream body;
            body << "k,a_hk\n";
            for (std::size_t k = 0; k < table.endpoints.size(); ++k) {
                body << k << ',' << fmt17(table.endpoints[k]) << "\n";
            }
            if (no_out.empty()) {
                std::cout << body.str();
            } else {
                open_out(no_out) << body.str();
            }
        } else if (*co) {
            const CopulaModel cm = assemble_from_flags(co_s, co_h, co_n, co_m, co_x0, co_dec);
            const auto eval = [&](double u, double v) {
                return co_dec ? clamp_unit(copula_eval_decreasing(cm, u, v))
                              : copula_eval(cm, u, v);
            };
            if (*co_e) {
                std::cout << fmt17(eval(co_eval[0], co_eval[1])) << "\n";
            } else if (*co_g) {
                if (co_out.empty()) {
                    throw std::runtime_error("copula: --grid needs --out");
                }
                std::ofstream out = open_out(co_out);
                out << "u,v,c\n";
                for (int i = 0; i <= co_grid; ++i) {
                    for (int j = 0; j <= co_grid; ++j) {
                        const double u = static_cast<double>(i) / co_grid;
                        const double v = static_cast<double>(j) / co_grid;
                        out << fmt17(u) << ',' << fmt17(v) << ',' << fmt17(eval(u, v)) << "\n";
                    }
                }
            } else {
                throw std::runtime_error("copula: need --eval or --grid");
            }
        } else if (*su) {
            const CopulaModel cm = assemble_from_flags(su_s, su_h, su_n, su_m, su_x0, su_dec);
            const SupportPolyline sp = support_polyline(cm);
            std::ofstream out = open_out(su_out);
            out << "k,x0,y0,x1,y1\n";
            const auto segs = sp.segments();
            for (std::size_t k = 0; k < segs.size(); ++k) {
                out << k << ',' << fmt17(segs[k].x0) << ',' << fmt17(segs[k].y0) << ','
                    << fmt17(segs[k].x1) << ',' << fmt17(segs[k].y1) << "\n";
            }
        } else if (*sa) {
            const CopulaModel cm = assemble_from_flags(sa_s, sa_h, sa_n, sa_m, sa_x0, sa_dec);
            const SampleBatch batch =
                sample_pairs(cm, static_cast<std::size_t>(sa_count), sa_seed);
            std::ofstream out = open_out(sa_out);
            out << "u,v\n";
            for (const auto& [u, v] : batch.pairs) {
                out << fmt17(u) << ',' << fmt17(v) << "\n";
            }
        } else if (*es) {
            const std::vector<double> path = read_path_csv(es_input);
            EstimateReport rep;
            if (es_method == "minmax") {
                rep = estimate_minmax(path);
            } else if (es_method == "ls") {
                rep = estimate_ls(path);
            } else {
                RefineOptions opts;
                opts.eps = es_eps;
                rep = estimate_refined(path, opts);
                if (!rep.converged) {
                    std::cerr << "warning: refinement did not converge within the iteration cap\n";
                }
            }
            if (!rep.a_in_range) {
                std::cerr << "warning: a_hat outside (1/2, (sqrt(5)-1)/2)\n";
            }
            std::cout << es_method << ',' << fmt17(rep.a_hat) << ',' << fmt17(rep.s_hat) << ','
                      << (rep.branch_used == BranchUsed::second ? "second" : "first-fallback")
                      << ',' << rep.branch_count << "\n";
        } else if (*ex) {
            if (ex_n > 0) {
                ex_cfg.n_grid = {ex_n};
                ex_cfg.invariance_n = ex_n;
                ex_cfg.figure_n = ex_n;
            }
            if (ex_reps > 0) {
                ex_cfg.replications = ex_reps;
                ex_cfg.initial_points = ex_reps;
            }
            if (ex_paths > 0) ex_cfg.path_length = ex_paths;
            ex_cfg.threads = ex_threads;
            ExperimentResult result;
            if (ex_which == "table51") {
                result = run_table51(ex_cfg);
            } else if (ex_which == "table52") {
                result = run_table52(ex_cfg);
            } else if (ex_which == "table61") {
                result = run_table61(ex_cfg);
            } else {
                result = emit_figure_data(ex_cfg);
            }
            for (const auto& note : result.notes) std::cerr << note << "\n";
            if (!result.ok()) {
                std::cerr << result.failures
                          << " replication(s) failed; see failures.csv in the output directory\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
