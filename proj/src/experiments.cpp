#include "mpcop/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <thread>

#include "mpcop/copula.hpp"
#include "mpcop/estimator.hpp"
#include "mpcop/map.hpp"
#include "mpcop/measure.hpp"
#include "mpcop/nodes.hpp"
#include "mpcop/sampler.hpp"
#include "mpcop/stats.hpp"

namespace mpcop {

namespace {

struct IntervalSet {
    double lo, hi;
};

// The measured sets: both candidates for the ambiguous first row plus the
// stable middle set.
const IntervalSet kTable51Sets[] = {{0.1, 0.2}, {0.2, 0.3}, {0.4, 0.6}};
const IntervalSet kTable52Sets[] = {{0.05, 0.2}, {0.3, 0.8}, {0.7, 0.95}};

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    int tc = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (tc < 1) tc = 1;
    if (static_cast<std::size_t>(tc) > count) tc = static_cast<int>(count);
    if (tc <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(tc));
    for (int t = 0; t < tc; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::ofstream open_csv(const ExperimentConfig& cfg, const std::string& name,
                       const std::string& header) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir / name);
    if (!out) {
        throw std::runtime_error("cannot open " + (cfg.out_dir / name).string());
    }
    out << header << "\n";
    return out;
}

void write_failure_manifest(const ExperimentConfig& cfg,
                            const std::vector<std::string>& rows) {
    if (rows.empty()) return;
    std::ofstream out = open_csv(cfg, "failures.csv", "context,error");
    for (const auto& r : rows) out << r << "\n";
}

std::vector<double> draw_initial_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.001, 0.999);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& x : out) x = unif(rng);
    return out;
}

}  // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> default_s_grid() {
    std::vector<double> grid;
    for (int i = 2; i <= 19; ++i) grid.push_back(i * 0.05);
    return grid;
}

std::vector<double> canonical_initial_points() {
    const double pi = 3.14159265358979323846;
    const double r2 = std::sqrt(2.0), r7 = std::sqrt(7.0), r11 = std::sqrt(11.0);
    std::vector<double> pts{pi, pi / (r2 + 1.0), pi * r2, pi + r2, r7, pi + r7, r11 + r7};
    for (double& x : pts) x = std::fmod(x, 1.0);
    return pts;
}

ExperimentResult run_table51(const ExperimentConfig& cfg) {
    const MapModel model = MapModel::from_s(cfg.s);
    const std::vector<double> x0s = draw_initial_points(cfg.seed, cfg.initial_points);
    const std::size_t sets = std::size(kTable51Sets);
    const std::size_t rows = x0s.size() * cfg.n_grid.size() * sets;
    std::vector<double> mass(rows, -1.0);
    std::vector<std::string> errors(x0s.size());

    parallel_for(x0s.size(), cfg.threads, [&](std::size_t p) {
        try {
            for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
                const EmpiricalMeasure mu = build_measure(model, x0s[p], cfg.n_grid[ni]);
                for (std::size_t si = 0; si < sets; ++si) {
                    mass[(p * cfg.n_grid.size() + ni) * sets + si] =
                        mu.interval_mass(kTable51Sets[si].lo, kTable51Sets[si].hi);
                }
            }
        } catch (const std::exception& e) {
            errors[p] = e.what();
        }
    });

    ExperimentResult result;
    std::vector<std::string> manifest;
    std::ofstream raw = open_csv(cfg, "table51_raw.csv", "set_lo,set_hi,n,rep,x0,mass");
    for (std::size_t si = 0; si < sets; ++si) {
        for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
            for (std::size_t p = 0; p < x0s.size(); ++p) {
                const double v = mass[(p * cfg.n_grid.size() + ni) * sets + si];
                if (v < 0.0) continue;
                raw << fmt17(kTable51Sets[si].lo) << ',' << fmt17(kTable51Sets[si].hi) << ','
                    << cfg.n_grid[ni] << ',' << p << ',' << fmt17(x0s[p]) << ',' << fmt17(v)
                    << "\n";
            }
        }
    }
    std::ofstream sum = open_csv(cfg, "table51.csv", "set_lo,set_hi,n,min,max,range,mean");
    for (std::size_t si = 0; si < sets; ++si) {
        for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
            std::vector<double> vals;
            for (std::size_t p = 0; p < x0s.size(); ++p) {
                const double v = mass[(p * cfg.n_grid.size() + ni) * sets + si];
                if (v >= 0.0) vals.push_back(v);
            }
            const SummaryStats st = summarize(vals);
            sum << fmt17(kTable51Sets[si].lo) << ',' << fmt17(kTable51Sets[si].hi) << ','
                << cfg.n_grid[ni] << ',' << fmt17(st.min) << ',' << fmt17(st.max) << ','
                << fmt17(st.range) << ',' << fmt17(st.mean) << "\n";
        }
    }
    for (std::size_t p = 0; p < x0s.size(); ++p) {
        if (!errors[p].empty()) {
            result.failures += 1;
            manifest.push_back("table51 rep " + std::to_string(p) + "," + errors[p]);
        }
    }
    write_failure_manifest(cfg, manifest);
    return result;
}

ExperimentResult run_table52(const ExperimentConfig& cfg) {
    const MapModel model = MapModel::from_s(cfg.s);
    const std::vector<double> x0s = canonical_initial_points();
    const NodeTable lag1 = node_endpoints(model, 1, 100000);
    const std::size_t sets = std::size(kTable52Sets);

    std::vector<std::shared_ptr<const EmpiricalMeasure>> mus(x0s.size());
    std::vector<std::string> errors(x0s.size());
    parallel_for(x0s.size(), cfg.threads, [&](std::size_t i) {
        try {
            mus[i] = std::make_shared<const EmpiricalMeasure>(
                build_measure(model, x0s[i], cfg.invariance_n));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    ExperimentResult result;
    std::vector<std::string> manifest;
    for (std::size_t i = 0; i < x0s.size(); ++i) {
        if (!errors[i].empty()) {
            result.failures += 1;
            manifest.push_back("table52 point " + std::to_string(i + 1) + "," + errors[i]);
        }
    }

    std::ofstream raw =
        open_csv(cfg, "table52_raw.csv", "set_lo,set_hi,i,x0,mass,preimage_mass");
    std::vector<std::vector<double>> direct(sets), pulled(sets);
    for (std::size_t si = 0; si < sets; ++si) {
        direct[si].assign(x0s.size(), -1.0);
        pulled[si].assign(x0s.size(), -1.0);
        for (std::size_t i = 0; i < x0s.size(); ++i) {
            if (!mus[i]) continue;
            direct[si][i] = mus[i]->interval_mass(kTable52Sets[si].lo, kTable52Sets[si].hi);
            pulled[si][i] = preimage_mass(*mus[i], lag1, kTable52Sets[si].lo, kTable52Sets[si].hi);
            raw << fmt17(kTable52Sets[si].lo) << ',' << fmt17(kTable52Sets[si].hi) << ','
                << (i + 1) << ',' << fmt17(x0s[i]) << ',' << fmt17(direct[si][i]) << ','
                << fmt17(pulled[si][i]) << "\n";
        }
    }
    std::ofstream out = open_csv(cfg, "table52.csv", "set_lo,set_hi,i,j,diff");
    for (std::size_t si = 0; si < sets; ++si) {
        for (std::size_t i = 0; i < x0s.size(); ++i) {
            for (std::size_t j = 0; j < x0s.size(); ++j) {
                if (direct[si][i] < 0.0 || pulled[si][j] < 0.0) continue;
                out << fmt17(kTable52Sets[si].lo) << ',' << fmt17(kTable52Sets[si].hi) << ','
                    << (i + 1) << ',' << (j + 1) << ','
                    << fmt17(std::abs(direct[si][i] - pulled[si][j])) << "\n";
            }
        }
    }
    write_failure_manifest(cfg, manifest);
    return result;
}

ExperimentResult run_table61(const ExperimentConfig& cfg) {
    const std::vector<double> s_grid = cfg.s_grid.empty() ? default_s_grid() : cfg.s_grid;
    const std::vector<double> x0s = draw_initial_points(cfg.seed, cfg.replications);

    struct Rep {
        double mm_s = 0.0, mm_a = 0.0, ls_s = 0.0, ls_a = 0.0;
        int mm_branch = 0, ls_branch = 0;
        double mm_res = 0.0, ls_res = 0.0;
        char mm_used = 's', ls_used = 's';
        std::string error;  // non-empty on failure
    };
    std::vector<std::vector<Rep>> reps(s_grid.size(),
                                       std::vector<Rep>(x0s.size()));

    parallel_for(s_grid.size(), cfg.threads, [&](std::size_t si) {
        const MapModel model = MapModel::from_s(s_grid[si]);
        for (std::size_t r = 0; r < x0s.size(); ++r) {
            Rep& rep = reps[si][r];
            try {
                const Orbit o = orbit(model, x0s[r], static_cast<std::size_t>(cfg.path_length));
                const EstimateReport mm = estimate_minmax(o.points);
                const EstimateReport ls = estimate_ls(o.points);
                rep.mm_s = mm.s_hat;
                rep.mm_a = mm.a_hat;
                rep.mm_branch = mm.branch_count;
                rep.mm_res = mm.residual;
                rep.mm_used = mm.branch_used == BranchUsed::second ? 's' : 'f';
                rep.ls_s = ls.s_hat;
                rep.ls_a = ls.a_hat;
                rep.ls_branch = ls.branch_count;
                rep.ls_res = ls.residual;
                rep.ls_used = ls.branch_used == BranchUsed::second ? 's' : 'f';
            } catch (const std::exception& e) {
                rep.error = e.what();
            }
        }
    });

    ExperimentResult result;
    std::vector<std::string> manifest;
    std::ofstream raw = open_csv(
        cfg, "table61_raw.csv",
        "s,rep,x0,method,a_hat,s_hat,branch_used,branch_count,residual,error");
    const auto used_name = [](char c) { return c == 's' ? "second" : "first-fallback"; };
    for (std::size_t si = 0; si < s_grid.size(); ++si) {
        for (std::size_t r = 0; r < x0s.size(); ++r) {
            const Rep& rep = reps[si][r];
            if (!rep.error.empty()) {
                raw << fmt17(s_grid[si]) << ',' << r << ',' << fmt17(x0s[r])
                    << ",,,,,,," << rep.error << "\n";
                continue;
            }
            raw << fmt17(s_grid[si]) << ',' << r << ',' << fmt17(x0s[r]) << ",MM,"
                << fmt17(rep.mm_a) << ',' << fmt17(rep.mm_s) << ',' << used_name(rep.mm_used)
                << ',' << rep.mm_branch << ',' << fmt17(rep.mm_res) << ",\n";
            raw << fmt17(s_grid[si]) << ',' << r << ',' << fmt17(x0s[r]) << ",LS,"
                << fmt17(rep.ls_a) << ',' << fmt17(rep.ls_s) << ',' << used_name(rep.ls_used)
                << ',' << rep.ls_branch << ',' << fmt17(rep.ls_res) << ",\n";
        }
    }

    std::ofstream sum =
        open_csv(cfg, "table61.csv", "s,method,mean,min,max,range,sd,mse,failures");
    for (std::size_t si = 0; si < s_grid.size(); ++si) {
        std::vector<double> mm, ls;
        int failures = 0;
        for (std::size_t r = 0; r < x0s.size(); ++r) {
            const Rep& rep = reps[si][r];
            if (!rep.error.empty()) {
                ++failures;
                manifest.push_back("table61 s=" + fmt17(s_grid[si]) + " rep " +
                                   std::to_string(r) + "," + rep.error);
                continue;
            }
            mm.push_back(rep.mm_s);
            ls.push_back(rep.ls_s);
        }
        const SummaryStats stm = summarize(mm, s_grid[si], /*with_mse=*/true);
        const SummaryStats stl = summarize(ls, s_grid[si], /*with_mse=*/true);
        sum << fmt17(s_grid[si]) << ",MM," << fmt17(stm.mean) << ',' << fmt17(stm.min) << ','
            << fmt17(stm.max) << ',' << fmt17(stm.range) << ',' << fmt17(stm.sd) << ','
            << fmt17(stm.mse) << ',' << failures << "\n";
        sum << fmt17(s_grid[si]) << ",LS," << fmt17(stl.mean) << ',' << fmt17(stl.min) << ','
            << fmt17(stl.max) << ',' << fmt17(stl.range) << ',' << fmt17(stl.sd) << ','
            << fmt17(stl.mse) << ',' << failures << "\n";
        result.failures += failures;
    }
    write_failure_manifest(cfg, manifest);
    return result;
}

namespace {

std::string fig_name(const char* kind, double s, int h) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "figure_%s_s%.2f_h%d.csv", kind, s, h);
    return buf;
}

}  // namespace

ExperimentResult emit_figure_data(const ExperimentConfig& cfg) {
    ExperimentResult result;
    const double x0 = std::fmod(3.14159265358979323846, 1.0);
    int batch = 0;

    const auto run_s = [&](double s, const std::vector<int>& lags, bool grids) {
        const MapModel model = MapModel::from_s(s);
        auto mu =
            std::make_shared<const EmpiricalMeasure>(build_measure(model, x0, cfg.figure_n));
        for (int h : lags) {
            const CopulaModel cm = CopulaModel::assemble(model, mu, {h}, cfg.figure_m);
            if (grids) {
                std::ofstream grid = open_csv(cfg, fig_name("copula", s, h), "u,v,c");
                for (int i = 0; i <= cfg.figure_grid; ++i) {
                    for (int j = 0; j <= cfg.figure_grid; ++j) {
                        const double u = static_cast<double>(i) / cfg.figure_grid;
                        const double v = static_cast<double>(j) / cfg.figure_grid;
                        grid << fmt17(u) << ',' << fmt17(v) << ','
                             << fmt17(copula_eval(cm, u, v)) << "\n";
                    }
                }
            }
            const SampleBatch samples = sample_pairs(
                cm, static_cast<std::size_t>(cfg.figure_samples), cfg.seed + 101 * batch++);
            std::ofstream sc = open_csv(cfg, fig_name("samples", s, h), "u,v");
            for (const auto& [u, v] : samples.pairs) {
                sc << fmt17(u) << ',' << fmt17(v) << "\n";
            }
        }
    };
    run_s(0.1, {1, 2}, true);
    run_s(0.4, {1, 2}, true);
    run_s(0.2, {4, 5, 7}, false);
    return result;
}

}  // namespace mpcop
