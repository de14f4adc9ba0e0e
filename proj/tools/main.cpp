#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "helm/errors.hpp"
#include "helm/feasibility.hpp"
#include "helm/sim.hpp"
#include "svg_plot.hpp"

namespace {

namespace fs = std::filesystem;
using helm::ScenarioConfig;

enum ExitCode { kOk = 0, kUsage = 1, kRefused = 2, kFault = 3 };

struct Column {
  static constexpr int t = 0, x = 1, y = 2, v_r = 5, r = 6, theta = 7, x_bp = 8, y_bp = 9,
                       C_r = 14, Vx_hat = 19, Vy_hat = 20, u_r = 4;
};

std::vector<double> column(const helm::TimeSeries& ts, int idx) {
  std::vector<double> out;
  out.reserve(ts.rows.size());
  for (const auto& row : ts.rows) out.push_back(row[static_cast<size_t>(idx)]);
  return out;
}

void emit_plots(const ScenarioConfig& cfg, const helm::RunResult& res, const fs::path& dir) {
  using helm::plot::Series;
  const auto t = column(res.series, Column::t);

  // trajectory: reference path plus vessel track
  const helm::PathGeometry path = cfg.path.build();
  double th_lo = res.series.rows.front()[Column::theta];
  double th_hi = res.series.rows.back()[Column::theta];
  if (cfg.path.kind == helm::PathGeometry::Kind::circle) {
    th_lo = 0.0;
    th_hi = 2.0 * std::numbers::pi * cfg.path.radius;
  }
  Series ref{"reference path", "#c0392b", {}, {}};
  const int n_ref = 720;
  for (int i = 0; i <= n_ref; ++i) {
    const double th = th_lo + (th_hi - th_lo) * i / n_ref;
    const auto p = path.position(th);
    ref.x.push_back(p[0]);
    ref.y.push_back(p[1]);
  }
  Series track{"vessel track", "#2462a8", column(res.series, Column::x), column(res.series, Column::y)};
  helm::plot::write_file((dir / "trajectory.svg").string(),
                         helm::plot::render_chart("vessel trajectory", "x [m]", "y [m]", {ref, track}, true));

  helm::plot::write_file(
      (dir / "errors.svg").string(),
      helm::plot::render_chart("path-following errors", "t [s]", "error [m]",
                   {Series{"x_bp", "#2462a8", t, column(res.series, Column::x_bp)},
                    Series{"y_bp", "#c0392b", t, column(res.series, Column::y_bp)}}));

  const std::vector<double> vx_true(t.size(), cfg.environment.Vx);
  const std::vector<double> vy_true(t.size(), cfg.environment.Vy);
  helm::plot::write_file(
      (dir / "estimates.svg").string(),
      helm::plot::render_chart("current estimates", "t [s]", "velocity [m/s]",
                   {Series{"Vx_hat", "#2462a8", t, column(res.series, Column::Vx_hat)},
                    Series{"Vy_hat", "#c0392b", t, column(res.series, Column::Vy_hat)},
                    Series{"Vx", "#9bb8d8", t, vx_true},
                    Series{"Vy", "#e4a6a0", t, vy_true}}));

  helm::plot::write_file(
      (dir / "velocities.svg").string(),
      helm::plot::render_chart("velocities and yaw rate", "t [s]", "u_r, v_r [m/s]; r [rad/s]",
                   {Series{"u_r", "#2462a8", t, column(res.series, Column::u_r)},
                    Series{"v_r", "#c0392b", t, column(res.series, Column::v_r)},
                    Series{"r", "#1f8a4c", t, column(res.series, Column::r)}}));

  helm::plot::write_file((dir / "cr.svg").string(),
                         helm::plot::render_chart("yaw-rate coefficient", "t [s]", "C_r",
                                      {Series{"C_r", "#2462a8", t, column(res.series, Column::C_r)}}));
}

int cmd_check(const std::string& config_path, const std::optional<std::string>& out_dir) {
  const ScenarioConfig cfg = helm::load_scenario(config_path);
  const helm::FeasibilityReport rep = helm::check_scenario(cfg);
  std::cout << helm::report_to_text(rep);
  if (out_dir) {
    fs::create_directories(*out_dir);
    std::ofstream out(fs::path(*out_dir) / "feasibility.json");
    out << helm::report_to_json(rep) << "\n";
  }
  return rep.pass() ? kOk : kRefused;
}

int cmd_run(ScenarioConfig cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const helm::RunResult res = helm::run_scenario(cfg);

  {
    std::ofstream csv(fs::path(out_dir) / "timeseries.csv", std::ios::binary);
    helm::write_csv(res.series, csv);
  }
  {
    std::ofstream mon(fs::path(out_dir) / "monitor.json");
    mon << helm::monitor_to_json(res.monitor) << "\n";
  }
  {
    std::ofstream feas(fs::path(out_dir) / "feasibility.json");
    feas << helm::report_to_json(res.feasibility) << "\n";
  }
  if (!res.series.rows.empty()) emit_plots(cfg, res, out_dir);

  if (!res.monitor.clean()) {
    for (const auto& f : res.monitor.faults)
      std::cerr << "fault at t=" << f.t << ": " << f.what << "\n";
    std::cerr << "run completed with faults; see monitor.json\n";
    return kFault;
  }
  std::cout << "clean run: " << res.series.rows.size() << " logged samples, final |y_bp| = "
            << std::abs(res.series.rows.back()[Column::y_bp]) << " m\n";
  return kOk;
}

struct CellResult {
  bool ok = false;
  std::string error;
  bool clean = false;
  double settling_time = -1.0;
  double v_r_max = 0.0;
  double Cr_min = 0.0;
  std::vector<std::pair<std::string, double>> assignment;
  std::string monitor_json;
};

double settling_time_ybp(const helm::TimeSeries& ts, double threshold) {
  if (ts.rows.empty()) return -1.0;
  if (std::abs(ts.rows.back()[Column::y_bp]) >= threshold) return -1.0;
  double settle = 0.0;
  for (auto it = ts.rows.rbegin(); it != ts.rows.rend(); ++it) {
    if (std::abs((*it)[Column::y_bp]) >= threshold) {
      settle = (*it)[Column::t];
      break;
    }
  }
  return settle;
}

int cmd_sweep(const ScenarioConfig& base, const std::string& out_dir) {
  fs::create_directories(out_dir);

  // Cell grid: axis1 outer, axis2 inner; no axes means a single cell.
  std::vector<std::vector<std::pair<std::string, double>>> cells;
  if (base.sweep.empty()) {
    cells.push_back({});
  } else if (base.sweep.size() == 1) {
    for (double v : base.sweep[0].values) cells.push_back({{base.sweep[0].key, v}});
  } else {
    for (double v1 : base.sweep[0].values)
      for (double v2 : base.sweep[1].values)
        cells.push_back({{base.sweep[0].key, v1}, {base.sweep[1].key, v2}});
  }

  std::vector<CellResult> results(cells.size());
  std::atomic<size_t> next{0};

  unsigned n_threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("HELM_SIM_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested >= 1) n_threads = static_cast<unsigned>(requested);
  }
  n_threads = std::max(1u, std::min<unsigned>(n_threads, cells.size()));

  const auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      CellResult& out = results[i];
      out.assignment = cells[i];
      try {
        ScenarioConfig cfg = base;
        cfg.sweep.clear();
        for (const auto& [key, value] : cells[i]) cfg = helm::apply_sweep_value(cfg, key, value);
        const helm::RunResult res = helm::run_scenario(cfg);
        out.ok = true;
        out.clean = res.monitor.clean();
        out.settling_time = settling_time_ybp(res.series, 1.0);
        out.v_r_max = res.monitor.v_r_max;
        out.Cr_min = res.monitor.Cr_min;
        out.monitor_json = helm::monitor_to_json(res.monitor);
      } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // Summary rows in cell order, independent of execution interleaving.
  std::ostringstream summary;
  summary << "cell";
  for (const auto& axis : base.sweep) summary << "," << axis.key;
  summary << ",status,clean,settling_time_ybp_1m,v_r_max,Cr_min\n";
  char buf[40];
  for (size_t i = 0; i < results.size(); ++i) {
    const CellResult& c = results[i];
    summary << i;
    for (const auto& [key, value] : c.assignment) {
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      summary << "," << buf;
    }
    summary << "," << (c.ok ? "ok" : "refused") << "," << (c.clean ? 1 : 0);
    std::snprintf(buf, sizeof(buf), "%.17g", c.settling_time);
    summary << "," << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", c.v_r_max);
    summary << "," << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", c.Cr_min);
    summary << "," << buf << "\n";
    if (!c.monitor_json.empty()) {
      std::ofstream mon(fs::path(out_dir) / ("monitor_" + std::to_string(i) + ".json"));
      mon << c.monitor_json << "\n";
    }
  }
  std::ofstream out(fs::path(out_dir) / "summary.csv", std::ios::binary);
  out << summary.str();
  std::cout << summary.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helm-sim: curved-path following for underactuated vessels under ocean current"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<double> dt_override;
  std::optional<double> t_end_override;
  bool force = false;

  auto add_common = [&](CLI::App* sub, bool with_overrides) {
    sub->add_option("config", config_path, "scenario configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    if (with_overrides) {
      sub->add_option("--dt", dt_override, "integration step override [s]");
      sub->add_option("--t-end", t_end_override, "simulation horizon override [s]");
      sub->add_flag("--force", force, "run even when feasibility or admission checks fail");
    }
  };

  CLI::App* check = app.add_subcommand("check", "evaluate assumptions and tube tuning");
  add_common(check, false);
  CLI::App* run = app.add_subcommand("run", "simulate a scenario and write artifacts");
  add_common(run, true);
  CLI::App* sweep = app.add_subcommand("sweep", "run the scenario's parameter grid");
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed())
      return cmd_check(config_path, check->count("--out") > 0
                                        ? std::optional<std::string>(out_dir)
                                        : std::nullopt);

    ScenarioConfig cfg = helm::load_scenario(config_path);
    if (dt_override) cfg.dt = *dt_override;
    if (t_end_override) cfg.t_end = *t_end_override;
    if (force) cfg.force = true;

    if (run->parsed()) return cmd_run(cfg, out_dir);
    return cmd_sweep(cfg, out_dir);
  } catch (const helm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const helm::FeasibilityError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const helm::SimFault& e) {
    std::cerr << "fault: " << e.what() << "\n";
    return kFault;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
