// Command-line front end: every run reads a JSON config, writes CSV (and
// optionally SVG) artifacts into --out, and finishes with a manifest that
// echoes the resolved config and checksums every file it wrote.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure,
// 3 converge threshold miss.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "whipchain/chain.hpp"
#include "whipchain/continuum.hpp"
#include "whipchain/convergence.hpp"
#include "whipchain/curvature.hpp"
#include "whipchain/dynamics.hpp"
#include "whipchain/io.hpp"
#include "whipchain/kink.hpp"
#include "whipchain/profile.hpp"
#include "whipchain/svg.hpp"
#include "whipchain/tension.hpp"

namespace wc = whipchain;
using wc::json;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = "out";
  long long seed = 0;
  std::string format = "csv";

  bool want_svg() const { return format == "csv+svg"; }
};

void add_common(CLI::App* sub, Common& c, bool needs_config = true) {
  auto* opt = sub->add_option("--config", c.config_path, "JSON run configuration");
  if (needs_config) opt->required();
  sub->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--format", c.format, "csv or csv+svg")
      ->check(CLI::IsMember({"csv", "csv+svg"}))
      ->capture_default_str();
}

wc::RunManifest open_manifest(const std::string& name, const Common& c, json config) {
  json echo{{"subcommand", name},
            {"seed", c.seed},
            {"format", c.format},
            {"config", std::move(config)}};
  return wc::RunManifest(c.out_dir, std::move(echo));
}

wc::ChainState chain_from_config(const json& cfg) {
  if (cfg.contains("state")) return wc::chain_from_json(cfg.at("state"));
  wc::require(cfg.contains("profile") && cfg.contains("n"),
              "config needs \"state\" or \"profile\"+\"n\"");
  const wc::ThetaProfile p = wc::profile_from_json(cfg.at("profile"));
  wc::ChainState s = p.sample_chain(cfg.at("n").get<int>(), cfg.value("g", 0.0));
  if (cfg.contains("omega_profile")) {
    const wc::ThetaProfile w = wc::profile_from_json(cfg.at("omega_profile"));
    for (int i = 1; i <= s.n; ++i) s.omega[i - 1] = w(static_cast<double>(i) / s.n);
  }
  wc::validate(s);
  return s;
}

std::vector<double> kappa_grid(const std::function<double(double)>& kappa, int m) {
  std::vector<double> k(m + 1);
  for (int j = 0; j <= m; ++j) k[j] = kappa(static_cast<double>(j) / m);
  return k;
}

wc::ContinuumCurve curve_from_config(const json& cfg) {
  wc::ContinuumCurve c;
  c.m = cfg.value("m", 200);
  c.g = cfg.value("g", 0.0);
  wc::require(cfg.contains("theta"), "config needs a \"theta\" profile");
  const wc::ThetaProfile th = wc::profile_from_json(cfg.at("theta"));
  c.theta.resize(c.m + 1);
  c.theta_t.assign(c.m + 1, 0.0);
  for (int j = 0; j <= c.m; ++j) c.theta[j] = th(static_cast<double>(j) / c.m);
  if (cfg.contains("theta_t")) {
    const wc::ThetaProfile tt = wc::profile_from_json(cfg.at("theta_t"));
    for (int j = 0; j <= c.m; ++j) c.theta_t[j] = tt(static_cast<double>(j) / c.m);
  }
  wc::validate(c);
  return c;
}

std::vector<wc::KinkSpec> kinks_from_config(const json& cfg) {
  std::vector<wc::KinkSpec> kinks;
  if (!cfg.contains("kinks")) return kinks;
  for (const json& k : cfg.at("kinks")) {
    wc::KinkSpec spec;
    spec.s_o = k.at("s_o").get<double>();
    spec.alpha = k.at("alpha").get<double>();
    wc::validate(spec);
    kinks.push_back(spec);
  }
  return kinks;
}

int cmd_simulate(const Common& c) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("simulate", c, cfg);
  const wc::ChainState initial = chain_from_config(cfg);
  const double dt = cfg.value("dt", 1e-3);
  const double T = cfg.value("T", 1.0);
  const int every = cfg.value("sample_every", 10);

  const wc::Trajectory traj = wc::simulate(initial, dt, T, every);
  wc::CsvTable table;
  table.headers = {"time", "kinetic", "potential", "total", "angular_momentum",
                   "min_tension"};
  table.columns.resize(6);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const wc::TrajectorySample& d = traj.diagnostics[i];
    table.columns[0].push_back(traj.times[i]);
    table.columns[1].push_back(d.kinetic);
    table.columns[2].push_back(d.potential);
    table.columns[3].push_back(d.kinetic + d.potential);
    table.columns[4].push_back(d.angular_momentum);
    table.columns[5].push_back(d.min_tension);
  }
  manifest.write_file("diagnostics.csv", wc::format_csv(table));
  manifest.write_file("final_state.json",
                      wc::chain_to_json(traj.states.back()).dump(2) + "\n");
  if (c.want_svg()) {
    wc::ChartOptions opt;
    opt.title = "chain run diagnostics";
    opt.x_label = "time";
    opt.y_label = "value";
    std::vector<wc::Series> series(3);
    series[0].label = "total energy";
    series[1].label = "angular momentum";
    series[2].label = "min tension";
    for (size_t i = 0; i < traj.times.size(); ++i) {
      for (auto& s : series) s.x.push_back(traj.times[i]);
      series[0].y.push_back(table.columns[3][i]);
      series[1].y.push_back(table.columns[4][i]);
      series[2].y.push_back(table.columns[5][i]);
    }
    manifest.write_file("diagnostics.svg", wc::line_chart(series, opt));
  }
  manifest.finish();
  std::printf("simulate: %zu samples to t=%.6g written to %s\n", traj.times.size(), T,
              c.out_dir.c_str());
  return 0;
}

int cmd_tension(const Common& c, const std::string& state_path, bool probe) {
  json cfg;
  wc::ChainState state;
  if (!state_path.empty()) {
    cfg = json{{"state_file", state_path}};
    state = wc::chain_from_json(wc::load_json(state_path));
  } else {
    wc::require(!c.config_path.empty(), "tension needs --state or --config");
    cfg = wc::load_json(c.config_path);
    state = chain_from_config(cfg);
  }
  wc::RunManifest manifest = open_manifest("tension", c, cfg);

  const wc::TensionSystem sys = wc::assemble(state);
  const wc::TensionVector lam = wc::solve_tension(sys.op, sys.rhs);
  wc::CsvTable table;
  table.headers = {"i", "lambda", "sigma"};
  table.columns.resize(3);
  const double n2 = static_cast<double>(state.n) * state.n;
  for (int k = 1; k <= state.n; ++k) {
    table.columns[0].push_back(k);
    table.columns[1].push_back(lam.lambda[k - 1]);
    table.columns[2].push_back(lam.lambda[k - 1] / n2);
  }
  manifest.write_file("tension.csv", wc::format_csv(table));

  if (probe) {
    const wc::TensionSignReport report = wc::tension_sign_probe(state);
    json negs = json::array();
    for (const auto& e : report.negatives)
      negs.push_back({{"i", e.i}, {"j", e.j}, {"lambda", e.lambda}});
    manifest.write_file(
        "probe.json",
        json{{"negatives", negs}, {"rest_lambda", report.rest_lambda}}.dump(2) + "\n");
    std::printf("tension: probe found %zu negative unit-velocity sections\n",
                report.negatives.size());
  }
  if (c.want_svg()) {
    wc::ChartOptions opt;
    opt.title = "rod tensions";
    opt.x_label = "k";
    opt.y_label = "lambda";
    wc::Series s{"lambda", table.columns[0], table.columns[1]};
    manifest.write_file("tension.svg", wc::line_chart({s}, opt));
  }
  manifest.finish();
  std::printf("tension: %d rods written to %s\n", state.n, c.out_dir.c_str());
  return 0;
}

int cmd_curvature(const Common& c, int random_sections) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("curvature", c, cfg);
  const wc::ChainState state = chain_from_config(cfg);

  std::vector<std::pair<wc::TangentVector, wc::TangentVector>> sections;
  if (cfg.contains("sections")) {
    for (const json& pair : cfg.at("sections")) {
      wc::TangentVector u{pair.at(0).get<std::vector<double>>()};
      wc::TangentVector v{pair.at(1).get<std::vector<double>>()};
      sections.emplace_back(std::move(u), std::move(v));
    }
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(c.seed));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < random_sections; ++k) {
    wc::TangentVector u, v;
    u.eta.resize(state.n);
    v.eta.resize(state.n);
    for (int i = 0; i < state.n; ++i) {
      u.eta[i] = unit(rng);
      v.eta[i] = unit(rng);
    }
    sections.emplace_back(std::move(u), std::move(v));
  }
  wc::require(!sections.empty(), "no sections: give \"sections\" or --random");

  wc::CsvTable table;
  table.headers = {"section", "numerator", "gram", "curvature"};
  table.columns.resize(4);
  double min_curv = 0.0;
  bool any = false;
  for (size_t k = 0; k < sections.size(); ++k) {
    const auto& [u, v] = sections[k];
    const double num = wc::curvature_numerator(state, u, v);
    const double uu = wc::metric_inner(state, u, u);
    const double vv = wc::metric_inner(state, v, v);
    const double uv = wc::metric_inner(state, u, v);
    const double gram = uu * vv - uv * uv;
    const double K = wc::sectional_curvature(state, u, v);
    table.columns[0].push_back(static_cast<double>(k));
    table.columns[1].push_back(num);
    table.columns[2].push_back(gram);
    table.columns[3].push_back(K);
    if (!any || K < min_curv) min_curv = K;
    any = true;
  }
  manifest.write_file("sections.csv", wc::format_csv(table));
  manifest.finish();
  std::printf("curvature: %zu sections, min K = %.6g\n", sections.size(), min_curv);
  return 0;
}

int cmd_green(const Common& c) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("green", c, cfg);
  const int m = cfg.value("m", 200);
  wc::require(cfg.contains("kappa"), "config needs a \"kappa\" spec");
  const std::vector<double> kappa = kappa_grid(wc::kappa_from_json(cfg.at("kappa")), m);

  const wc::GreenTable table = wc::green_table(kappa);
  wc::CsvTable flat;
  flat.headers = {"s", "q", "G"};
  flat.columns.resize(3);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      flat.columns[0].push_back(static_cast<double>(i) / m);
      flat.columns[1].push_back(static_cast<double>(j) / m);
      flat.columns[2].push_back(table.G(i, j));
    }
  manifest.write_file("green.csv", wc::format_csv(flat));

  const double residual = wc::green_identity_check(kappa);
  manifest.write_file("summary.json",
                      json{{"m", m}, {"identity_residual", residual}}.dump(2) + "\n");
  if (c.want_svg()) {
    std::vector<wc::Series> series;
    for (double q : {0.25, 0.5, 0.75}) {
      wc::Series s;
      const int col = static_cast<int>(std::lround(q * m));
      char label[32];
      std::snprintf(label, sizeof label, "G(s, %.2f)", q);
      s.label = label;
      for (int i = 0; i <= m; ++i) {
        s.x.push_back(static_cast<double>(i) / m);
        s.y.push_back(table.G(i, col));
      }
      series.push_back(std::move(s));
    }
    wc::ChartOptions opt;
    opt.title = "Green kernel columns";
    opt.x_label = "s";
    opt.y_label = "G";
    manifest.write_file("green.svg", wc::line_chart(series, opt));
  }
  manifest.finish();
  std::printf("green: %dx%d table, identity residual %.3g\n", m + 1, m + 1, residual);
  return 0;
}

int cmd_evolve(const Common& c) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("evolve", c, cfg);
  const wc::ContinuumCurve initial = curve_from_config(cfg);
  const double dt = cfg.value("dt", 1e-4);
  const double T = cfg.value("T", 1.0);
  const int every = cfg.value("sample_every", 100);

  const std::vector<wc::ContinuumCurve> samples = wc::evolve(initial, dt, T, every);
  const long long steps = std::llround(T / dt);
  std::vector<double> times;
  times.push_back(0.0);
  for (long long k = 1; k <= steps; ++k)
    if (k % every == 0 || k == steps) times.push_back(k * dt);

  wc::CsvTable energy;
  energy.headers = {"time", "kinetic"};
  energy.columns.resize(2);
  for (size_t i = 0; i < samples.size(); ++i) {
    energy.columns[0].push_back(times[i]);
    energy.columns[1].push_back(wc::curve_kinetic_energy(samples[i]));
  }
  manifest.write_file("energy.csv", wc::format_csv(energy));

  const wc::ContinuumCurve& last = samples.back();
  const std::vector<double> sigma = wc::sigma_solve(last);
  wc::CsvTable fin;
  fin.headers = {"s", "theta", "theta_t", "sigma"};
  fin.columns.resize(4);
  for (int j = 0; j <= last.m; ++j) {
    fin.columns[0].push_back(static_cast<double>(j) / last.m);
    fin.columns[1].push_back(last.theta[j]);
    fin.columns[2].push_back(last.theta_t[j]);
    fin.columns[3].push_back(sigma[j]);
  }
  manifest.write_file("final.csv", wc::format_csv(fin));
  if (c.want_svg()) {
    wc::ChartOptions opt;
    opt.title = "whip angle at start and end";
    opt.x_label = "s";
    opt.y_label = "theta";
    wc::Series s0{"t=0", fin.columns[0], {}};
    wc::Series s1{"final", fin.columns[0], fin.columns[1]};
    for (int j = 0; j <= initial.m; ++j) s0.y.push_back(initial.theta[j]);
    manifest.write_file("angles.svg", wc::line_chart({s0, s1}, opt));
  }
  manifest.finish();
  std::printf("evolve: %zu samples to t=%.6g written to %s\n", samples.size(), T,
              c.out_dir.c_str());
  return 0;
}

int cmd_riccati(const Common& c) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("riccati", c, cfg);
  const int m = cfg.value("m", 1000);
  wc::require(cfg.contains("kappa"), "config needs a \"kappa\" spec");
  const std::function<double(double)> kappa = wc::kappa_from_json(cfg.at("kappa"));
  const std::vector<wc::KinkSpec> kinks = kinks_from_config(cfg);

  const std::vector<double> f = wc::riccati_solve(kappa, kinks, m);
  wc::CsvTable table;
  table.headers = {"s", "f"};
  table.columns.resize(2);
  for (int j = 0; j <= m; ++j) {
    table.columns[0].push_back(static_cast<double>(j) / m);
    table.columns[1].push_back(f[j]);
  }
  manifest.write_file("riccati.csv", wc::format_csv(table));
  if (c.want_svg()) {
    wc::Series s;
    s.label = "f";
    for (int j = 0; j <= m; ++j)
      if (std::isfinite(f[j])) {
        s.x.push_back(static_cast<double>(j) / m);
        s.y.push_back(f[j]);
      }
    wc::ChartOptions opt;
    opt.title = "pivot shadow f";
    opt.x_label = "s";
    opt.y_label = "f";
    manifest.write_file("riccati.svg", wc::line_chart({s}, opt));
  }
  manifest.finish();
  std::printf("riccati: %d nodes written to %s\n", m + 1, c.out_dir.c_str());
  return 0;
}

int cmd_kink_green(const Common& c) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("kink-green", c, cfg);
  const int m = cfg.value("m", 1000);
  wc::require(cfg.contains("kappa"), "config needs a \"kappa\" spec");
  const std::function<double(double)> kappa = wc::kappa_from_json(cfg.at("kappa"));
  const std::vector<wc::KinkSpec> kinks = kinks_from_config(cfg);
  wc::require(cfg.contains("points"), "config needs \"points\": [[x,y],...]");

  wc::CsvTable table;
  table.headers = {"x", "y", "G"};
  table.columns.resize(3);
  for (const json& pt : cfg.at("points")) {
    const double x = pt.at(0).get<double>();
    const double y = pt.at(1).get<double>();
    table.columns[0].push_back(x);
    table.columns[1].push_back(y);
    table.columns[2].push_back(wc::kink_green(x, y, kappa, kinks, m));
  }
  manifest.write_file("values.csv", wc::format_csv(table));
  manifest.finish();
  std::printf("kink-green: %zu points written to %s\n", table.columns[0].size(),
              c.out_dir.c_str());
  return 0;
}

int cmd_converge(const Common& c, double threshold) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("converge", c, cfg);
  const std::string study = cfg.value("study", "truncation");
  std::vector<int> n_list = cfg.value("n_list", std::vector<int>{100, 200, 400, 800});

  std::vector<wc::RefinementLevel> levels;
  if (study == "truncation") {
    const double A = cfg.value("theta_amplitude", 1.0);
    const wc::AnalyticProfile theta{
        [A](double s) { return A * std::sin(M_PI * s); },
        [A](double s) { return A * M_PI * std::cos(M_PI * s); },
        [A](double s) { return -A * M_PI * M_PI * std::sin(M_PI * s); }};
    const wc::AnalyticProfile sigma{
        [](double s) { return (1.0 - s) * (1.0 - s); },
        [](double s) { return -2.0 * (1.0 - s); },
        [](double) { return 2.0; }};
    for (int n : n_list) {
      const wc::TruncationResidual r = wc::truncation_residual(theta, sigma, n);
      levels.push_back({n, std::max(r.evolution, r.tension)});
    }
  } else if (study == "refinement") {
    wc::ContinuumData data;
    const wc::ThetaProfile th = wc::profile_from_json(cfg.at("theta"));
    data.theta = [th](double s) { return th(s); };
    if (cfg.contains("theta_t")) {
      const wc::ThetaProfile tt = wc::profile_from_json(cfg.at("theta_t"));
      data.theta_t = [tt](double s) { return tt(s); };
    } else {
      data.theta_t = [](double) { return 0.0; };
    }
    data.g = cfg.value("g", 0.0);
    const wc::RefinementReport report =
        wc::refinement_study(data, n_list, cfg.value("T", 0.5));
    levels = report.levels;
  } else if (study == "tension") {
    const std::string kind = cfg.value("kind", "hanging");
    for (int n : n_list) {
      wc::ChainState s;
      s.n = n;
      if (kind == "hanging") {
        s.g = cfg.value("g", 1.0);
        s.theta.assign(n, -M_PI / 2.0);
        s.omega.assign(n, 0.0);
        const double g = s.g;
        levels.push_back(
            {n, wc::tension_comparison(s, [g](double x) { return g * (1.0 - x); })});
      } else if (kind == "rotating") {
        const double w = cfg.value("omega", 1.0);
        s.g = 0.0;
        s.theta.assign(n, 0.0);
        s.omega.assign(n, w);
        levels.push_back({n, wc::tension_comparison(s, [w](double x) {
                            return 0.5 * w * w * (1.0 - x * x);
                          })});
      } else {
        throw wc::validation_error("unknown tension study kind \"" + kind + "\"");
      }
    }
  } else {
    throw wc::validation_error("unknown study \"" + study + "\"");
  }

  const double order = wc::observed_order(levels);
  wc::CsvTable table;
  table.headers = {"resolution", "error"};
  table.columns.resize(2);
  for (const auto& l : levels) {
    table.columns[0].push_back(l.resolution);
    table.columns[1].push_back(l.error);
  }
  manifest.write_file("errors.csv", wc::format_csv(table));
  manifest.write_file(
      "summary.json",
      json{{"study", study}, {"observed_order", order}, {"threshold", threshold}}.dump(2) +
          "\n");
  if (c.want_svg()) {
    bool positive = true;
    for (const auto& l : levels) positive = positive && l.error > 0.0;
    if (positive) {
      wc::Series s{"error", table.columns[0], table.columns[1]};
      wc::ChartOptions opt;
      opt.title = "refinement errors";
      opt.x_label = "resolution";
      opt.y_label = "error";
      opt.log_x = true;
      opt.log_y = true;
      char note[64];
      std::snprintf(note, sizeof note, "observed order %.2f", order);
      opt.annotation = note;
      manifest.write_file("errors.svg", wc::line_chart({s}, opt));
    }
  }
  manifest.finish();
  std::printf("converge: study=%s observed order %.3f (threshold %.3f)\n", study.c_str(),
              order, threshold);
  return order >= threshold ? 0 : 3;
}

int cmd_probe(const Common& c) {
  const json cfg = wc::load_json(c.config_path);
  wc::RunManifest manifest = open_manifest("probe", c, cfg);
  const wc::ChainState state = chain_from_config(cfg);

  const wc::TensionSignReport report = wc::tension_sign_probe(state);
  wc::CsvTable neg;
  neg.headers = {"i", "j", "lambda"};
  neg.columns.resize(3);
  for (const auto& e : report.negatives) {
    neg.columns[0].push_back(e.i);
    neg.columns[1].push_back(e.j);
    neg.columns[2].push_back(e.lambda);
  }
  manifest.write_file("negative_sections.csv", wc::format_csv(neg));
  if (!report.rest_lambda.empty()) {
    wc::CsvTable rest;
    rest.headers = {"k", "lambda"};
    rest.columns.resize(2);
    for (size_t k = 0; k < report.rest_lambda.size(); ++k) {
      rest.columns[0].push_back(static_cast<double>(k + 1));
      rest.columns[1].push_back(report.rest_lambda[k]);
    }
    manifest.write_file("rest_tension.csv", wc::format_csv(rest));
  }
  manifest.finish();
  std::printf("probe: %zu negative unit-velocity sections\n", report.negatives.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"whipchain: discrete chains, continuum whips, and the geometry between"};
  app.require_subcommand(1);

  Common c;
  std::string state_path;
  bool probe_flag = false;
  int random_sections = 0;
  double threshold = 0.0;

  CLI::App* simulate = app.add_subcommand("simulate", "integrate a chain and log diagnostics");
  add_common(simulate, c);
  CLI::App* tension = app.add_subcommand("tension", "solve rod tensions for a state");
  add_common(tension, c, false);
  tension->add_option("--state", state_path, "chain state JSON");
  tension->add_flag("--probe", probe_flag, "sweep unit-velocity sections for negative tension");
  CLI::App* curvature = app.add_subcommand("curvature", "sectional curvatures of tangent sections");
  add_common(curvature, c);
  curvature->add_option("--random", random_sections, "number of random sections to draw");
  CLI::App* green = app.add_subcommand("green", "Green kernel table for a curvature field");
  add_common(green, c);
  CLI::App* evolve = app.add_subcommand("evolve", "integrate the continuum whip");
  add_common(evolve, c);
  CLI::App* riccati = app.add_subcommand("riccati", "pivot-shadow Riccati solution");
  add_common(riccati, c);
  CLI::App* kink_green = app.add_subcommand("kink-green", "Green values for kinked curves");
  add_common(kink_green, c);
  CLI::App* converge = app.add_subcommand("converge", "refinement and truncation studies");
  add_common(converge, c);
  converge->add_option("--threshold", threshold, "minimum acceptable observed order")
      ->capture_default_str();
  CLI::App* probe = app.add_subcommand("probe", "negative-tension probes for a state");
  add_common(probe, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(simulate)) return cmd_simulate(c);
    if (app.got_subcommand(tension)) return cmd_tension(c, state_path, probe_flag);
    if (app.got_subcommand(curvature)) return cmd_curvature(c, random_sections);
    if (app.got_subcommand(green)) return cmd_green(c);
    if (app.got_subcommand(evolve)) return cmd_evolve(c);
    if (app.got_subcommand(riccati)) return cmd_riccati(c);
    if (app.got_subcommand(kink_green)) return cmd_kink_green(c);
    if (app.got_subcommand(converge)) return cmd_converge(c, threshold);
    if (app.got_subcommand(probe)) return cmd_probe(c);
  } catch (const wc::validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const wc::numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
  return 1;
}
