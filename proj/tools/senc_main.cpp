#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "senc/csv.hpp"
#include "senc/eda.hpp"
#include "senc/errors.hpp"
#include "senc/ingest.hpp"
#include "senc/losses.hpp"
#include "senc/models.hpp"
#include "senc/optimizer.hpp"
#include "senc/svg.hpp"
#include "senc/sweep.hpp"
#include "senc/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string data_dir;
  std::string out_dir = "senc_out";
  double eda_window_s = 8.0;
  std::vector<double> p_values = senc::default_p_values();
  std::vector<std::string> model_names = {"bec", "fmc", "lnp"};
  std::string target_mode = "observed";
  double w_penalty = 0.1;
  senc::OptimizerOptions optimizer;
  std::optional<senc::SimTarget> sim;
  std::uint64_t seed = 1;
  bool seed_set = false;
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& tok : senc::csv::split(text, ',')) {
    if (tok.empty()) continue;
    double v;
    if (!senc::csv::parse_double(tok, v)) throw std::invalid_argument("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

senc::LossKind model_from_name(const std::string& name) {
  if (name == "bec") return senc::LossKind::BEC;
  if (name == "fmc") return senc::LossKind::FMC;
  if (name == "lnp") return senc::LossKind::LNP;
  throw std::invalid_argument("unknown model '" + name + "' (expected bec, fmc or lnp)");
}

senc::TargetMode target_mode_from_name(const std::string& name) {
  if (name == "observed") return senc::TargetMode::Observed;
  if (name == "simulated") return senc::TargetMode::Simulated;
  throw std::invalid_argument("unknown target mode '" + name + "' (expected observed or simulated)");
}

void apply_config_file(RunConfig& cfg, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path.string());
  json j;
  in >> j;

  if (j.contains("data")) cfg.data_dir = j["data"].get<std::string>();
  if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
  if (j.contains("seed")) {
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.seed_set = true;
  }
  if (j.contains("eda") && j["eda"].contains("window_s"))
    cfg.eda_window_s = j["eda"]["window_s"].get<double>();
  if (j.contains("sweep")) {
    const json& sw = j["sweep"];
    if (sw.contains("p_values")) cfg.p_values = sw["p_values"].get<std::vector<double>>();
    if (sw.contains("models")) cfg.model_names = sw["models"].get<std::vector<std::string>>();
    if (sw.contains("target_mode")) cfg.target_mode = sw["target_mode"].get<std::string>();
    if (sw.contains("w_penalty")) cfg.w_penalty = sw["w_penalty"].get<double>();
    if (sw.contains("sim")) {
      senc::SimTarget sim;
      auto theta = sw["sim"]["theta_star"].get<std::vector<double>>();
      sim.theta_star = senc::ModelParams::from_vector(senc::Family::G1, theta);
      if (sw["sim"].contains("sigma")) sim.sigma = sw["sim"]["sigma"].get<double>();
      cfg.sim = sim;
    }
  }
  if (j.contains("optimizer")) {
    const json& opt = j["optimizer"];
    if (opt.contains("n_restarts")) cfg.optimizer.n_restarts = opt["n_restarts"].get<int>();
    if (opt.contains("tol")) cfg.optimizer.tol = opt["tol"].get<double>();
    if (opt.contains("max_iters")) cfg.optimizer.max_iters = opt["max_iters"].get<int>();
    if (opt.contains("init_box")) {
      auto box = opt["init_box"].get<std::vector<double>>();
      if (box.size() != 2 || !(box[0] < box[1]))
        throw std::invalid_argument("optimizer.init_box must be [lo, hi] with lo < hi");
      // expanded to the model dimension at fit time
      cfg.optimizer.init_box.assign(3, {box[0], box[1]});
    }
  }
}

void resolve_seed(RunConfig& cfg) {
  if (cfg.seed_set) return;
  if (const char* env = std::getenv("SENC_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') {
      cfg.seed = v;
      cfg.seed_set = true;
    }
  }
}

senc::OptimizerOptions optimizer_for(const RunConfig& cfg, senc::Family family) {
  senc::OptimizerOptions opts = cfg.optimizer;
  opts.seed = cfg.seed;
  if (!opts.init_box.empty()) opts.init_box.resize(senc::family_dim(family), opts.init_box.front());
  return opts;
}

std::optional<senc::SimTarget> read_truth(const fs::path& data_dir) {
  fs::path path = data_dir / "truth.json";
  if (!fs::exists(path)) return std::nullopt;
  std::ifstream in(path);
  json j;
  in >> j;
  if (j.value("family", "g1") != "g1") return std::nullopt;
  senc::SimTarget sim;
  sim.theta_star =
      senc::ModelParams::from_vector(senc::Family::G1, j["theta_star"].get<std::vector<double>>());
  sim.sigma = j.value("sigma", 0.05);
  return sim;
}

senc::SimTarget resolve_sim_target(const RunConfig& cfg) {
  if (cfg.sim) return *cfg.sim;
  if (auto truth = read_truth(cfg.data_dir)) return *truth;
  throw std::invalid_argument(
      "simulated target mode needs sweep.sim.theta_star in the config or a truth.json in the "
      "session directory");
}

std::vector<double> build_target(const senc::AlignedSession& session, const RunConfig& cfg,
                                 std::span<const double> x_std) {
  if (target_mode_from_name(cfg.target_mode) == senc::TargetMode::Observed) {
    auto eda = senc::decompose(session.gsr, session.rate_hz, cfg.eda_window_s);
    return senc::normalize_unit(eda.phasic).y;
  }
  senc::SimTarget sim = resolve_sim_target(cfg);
  senc::Rng rng(senc::Rng::mix(cfg.seed, 0x51u));
  std::vector<double> y;
  y.reserve(x_std.size());
  for (double x : x_std) {
    double v = senc::eval_g1(x, sim.theta_star);
    if (sim.sigma > 0.0) v += sim.sigma * rng.gaussian();
    y.push_back(v);
  }
  return y;
}

void write_xy_curve(const fs::path& path, std::span<const double> x, std::span<const double> v,
                    std::span<const std::size_t> order) {
  std::vector<std::vector<double>> rows;
  rows.reserve(x.size());
  for (std::size_t i : order) rows.push_back({x[i], v[i]});
  senc::csv::write_rows(path, "x,value", rows, 6);
}

std::vector<std::size_t> sorted_order(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  return order;
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  return buf;
}

int cmd_ingest_check(const RunConfig& cfg) {
  senc::RawSession raw = senc::load_session(cfg.data_dir);
  for (const auto& [name, ch] : raw.channels)
    std::cout << name << ": " << ch.values.size() << " samples @ " << ch.sample_rate_hz
              << " Hz, span [" << ch.t0 << ", " << ch.t_end() << "] s\n";
  for (const auto& w : raw.warnings) std::cout << "warning: " << w << '\n';
  senc::AlignedSession aligned = senc::align(raw);
  std::cout << "aligned: " << aligned.t.size() << " samples @ " << aligned.rate_hz << " Hz\n";
  return 0;
}

int cmd_synth(const RunConfig& cfg, const std::string& kind, const std::vector<double>& theta,
              std::size_t n, double sigma) {
  if (n < 10) throw std::invalid_argument("n >= 10 required");
  if (sigma < 0.0) throw std::invalid_argument("sigma >= 0 required");

  senc::SyntheticSession synth;
  if (kind == "g1") {
    if (theta.size() != 2) throw std::invalid_argument("--theta needs two values for kind g1");
    synth = senc::gen_g1_session(senc::ModelParams::g1(theta[0], theta[1]), n, sigma, cfg.seed);
  } else if (kind == "infomax") {
    synth = senc::gen_infomax_like(n, sigma, cfg.seed);
  } else {
    throw std::invalid_argument("unknown synth kind '" + kind + "' (expected g1 or infomax)");
  }
  senc::write_session_dir(synth, cfg.out_dir);
  std::cout << "wrote session (" << synth.session.t.size() << " samples) to " << cfg.out_dir << '\n';
  return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& model_name, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p > 0 required");
  senc::LossKind model = model_from_name(model_name);

  senc::AlignedSession session = senc::align(senc::load_session(cfg.data_dir));
  std::vector<double> x_std = senc::standardize(session.speed).x_std;
  std::vector<double> y = build_target(session, cfg, x_std);
  std::vector<double> infomax = senc::infomax_response(x_std, x_std);

  senc::LossSpec spec = model == senc::LossKind::LNP
                            ? senc::LossSpec::lnp(p, cfg.w_penalty)
                            : (model == senc::LossKind::BEC ? senc::LossSpec::bec(p)
                                                            : senc::LossSpec::fmc(p));
  senc::Family family = model == senc::LossKind::LNP ? senc::Family::G2 : senc::Family::G1;
  senc::FitResult fit = senc::multistart_fit(spec, x_std, y, optimizer_for(cfg, family));

  std::vector<double> curve;
  curve.reserve(x_std.size());
  for (double x : x_std) curve.push_back(senc::eval_model(x, fit.params));

  fs::create_directories(cfg.out_dir);
  json out;
  out["participant_id"] = session.participant_id;
  out["model"] = model_name;
  out["p"] = p;
  out["family"] = senc::family_name(fit.params.family);
  out["theta"] = fit.params.theta;
  out["loss"] = fit.loss;
  out["iterations"] = fit.iterations;
  out["converged"] = fit.converged;
  out["restart_index"] = fit.restart_index;
  out["n_samples"] = x_std.size();
  out["mse_vs_infomax"] = senc::mse(curve, infomax);
  std::ofstream(fs::path(cfg.out_dir) / "fit.json") << out.dump(2) << '\n';

  auto order = sorted_order(x_std);
  write_xy_curve(fs::path(cfg.out_dir) / "curve.csv", x_std, curve, order);
  write_xy_curve(fs::path(cfg.out_dir) / "infomax.csv", x_std, infomax, order);

  auto binned = senc::empirical_nonlinearity(x_std, y, std::min<std::size_t>(20, x_std.size()));
  std::vector<std::vector<double>> emp_rows;
  for (std::size_t b = 0; b < binned.bin_mean_x.size(); ++b)
    emp_rows.push_back({binned.bin_mean_x[b], binned.bin_mean_y[b]});
  senc::csv::write_rows(fs::path(cfg.out_dir) / "empirical.csv", "x,value", emp_rows, 6);

  std::cout << "fit " << model_name << " p=" << p << ": loss " << fit.loss << ", theta [";
  for (std::size_t i = 0; i < fit.params.theta.size(); ++i)
    std::cout << (i ? ", " : "") << fit.params.theta[i];
  std::cout << "]\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  senc::SweepConfig sweep_cfg;
  sweep_cfg.p_values = cfg.p_values;
  sweep_cfg.models.clear();
  for (const std::string& name : cfg.model_names)
    if (!name.empty()) sweep_cfg.models.push_back(model_from_name(name));
  if (sweep_cfg.models.empty()) throw std::invalid_argument("at least one model required");
  sweep_cfg.target_mode = target_mode_from_name(cfg.target_mode);
  sweep_cfg.w_penalty = cfg.w_penalty;
  sweep_cfg.eda_window_s = cfg.eda_window_s;
  sweep_cfg.optimizer = cfg.optimizer;
  sweep_cfg.optimizer.seed = cfg.seed;
  if (sweep_cfg.target_mode == senc::TargetMode::Simulated) sweep_cfg.sim = resolve_sim_target(cfg);

  senc::AlignedSession session = senc::align(senc::load_session(cfg.data_dir));
  senc::SweepReport report = senc::run_sweep(session, sweep_cfg);

  fs::create_directories(cfg.out_dir);
  std::string table = senc::render_table(report);
  {
    std::ofstream out(fs::path(cfg.out_dir) / "report.csv", std::ios::binary);
    out << table;
  }

  // per-cell curve dumps
  std::vector<double> x_std = senc::standardize(session.speed).x_std;
  std::vector<double> infomax = senc::infomax_response(x_std, x_std);
  auto order = sorted_order(x_std);
  fs::path curve_dir = fs::path(cfg.out_dir) / "curves";
  fs::create_directories(curve_dir);
  for (const senc::SweepRow& row : report.rows) {
    std::vector<std::vector<double>> rows;
    rows.reserve(x_std.size());
    for (std::size_t i : order)
      rows.push_back({x_std[i], senc::eval_model(x_std[i], row.params), infomax[i]});
    fs::path path = curve_dir / (senc::loss_kind_name(row.model) + "_p" + format_p(row.p) + ".csv");
    senc::csv::write_rows(path, "x,fitted,infomax", rows, 6);
  }

  // MSE-vs-p chart
  const struct {
    senc::LossKind model;
    const char* label;
    const char* color;
  } series_spec[3] = {{senc::LossKind::BEC, "BEC", "#1f77b4"},
                      {senc::LossKind::FMC, "BEC+FMC", "#ff7f0e"},
                      {senc::LossKind::LNP, "LNP", "#2ca02c"}};
  std::vector<senc::SvgSeries> series;
  for (const auto& ss : series_spec) {
    senc::SvgSeries s;
    s.label = ss.label;
    s.color = ss.color;
    for (const senc::SweepRow& row : report.rows)
      if (row.model == ss.model) s.points.emplace_back(row.p, row.mse_vs_infomax);
    std::sort(s.points.begin(), s.points.end());
    if (!s.points.empty()) series.push_back(std::move(s));
  }
  {
    std::ofstream out(fs::path(cfg.out_dir) / "report.svg", std::ios::binary);
    out << senc::render_line_chart("MSE vs Infomax across error penalties", "p", "MSE vs Infomax",
                                   series);
  }

  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensory-encoding model fitting for VR navigation telemetry"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::uint64_t seed_flag = 0;

  // shared flag wiring; CLI11 only writes bound variables for flags present
  auto add_common = [&](CLI::App* sub, bool needs_data) {
    auto* data_opt = sub->add_option("--data", cfg.data_dir, "session directory");
    if (needs_data) data_opt->required();
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed_flag, "RNG seed (fallback: SENC_SEED, then 1)");
  };

  auto* sub_check = app.add_subcommand("ingest-check", "load a session and report its channels");
  add_common(sub_check, true);

  double w_penalty_flag = 0.0, eda_window_flag = 0.0;
  std::string target_mode_flag;

  auto* sub_fit = app.add_subcommand("fit", "fit one model at one error penalty");
  add_common(sub_fit, true);
  std::string fit_model = "bec";
  double fit_p = 2.0;
  sub_fit->add_option("--model", fit_model, "bec, fmc or lnp");
  sub_fit->add_option("--p", fit_p, "error penalty exponent (p > 0)");
  sub_fit->add_option("--w-penalty", w_penalty_flag, "LNP penalty weight");
  sub_fit->add_option("--target-mode", target_mode_flag, "observed or simulated");
  sub_fit->add_option("--eda-window", eda_window_flag, "decomposition window (s)");

  auto* sub_sweep = app.add_subcommand("sweep", "fit all models across the p grid");
  add_common(sub_sweep, true);
  std::string p_values_flag, models_flag;
  sub_sweep->add_option("--p-values", p_values_flag, "comma-separated p grid");
  sub_sweep->add_option("--models", models_flag, "comma-separated subset of bec,fmc,lnp");
  sub_sweep->add_option("--w-penalty", w_penalty_flag, "LNP penalty weight");
  sub_sweep->add_option("--target-mode", target_mode_flag, "observed or simulated");
  sub_sweep->add_option("--eda-window", eda_window_flag, "decomposition window (s)");

  auto* sub_synth = app.add_subcommand("synth", "generate a synthetic session");
  add_common(sub_synth, false);
  std::string synth_kind = "g1", synth_theta;
  std::size_t synth_n = 2000;
  double synth_sigma = 0.05;
  sub_synth->add_option("--kind", synth_kind, "g1 or infomax");
  sub_synth->add_option("--theta", synth_theta, "g1 ground truth, e.g. 1.5,-0.3");
  sub_synth->add_option("--n", synth_n, "number of samples (>= 10)");
  sub_synth->add_option("--sigma", synth_sigma, "response noise sigma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    // flags beat the config file
    for (CLI::App* sub : {sub_check, sub_fit, sub_sweep, sub_synth}) {
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) {
        cfg.seed = seed_flag;
        cfg.seed_set = true;
      }
      if (sub->count("--data")) cfg.data_dir = sub->get_option("--data")->as<std::string>();
      if (sub->count("--out")) cfg.out_dir = sub->get_option("--out")->as<std::string>();
      if (sub->get_option_no_throw("--w-penalty") && sub->count("--w-penalty"))
        cfg.w_penalty = w_penalty_flag;
      if (sub->get_option_no_throw("--target-mode") && sub->count("--target-mode"))
        cfg.target_mode = target_mode_flag;
      if (sub->get_option_no_throw("--eda-window") && sub->count("--eda-window"))
        cfg.eda_window_s = eda_window_flag;
    }
    resolve_seed(cfg);

    if (sub_check->parsed()) return cmd_ingest_check(cfg);
    if (sub_fit->parsed()) return cmd_fit(cfg, fit_model, fit_p);
    if (sub_sweep->parsed()) {
      if (sub_sweep->count("--p-values")) cfg.p_values = parse_double_list(p_values_flag);
      if (sub_sweep->count("--models")) {
        cfg.model_names.clear();
        for (const std::string& tok : senc::csv::split(models_flag, ','))
          if (!tok.empty()) cfg.model_names.push_back(tok);
      }
      return cmd_sweep(cfg);
    }
    if (sub_synth->parsed())
      return cmd_synth(cfg, synth_kind, parse_double_list(synth_theta), synth_n, synth_sigma);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const senc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
