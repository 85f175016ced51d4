#include "senc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "senc/csv.hpp"
#include "senc/eda.hpp"
#include "senc/errors.hpp"
#include "senc/rng.hpp"

namespace senc {

std::vector<double> default_p_values() {
  return {0.10, 0.31, 0.52, 0.73, 0.94, 1.16, 1.37, 1.58, 1.79, 2.00};
}

double mse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw LengthMismatch("a has " + std::to_string(a.size()) + " points, b has " +
                         std::to_string(b.size()));
  if (a.empty()) throw LengthMismatch("empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

namespace {

void validate_config(const SweepConfig& config) {
  if (config.models.empty()) throw EmptyModelSet("sweep config lists no models");
  if (config.p_values.empty()) throw std::invalid_argument("p_values must be non-empty");
  for (std::size_t i = 0; i < config.p_values.size(); ++i) {
    if (!(config.p_values[i] > 0.0)) throw std::invalid_argument("p > 0 required");
    if (i > 0 && !(config.p_values[i] > config.p_values[i - 1]))
      throw std::invalid_argument("p_values must be strictly ascending");
  }
  if (config.target_mode == TargetMode::Simulated && !config.sim.has_value())
    throw std::invalid_argument("Simulated target mode needs sim.theta_star");
}

std::vector<double> build_target(const AlignedSession& session, const SweepConfig& config,
                                 std::span<const double> x_std) {
  if (config.target_mode == TargetMode::Observed) {
    EdaDecomposition eda = decompose(session.gsr, session.rate_hz, config.eda_window_s);
    return normalize_unit(eda.phasic).y;
  }
  const SimTarget& sim = *config.sim;
  std::vector<double> y;
  y.reserve(x_std.size());
  Rng rng(Rng::mix(config.optimizer.seed, 0x51u));
  for (double x : x_std) {
    double v = eval_g1(x, sim.theta_star);
    if (sim.sigma > 0.0) v += sim.sigma * rng.gaussian();
    y.push_back(v);
  }
  return y;
}

LossSpec spec_for(LossKind model, double p, double w_penalty) {
  switch (model) {
    case LossKind::BEC: return LossSpec::bec(p);
    case LossKind::FMC: return LossSpec::fmc(p);
    case LossKind::LNP: return LossSpec::lnp(p, w_penalty);
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace

SweepReport run_sweep(const AlignedSession& session, const SweepConfig& config) {
  validate_config(config);
  if (session.speed.size() != session.gsr.size() || session.speed.size() < 2)
    throw LengthMismatch("session is not model-ready");

  std::vector<double> x_std = standardize(session.speed).x_std;
  std::vector<double> y = build_target(session, config, x_std);
  std::vector<double> infomax = infomax_response(x_std, x_std);

  const std::size_t n_cells = config.p_values.size() * config.models.size();
  std::vector<SweepRow> rows(n_cells);

  auto run_cell = [&](std::size_t cell) {
    std::size_t pi = cell / config.models.size();
    std::size_t mi = cell % config.models.size();
    double p = config.p_values[pi];
    LossKind model = config.models[mi];

    LossSpec spec = spec_for(model, p, config.w_penalty);
    OptimizerOptions opts = config.optimizer;
    opts.seed = Rng::mix(config.optimizer.seed, cell);
    FitResult fit = multistart_fit(spec, x_std, y, opts);

    std::vector<double> curve;
    curve.reserve(x_std.size());
    for (double x : x_std) curve.push_back(eval_model(x, fit.params));

    SweepRow row;
    row.p = p;
    row.model = model;
    row.mse_vs_infomax = mse(curve, infomax);
    row.fit_loss = fit.loss;
    row.params = fit.params;
    row.converged = fit.converged;
    rows[cell] = std::move(row);
  };

  unsigned n_workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(n_cells));
  if (n_workers <= 1) {
    for (std::size_t cell = 0; cell < n_cells; ++cell) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w)
      workers.emplace_back([&] {
        for (std::size_t cell = next.fetch_add(1); cell < n_cells; cell = next.fetch_add(1))
          run_cell(cell);
      });
    for (auto& t : workers) t.join();
  }

  SweepReport report;
  report.rows = std::move(rows);
  return report;
}

std::string render_table(const SweepReport& report) {
  // collect the p grid (ascending) and the models present anywhere
  std::vector<double> ps;
  bool has_bec = false, has_fmc = false, has_lnp = false;
  for (const SweepRow& row : report.rows) {
    if (std::find(ps.begin(), ps.end(), row.p) == ps.end()) ps.push_back(row.p);
    if (row.model == LossKind::BEC) has_bec = true;
    if (row.model == LossKind::FMC) has_fmc = true;
    if (row.model == LossKind::LNP) has_lnp = true;
  }
  std::sort(ps.begin(), ps.end());

  auto find_cell = [&](double p, LossKind model) -> const SweepRow* {
    for (const SweepRow& row : report.rows)
      if (row.p == p && row.model == model) return &row;
    return nullptr;
  };

  std::ostringstream out;
  out << "p,bec,bec_fmc,lnp\n";
  for (double p : ps) {
    out << csv::format_value(p, 6);
    const struct {
      bool present;
      LossKind model;
    } cols[3] = {{has_bec, LossKind::BEC}, {has_fmc, LossKind::FMC}, {has_lnp, LossKind::LNP}};
    for (const auto& col : cols) {
      out << ',';
      if (!col.present) {
        out << "NA";
        continue;
      }
      const SweepRow* row = find_cell(p, col.model);
      if (!row)
        throw RaggedReport(loss_kind_name(col.model) + " missing at p = " + csv::format_value(p, 6));
      out << csv::format_value(row->mse_vs_infomax, 6);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<TableRow> parse_table(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw MalformedCsv("report: empty text");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "p,bec,bec_fmc,lnp")
    throw MalformedCsv("report: unexpected header '" + line + "'");

  std::vector<TableRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = csv::split(line, ',');
    if (cells.size() != 4)
      throw MalformedCsv("report: line " + std::to_string(line_no) + " has " +
                         std::to_string(cells.size()) + " cells, expected 4");
    TableRow row;
    if (!csv::parse_double(cells[0], row.p))
      throw MalformedCsv("report: bad p at line " + std::to_string(line_no));
    auto parse_cell = [&](const std::string& cell) -> std::optional<double> {
      if (cell == "NA") return std::nullopt;
      double v;
      if (!csv::parse_double(cell, v))
        throw MalformedCsv("report: non-numeric cell at line " + std::to_string(line_no));
      return v;
    };
    row.bec = parse_cell(cells[1]);
    row.bec_fmc = parse_cell(cells[2]);
    row.lnp = parse_cell(cells[3]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace senc
