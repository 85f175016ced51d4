#include "senc/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "senc/csv.hpp"
#include "senc/errors.hpp"

namespace senc {

namespace {

// Interpolates channel values at offset seconds from t0. The offset is
// converted to fractional sample index and snapped to the nearest integer
// when within 1e-9 of it, which absorbs the rounding noise of grid-time
// arithmetic and makes same-rate resampling exact.
double interp_at(const RawChannel& ch, double offset_s) {
  double u = offset_s * ch.sample_rate_hz;
  double r = std::round(u);
  if (std::abs(u - r) < 1e-9) u = r;
  if (u <= 0.0) return ch.values.front();
  double last = static_cast<double>(ch.values.size() - 1);
  if (u >= last) return ch.values.back();
  auto i = static_cast<std::size_t>(u);
  double frac = u - static_cast<double>(i);
  return ch.values[i] + frac * (ch.values[i + 1] - ch.values[i]);
}

double infer_rate(const std::filesystem::path& file, const std::vector<std::array<double, 2>>& rows) {
  std::vector<double> dt;
  dt.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double d = rows[i][0] - rows[i - 1][0];
    if (!(d > 0.0))
      throw MalformedCsv(file.string() + ": timestamps not strictly increasing at line " +
                         std::to_string(i + 2));
    dt.push_back(d);
  }
  std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
  return 1.0 / dt[dt.size() / 2];
}

std::map<std::string, double> read_meta_rates(const std::filesystem::path& dir) {
  std::map<std::string, double> rates;
  auto meta_path = dir / "meta.json";
  if (!std::filesystem::exists(meta_path)) return rates;
  std::ifstream in(meta_path);
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedCsv(meta_path.string() + ": " + e.what());
  }
  if (meta.contains("sample_rate_hz"))
    for (auto& [name, rate] : meta["sample_rate_hz"].items())
      rates[name] = rate.get<double>();
  return rates;
}

}  // namespace

const ChannelSchema& ChannelSchema::standard() {
  static const ChannelSchema schema{
      {{"speed", "speed"},
       {"gsr", "gsr"},
       {"rotation", "rotation"},
       {"bvp", "bvp"},
       {"temp", "temp"},
       {"hr", "hr"}},
      {"speed", "gsr"}};
  return schema;
}

RawSession load_session(const std::filesystem::path& dir, const ChannelSchema& schema) {
  if (!std::filesystem::is_directory(dir))
    throw MissingChannel(dir.string() + " is not a session directory");

  RawSession session;
  session.participant_id = dir.filename().string();
  if (session.participant_id.empty()) session.participant_id = dir.parent_path().filename().string();

  auto meta_rates = read_meta_rates(dir);

  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    std::string stem = entry.path().stem().string();
    auto it = schema.files.find(stem);
    if (it == schema.files.end()) {
      session.warnings.push_back("ignored unrecognized file " + entry.path().filename().string());
      continue;
    }
    auto rows = csv::read_two_column(entry.path(), "t,value");
    if (rows.empty()) throw EmptyChannel(it->second + " (" + entry.path().string() + " has no data rows)");

    RawChannel ch;
    ch.name = it->second;
    ch.t0 = rows.front()[0];
    auto meta_it = meta_rates.find(ch.name);
    if (meta_it != meta_rates.end()) {
      if (!(meta_it->second > 0.0))
        throw MalformedCsv(dir.string() + "/meta.json: sample rate for " + ch.name +
                           " must be positive");
      ch.sample_rate_hz = meta_it->second;
      if (rows.size() >= 2) infer_rate(entry.path(), rows);  // still validates monotone t
    } else {
      if (rows.size() < 2)
        throw EmptyChannel(it->second + " (need at least 2 rows to infer sample rate)");
      ch.sample_rate_hz = infer_rate(entry.path(), rows);
    }
    ch.values.reserve(rows.size());
    for (const auto& row : rows) ch.values.push_back(row[1]);
    session.channels[ch.name] = std::move(ch);
  }

  for (const auto& name : schema.required_channels)
    if (session.channels.count(name) == 0) throw MissingChannel(name);

  return session;
}

RawChannel resample(const RawChannel& channel, double target_hz) {
  if (channel.values.size() < 2) throw EmptyChannel(channel.name + " (need at least 2 samples)");
  if (!(target_hz > 0.0)) throw std::invalid_argument("target_hz must be positive");

  RawChannel out;
  out.name = channel.name;
  out.sample_rate_hz = target_hz;
  out.t0 = channel.t0;

  auto count = static_cast<std::size_t>(std::floor(channel.span_s() * target_hz + 1e-9)) + 1;
  out.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.values.push_back(interp_at(channel, static_cast<double>(k) / target_hz));
  return out;
}

AlignedSession align(const RawSession& session, double rate_hz) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("rate_hz must be positive");
  auto speed_it = session.channels.find("speed");
  auto gsr_it = session.channels.find("gsr");
  if (speed_it == session.channels.end()) throw MissingChannel("speed");
  if (gsr_it == session.channels.end()) throw MissingChannel("gsr");
  const RawChannel& speed = speed_it->second;
  const RawChannel& gsr = gsr_it->second;

  double start = std::max(speed.t0, gsr.t0);
  double end = std::min(speed.t_end(), gsr.t_end());
  if (!(end > start))
    throw NoOverlap("speed [" + std::to_string(speed.t0) + ", " + std::to_string(speed.t_end()) +
                    "] and gsr [" + std::to_string(gsr.t0) + ", " + std::to_string(gsr.t_end()) +
                    "] do not overlap");

  auto count = static_cast<std::size_t>(std::floor((end - start) * rate_hz + 1e-9)) + 1;
  if (count < 2) throw NoOverlap("overlapping span shorter than one sample interval");

  AlignedSession out;
  out.participant_id = session.participant_id;
  out.rate_hz = rate_hz;
  out.t.reserve(count);
  out.speed.reserve(count);
  out.gsr.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double step = static_cast<double>(k) / rate_hz;
    out.t.push_back(start + step);
    out.speed.push_back(interp_at(speed, (start - speed.t0) + step));
    out.gsr.push_back(interp_at(gsr, (start - gsr.t0) + step));
  }
  return out;
}

}  // namespace senc
