#ifndef SENC_INGEST_HPP
#define SENC_INGEST_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace senc {

// One recorded data stream on a uniform grid: sample k lives at
// t0 + k / sample_rate_hz.
struct RawChannel {
  std::string name;
  double sample_rate_hz = 0.0;
  double t0 = 0.0;
  std::vector<double> values;

  double span_s() const {
    return values.size() < 2 ? 0.0
                             : static_cast<double>(values.size() - 1) / sample_rate_hz;
  }
  double t_end() const { return t0 + span_s(); }
};

struct RawSession {
  std::string participant_id;
  std::map<std::string, RawChannel> channels;
  std::vector<std::string> warnings;  // unrecognized files seen while loading

  bool model_ready() const {
    return channels.count("speed") != 0 && channels.count("gsr") != 0;
  }
};

// Maps file stems inside a session directory to channel names.
struct ChannelSchema {
  std::map<std::string, std::string> files;     // file stem -> channel name
  std::vector<std::string> required_channels;   // must be present after load

  static const ChannelSchema& standard();
};

// Stimulus and response resampled onto one shared grid.
struct AlignedSession {
  std::string participant_id;
  double rate_hz = 0.0;
  std::vector<double> t;
  std::vector<double> speed;
  std::vector<double> gsr;
};

// Loads per-channel CSVs (`t,value`) from a session directory. Sample rates
// come from an optional meta.json, otherwise from the median timestamp
// spacing. Unrecognized .csv files are recorded as warnings, not errors.
RawSession load_session(const std::filesystem::path& dir,
                        const ChannelSchema& schema = ChannelSchema::standard());

// Linear resampling onto a uniform grid at target_hz spanning the channel's
// original time span; endpoints clamp to the nearest original sample.
RawChannel resample(const RawChannel& channel, double target_hz);

// Resamples speed and gsr onto the intersection of their spans at rate_hz.
AlignedSession align(const RawSession& session, double rate_hz = 4.0);

}  // namespace senc

#endif
