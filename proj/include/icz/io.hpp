#pragma once

// Text file formats. All are line-oriented UTF-8; numbers are written as the
// shortest decimal that round-trips.
//
// Probe file (CSV):
//   probe_id,<id>
//   freq_hz,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im
//   <one row per frequency, strictly increasing>
//
// Waveform file (CSV):
//   sample_rate_hz,<rate>
//   <one sample per line>
//
// Session document:
//   # comment
//   [section]
//   key = value
// Complex values are written `re im`.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icz/calibration.hpp"
#include "icz/monitor.hpp"
#include "icz/signal.hpp"
#include "icz/simulator.hpp"
#include "icz/twoport.hpp"

namespace icz {

struct ProbeRow {
  double freq_hz = 0.0;
  TwoPortAbcd abcd;
};

struct ProbeFile {
  std::string probe_id;
  std::vector<ProbeRow> rows;

  void validate() const;
};

ProbeFile parse_probe_text(std::string_view text, std::string_view source = "<probe>");
ProbeFile parse_probe_file(const std::filesystem::path& path);
std::string write_probe_text(const ProbeFile& probe);
void write_probe_file(const std::filesystem::path& path, const ProbeFile& probe);

/// Exact row, or entry-wise linear interpolation of re/im between rows.
TwoPortAbcd probe_abcd_at(const ProbeFile& probe, double f_hz);

Waveform parse_waveform_text(std::string_view text, std::string_view source = "<waveform>");
Waveform read_waveform(const std::filesystem::path& path);
std::string write_waveform_text(const Waveform& w);
void write_waveform(const std::filesystem::path& path, const Waveform& w);

struct Section {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;
  int line = 0;  // header line in the source, 0 when built in memory

  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> get_all(std::string_view key) const;
  void set(std::string key, std::string value);
  void add(std::string key, std::string value);
};

struct SessionDocument {
  std::vector<Section> sections;

  static SessionDocument parse(std::string_view text, std::string_view source = "<session>");
  std::string to_text() const;

  const Section* find(std::string_view name) const;
  std::vector<const Section*> find_all(std::string_view name) const;
};

SessionDocument load_document(const std::filesystem::path& path);

/// Writes under an exclusive advisory lock; a concurrent writer gets Locked.
void save_document(const std::filesystem::path& path, const SessionDocument& doc);

/// Locked read-modify-write that appends sections (creating the file if needed).
void append_sections(const std::filesystem::path& path, const std::vector<Section>& sections);

// Typed section conversions. Readers reject unknown keys.
Section to_section(const CalibrationSet& cal);
CalibrationSet calibration_from(const Section& s);

Section to_section(const TerminationConfig& term);
TerminationConfig termination_from(const Section& s);

Section to_section(const BaselineRecord& baseline);
BaselineRecord baseline_from(const Section& s);

Section to_measurement_section(const SeriesEntry& entry);
SeriesEntry measurement_from(const Section& s);

Section to_section(const SutModel& sut);
SutModel sut_from(const Section& s);

Section to_section(const NoiseModel& noise);
NoiseModel noise_from(const Section& s);

/// PPC either as a fixed `z` or as the distance model.
Section to_section(const PpcModel& ppc);
Complex ppc_from(const Section& s, double f_hz);

Section to_section(const ProbeParams& probe, std::string name);
ProbeParams probe_params_from(const Section& s);

std::string format_complex(Complex z);
Complex parse_complex(std::string_view text, std::string_view what);

}  // namespace icz
