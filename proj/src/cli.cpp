#include "icz/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "icz/calibration.hpp"
#include "icz/format.hpp"
#include "icz/io.hpp"
#include "icz/monitor.hpp"
#include "icz/signal.hpp"
#include "icz/simulator.hpp"

namespace icz {

namespace {

namespace fs = std::filesystem;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s(buf);
  // never print "-0.0000"
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string polar_text(Complex z) {
  const double mag = std::abs(z);
  const double deg = mag == 0.0 ? 0.0 : angle_deg(z);
  return fixed(mag, 4) + " ohm, " + fixed(deg, 4) + " deg";
}

// "re,im" as typed on the command line.
Complex complex_arg(const std::string& text, const char* what) {
  std::string spaced = text;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  return parse_complex(spaced, what);
}

Waveform waveform_arg(const std::vector<std::string>& pair, std::size_t index) {
  return read_waveform(pair.at(index));
}

Complex ratio_from_waves(const std::vector<std::string>& pair, double f_hz) {
  return complex_ratio(waveform_arg(pair, 0), waveform_arg(pair, 1), f_hz);
}

SessionDocument load_or_empty(const fs::path& path) {
  return fs::exists(path) ? load_document(path) : SessionDocument{};
}

void replace_section(SessionDocument& doc, Section section) {
  for (auto& s : doc.sections) {
    if (s.name == section.name) {
      s = std::move(section);
      return;
    }
  }
  doc.sections.push_back(std::move(section));
}

// ---- calibrate ----

struct CalibrateArgs {
  double freq = 0.0;
  std::string open, short_, load, z_load = "50,0";
  std::vector<std::string> open_waves, short_waves, load_waves;
  std::string out;
};

int do_calibrate(const CalibrateArgs& a, std::ostream& out) {
  CalibrationSet cal;
  cal.f_sig_hz = a.freq;
  cal.z_load = complex_arg(a.z_load, "--z-load");

  auto pick = [&](const std::string& ratio, const std::vector<std::string>& waves,
                  const char* name) -> std::optional<Complex> {
    if (!ratio.empty() && !waves.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("give either a ratio or waveforms for the ") + name + " standard");
    }
    if (!ratio.empty()) return complex_arg(ratio, name);
    if (!waves.empty()) return ratio_from_waves(waves, a.freq);
    return std::nullopt;
  };
  cal.r_open = pick(a.open, a.open_waves, "open");
  const auto r_short = pick(a.short_, a.short_waves, "short");
  const auto r_load = pick(a.load, a.load_waves, "load");
  if (!r_short || !r_load) {
    throw Error(ErrorKind::InvalidArgument, "short and load standards are required");
  }
  cal.r_short = *r_short;
  cal.r_load = *r_load;

  const auto coeffs = cal.has_open() ? solve_osl(cal) : solve_two_point(cal);
  SessionDocument doc = load_or_empty(a.out);
  replace_section(doc, to_section(cal));
  save_document(a.out, doc);

  out << "calibration: " << (cal.has_open() ? "open-short-load" : "two-point (short-load)")
      << " at " << format_double(cal.f_sig_hz) << " Hz\n";
  out << "k = " << format_complex(coeffs.k) << " ohm\n";
  out << "b = " << format_complex(coeffs.b) << " ohm\n";
  if (coeffs.z_ppc) out << "z_ppc = " << polar_text(*coeffs.z_ppc) << "\n";
  out << "written to " << a.out << "\n";
  return kExitOk;
}

// ---- extract ----

struct ExtractArgs {
  std::string session;
  std::string ratio;
  std::vector<std::string> waves;
  std::string method = "auto";
  std::string record;
  std::string baseline_out;
  std::string label;
  std::optional<double> rpm, vfd_hz;
  std::string load;
};

int do_extract(const ExtractArgs& a, std::ostream& out) {
  const SessionDocument doc = load_document(a.session);
  const Section* cal_section = doc.find("calibration");
  if (!cal_section) throw Error(ErrorKind::Parse, a.session + " has no [calibration] section");
  const CalibrationSet cal = calibration_from(*cal_section);

  if (a.ratio.empty() == a.waves.empty()) {
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --ratio or --waves");
  }
  const Complex ratio =
      a.ratio.empty() ? ratio_from_waves(a.waves, cal.f_sig_hz) : complex_arg(a.ratio, "--ratio");

  Complex z;
  if (a.method == "osl") {
    z = extract_impedance_osl(ratio, cal);
  } else if (a.method == "two-point") {
    z = extract_impedance_two_point(ratio, cal);
  } else {
    z = extract_impedance(ratio, cal);
  }
  out << polar_text(z) << "\n";

  if (!a.record.empty()) {
    SeriesEntry e;
    e.measured = z;
    e.label = a.label;
    e.point.rpm = a.rpm;
    e.point.vfd_hz = a.vfd_hz;
    if (!a.load.empty()) e.point.load_label = a.load;
    append_sections(a.record, {to_measurement_section(e)});
  }
  if (!a.baseline_out.empty()) {
    BaselineRecord b;
    b.impedance = z;
    b.f_sig_hz = cal.f_sig_hz;
    b.label = a.label.empty() ? "baseline" : a.label;
    SessionDocument target = load_or_empty(a.baseline_out);
    replace_section(target, to_section(b));
    save_document(a.baseline_out, target);
  }
  return kExitOk;
}

// ---- simulate ----

struct SimulateArgs {
  std::string sut;
  std::string iip, rip, noise;
  double freq = 91.3e3;
  std::uint64_t seed = 1;
  double sample_rate = 2.5e6;
  double duration = 2e-3;
  std::optional<double> distance;
  bool no_ppc = false;
  bool noiseless = false;
  double vfd_hz = 20.0;
  std::vector<std::string> waves;
  std::string calibration_out;
  std::string cal_waves;
};

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  const SessionDocument doc = load_document(a.sut);
  const Section* sut_section = doc.find("sut");
  if (!sut_section) throw Error(ErrorKind::Parse, a.sut + " has no [sut] section");
  const SutModel sut = sut_from(*sut_section);
  const Complex z_sut = sut_impedance(sut, a.freq);

  TerminationConfig term;
  if (const Section* s = doc.find("termination")) term = termination_from(*s);

  auto probe = [&](const std::string& file, const char* model_section) {
    if (!file.empty()) return probe_abcd_at(parse_probe_file(file), a.freq);
    ProbeParams p;
    if (const Section* s = doc.find(model_section)) p = probe_params_from(*s);
    return synthesize_probe_abcd(p, a.freq);
  };
  const TwoPortAbcd iip = probe(a.iip, "iip_model");
  const TwoPortAbcd rip = probe(a.rip, "rip_model");

  std::optional<Complex> ppc;
  if (!a.no_ppc) {
    Section ppc_section{"ppc", {}, 0};
    if (const Section* s = doc.find("ppc")) ppc_section = *s;
    if (a.distance) ppc_section.set("d_m", format_double(*a.distance));
    ppc = ppc_from(ppc_section, a.freq);
  }

  NoiseModel noise = NoiseModel::defaults(a.vfd_hz);
  if (!a.noise.empty()) {
    const SessionDocument nd = load_document(a.noise);
    const Section* s = nd.find("noise");
    if (!s) throw Error(ErrorKind::Parse, a.noise + " has no [noise] section");
    noise = noise_from(*s);
  } else if (const Section* s = doc.find("noise")) {
    noise = noise_from(*s);
  }
  if (a.noiseless) noise = NoiseModel::silent();

  const Complex ratio = simulate_ratio(z_sut, iip, rip, term, ppc);
  out << "sut_impedance = " << polar_text(z_sut) << "\n";
  if (ppc) out << "z_ppc = " << polar_text(*ppc) << "\n";
  out << "ratio = " << format_complex(ratio) << "\n";

  if (!a.waves.empty()) {
    auto [w1, w2] = synthesize_waveforms(ratio, a.freq, noise, a.sample_rate, a.duration, a.seed);
    write_waveform(a.waves.at(0), w1);
    write_waveform(a.waves.at(1), w2);
    out << "waveforms: " << a.waves[0] << ", " << a.waves[1] << " (" << w1.samples.size()
        << " samples)\n";
  }

  const CalibrationSet cal = simulate_calibration(iip, rip, term, ppc, a.freq);
  if (!a.calibration_out.empty()) {
    SessionDocument target = load_or_empty(a.calibration_out);
    replace_section(target, to_section(cal));
    save_document(a.calibration_out, target);
    out << "calibration: " << a.calibration_out << "\n";
  }
  if (!a.cal_waves.empty()) {
    // Distinct seeds per standard keep the noise independent.
    const std::pair<const char*, std::optional<Complex>> standards[] = {
        {"open", cal.r_open}, {"short", cal.r_short}, {"load", cal.r_load}};
    std::uint64_t offset = 1;
    for (const auto& [name, r] : standards) {
      ++offset;
      if (!r) continue;
      auto [w1, w2] = synthesize_waveforms(*r, a.freq, noise, a.sample_rate, a.duration,
                                           a.seed * 1000003ULL + offset);
      write_waveform(a.cal_waves + "_" + name + "_c1.csv", w1);
      write_waveform(a.cal_waves + "_" + name + "_c2.csv", w2);
    }
    out << "calibration waveforms: " << a.cal_waves << "_{open,short,load}_{c1,c2}.csv\n";
  }
  return kExitOk;
}

// ---- monitor ----

struct MonitorArgs {
  std::vector<std::string> sessions;
  double threshold = kDefaultThresholdPct;
};

int do_monitor(const MonitorArgs& a, std::ostream& out) {
  std::optional<BaselineRecord> baseline;
  std::vector<SeriesEntry> series;
  for (const auto& path : a.sessions) {
    const SessionDocument doc = load_document(path);
    for (const Section* s : doc.find_all("baseline")) {
      if (baseline) throw Error(ErrorKind::InvalidArgument, "more than one [baseline] given");
      baseline = baseline_from(*s);
    }
    for (const Section* s : doc.find_all("measurement")) series.push_back(measurement_from(*s));
  }
  if (!baseline) throw Error(ErrorKind::InvalidArgument, "no [baseline] section found");
  if (series.empty()) throw Error(ErrorKind::InvalidArgument, "no [measurement] sections found");

  const auto verdicts = sweep_report(*baseline, series, a.threshold);

  out << "baseline: " << baseline->label << "  " << polar_text(baseline->impedance) << "\n";
  out << "threshold: " << fixed(a.threshold, 3) << "%\n";
  out << std::left << std::setw(4) << "#" << std::setw(24) << "label" << std::right
      << std::setw(14) << "|Z| ohm" << std::setw(12) << "angle deg" << std::setw(12)
      << "rel.change" << std::setw(20) << "complex-diff(diag)" << "  verdict\n";
  std::size_t faults = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    const bool fault = v.classification == Classification::StatorFaultSuspected;
    faults += fault;
    const std::string label = series[i].label.empty() ? "-" : series[i].label;
    out << std::left << std::setw(4) << (i + 1) << std::setw(24) << label << std::right
        << std::setw(14) << fixed(std::abs(v.measured), 4) << std::setw(12)
        << fixed(angle_deg(v.measured), 4) << std::setw(12)
        << (fixed(v.relative_change_pct, 3) + "%") << std::setw(20)
        << (fixed(v.complex_change_pct, 3) + "%") << "  " << to_string(v.classification) << "\n";
  }
  out << "summary: " << verdicts.size() << " measurement(s), " << faults
      << " STATOR_FAULT_SUSPECTED, " << verdicts.size() - faults << " HEALTHY\n";
  return faults > 0 ? kExitFault : kExitOk;
}

// ---- scan-freq ----

struct ScanArgs {
  std::string background;
  std::vector<double> candidates;
};

int do_scan(const ScanArgs& a, std::ostream& out) {
  const Waveform bg = read_waveform(a.background);
  std::vector<double> sorted = a.candidates;
  std::sort(sorted.begin(), sorted.end());
  for (double f : sorted) {
    const double amp = std::abs(goertzel_single_bin(bg, f).phasor);
    out << "candidate " << format_double(f) << " Hz: background " << format_double(amp) << " V\n";
  }
  out << "selected_frequency_hz = " << format_double(scan_injection_frequency(bg, a.candidates))
      << "\n";
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"In-circuit impedance extraction by inductive coupling", "icz"};
  app.require_subcommand(1);

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Solve calibration from jig measurements");
  calibrate->add_option("--freq", cal.freq, "Injection frequency (Hz)")->required();
  calibrate->add_option("--open", cal.open, "Open-standard ratio RE,IM");
  calibrate->add_option("--short", cal.short_, "Short-standard ratio RE,IM");
  calibrate->add_option("--load", cal.load, "Load-standard ratio RE,IM");
  calibrate->add_option("--open-waves", cal.open_waves, "Open-standard C1 C2 files")->expected(2);
  calibrate->add_option("--short-waves", cal.short_waves, "Short-standard C1 C2 files")->expected(2);
  calibrate->add_option("--load-waves", cal.load_waves, "Load-standard C1 C2 files")->expected(2);
  calibrate->add_option("--z-load", cal.z_load, "Load standard impedance RE,IM (ohm)");
  calibrate->add_option("--out", cal.out, "Session document to write")->required();

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract the SUT impedance");
  extract->add_option("--session", ex.session, "Session with a [calibration] section")->required();
  extract->add_option("--ratio", ex.ratio, "Measured V1/V2 as RE,IM");
  extract->add_option("--waves", ex.waves, "C1 C2 waveform files")->expected(2);
  extract->add_option("--method", ex.method, "auto | osl | two-point")
      ->check(CLI::IsMember({"auto", "osl", "two-point"}));
  extract->add_option("--record", ex.record, "Append a [measurement] to this session");
  extract->add_option("--as-baseline", ex.baseline_out, "Write the result as [baseline] here");
  extract->add_option("--label", ex.label, "Label for the recorded entry");
  extract->add_option("--rpm", ex.rpm, "Operating speed (rev/min)");
  extract->add_option("--vfd-hz", ex.vfd_hz, "VFD output frequency (Hz)");
  extract->add_option("--load", ex.load, "Load description");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Forward-simulate the measurement chain");
  simulate->add_option("--sut", sim.sut, "Session with a [sut] section")->required();
  simulate->add_option("--iip", sim.iip, "IIP probe characterisation file");
  simulate->add_option("--rip", sim.rip, "RIP probe characterisation file");
  simulate->add_option("--noise", sim.noise, "Session with a [noise] section");
  simulate->add_option("--freq", sim.freq, "Injection frequency (Hz)");
  simulate->add_option("--seed", sim.seed, "Noise seed");
  simulate->add_option("--sample-rate", sim.sample_rate, "Acquisition rate (S/s)");
  simulate->add_option("--duration", sim.duration, "Record length (s)");
  simulate->add_option("--distance", sim.distance, "Probe separation d (m)");
  simulate->add_flag("--no-ppc", sim.no_ppc, "Ignore probe-to-probe coupling");
  simulate->add_flag("--noiseless", sim.noiseless, "Disable all noise");
  simulate->add_option("--vfd-hz", sim.vfd_hz, "VFD frequency for the default noise model");
  simulate->add_option("--waves", sim.waves, "Write C1 C2 waveform files")->expected(2);
  simulate->add_option("--calibration-out", sim.calibration_out,
                       "Write the jig's calibration ratios to this session");
  simulate->add_option("--cal-waves", sim.cal_waves,
                       "Write jig waveforms as PREFIX_{open,short,load}_{c1,c2}.csv");

  MonitorArgs mon;
  auto* monitor = app.add_subcommand("monitor", "Compare measurements with the baseline");
  monitor->add_option("--session", mon.sessions, "Session documents (baseline + measurements)")
      ->required()
      ->expected(1, -1);
  monitor->add_option("--threshold", mon.threshold, "Fault threshold (%)");

  ScanArgs scan;
  auto* scan_freq = app.add_subcommand("scan-freq", "Pick the quietest injection frequency");
  scan_freq->add_option("--background", scan.background, "Background waveform file")->required();
  scan_freq->add_option("--candidates", scan.candidates, "Candidate frequencies (Hz)")
      ->required()
      ->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (calibrate->parsed()) return do_calibrate(cal, out);
    if (extract->parsed()) return do_extract(ex, out);
    if (simulate->parsed()) return do_simulate(sim, out);
    if (monitor->parsed()) return do_monitor(mon, out);
    if (scan_freq->parsed()) return do_scan(scan, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace icz
