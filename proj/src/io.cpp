#include "icz/io.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "icz/format.hpp"

namespace icz {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kProbeHeader = "freq_hz,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im";
constexpr std::string_view kSampleRateKey = "sample_rate_hz";

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

[[noreturn]] void fail_at(ErrorKind kind, std::string_view source, std::size_t line,
                          const std::string& why) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << why;
  throw Error(kind, msg.str());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot replace " + path.string() + ": " + ec.message());
}

class FileLock {
 public:
  explicit FileLock(const fs::path& target) {
    fs::path lock_path = target;
    lock_path += ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) {
      throw Error(ErrorKind::Io, "cannot open lock " + lock_path.string() + ": " +
                                     std::strerror(errno));
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      const int err = errno;
      ::close(fd_);
      if (err == EWOULDBLOCK) {
        throw Error(ErrorKind::Locked, target.string() + " is being written by another process");
      }
      throw Error(ErrorKind::Io, "cannot lock " + lock_path.string() + ": " + std::strerror(err));
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

// Section schema: value type per key.
enum class ValueType { Text, Number, Complex, Triple };

struct KeySpec {
  ValueType type;
  bool repeatable = false;
};

const std::map<std::string, std::map<std::string, KeySpec>, std::less<>>& schema() {
  static const std::map<std::string, std::map<std::string, KeySpec>, std::less<>> s = {
      {"termination", {{"z_c1", {ValueType::Complex}}, {"z_c2", {ValueType::Complex}}}},
      {"calibration",
       {{"f_sig_hz", {ValueType::Number}},
        {"r_open", {ValueType::Complex}},
        {"r_short", {ValueType::Complex}},
        {"r_load", {ValueType::Complex}},
        {"z_load", {ValueType::Complex}}}},
      {"baseline",
       {{"label", {ValueType::Text}},
        {"z", {ValueType::Complex}},
        {"magnitude_ohm", {ValueType::Number}},
        {"angle_deg", {ValueType::Number}},
        {"f_sig_hz", {ValueType::Number}},
        {"captured_at", {ValueType::Text}}}},
      {"measurement",
       {{"label", {ValueType::Text}},
        {"z", {ValueType::Complex}},
        {"magnitude_ohm", {ValueType::Number}},
        {"angle_deg", {ValueType::Number}},
        {"rpm", {ValueType::Number}},
        {"vfd_hz", {ValueType::Number}},
        {"load", {ValueType::Text}}}},
      {"sut",
       {{"kind", {ValueType::Text}},
        {"z", {ValueType::Complex}},
        {"magnitude_ohm", {ValueType::Number}},
        {"angle_deg", {ValueType::Number}},
        {"point", {ValueType::Triple, true}},
        {"network", {ValueType::Text}},
        {"r_s", {ValueType::Number}},
        {"l_s", {ValueType::Number}},
        {"c_p", {ValueType::Number}},
        {"r_p", {ValueType::Number}},
        {"fault_fraction", {ValueType::Number}}}},
      {"noise",
       {{"white_noise_rms", {ValueType::Number}}, {"tone", {ValueType::Triple, true}}}},
      {"ppc",
       {{"z", {ValueType::Complex}},
        {"m0_h", {ValueType::Number}},
        {"d_m", {ValueType::Number}},
        {"d0_m", {ValueType::Number}},
        {"r_p", {ValueType::Number}}}},
      {"iip_model",
       {{"turns_ratio", {ValueType::Number}},
        {"magnetizing_l", {ValueType::Number}},
        {"leakage_l", {ValueType::Number}},
        {"winding_r", {ValueType::Number}}}},
      {"rip_model",
       {{"turns_ratio", {ValueType::Number}},
        {"magnetizing_l", {ValueType::Number}},
        {"leakage_l", {ValueType::Number}},
        {"winding_r", {ValueType::Number}}}},
  };
  return s;
}

std::vector<double> parse_numbers(std::string_view text, std::size_t count, std::string_view what) {
  const auto parts = split_ws(text);
  if (parts.size() != count) {
    throw Error(ErrorKind::Parse, std::string(what) + ": expected " + std::to_string(count) +
                                      " numbers, got '" + std::string(text) + "'");
  }
  std::vector<double> out;
  for (auto p : parts) out.push_back(parse_double(p, what));
  return out;
}

void check_value(const KeySpec& spec, std::string_view key, std::string_view value) {
  switch (spec.type) {
    case ValueType::Text: return;
    case ValueType::Number: parse_double(value, key); return;
    case ValueType::Complex: parse_complex(value, key); return;
    case ValueType::Triple: parse_numbers(value, 3, key); return;
  }
}

std::string section_where(const Section& s) {
  return s.line > 0 ? "[" + s.name + "] (line " + std::to_string(s.line) + ")" : "[" + s.name + "]";
}

std::string require(const Section& s, std::string_view key) {
  auto v = s.get(key);
  if (!v) throw Error(ErrorKind::Parse, section_where(s) + " is missing '" + std::string(key) + "'");
  return *v;
}

double number(const Section& s, std::string_view key) {
  return parse_double(require(s, key), key);
}

double number_or(const Section& s, std::string_view key, double fallback) {
  const auto v = s.get(key);
  return v ? parse_double(*v, key) : fallback;
}

void expect_name(const Section& s, std::string_view name) {
  if (s.name != name) {
    throw Error(ErrorKind::Parse, "expected [" + std::string(name) + "], got " + section_where(s));
  }
}

// Either `z = re im` or `magnitude_ohm` + `angle_deg`.
Complex impedance_field(const Section& s) {
  if (auto z = s.get("z")) {
    if (s.get("magnitude_ohm") || s.get("angle_deg")) {
      throw Error(ErrorKind::Parse, section_where(s) + ": give 'z' or the polar pair, not both");
    }
    return parse_complex(*z, "z");
  }
  return from_polar_deg(number(s, "magnitude_ohm"), number(s, "angle_deg"));
}

}  // namespace

std::string format_complex(Complex z) { return format_double(z.real()) + " " + format_double(z.imag()); }

Complex parse_complex(std::string_view text, std::string_view what) {
  const auto v = parse_numbers(text, 2, what);
  return {v[0], v[1]};
}

// ---- probe files ----

void ProbeFile::validate() const {
  if (rows.empty()) throw Error(ErrorKind::EmptyFile, "probe file has no rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!std::isfinite(rows[i].freq_hz) || !(rows[i].freq_hz > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "probe row frequency must be positive");
    }
    rows[i].abcd.validate();
    if (i > 0 && !(rows[i].freq_hz > rows[i - 1].freq_hz)) {
      throw Error(ErrorKind::NonMonotone, "probe frequencies must be strictly increasing");
    }
  }
}

ProbeFile parse_probe_text(std::string_view text, std::string_view source) {
  const auto lines = lines_of(text);
  std::size_t i = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    while (i < lines.size()) {
      const auto l = trim(lines[i++]);
      if (!l.empty()) return l;
    }
    return std::nullopt;
  };

  const auto id_line = next_line();
  if (!id_line) throw Error(ErrorKind::EmptyFile, std::string(source) + ": empty probe file");
  const auto id_parts = split(*id_line, ',');
  if (id_parts.size() != 2 || id_parts[0] != "probe_id" || id_parts[1].empty()) {
    fail_at(ErrorKind::Parse, source, i, "expected 'probe_id,<id>'");
  }
  ProbeFile probe;
  probe.probe_id = std::string(id_parts[1]);

  const auto header = next_line();
  if (!header) fail_at(ErrorKind::EmptyFile, source, i, "missing column header");
  std::string compact;
  for (auto part : split(*header, ',')) {
    if (!compact.empty()) compact += ',';
    compact += part;
  }
  if (compact != kProbeHeader) {
    fail_at(ErrorKind::Parse, source, i, "column header must be '" + std::string(kProbeHeader) + "'");
  }

  while (auto line = next_line()) {
    const auto fields = split(*line, ',');
    if (fields.size() != 9) fail_at(ErrorKind::Parse, source, i, "expected 9 columns");
    double v[9];
    try {
      for (int k = 0; k < 9; ++k) v[k] = parse_double(fields[k], "probe value");
    } catch (const Error& e) {
      fail_at(ErrorKind::Parse, source, i, e.what());
    }
    ProbeRow row{v[0], {{v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}, {v[7], v[8]}}};
    if (!(row.freq_hz > 0.0)) fail_at(ErrorKind::Parse, source, i, "frequency must be positive");
    if (!probe.rows.empty() && !(row.freq_hz > probe.rows.back().freq_hz)) {
      fail_at(ErrorKind::NonMonotone, source, i,
              "frequency " + format_double(row.freq_hz) + " Hz does not increase");
    }
    probe.rows.push_back(row);
  }
  if (probe.rows.empty()) {
    throw Error(ErrorKind::EmptyFile, std::string(source) + ": probe file has no data rows");
  }
  return probe;
}

ProbeFile parse_probe_file(const fs::path& path) {
  return parse_probe_text(read_text(path), path.string());
}

std::string write_probe_text(const ProbeFile& probe) {
  probe.validate();
  std::string out = "probe_id," + probe.probe_id + "\n" + std::string(kProbeHeader) + "\n";
  for (const auto& r : probe.rows) {
    out += format_double(r.freq_hz);
    for (Complex z : {r.abcd.a, r.abcd.b, r.abcd.c, r.abcd.d}) {
      out += ',' + format_double(z.real()) + ',' + format_double(z.imag());
    }
    out += '\n';
  }
  return out;
}

void write_probe_file(const fs::path& path, const ProbeFile& probe) {
  write_text_atomic(path, write_probe_text(probe));
}

TwoPortAbcd probe_abcd_at(const ProbeFile& probe, double f_hz) {
  const auto& rows = probe.rows;
  if (rows.empty()) throw Error(ErrorKind::EmptyFile, "probe file has no rows");
  if (!(f_hz >= rows.front().freq_hz && f_hz <= rows.back().freq_hz)) {
    throw Error(ErrorKind::OutOfBand, "frequency " + format_double(f_hz) +
                                          " Hz outside the characterised band of probe '" +
                                          probe.probe_id + "'");
  }
  const auto hi = std::lower_bound(rows.begin(), rows.end(), f_hz,
                                   [](const ProbeRow& r, double f) { return r.freq_hz < f; });
  if (hi->freq_hz == f_hz) return hi->abcd;
  const auto lo = std::prev(hi);
  const double t = (f_hz - lo->freq_hz) / (hi->freq_hz - lo->freq_hz);
  auto lerp = [t](Complex x, Complex y) { return x + t * (y - x); };
  return {lerp(lo->abcd.a, hi->abcd.a), lerp(lo->abcd.b, hi->abcd.b),
          lerp(lo->abcd.c, hi->abcd.c), lerp(lo->abcd.d, hi->abcd.d)};
}

// ---- waveforms ----

Waveform parse_waveform_text(std::string_view text, std::string_view source) {
  const auto lines = lines_of(text);
  Waveform w;
  bool have_rate = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    try {
      if (!have_rate) {
        const auto parts = split(line, ',');
        if (parts.size() != 2 || parts[0] != kSampleRateKey) {
          fail_at(ErrorKind::Parse, source, i + 1, "expected 'sample_rate_hz,<rate>'");
        }
        w.sample_rate_hz = parse_double(parts[1], kSampleRateKey);
        have_rate = true;
      } else {
        w.samples.push_back(parse_double(line, "sample"));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Parse || std::string_view(e.what()).starts_with(source)) throw;
      fail_at(ErrorKind::Parse, source, i + 1, e.what());
    }
  }
  if (!have_rate) throw Error(ErrorKind::EmptyFile, std::string(source) + ": empty waveform file");
  w.validate();
  return w;
}

Waveform read_waveform(const fs::path& path) {
  return parse_waveform_text(read_text(path), path.string());
}

std::string write_waveform_text(const Waveform& w) {
  w.validate();
  std::string out = std::string(kSampleRateKey) + "," + format_double(w.sample_rate_hz) + "\n";
  out.reserve(out.size() + w.samples.size() * 24);
  for (double s : w.samples) {
    out += format_double(s);
    out += '\n';
  }
  return out;
}

void write_waveform(const fs::path& path, const Waveform& w) {
  write_text_atomic(path, write_waveform_text(w));
}

// ---- session documents ----

std::optional<std::string> Section::get(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<std::string> Section::get_all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries) {
    if (k == key) out.push_back(v);
  }
  return out;
}

void Section::set(std::string key, std::string value) {
  for (auto& [k, v] : entries) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  add(std::move(key), std::move(value));
}

void Section::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}

SessionDocument SessionDocument::parse(std::string_view text, std::string_view source) {
  SessionDocument doc;
  const auto lines = lines_of(text);
  std::set<std::string, std::less<>> seen_keys;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_at(ErrorKind::Parse, source, lineno, "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(name)) {
        fail_at(ErrorKind::Parse, source, lineno, "unknown section [" + name + "]");
      }
      doc.sections.push_back({name, {}, static_cast<int>(lineno)});
      seen_keys.clear();
      continue;
    }
    if (doc.sections.empty()) fail_at(ErrorKind::Parse, source, lineno, "key outside any section");
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail_at(ErrorKind::Parse, source, lineno, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    Section& sec = doc.sections.back();

    const auto& keys = schema().find(sec.name)->second;
    const auto spec = keys.find(key);
    if (spec == keys.end()) {
      fail_at(ErrorKind::Parse, source, lineno, "unknown key '" + key + "' in [" + sec.name + "]");
    }
    if (!spec->second.repeatable && !seen_keys.insert(key).second) {
      fail_at(ErrorKind::Parse, source, lineno, "duplicate key '" + key + "'");
    }
    try {
      check_value(spec->second, key, value);
    } catch (const Error& e) {
      fail_at(ErrorKind::Parse, source, lineno, e.what());
    }
    sec.add(key, value);
  }
  return doc;
}

std::string SessionDocument::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i) out += '\n';
    out += '[' + sections[i].name + "]\n";
    for (const auto& [k, v] : sections[i].entries) out += k + " = " + v + '\n';
  }
  return out;
}

const Section* SessionDocument::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const Section*> SessionDocument::find_all(std::string_view name) const {
  std::vector<const Section*> out;
  for (const auto& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

SessionDocument load_document(const fs::path& path) {
  return SessionDocument::parse(read_text(path), path.string());
}

void save_document(const fs::path& path, const SessionDocument& doc) {
  // Round-trip through the parser so nothing unreadable is ever written.
  const std::string text = doc.to_text();
  SessionDocument::parse(text, path.string());
  FileLock lock(path);
  write_text_atomic(path, text);
}

void append_sections(const fs::path& path, const std::vector<Section>& sections) {
  FileLock lock(path);
  SessionDocument doc;
  if (fs::exists(path)) doc = SessionDocument::parse(read_text(path), path.string());
  doc.sections.insert(doc.sections.end(), sections.begin(), sections.end());
  const std::string text = doc.to_text();
  SessionDocument::parse(text, path.string());
  write_text_atomic(path, text);
}

// ---- typed sections ----

Section to_section(const CalibrationSet& cal) {
  cal.validate();
  Section s{"calibration", {}, 0};
  s.add("f_sig_hz", format_double(cal.f_sig_hz));
  if (cal.r_open) s.add("r_open", format_complex(*cal.r_open));
  s.add("r_short", format_complex(cal.r_short));
  s.add("r_load", format_complex(cal.r_load));
  s.add("z_load", format_complex(cal.z_load));
  return s;
}

CalibrationSet calibration_from(const Section& s) {
  expect_name(s, "calibration");
  CalibrationSet cal;
  cal.f_sig_hz = number(s, "f_sig_hz");
  if (auto v = s.get("r_open")) cal.r_open = parse_complex(*v, "r_open");
  cal.r_short = parse_complex(require(s, "r_short"), "r_short");
  cal.r_load = parse_complex(require(s, "r_load"), "r_load");
  if (auto v = s.get("z_load")) cal.z_load = parse_complex(*v, "z_load");
  cal.validate();
  return cal;
}

Section to_section(const TerminationConfig& term) {
  term.validate();
  Section s{"termination", {}, 0};
  s.add("z_c1", format_complex(term.z_c1));
  s.add("z_c2", format_complex(term.z_c2));
  return s;
}

TerminationConfig termination_from(const Section& s) {
  expect_name(s, "termination");
  TerminationConfig term;
  if (auto v = s.get("z_c1")) term.z_c1 = parse_complex(*v, "z_c1");
  if (auto v = s.get("z_c2")) term.z_c2 = parse_complex(*v, "z_c2");
  term.validate();
  return term;
}

Section to_section(const BaselineRecord& baseline) {
  baseline.validate();
  Section s{"baseline", {}, 0};
  s.add("label", baseline.label);
  s.add("z", format_complex(baseline.impedance));
  s.add("f_sig_hz", format_double(baseline.f_sig_hz));
  if (!baseline.captured_at.empty()) s.add("captured_at", baseline.captured_at);
  return s;
}

BaselineRecord baseline_from(const Section& s) {
  expect_name(s, "baseline");
  BaselineRecord b;
  b.impedance = impedance_field(s);
  b.label = s.get("label").value_or("baseline");
  b.f_sig_hz = number_or(s, "f_sig_hz", 0.0);
  b.captured_at = s.get("captured_at").value_or("");
  b.validate();
  return b;
}

Section to_measurement_section(const SeriesEntry& entry) {
  require_finite(entry.measured, "measured impedance");
  entry.point.validate();
  Section s{"measurement", {}, 0};
  if (!entry.label.empty()) s.add("label", entry.label);
  s.add("z", format_complex(entry.measured));
  if (entry.point.rpm) s.add("rpm", format_double(*entry.point.rpm));
  if (entry.point.vfd_hz) s.add("vfd_hz", format_double(*entry.point.vfd_hz));
  if (entry.point.load_label) s.add("load", *entry.point.load_label);
  return s;
}

SeriesEntry measurement_from(const Section& s) {
  expect_name(s, "measurement");
  SeriesEntry e;
  e.measured = impedance_field(s);
  e.label = s.get("label").value_or("");
  if (auto v = s.get("rpm")) e.point.rpm = parse_double(*v, "rpm");
  if (auto v = s.get("vfd_hz")) e.point.vfd_hz = parse_double(*v, "vfd_hz");
  e.point.load_label = s.get("load");
  e.point.validate();
  return e;
}

Section to_section(const SutModel& sut) {
  Section s{"sut", {}, 0};
  struct Writer {
    Section& s;
    void operator()(const FixedImpedance& f) {
      s.add("kind", "fixed");
      s.add("z", format_complex(f.z));
    }
    void operator()(const ImpedanceTable& t) {
      s.add("kind", "table");
      for (const auto& [f, z] : t.points) s.add("point", format_double(f) + " " + format_complex(z));
    }
    void operator()(const RlcNetwork& n) {
      s.add("kind", "rlc");
      s.add("network", n.to_string());
    }
    void operator()(const MotorWindingModel& m) {
      m.validate();
      s.add("kind", "motor");
      s.add("r_s", format_double(m.r_s));
      s.add("l_s", format_double(m.l_s));
      s.add("c_p", format_double(m.c_p));
      s.add("r_p", format_double(m.r_p));
      s.add("fault_fraction", format_double(m.fault_fraction));
    }
  };
  std::visit(Writer{s}, sut);
  return s;
}

SutModel sut_from(const Section& s) {
  expect_name(s, "sut");
  const std::string kind = require(s, "kind");
  if (kind == "fixed") return FixedImpedance{impedance_field(s)};
  if (kind == "table") {
    ImpedanceTable t;
    for (const auto& p : s.get_all("point")) {
      const auto v = parse_numbers(p, 3, "point");
      if (!t.points.empty() && !(v[0] > t.points.back().first)) {
        throw Error(ErrorKind::NonMonotone, section_where(s) + ": table frequencies must increase");
      }
      t.points.emplace_back(v[0], Complex{v[1], v[2]});
    }
    if (t.points.empty()) throw Error(ErrorKind::Parse, section_where(s) + ": table has no points");
    return t;
  }
  if (kind == "rlc") return RlcNetwork::parse(require(s, "network"));
  if (kind == "motor") {
    MotorWindingModel m;
    m.r_s = number(s, "r_s");
    m.l_s = number(s, "l_s");
    m.c_p = number(s, "c_p");
    m.r_p = number(s, "r_p");
    m.fault_fraction = number_or(s, "fault_fraction", 0.0);
    m.validate();
    return m;
  }
  throw Error(ErrorKind::Parse, section_where(s) + ": unknown SUT kind '" + kind + "'");
}

Section to_section(const NoiseModel& noise) {
  noise.validate();
  Section s{"noise", {}, 0};
  s.add("white_noise_rms", format_double(noise.white_noise_rms));
  for (const auto& t : noise.interference_tones) {
    s.add("tone", format_double(t.frequency_hz) + " " + format_double(t.amplitude) + " " +
                      format_double(t.phase_deg));
  }
  return s;
}

NoiseModel noise_from(const Section& s) {
  expect_name(s, "noise");
  NoiseModel n;
  n.white_noise_rms = number_or(s, "white_noise_rms", 0.0);
  for (const auto& t : s.get_all("tone")) {
    const auto v = parse_numbers(t, 3, "tone");
    n.interference_tones.push_back({v[0], v[1], v[2]});
  }
  n.validate();
  return n;
}

Section to_section(const PpcModel& ppc) {
  ppc.validate();
  Section s{"ppc", {}, 0};
  s.add("m0_h", format_double(ppc.m0_h));
  s.add("d_m", format_double(ppc.d_m));
  s.add("d0_m", format_double(ppc.d0_m));
  s.add("r_p", format_double(ppc.r_p));
  return s;
}

Complex ppc_from(const Section& s, double f_hz) {
  expect_name(s, "ppc");
  if (auto z = s.get("z")) {
    if (s.entries.size() != 1) {
      throw Error(ErrorKind::Parse, section_where(s) + ": 'z' excludes the distance model keys");
    }
    return parse_complex(*z, "z");
  }
  PpcModel p;
  p.m0_h = number_or(s, "m0_h", p.m0_h);
  p.d_m = number_or(s, "d_m", p.d_m);
  p.d0_m = number_or(s, "d0_m", p.d0_m);
  p.r_p = number_or(s, "r_p", p.r_p);
  return ppc_impedance(p, f_hz);
}

Section to_section(const ProbeParams& probe, std::string name) {
  Section s{std::move(name), {}, 0};
  s.add("turns_ratio", format_double(probe.turns_ratio));
  s.add("magnetizing_l", format_double(probe.magnetizing_l));
  s.add("leakage_l", format_double(probe.leakage_l));
  s.add("winding_r", format_double(probe.winding_r));
  return s;
}

ProbeParams probe_params_from(const Section& s) {
  if (s.name != "iip_model" && s.name != "rip_model") {
    throw Error(ErrorKind::Parse, "expected a probe model section, got " + section_where(s));
  }
  ProbeParams p;
  p.turns_ratio = number_or(s, "turns_ratio", p.turns_ratio);
  p.magnetizing_l = number_or(s, "magnetizing_l", p.magnetizing_l);
  p.leakage_l = number_or(s, "leakage_l", p.leakage_l);
  p.winding_r = number_or(s, "winding_r", p.winding_r);
  return p;
}

}  // namespace icz
