#include "icz/rlc.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "icz/format.hpp"

namespace icz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked_value(double v, bool strictly_positive, const char* what) {
  const bool ok = std::isfinite(v) && (strictly_positive ? v > 0.0 : v >= 0.0);
  if (!ok) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + (strictly_positive ? " must be > 0" : " must be >= 0"));
  }
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RlcNetwork parse() {
    RlcNetwork net = node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return net;
  }

 private:
  RlcNetwork node() {
    const std::string word = identifier();
    expect('(');
    RlcNetwork out = RlcNetwork::resistor(0.0);
    if (word == "r" || word == "l" || word == "c") {
      const double v = number();
      if (word == "r") out = RlcNetwork::resistor(v);
      if (word == "l") out = RlcNetwork::inductor(v);
      if (word == "c") out = RlcNetwork::capacitor(v);
    } else if (word == "series" || word == "parallel") {
      std::vector<RlcNetwork> parts;
      parts.push_back(node());
      while (peek() == ',') {
        ++pos_;
        parts.push_back(node());
      }
      out = word == "series" ? RlcNetwork::series(std::move(parts))
                             : RlcNetwork::parallel(std::move(parts));
    } else {
      fail("unknown element '" + word + "'");
    }
    expect(')');
    return out;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected element name");
    std::string word(text_.substr(start, pos_ - start));
    for (char& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return word;
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ',' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return parse_double(text_.substr(start, pos_ - start), "element value");
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) {
    std::ostringstream msg;
    msg << "RLC network, column " << pos_ + 1 << ": " << why;
    throw Error(ErrorKind::Parse, msg.str());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RlcNetwork::RlcNetwork(Kind kind, double value, std::vector<RlcNetwork> children)
    : kind_(kind), value_(value), children_(std::move(children)) {}

RlcNetwork RlcNetwork::resistor(double ohms) {
  return {Kind::Resistor, checked_value(ohms, false, "resistance"), {}};
}

RlcNetwork RlcNetwork::inductor(double henries) {
  return {Kind::Inductor, checked_value(henries, false, "inductance"), {}};
}

RlcNetwork RlcNetwork::capacitor(double farads) {
  return {Kind::Capacitor, checked_value(farads, true, "capacitance"), {}};
}

RlcNetwork RlcNetwork::series(std::vector<RlcNetwork> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "empty series combinator");
  return {Kind::Series, 0.0, std::move(parts)};
}

RlcNetwork RlcNetwork::parallel(std::vector<RlcNetwork> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "empty parallel combinator");
  return {Kind::Parallel, 0.0, std::move(parts)};
}

RlcNetwork RlcNetwork::parse(std::string_view text) { return Parser(text).parse(); }

std::string RlcNetwork::to_string() const {
  switch (kind_) {
    case Kind::Resistor: return "r(" + format_double(value_) + ")";
    case Kind::Inductor: return "l(" + format_double(value_) + ")";
    case Kind::Capacitor: return "c(" + format_double(value_) + ")";
    case Kind::Series:
    case Kind::Parallel: {
      std::string out = kind_ == Kind::Series ? "series(" : "parallel(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += ", ";
        out += children_[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

Complex impedance_of_rlc(const RlcNetwork& net, double f_hz) {
  if (!(f_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "frequency must be > 0");
  const double w = kTwoPi * f_hz;
  switch (net.kind()) {
    case RlcNetwork::Kind::Resistor: return {net.value(), 0.0};
    case RlcNetwork::Kind::Inductor: return {0.0, w * net.value()};
    case RlcNetwork::Kind::Capacitor: return 1.0 / Complex{0.0, w * net.value()};
    case RlcNetwork::Kind::Series: {
      Complex z{0.0};
      for (const auto& part : net.children()) z += impedance_of_rlc(part, f_hz);
      return z;
    }
    case RlcNetwork::Kind::Parallel: {
      Complex z = impedance_of_rlc(net.children().front(), f_hz);
      for (std::size_t i = 1; i < net.children().size(); ++i) {
        const Complex zi = impedance_of_rlc(net.children()[i], f_hz);
        if (z == 0.0 || zi == 0.0) {
          z = 0.0;
          continue;
        }
        const Complex sum = z + zi;
        if (std::abs(sum) <= 1e-15 * std::max(std::abs(z), std::abs(zi))) {
          throw Error(ErrorKind::Resonance, "parallel branches cancel at " +
                                                format_double(f_hz) + " Hz");
        }
        z = z * zi / sum;
      }
      return z;
    }
  }
  return {};
}

}  // namespace icz
