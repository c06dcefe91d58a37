#include "ncsched/rational.hpp"

#include <cctype>

#include "ncsched/error.hpp"

namespace ncsched {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-') {
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(strip_plus(num), 10);
  mpz_class d(strip_plus(den), 10);
  if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int precision) {
  if (precision < 0) precision = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(precision));
  bool negative = value < 0;
  Rational magnitude = negative ? Rational(-value) : value;
  // round half away from zero: floor(|q| * 10^p + 1/2)
  Rational scaled = magnitude * Rational(scale) + Rational(1, 2);
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpz_class int_part = rounded / scale;
  mpz_class frac_part = rounded % scale;
  std::string out = (negative && rounded != 0) ? "-" : "";
  out += int_part.get_str();
  if (precision > 0) {
    std::string frac = frac_part.get_str();
    out += ".";
    out += std::string(static_cast<std::size_t>(precision) - frac.size(), '0');
    out += frac;
  }
  return out;
}

Rational harmonic(std::size_t k) {
  Rational h(0);
  for (std::size_t i = 1; i <= k; ++i) h += Rational(1, static_cast<unsigned long>(i));
  return h;
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string to_string(const ExtendedRational& value) {
  return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

ExtendedRational parse_extended(std::string_view text) {
  if (text == "inf") return ExtendedRational::infinity();
  return ExtendedRational(parse_rational(text));
}

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::Parse: return "Parse";
    case Errc::InvalidInstance: return "InvalidInstance";
    case Errc::EmptyInstance: return "EmptyInstance";
    case Errc::UnknownId: return "UnknownId";
    case Errc::InfeasibleRates: return "InfeasibleRates";
    case Errc::RateOnNonFrontJob: return "RateOnNonFrontJob";
    case Errc::PolicyStall: return "PolicyStall";
    case Errc::InfeasibleSegment: return "InfeasibleSegment";
    case Errc::TraceInstanceMismatch: return "TraceInstanceMismatch";
    case Errc::MissingPrediction: return "MissingPrediction";
    case Errc::BranchingDetected: return "BranchingDetected";
    case Errc::OracleFailure: return "OracleFailure";
    case Errc::OrderNotTotal: return "OrderNotTotal";
    case Errc::MissingInitialJob: return "MissingInitialJob";
    case Errc::TopologyMismatch: return "TopologyMismatch";
    case Errc::UnmatchedChain: return "UnmatchedChain";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UndefinedAverage: return "UndefinedAverage";
    case Errc::IncompatibleNoise: return "IncompatibleNoise";
    case Errc::HistoryMismatch: return "HistoryMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NonIntegralLength: return "NonIntegralLength";
    case Errc::UnknownName: return "UnknownName";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace ncsched
