// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qst/cli.hpp"

namespace qst {

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

// Parses a full decimal; the whole string must be consumed.
double parse_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + s.size())
    throw std::invalid_argument("cannot parse number \"" + s + "\"");
  return v;
}

}  // namespace

double parse_real_pi(const std::string& text) {
  const std::string s = strip(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_decimal(s);

  // [coef][*]pi[/den]
  std::string prefix = strip(s.substr(0, pos));
  const std::string suffix = strip(s.substr(pos + 2));

  double coef = 1.0;
  if (prefix == "-") {
    coef = -1.0;
  } else if (prefix == "+" || prefix.empty()) {
    coef = 1.0;
  } else {
    if (prefix.back() == '*') prefix = strip(prefix.substr(0, prefix.size() - 1));
    coef = parse_decimal(prefix);
  }

  double den = 1.0;
  if (!suffix.empty()) {
    if (suffix[0] != '/')
      throw std::invalid_argument("cannot parse \"" + text +
                                  "\" (expected pi or pi/N)");
    den = parse_decimal(strip(suffix.substr(1)));
    if (den == 0.0)
      throw std::invalid_argument("division by zero in \"" + text + "\"");
  }
  return coef * std::acos(-1.0) / den;
}

}  // namespace qst
