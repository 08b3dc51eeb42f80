// Copyright 2026 The Fairshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairshare/rational.hpp"

#include <cctype>

namespace fairshare {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
      throw ParseError("malformed rational '" + text + "'");
    }
    Rat r;
    if (r.set_str(text, 10) != 0) {
      throw ParseError("malformed rational '" + text + "'");
    }
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }

  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_integer_token(whole) || frac.empty() ||
        !is_integer_token(frac) || frac[0] == '-' || frac[0] == '+') {
      throw ParseError("malformed decimal '" + text + "'");
    }
    Int whole_part(whole);
    Int frac_part(frac);
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int num = whole_part * scale + (neg ? -frac_part : frac_part);
    Rat r(num, scale);
    r.canonicalize();
    return r;
  }

  if (!is_integer_token(text)) {
    throw ParseError("malformed rational '" + text + "'");
  }
  Rat r;
  if (r.set_str(text, 10) != 0) {
    throw ParseError("malformed rational '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

}  // namespace fairshare
