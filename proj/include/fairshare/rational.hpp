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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fairshare {

// Exact arbitrary-precision rational. All budgets, shares, thresholds and
// probabilities in the library are Rat; no floating point anywhere.
using Rat = mpq_class;
using Int = mpz_class;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class ResourceCapError : public std::runtime_error {
 public:
  explicit ResourceCapError(const std::string& what)
      : std::runtime_error(what) {}
};

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p/q", plain integers ("-3"), and decimal strings ("0.25"), all
// converted exactly (decimals get a power-of-ten denominator).
Rat parse_rational(const std::string& text);

// Canonical "p/q" form; integers print without the "/1".
std::string rat_to_string(const Rat& r);

// floor(r) as a big integer.
Int rat_floor(const Rat& r);

// ceil(r) as a big integer.
Int rat_ceil(const Rat& r);

inline bool fits_int(const Int& v) { return v.fits_slong_p(); }

inline long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer too large");
  return v.get_si();
}

}  // namespace fairshare
