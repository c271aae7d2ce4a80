#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

namespace qs {

// Exact rational scalar used throughout the model and the encoder.
// No floating point enters the model; doubles appear only at the SMT
// model-parsing boundary and in the SVG renderer.
using Rat = mpq_class;

using Assignment = std::map<std::string, Rat>;

// Accepts "12", "-3/4", "1.25". Decimals are parsed exactly.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical form: "a" or "a/b", b > 0.
std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

}  // namespace qs
