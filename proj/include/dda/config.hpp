#ifndef DDA_CONFIG_HPP
#define DDA_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "dda/approx.hpp"
#include "dda/manifold.hpp"
#include "dda/quasinorm.hpp"

namespace dda {

// One parsed value of the key-value configuration language:
//   key = 3.5
//   key = [1.5, 0.5]
//   key = veronese(n=3)
//   key = poly(coeffs=[0, 0, 0, 1])
struct ConfigValue {
    enum class Kind { Number, List, Call };
    Kind kind = Kind::Number;
    double number = 0.0;
    std::vector<double> list;
    std::string callee;                        // Call: function name (also bare idents)
    std::map<std::string, ConfigValue> args;   // Call: keyword arguments

    int line = 0, column = 0;  // where the value started, for error reporting
};

using ConfigDoc = std::map<std::string, ConfigValue>;

// Parses a configuration document ('#' comments, blank lines allowed).
// Throws config_error carrying the line and column of the first problem.
ConfigDoc parse_config(const std::string& text);

// Parses a single value expression (the right-hand side grammar).
ConfigValue parse_config_value(const std::string& text);

// Factories from parsed values; all throw config_error on shape mismatches.
MongeManifold make_manifold(const ConfigValue& v);
Shift make_shift(const ConfigValue& v);
ApproxFunction make_psi(const ConfigValue& v);
QuasinormWeights make_weights(const ConfigValue& v);

// Canonical serialization (stable key order, 17-significant-digit reals).
std::string canonical_config(const ConfigDoc& doc);

// FNV-1a 64-bit hash, rendered as 16 hex digits.
std::string config_hash(const std::string& canonical);

} // namespace dda

#endif
