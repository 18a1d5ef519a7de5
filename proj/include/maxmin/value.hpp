#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace maxmin {

// Exact rational scalar. All item values, thresholds, LP variables and
// certificate entries are Values; nothing in the core ever rounds.
// mpq_class keeps numbers canonical (positive denominator, reduced) as
// long as inputs are canonical, which parse_value() guarantees.
using Value = mpq_class;

inline Value value_of(long num, long den = 1) {
    Value v(num, den);
    v.canonicalize();
    return v;
}

// Renders as "p/q" in lowest terms, or "p" when the denominator is 1.
std::string value_str(const Value& v);

// Accepts "p", "-p", "p/q"; canonicalizes. Throws UsageError on
// malformed input or a zero denominator.
Value parse_value(std::string_view text);

// Smallest integer >= num/den, as a long. Throws if out of range.
long value_ceil_long(const Value& v);

// Decimal approximation for log output only; never serialized.
double value_approx(const Value& v);

}  // namespace maxmin
