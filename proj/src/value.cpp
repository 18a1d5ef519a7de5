#include "maxmin/value.hpp"

#include <cctype>

#include "maxmin/errors.hpp"

namespace maxmin {

std::string value_str(const Value& v) {
    return v.get_str();
}

Value parse_value(std::string_view text) {
    if (text.empty()) throw UsageError("empty rational literal");
    // mpq_class's string constructor is lenient (accepts whitespace,
    // bases); validate the shape first so bad files fail loudly.
    size_t slash = std::string_view::npos;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (slash != std::string_view::npos || i == 0 || i + 1 == text.size())
                throw UsageError("malformed rational literal: " + std::string(text));
            slash = i;
        } else if (c == '-') {
            if (i != 0) throw UsageError("malformed rational literal: " + std::string(text));
        } else if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw UsageError("malformed rational literal: " + std::string(text));
        }
    }
    Value v;
    if (mpq_set_str(v.get_mpq_t(), std::string(text).c_str(), 10) != 0)
        throw UsageError("malformed rational literal: " + std::string(text));
    if (mpz_sgn(mpq_denref(v.get_mpq_t())) == 0)
        throw UsageError("zero denominator in rational literal: " + std::string(text));
    v.canonicalize();
    return v;
}

long value_ceil_long(const Value& v) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    if (!q.fits_slong_p()) throw UsageError("rational too large: " + value_str(v));
    return q.get_si();
}

double value_approx(const Value& v) {
    return v.get_d();
}

}  // namespace maxmin
