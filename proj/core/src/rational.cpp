#include "fls/rational.hpp"

#include <charconv>

#include "fls/error.hpp"

namespace fls {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view s, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        negative = s[i] == '-';
        ++i;
    }
    if (i == s.size()) fail(ErrorCode::schema, "malformed rational '" + std::string(whole) + "'");
    boost::multiprecision::cpp_int v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') fail(ErrorCode::schema, "malformed rational '" + std::string(whole) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return negative ? -v : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::schema, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

int exact_rank(RationalMatrix rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= factor * rows[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

}  // namespace fls
