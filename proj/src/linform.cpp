#include "conecheck/linform.hpp"

#include <sstream>

namespace conecheck {

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sub");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

i64 LinForm::eval(i64 n) const {
    if (n < guard) throw std::invalid_argument("LinForm evaluated below its guard");
    return checked_add(checked_mul(slope, n), offset);
}

i64 LinForm::as_constant() const {
    if (!is_constant()) throw std::invalid_argument("LinForm is not constant");
    return offset;
}

static i64 max_guard(const LinForm& a, const LinForm& b) {
    return a.guard > b.guard ? a.guard : b.guard;
}

LinForm operator+(const LinForm& a, const LinForm& b) {
    return LinForm(checked_add(a.slope, b.slope), checked_add(a.offset, b.offset), max_guard(a, b));
}

LinForm operator-(const LinForm& a, const LinForm& b) {
    return LinForm(checked_sub(a.slope, b.slope), checked_sub(a.offset, b.offset), max_guard(a, b));
}

LinForm operator-(const LinForm& a) { return LinForm(checked_sub(0, a.slope), checked_sub(0, a.offset), a.guard); }

LinForm operator*(i64 k, const LinForm& a) {
    return LinForm(checked_mul(k, a.slope), checked_mul(k, a.offset), a.guard);
}

// f(n) = slope*n + offset on n >= guard. With slope >= 0 the minimum over the
// range is attained at n = guard; with slope <= 0 the maximum is. A strictly
// decreasing form is eventually below any bound, a strictly increasing one above.

bool always_ge(const LinForm& f, i64 c) {
    if (f.slope >= 0) return f.eval(f.guard) >= c;
    return false;
}

bool always_gt(const LinForm& f, i64 c) {
    if (f.slope >= 0) return f.eval(f.guard) > c;
    return false;
}

bool always_le(const LinForm& f, i64 c) {
    if (f.slope <= 0) return f.eval(f.guard) <= c;
    return false;
}

bool always_lt(const LinForm& f, i64 c) {
    if (f.slope <= 0) return f.eval(f.guard) < c;
    return false;
}

bool always_eq(const LinForm& f, i64 c) { return f.slope == 0 && f.offset == c; }

std::string to_string(const LinForm& f) {
    if (f.is_constant()) return std::to_string(f.offset);
    std::ostringstream os;
    if (f.slope == -1) os << "-n";
    else if (f.slope == 1) os << "n";
    else os << f.slope << "n";
    if (f.offset > 0) os << "+" << f.offset;
    else if (f.offset < 0) os << f.offset;
    os << " [n>=" << f.guard << "]";
    return os.str();
}

}  // namespace conecheck
