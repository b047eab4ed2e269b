#include "avoidkit/rational.hpp"

#include <cctype>
#include <ostream>

namespace avoidkit {

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
    if (sgn(den) == 0) throw input_error("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw input_error("empty rational token");
    auto slash = text.find('/');
    auto check_int = [&](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto strip_plus = [](const std::string& s) {
        return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    };
    if (slash == std::string::npos) {
        if (!check_int(text, true)) throw input_error("malformed rational token '" + text + "'");
        return Rational(Integer(strip_plus(text)));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!check_int(num, true) || !check_int(den, false))
        throw input_error("malformed rational token '" + text + "'");
    return Rational(Integer(strip_plus(num)), Integer(den));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw input_error("rational division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
}

Rational Rational::abs() const {
    return sign() < 0 ? -*this : *this;
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
    Integer num = q_.get_num();
    Integer den = q_.get_den();
    bool neg = sgn(num) < 0;
    if (neg) num = -num;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer scaled = num * scale / den; // truncates toward zero
    Integer whole = scaled / scale;
    Integer frac = scaled % scale;
    std::string f = frac.get_str();
    f.insert(f.begin(), static_cast<std::size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    std::string out = (neg && (sgn(whole) != 0 || !f.empty()) ? "-" : "") + whole.get_str();
    if (!f.empty()) out += "." + f;
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace avoidkit
