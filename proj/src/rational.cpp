#include "osw/rational.hpp"

#include <cctype>

namespace osw {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rat(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    Rat value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("bad rational literal: " + text);
        // Base 10 explicitly: the default base-0 constructor reads a leading
        // zero as octal.
        value = Rat(mpz_class(num, 10), mpz_class(den, 10));
        if (value.get_den() == 0)
            throw std::invalid_argument("rational with zero denominator: " + text);
        value.canonicalize();
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("bad decimal literal: " + text);
        mpz_class scale = 1;
        for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
        mpz_class digits(whole + frac, 10);
        value = Rat(digits, scale);
        value.canonicalize();
    } else {
        if (!all_digits(s)) throw std::invalid_argument("bad integer literal: " + text);
        value = Rat(mpz_class(s, 10));
    }
    if (negative) value = -value;
    return value;
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace osw
