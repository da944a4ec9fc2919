#include "hcs/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace hcs {

std::string to_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

long long parse_int(const std::string& s) {
    if (s.empty()) throw InvalidParameterError("empty integer in rational literal");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw InvalidParameterError("bad rational literal: " + s);
    }
    if (pos != s.size()) throw InvalidParameterError("bad rational literal: " + s);
    return v;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = parse_int(text.substr(0, slash));
        long long den = parse_int(text.substr(slash + 1));
        if (den == 0) throw InvalidParameterError("zero denominator: " + text);
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(parse_int(text), 1);
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty()) return Rat(parse_int(head.empty() ? "0" : head), 1);
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InvalidParameterError("bad decimal literal: " + text);
    if (frac.size() > 17) throw InvalidParameterError("decimal literal too long: " + text);
    bool neg = !head.empty() && head[0] == '-';
    std::string digits = head;
    if (neg) digits = head.substr(1);
    if (digits == "+" || digits.empty()) digits = "0";
    long long ipart = parse_int(digits);
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    long long fpart = parse_int(frac);
    Rat mag = Rat(ipart, 1) + Rat(fpart, scale);
    return neg ? -mag : mag;
}

long long rat_floor(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

}  // namespace hcs
