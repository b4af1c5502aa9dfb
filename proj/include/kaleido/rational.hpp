#pragma once

#include <cctype>

#include <boost/multiprecision/cpp_int.hpp>

#include "types.hpp"

namespace kaleido {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_perfect_square(const Rat& r, Rat* root = nullptr) {
    if (r < 0) return false;
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    if (root) *root = Rat(sn, sd);
    return true;
}

// Parses an exact rational written as an optionally signed integer or "p/q".
inline Rat parse_rat(const std::string& text) {
    require(!text.empty(), "empty rational literal");
    auto digits = [](const std::string& s) {
        std::size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            require(digits(text), "malformed rational literal: " + text);
            return Rat(BigInt(text));
        }
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        require(digits(num) && digits(den) && den[0] != '-' && den[0] != '+',
                "malformed rational literal: " + text);
        BigInt d(den);
        require(d != 0, "zero denominator in rational literal: " + text);
        return Rat(BigInt(num), d);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

inline std::string rat_str(const Rat& r) { return r.str(); }

}  // namespace kaleido
