#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "lmod/errors.hpp"

namespace lmod {

// Exact rational scalar used throughout; no floating point anywhere.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

using Vec = std::vector<Rat>;

inline std::string rat_str(const Rat& r) {
    return r.str();
}

// Parses "3", "-3/2", " 5 / 7 ".
inline Rat parse_rat(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty rational literal");
    try {
        return Rat(t);
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw RankMismatch("dot: length mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw RankMismatch("vec+: length mismatch");
    Vec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw RankMismatch("vec-: length mismatch");
    Vec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

inline Vec operator*(const Rat& s, const Vec& a) {
    Vec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

}  // namespace lmod
