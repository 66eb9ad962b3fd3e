#pragma once
// Slow reference implementations used only by the tests. Nothing here calls
// into the library.

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

// Base-3 string (MSB first) of a binary number held in 32-bit limbs, by
// repeated division by 3.
inline std::string base3_of_limbs(std::vector<std::uint32_t> limbs) {
    while (!limbs.empty() && limbs.back() == 0) {
        limbs.pop_back();
    }
    if (limbs.empty()) {
        return "0";
    }
    std::string rev;
    while (!limbs.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs.size(); i-- > 0;) {
            const std::uint64_t cur = (rem << 32) | limbs[i];
            limbs[i] = static_cast<std::uint32_t>(cur / 3);
            rem = cur % 3;
        }
        rev.push_back(static_cast<char>('0' + rem));
        while (!limbs.empty() && limbs.back() == 0) {
            limbs.pop_back();
        }
    }
    return {rev.rbegin(), rev.rend()};
}

inline std::string base3(std::uint64_t a) {
    return base3_of_limbs({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)});
}

inline std::string power_of_two(std::uint64_t n) {
    std::vector<std::uint32_t> limbs(n / 32 + 1, 0);
    limbs[n / 32] = 1u << (n % 32);
    return base3_of_limbs(std::move(limbs));
}

inline std::uint64_t value(const std::string& s) {
    std::uint64_t v = 0;
    for (char c : s) {
        v = v * 3 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

inline std::array<std::uint64_t, 3> digit_counts(const std::string& s) {
    std::array<std::uint64_t, 3> c{};
    for (char ch : s) {
        ++c[ch - '0'];
    }
    return c;
}

inline std::map<std::string, std::uint64_t> blocks(const std::string& s, std::size_t k) {
    std::map<std::string, std::uint64_t> m;
    for (std::size_t i = 0; i + k <= s.size(); i += k) {
        ++m[s.substr(i, k)];
    }
    return m;
}

inline std::array<std::uint64_t, 3> leading_counts(const std::string& s, std::size_t h) {
    return digit_counts(s.substr(0, h + 1));
}

inline std::size_t zero_run(const std::string& s) {
    std::size_t r = 0;
    while (1 + r < s.size() && s[1 + r] == '0') {
        ++r;
    }
    return r;
}

// num/den * scale rendered with `places` decimals, round half to even.
// Works on decimal strings so it does not share arithmetic with the library.
inline std::string decimal(std::uint64_t num, std::uint64_t den, unsigned places, std::uint64_t scale = 1) {
    unsigned __int128 n = static_cast<unsigned __int128>(num) * scale;
    const unsigned __int128 d = den;
    std::string out = std::to_string(static_cast<std::uint64_t>(n / d));
    n %= d;
    std::string frac;
    for (unsigned i = 0; i < places; ++i) {
        n *= 10;
        frac.push_back(static_cast<char>('0' + static_cast<int>(n / d)));
        n %= d;
    }
    const unsigned __int128 twice = 2 * n;
    const bool last_odd = places ? (frac.back() - '0') % 2 == 1 : (out.back() - '0') % 2 == 1;
    if (twice > d || (twice == d && last_odd)) {
        std::string whole = out + frac;
        std::size_t i = whole.size();
        while (i-- > 0) {
            if (whole[i] == '9') {
                whole[i] = '0';
            } else {
                ++whole[i];
                break;
            }
        }
        if (i == static_cast<std::size_t>(-1)) {
            whole.insert(whole.begin(), '1');
        }
        out = whole.substr(0, whole.size() - places);
        frac = whole.substr(whole.size() - places);
    }
    return places ? out + "." + frac : out;
}

using Row = std::vector<std::string>;

inline std::vector<Row> read_csv(const std::string& path) {
    std::ifstream in(path);
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        Row row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(cell);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace oracle
