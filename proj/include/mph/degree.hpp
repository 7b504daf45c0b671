#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mph/errors.hpp"

namespace mph {

// A multidegree in N^r. The number of parameters r is fixed per session and
// mixing degrees of different r is a hard error, never a coercion.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::vector<int> coords) : c_(std::move(coords)) {
        for (int x : c_)
            if (x < 0) throw parse_error("negative degree coordinate");
    }
    static Degree zero(int r) { return Degree(std::vector<int>(r, 0)); }

    int r() const { return static_cast<int>(c_.size()); }
    int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& coords() const { return c_; }

    int total() const { return std::accumulate(c_.begin(), c_.end(), 0); }

    bool operator==(const Degree& o) const { return c_ == o.c_; }
    bool operator!=(const Degree& o) const { return c_ != o.c_; }
    // lexicographic; a linear extension of the componentwise order
    bool operator<(const Degree& o) const { return c_ < o.c_; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < r(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }

    // "(a,b,...)"; whitespace around numbers tolerated
    static Degree parse(const std::string& text) {
        std::vector<int> coords;
        std::size_t i = 0;
        auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
        skip_ws();
        if (i >= text.size() || text[i] != '(') throw parse_error("degree must start with '(': " + text);
        ++i;
        while (true) {
            skip_ws();
            bool any = false;
            long v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + (text[i] - '0');
                if (v > 1000000) throw parse_error("degree coordinate too large");
                ++i;
                any = true;
            }
            if (!any) throw parse_error("expected number in degree: " + text);
            coords.push_back(static_cast<int>(v));
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            throw parse_error("expected ',' or ')' in degree: " + text);
        }
        skip_ws();
        if (i != text.size()) throw parse_error("trailing text after degree: " + text);
        return Degree(coords);
    }

private:
    std::vector<int> c_;
};

inline void check_same_r(const Degree& u, const Degree& v) {
    if (u.r() != v.r()) throw parse_error("degree dimension mismatch: " + u.str() + " vs " + v.str());
}

// componentwise partial order
inline bool leq(const Degree& u, const Degree& v) {
    check_same_r(u, v);
    for (int i = 0; i < u.r(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

inline Degree join(const Degree& u, const Degree& v) {
    check_same_r(u, v);
    std::vector<int> c(static_cast<std::size_t>(u.r()));
    for (int i = 0; i < u.r(); ++i) c[static_cast<std::size_t>(i)] = std::max(u[i], v[i]);
    return Degree(c);
}

inline Degree meet(const Degree& u, const Degree& v) {
    check_same_r(u, v);
    std::vector<int> c(static_cast<std::size_t>(u.r()));
    for (int i = 0; i < u.r(); ++i) c[static_cast<std::size_t>(i)] = std::min(u[i], v[i]);
    return Degree(c);
}

inline Degree operator+(const Degree& u, const Degree& v) {
    check_same_r(u, v);
    std::vector<int> c(static_cast<std::size_t>(u.r()));
    for (int i = 0; i < u.r(); ++i) c[static_cast<std::size_t>(i)] = u[i] + v[i];
    return Degree(c);
}

// componentwise difference; requires v <= u
inline Degree operator-(const Degree& u, const Degree& v) {
    if (!leq(v, u)) throw invariant_error("degree subtraction " + u.str() + " - " + v.str() + " leaves N^r");
    std::vector<int> c(static_cast<std::size_t>(u.r()));
    for (int i = 0; i < u.r(); ++i) c[static_cast<std::size_t>(i)] = u[i] - v[i];
    return Degree(c);
}

inline Degree unit_degree(int r, int dir) {
    Degree e = Degree::zero(r);
    e[dir] = 1;
    return e;
}

// The finite window [0, upper] on which frames are computed. Enumeration is
// lexicographic with the first coordinate most significant, a fixed linear
// extension of the componentwise order.
class DegreeBox {
public:
    DegreeBox() = default;
    explicit DegreeBox(Degree upper) : upper_(std::move(upper)) {
        size_ = 1;
        for (int i = 0; i < upper_.r(); ++i) {
            size_ *= static_cast<std::size_t>(upper_[i] + 1);
        }
    }

    int r() const { return upper_.r(); }
    const Degree& upper() const { return upper_; }
    std::size_t size() const { return size_; }

    bool contains(const Degree& u) const {
        check_same_r(u, upper_);
        return leq(u, upper_);
    }

    Degree clamp(const Degree& u) const { return meet(u, upper_); }

    std::size_t index(const Degree& u) const {
        check_same_r(u, upper_);
        std::size_t idx = 0;
        for (int i = 0; i < r(); ++i) {
            if (u[i] > upper_[i]) throw invariant_error("degree outside box: " + u.str());
            idx = idx * static_cast<std::size_t>(upper_[i] + 1) + static_cast<std::size_t>(u[i]);
        }
        return idx;
    }

    Degree degree(std::size_t idx) const {
        std::vector<int> c(static_cast<std::size_t>(r()));
        for (int i = r() - 1; i >= 0; --i) {
            std::size_t base = static_cast<std::size_t>(upper_[i] + 1);
            c[static_cast<std::size_t>(i)] = static_cast<int>(idx % base);
            idx /= base;
        }
        return Degree(c);
    }

    // all box degrees in enumeration order
    std::vector<Degree> degrees() const {
        std::vector<Degree> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) out.push_back(degree(i));
        return out;
    }

    bool operator==(const DegreeBox& o) const { return upper_ == o.upper_; }

private:
    Degree upper_;
    std::size_t size_ = 0;
};

}  // namespace mph
