#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mph/degree.hpp"

namespace mph {

// A coordinate prime <x_i : i in vars>, with vars a subset of {0,..,r-1}.
// The empty set is the zero ideal (0); the full set is the maximal
// homogeneous prime. Dimension is r - |vars|.
class CoordinatePrime {
public:
    CoordinatePrime() = default;
    CoordinatePrime(int r, std::vector<int> vars) : r_(r), vars_(std::move(vars)) {
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
        for (int v : vars_)
            if (v < 0 || v >= r_) throw parse_error("prime variable index out of range");
    }

    int r() const { return r_; }
    const std::vector<int>& vars() const { return vars_; }
    bool is_zero_ideal() const { return vars_.empty(); }
    int dimension() const { return r_ - static_cast<int>(vars_.size()); }

    bool contains_var(int i) const {
        return std::binary_search(vars_.begin(), vars_.end(), i);
    }

    // inclusion of ideals
    bool subset_of(const CoordinatePrime& o) const {
        return std::includes(o.vars_.begin(), o.vars_.end(), vars_.begin(), vars_.end());
    }

    // region c_p = { u : u_i = 0 for all i in vars }
    bool region_contains(const Degree& u) const {
        for (int i : vars_)
            if (u[i] != 0) return false;
        return true;
    }

    bool operator==(const CoordinatePrime& o) const { return r_ == o.r_ && vars_ == o.vars_; }
    bool operator<(const CoordinatePrime& o) const {
        if (vars_.size() != o.vars_.size()) return vars_.size() < o.vars_.size();
        return vars_ < o.vars_;
    }

    // canonical textual form used by every report
    std::string str() const {
        if (vars_.empty()) return "(0)";
        std::string s = "⟨";
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (k) s += ",";
            s += "x" + std::to_string(vars_[k] + 1);
        }
        return s + "⟩";
    }

    // "x1,x2" (1-based), or "0" for the zero ideal; used for CLI flags
    static CoordinatePrime parse(int r, const std::string& text) {
        if (text == "0" || text == "(0)") return CoordinatePrime(r, {});
        std::vector<int> vars;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == 'x' || text[i] == 'X') {
                ++i;
                long v = 0;
                bool any = false;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                    v = v * 10 + (text[i] - '0');
                    ++i;
                    any = true;
                }
                if (!any || v < 1 || v > r) throw parse_error("bad variable in prime spec: " + text);
                vars.push_back(static_cast<int>(v - 1));
                if (i < text.size()) {
                    if (text[i] != ',') throw parse_error("expected ',' in prime spec: " + text);
                    ++i;
                }
            } else {
                throw parse_error("bad prime spec: " + text);
            }
        }
        if (vars.empty()) throw parse_error("empty prime spec");
        return CoordinatePrime(r, vars);
    }

private:
    int r_ = 0;
    std::vector<int> vars_;
};

// x^(2,0) -> "x1^2", x^(1,2) -> "x1x2^2", x^0 -> "1"
inline std::string monomial_str(const Degree& d) {
    std::string s;
    for (int i = 0; i < d.r(); ++i) {
        if (d[i] == 0) continue;
        s += "x" + std::to_string(i + 1);
        if (d[i] > 1) s += "^" + std::to_string(d[i]);
    }
    return s.empty() ? "1" : s;
}

// A monomial ideal given by its antichain of minimal generators. The zero
// ideal has no generators; v is a member iff some generator divides x^v.
class MonomialIdeal {
public:
    MonomialIdeal() = default;
    explicit MonomialIdeal(int r) : r_(r) {}

    static MonomialIdeal from_gens(int r, std::vector<Degree> gens) {
        MonomialIdeal ideal(r);
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].r() != r) throw parse_error("generator dimension mismatch");
            bool dominated = false;
            for (std::size_t j = 0; j < gens.size() && !dominated; ++j)
                if (i != j && leq(gens[j], gens[i])) dominated = true;
            if (!dominated) ideal.gens_.push_back(gens[i]);
        }
        return ideal;
    }

    int r() const { return r_; }
    const std::vector<Degree>& min_gens() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }
    bool is_unit_ideal() const {
        return gens_.size() == 1 && gens_[0] == Degree::zero(r_);
    }

    bool contains(const Degree& v) const {
        for (const Degree& g : gens_)
            if (leq(g, v)) return true;
        return false;
    }

    // squarefree ideal generated by the supports of the generators
    MonomialIdeal radical() const {
        std::vector<Degree> sq;
        for (const Degree& g : gens_) {
            Degree s = Degree::zero(r_);
            for (int i = 0; i < r_; ++i) s[i] = g[i] > 0 ? 1 : 0;
            sq.push_back(s);
        }
        return from_gens(r_, sq);
    }

    // true iff the ideal is generated by a subset of the variables
    bool is_coordinate_prime() const {
        if (gens_.empty()) return true;  // the zero ideal
        for (const Degree& g : gens_)
            if (g.total() != 1) return false;
        return true;
    }

    CoordinatePrime as_coordinate_prime() const {
        check(is_coordinate_prime(), "ideal is not a coordinate prime");
        std::vector<int> vars;
        for (const Degree& g : gens_)
            for (int i = 0; i < r_; ++i)
                if (g[i] > 0) vars.push_back(i);
        return CoordinatePrime(r_, vars);
    }

    // the minimal coordinate primes containing the ideal, by exhaustive
    // search over the 2^r variable subsets; the zero ideal yields {(0)}
    std::vector<CoordinatePrime> minimal_primes() const {
        if (gens_.empty()) return {CoordinatePrime(r_, {})};
        std::vector<CoordinatePrime> out;
        std::vector<std::vector<int>> by_size(static_cast<std::size_t>(r_) + 1);
        for (int mask = 0; mask < (1 << r_); ++mask) {
            int pc = 0;
            for (int i = 0; i < r_; ++i) pc += (mask >> i) & 1;
            by_size[static_cast<std::size_t>(pc)].push_back(mask);
        }
        auto covers = [&](int mask) {
            for (const Degree& g : gens_) {
                bool hit = false;
                for (int i = 0; i < r_ && !hit; ++i)
                    if (g[i] > 0 && ((mask >> i) & 1)) hit = true;
                if (!hit) return false;
            }
            return true;
        };
        std::vector<int> kept;
        for (int size = 0; size <= r_; ++size) {
            for (int mask : by_size[static_cast<std::size_t>(size)]) {
                if (!covers(mask)) continue;
                bool redundant = false;
                for (int k : kept)
                    if ((k & mask) == k) {
                        redundant = true;
                        break;
                    }
                if (redundant) continue;
                kept.push_back(mask);
                std::vector<int> vars;
                for (int i = 0; i < r_; ++i)
                    if ((mask >> i) & 1) vars.push_back(i);
                out.emplace_back(r_, vars);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const MonomialIdeal& o) const { return r_ == o.r_ && gens_ == o.gens_; }

    std::string str() const {
        if (gens_.empty()) return "(0)";
        std::vector<Degree> order = gens_;  // display with x1-heavy generators first
        std::sort(order.begin(), order.end(), [](const Degree& a, const Degree& b) { return b < a; });
        std::string s = "⟨";
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (k) s += ", ";
            s += monomial_str(order[k]);
        }
        return s + "⟩";
    }

private:
    int r_ = 0;
    std::vector<Degree> gens_;
};

}  // namespace mph
