#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mph/degree.hpp"
#include "mph/field.hpp"
#include "mph/frame.hpp"
#include "mph/presentation.hpp"

namespace mph {

// Integer-coefficient polynomial in t_1..t_r, kept in canonical form: terms
// sorted lexicographically by exponent, zero coefficients dropped.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(int r) : r_(r) {}

    int r() const { return r_; }
    const std::map<std::vector<int>, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& exps, const Integer& c) {
        check(static_cast<int>(exps.size()) == r_, "term arity mismatch");
        if (c == 0) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Integer coeff(const std::vector<int>& exps) const {
        auto it = terms_.find(exps);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    IntPoly operator+(const IntPoly& o) const {
        check(r_ == o.r_, "poly arity mismatch");
        IntPoly p = *this;
        for (const auto& [e, c] : o.terms_) p.add_term(e, c);
        return p;
    }

    IntPoly operator-(const IntPoly& o) const {
        check(r_ == o.r_, "poly arity mismatch");
        IntPoly p = *this;
        for (const auto& [e, c] : o.terms_) p.add_term(e, -c);
        return p;
    }

    IntPoly operator*(const IntPoly& o) const {
        check(r_ == o.r_, "poly arity mismatch");
        IntPoly p(r_);
        for (const auto& [e, c] : terms_)
            for (const auto& [f, d] : o.terms_) {
                std::vector<int> g(e);
                for (int i = 0; i < r_; ++i) g[static_cast<std::size_t>(i)] += f[static_cast<std::size_t>(i)];
                p.add_term(g, c * d);
            }
        return p;
    }

    bool operator==(const IntPoly& o) const { return r_ == o.r_ && terms_ == o.terms_; }

    Integer eval_at_one() const {
        Integer s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    static std::string monomial(const std::vector<int>& exps) {
        std::string s;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            s += "t" + std::to_string(i + 1);
            if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
        }
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Integer a = c;
            if (first) {
                if (a < 0) {
                    s += "-";
                    a = -a;
                }
            } else {
                s += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            std::string mono = monomial(e);
            if (mono.empty()) {
                s += a.str();
            } else {
                if (a != 1) s += a.str();
                s += mono;
            }
            first = false;
        }
        return s;
    }

    // convenience for building expected values in tests and reports
    static IntPoly term(int r, const std::vector<int>& exps, long long c) {
        IntPoly p(r);
        p.add_term(exps, Integer(c));
        return p;
    }

private:
    int r_ = 0;
    std::map<std::vector<int>, Integer> terms_;
};

// The Hilbert function on the box, with the extension rule
// HF(u) = HF(min(u, upper)) beyond it.
class HilbertFunction {
public:
    HilbertFunction() = default;
    HilbertFunction(DegreeBox box, std::vector<long long> table)
        : box_(std::move(box)), table_(std::move(table)) {
        check(table_.size() == box_.size(), "HF table size mismatch");
    }

    const DegreeBox& box() const { return box_; }

    long long at(const Degree& u) const { return table_[box_.index(box_.clamp(u))]; }

    // value with zero extension below the origin: w may have negative entries
    long long at_or_zero(const std::vector<int>& w) const {
        std::vector<int> c(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] < 0) return 0;
            c[i] = w[i];
        }
        return at(Degree(c));
    }

private:
    DegreeBox box_;
    std::vector<long long> table_;
};

inline HilbertFunction hilbert_function(const Frame& M) {
    std::vector<long long> t(M.box().size());
    for (std::size_t idx = 0; idx < M.box().size(); ++idx) t[idx] = M.dim_index(idx);
    return HilbertFunction(M.box(), std::move(t));
}

// numerator of HS = P / prod_{i in dirs}(1 - t_i): finite differences of HF
// in the `dirs` coordinates only. For the full Hilbert series dirs is all of
// {0..r-1}; local cohomology uses the coordinates of c_p only, in which case
// HF must vanish on the box boundary of every other coordinate.
inline IntPoly hs_numerator_dirs(const HilbertFunction& HF, const std::vector<int>& dirs) {
    const DegreeBox& box = HF.box();
    int r = box.r();
    std::vector<bool> in_dirs(static_cast<std::size_t>(r), false);
    for (int d : dirs) in_dirs[static_cast<std::size_t>(d)] = true;
    for (int i = 0; i < r; ++i) {
        if (in_dirs[static_cast<std::size_t>(i)]) continue;
        // finite support in a numerator coordinate needs eventual vanishing
        for (std::size_t idx = 0; idx < box.size(); ++idx) {
            Degree u = box.degree(idx);
            if (u[i] == box.upper()[i])
                check(HF.at(u) == 0, "Hilbert function does not vanish in a numerator direction");
        }
    }
    IntPoly P(r);
    std::vector<int> hi(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        hi[static_cast<std::size_t>(i)] = box.upper()[i] + (in_dirs[static_cast<std::size_t>(i)] ? 1 : 0);
    std::vector<int> u(static_cast<std::size_t>(r), 0);
    while (true) {
        // alternating sum over subsets of dirs of backward differences
        long long v = 0;
        std::size_t nd = dirs.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << nd); ++mask) {
            std::vector<int> w = u;
            int sign = 1;
            for (std::size_t t = 0; t < nd; ++t)
                if ((mask >> t) & 1) {
                    w[static_cast<std::size_t>(dirs[t])] -= 1;
                    sign = -sign;
                }
            v += sign * HF.at_or_zero(w);
        }
        P.add_term(u, Integer(v));
        int pos = r - 1;
        while (pos >= 0) {
            if (u[static_cast<std::size_t>(pos)] < hi[static_cast<std::size_t>(pos)]) {
                ++u[static_cast<std::size_t>(pos)];
                for (int q = pos + 1; q < r; ++q) u[static_cast<std::size_t>(q)] = 0;
                break;
            }
            --pos;
        }
        if (pos < 0) break;
    }
    return P;
}

inline IntPoly hs_numerator(const HilbertFunction& HF) {
    std::vector<int> dirs;
    for (int i = 0; i < HF.box().r(); ++i) dirs.push_back(i);
    return hs_numerator_dirs(HF, dirs);
}

// HS numerator from a minimal free resolution: the alternating sum of t^u
// over the free summands. Equals the finite-difference numerator.
inline IntPoly hs_numerator_from_resolution(const FreeResolution& res, int r) {
    IntPoly P(r);
    for (std::size_t i = 0; i < res.free_degrees.size(); ++i)
        for (const Degree& d : res.free_degrees[i])
            P.add_term(d.coords(), (i % 2 == 0) ? Integer(1) : Integer(-1));
    return P;
}

// rank = HF at the stabilization corner, cross-checked against P(1)
inline long long rank_of(const Frame& M) {
    HilbertFunction HF = hilbert_function(M);
    long long corner = HF.at(M.box().upper());
    Integer p1 = hs_numerator(HF).eval_at_one();
    check(p1 == corner, "rank mismatch: HF(s) = " + std::to_string(corner) + " but P(1) = " + p1.str());
    return corner;
}

// HS = C t^corner / (1-t1)(1-t2)  +  sum_i alpha_i t1^i / (1-t2)
//      +  sum_j beta_j t2^j / (1-t1)  +  R,  reassembling HF exactly.
struct TwoParamDecomposition {
    Integer C;
    Degree corner;               // (m1, m2)
    std::vector<Integer> alpha;  // index i = t1 exponent
    std::vector<Integer> beta;   // index j = t2 exponent
    IntPoly R;
};

inline TwoParamDecomposition decompose_2param(const HilbertFunction& HF, const Degree& corner) {
    const DegreeBox& box = HF.box();
    check(box.r() == 2, "2-parameter decomposition requires r = 2");
    Degree m = meet(corner, box.upper());
    int s1 = box.upper()[0], s2 = box.upper()[1];
    TwoParamDecomposition D;
    D.C = HF.at(box.upper());
    D.corner = m;
    D.alpha.assign(static_cast<std::size_t>(s1) + 1, Integer(0));
    D.beta.assign(static_cast<std::size_t>(s2) + 1, Integer(0));
    for (int i = 0; i <= s1; ++i) {
        Integer a = HF.at(Degree({i, s2}));
        if (i >= m[0]) a -= D.C;
        D.alpha[static_cast<std::size_t>(i)] = a;
    }
    for (int j = 0; j <= s2; ++j) {
        Integer b = HF.at(Degree({s1, j}));
        if (j >= m[1]) b -= D.C;
        D.beta[static_cast<std::size_t>(j)] = b;
    }
    while (!D.alpha.empty() && D.alpha.back() == 0) D.alpha.pop_back();
    while (!D.beta.empty() && D.beta.back() == 0) D.beta.pop_back();

    auto template_at = [&](int x, int y) {
        Integer v = 0;
        if (x >= m[0] && y >= m[1]) v += D.C;
        if (x < static_cast<int>(D.alpha.size())) v += D.alpha[static_cast<std::size_t>(x)];
        if (y < static_cast<int>(D.beta.size())) v += D.beta[static_cast<std::size_t>(y)];
        return v;
    };
    D.R = IntPoly(2);
    for (int x = 0; x <= s1; ++x)
        for (int y = 0; y <= s2; ++y)
            D.R.add_term({x, y}, Integer(HF.at(Degree({x, y}))) - template_at(x, y));
    // exact reassembly, including a margin beyond the box
    for (int x = 0; x <= s1 + 2; ++x)
        for (int y = 0; y <= s2 + 2; ++y) {
            Integer v = template_at(x, y) + D.R.coeff({x, y});
            check(v == HF.at(Degree({x, y})), "two-parameter decomposition does not reassemble");
        }
    return D;
}

// corner from the minimal generators: the reference choice for reports
inline TwoParamDecomposition decompose_2param(const Frame& M) {
    Degree m = Degree::zero(M.r());
    for (const MinGen& g : minimal_generators(M)) m = join(m, g.degree);
    return decompose_2param(hilbert_function(M), m);
}

// Hilbert polynomial of the total-degree coarsening: a univariate rational
// polynomial of degree <= r-1 agreeing with HF_1(n) for n >= n0.
struct HilbertPolynomial {
    std::vector<BigRational> coeffs;  // ascending powers
    long long n0 = 0;

    BigRational eval(long long n) const {
        BigRational v = 0, pw = 1;
        for (const BigRational& c : coeffs) {
            v += c * pw;
            pw *= BigRational(n);
        }
        return v;
    }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            if (coeffs[k] == 0) continue;
            BigRational a = coeffs[k];
            if (first) {
                if (a < 0) {
                    s += "-";
                    a = -a;
                }
            } else {
                s += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            std::string mono = k == 0 ? "" : (k == 1 ? "n" : "n^" + std::to_string(k));
            if (mono.empty()) {
                s += a.str();
            } else {
                if (a != 1) s += a.str() + "*";
                s += mono;
            }
            first = false;
        }
        return s;
    }
};

namespace detail {

// sum of HF over { u : |u| = n } with the extension rule
inline Integer coarse_hf(const HilbertFunction& HF, long long n) {
    const DegreeBox& box = HF.box();
    int r = box.r();
    Integer total = 0;
    std::vector<int> u(static_cast<std::size_t>(r), 0);
    // enumerate compositions of n into r nonnegative parts
    std::function<void(int, long long)> rec = [&](int pos, long long left) {
        if (pos == r - 1) {
            u[static_cast<std::size_t>(pos)] = static_cast<int>(left);
            total += HF.at_or_zero(u);
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            u[static_cast<std::size_t>(pos)] = static_cast<int>(v);
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
    return total;
}

}  // namespace detail

inline HilbertPolynomial hilbert_polynomial(const HilbertFunction& HF) {
    const DegreeBox& box = HF.box();
    int r = box.r();
    HilbertPolynomial HP;
    HP.n0 = box.upper().total() + r;
    // Lagrange interpolation at n0 .. n0+r-1
    std::vector<long long> xs;
    std::vector<Integer> ys;
    for (int k = 0; k < r; ++k) {
        xs.push_back(HP.n0 + k);
        ys.push_back(detail::coarse_hf(HF, HP.n0 + k));
    }
    std::vector<BigRational> coeffs(static_cast<std::size_t>(r), BigRational(0));
    for (int k = 0; k < r; ++k) {
        // basis polynomial prod_{j != k} (x - x_j) / (x_k - x_j)
        std::vector<BigRational> basis = {BigRational(1)};
        BigRational denom = 1;
        for (int j = 0; j < r; ++j) {
            if (j == k) continue;
            std::vector<BigRational> next(basis.size() + 1, BigRational(0));
            for (std::size_t d = 0; d < basis.size(); ++d) {
                next[d] -= basis[d] * BigRational(xs[static_cast<std::size_t>(j)]);
                next[d + 1] += basis[d];
            }
            basis = std::move(next);
            denom *= BigRational(xs[static_cast<std::size_t>(k)] - xs[static_cast<std::size_t>(j)]);
        }
        BigRational w = BigRational(ys[static_cast<std::size_t>(k)]) / denom;
        for (std::size_t d = 0; d < basis.size(); ++d) coeffs[d] += basis[d] * w;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    HP.coeffs = std::move(coeffs);
    // verify on r+2 further points; failure signals a box that is too small
    for (int k = r; k < 2 * r + 2; ++k) {
        if (HP.eval(HP.n0 + k) != BigRational(detail::coarse_hf(HF, HP.n0 + k)))
            throw invariant_error("Hilbert polynomial verification failed");
    }
    return HP;
}

}  // namespace mph
