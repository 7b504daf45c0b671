#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mph/degree.hpp"
#include "mph/frame.hpp"
#include "mph/hilbert.hpp"
#include "mph/monomial.hpp"
#include "mph/presentation.hpp"

namespace mph {

// ---- annihilators and life reports ----

struct AnnihilatorResult {
    Degree element_degree;
    bool element_was_zero = false;  // annihilator is the unit ideal
    MonomialIdeal ann;              // minimal generators of Ann(a)
};

// Staircase of Ann(a) for a homogeneous element a in M_u: x^v kills a iff
// the transport of a to u+v (clamped to the box) vanishes. The box argument
// makes the staircase on [0, s] determine the whole annihilator.
inline AnnihilatorResult annihilator(const Frame& M, const Degree& u, const Vec& a) {
    AnnihilatorResult out;
    out.element_degree = u;
    const DegreeBox& box = M.box();
    bool zero = true;
    for (const auto& x : a)
        if (!x.is_zero()) zero = false;
    if (zero) {
        out.element_was_zero = true;
        out.ann = MonomialIdeal::from_gens(box.r(), {Degree::zero(box.r())});
        return out;
    }
    std::vector<char> member(box.size(), 0);
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree v = box.degree(idx);
        Vec moved = M.transport_vec(u, box.clamp(u + v), a);
        bool z = true;
        for (const auto& x : moved)
            if (!x.is_zero()) z = false;
        member[idx] = z ? 1 : 0;
    }
    std::vector<Degree> gens;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        if (!member[idx]) continue;
        Degree v = box.degree(idx);
        bool minimal = true;
        for (int i = 0; i < box.r() && minimal; ++i)
            if (v[i] > 0 && member[box.index(v - unit_degree(box.r(), i))]) minimal = false;
        if (minimal) gens.push_back(v);
    }
    out.ann = MonomialIdeal::from_gens(box.r(), gens);
    // the staircase must be exactly the up-set of the extracted generators
    for (std::size_t idx = 0; idx < box.size(); ++idx)
        check(static_cast<bool>(member[idx]) == out.ann.contains(box.degree(idx)),
              "annihilator staircase is not an up-set");
    return out;
}

struct ElementLifeReport {
    Degree birth;
    bool is_minimal_generator = false;
    bool lives_forever = false;
    std::vector<Degree> death_degrees;             // birth + Ann min gens
    MonomialIdeal ann;
    MonomialIdeal radical;
    std::optional<CoordinatePrime> lives_along;    // set when the radical is prime
    std::vector<CoordinatePrime> minimal_primes;   // of Ann(a)
    int support_dimension = 0;
};

inline ElementLifeReport life_report(const Frame& M, const Degree& u, const Vec& a) {
    ElementLifeReport rep;
    rep.birth = u;
    AnnihilatorResult ann = annihilator(M, u, a);
    check(!ann.element_was_zero, "life report of the zero element");
    rep.ann = ann.ann;
    rep.radical = ann.ann.radical();
    rep.minimal_primes = ann.ann.minimal_primes();

    // birth check: not in the sum of the images of the incoming maps
    IncrementalSpan incoming(a.size(), M.field());
    for (int i = 0; i < M.r(); ++i) {
        if (u[i] == 0) continue;
        const Matrix& st = M.step(u - unit_degree(M.r(), i), i);
        for (std::size_t c = 0; c < st.cols(); ++c) incoming.add(st.col(c));
    }
    rep.is_minimal_generator = !incoming.contains(a);

    if (rep.ann.is_zero_ideal()) {
        rep.lives_forever = true;
        rep.lives_along = CoordinatePrime(M.r(), {});
        rep.support_dimension = M.r();
        return rep;
    }
    for (const Degree& g : rep.ann.min_gens()) rep.death_degrees.push_back(u + g);
    std::sort(rep.death_degrees.begin(), rep.death_degrees.end());
    if (rep.radical.is_coordinate_prime()) {
        CoordinatePrime p = rep.radical.as_coordinate_prime();
        rep.lives_along = p;
        rep.support_dimension = p.dimension();
    } else {
        // radical not prime: label mixed, keep the most persistent dimension
        rep.support_dimension = 0;
        for (const CoordinatePrime& p : rep.minimal_primes)
            rep.support_dimension = std::max(rep.support_dimension, p.dimension());
    }
    return rep;
}

// ---- associated primes, support shape, stratification ----

struct AssPoset {
    std::vector<CoordinatePrime> primes;  // sorted by (size, vars)

    bool contains(const CoordinatePrime& p) const {
        return std::find(primes.begin(), primes.end(), p) != primes.end();
    }

    std::vector<CoordinatePrime> minimal_elements() const {
        std::vector<CoordinatePrime> out;
        for (const auto& p : primes) {
            bool minimal = true;
            for (const auto& q : primes)
                if (!(q == p) && q.subset_of(p)) minimal = false;
            if (minimal) out.push_back(p);
        }
        return out;
    }

    bool operator==(const AssPoset& o) const { return primes == o.primes; }
};

// dimension of the colon subspace (0 :_{M_u} p) = intersection of the
// kernels of the one-step maps by the variables of p
namespace detail {

inline Matrix colon_subspace(const Frame& M, const Degree& u, const CoordinatePrime& p) {
    Matrix stacked(0, static_cast<std::size_t>(M.dim_at(u)), M.field());
    for (int i : p.vars())
        stacked = Matrix::vstack(stacked, M.transport(u, M.box().clamp(u + unit_degree(M.r(), i))));
    return kernel_basis(stacked);
}

}  // namespace detail

// rank over S/p of a frame whose nonzero degrees are bounded in the p
// coordinates: the sum over the bounded p-slices of the stable dimension in
// the complementary directions.
inline long long residue_rank(const Frame& N, const CoordinatePrime& p) {
    const DegreeBox& box = N.box();
    const Degree& s = box.upper();
    long long total = 0;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        bool at_corner = true;
        for (int j = 0; j < box.r() && at_corner; ++j)
            if (!p.contains_var(j) && u[j] != s[j]) at_corner = false;
        if (at_corner) total += N.dim_index(idx);
    }
    return total;
}

// p is associated iff (0 :_M p) has positive rank over S/p; for the zero
// ideal this is the rank of M itself. See docs/theory.md for the argument.
inline bool is_associated(const Frame& M, const CoordinatePrime& p) {
    const DegreeBox& box = M.box();
    if (p.is_zero_ideal()) return M.dim_at(box.upper()) > 0;
    Frame N(box, M.field());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Matrix basis = detail::colon_subspace(M, box.degree(idx), p);
        N.set_dim(idx, static_cast<int>(basis.cols()));
    }
    return residue_rank(N, p) > 0;
}

inline AssPoset associated_primes(const Frame& M) {
    AssPoset out;
    int r = M.r();
    std::vector<CoordinatePrime> all;
    for (int mask = 0; mask < (1 << r); ++mask) {
        std::vector<int> vars;
        for (int i = 0; i < r; ++i)
            if ((mask >> i) & 1) vars.push_back(i);
        all.emplace_back(r, vars);
    }
    std::sort(all.begin(), all.end());
    for (const auto& p : all)
        if (is_associated(M, p)) out.primes.push_back(p);
    return out;
}

struct SupportShape {
    int r = 0;
    std::vector<CoordinatePrime> minimal;  // minimal associated primes

    // ss(M) membership: u lies in some region c_p
    bool contains(const Degree& u) const {
        for (const auto& p : minimal)
            if (p.region_contains(u)) return true;
        return false;
    }
};

inline SupportShape support_shape(const AssPoset& ass, int r) {
    return SupportShape{r, ass.minimal_elements()};
}

// maximal chains of the inclusion poset, each from a minimal element to a
// maximal one
inline std::vector<std::vector<CoordinatePrime>> strata_chains(const AssPoset& ass) {
    std::vector<std::vector<CoordinatePrime>> chains;
    const auto& ps = ass.primes;
    auto is_cover = [&](const CoordinatePrime& a, const CoordinatePrime& b) {
        if (a == b || !a.subset_of(b)) return false;
        for (const auto& z : ps)
            if (!(z == a) && !(z == b) && a.subset_of(z) && z.subset_of(b)) return false;
        return true;
    };
    std::vector<CoordinatePrime> minimal = ass.minimal_elements();
    std::vector<CoordinatePrime> chain;
    std::function<void(const CoordinatePrime&)> dfs = [&](const CoordinatePrime& cur) {
        chain.push_back(cur);
        bool extended = false;
        for (const auto& q : ps)
            if (is_cover(cur, q)) {
                extended = true;
                dfs(q);
            }
        if (!extended) chains.push_back(chain);
        chain.pop_back();
    };
    for (const auto& p : minimal) dfs(p);
    return chains;
}

// ---- zeroth local cohomology and c_p-rank ----

struct LocalCohomology {
    CoordinatePrime prime;
    SubFrame sub;          // H^0_p(M) with its embedding into M
    int power = 0;         // smallest n with (0 : p^n) = (0 : p^{n+1})
};

namespace detail {

// (0 : p^n): intersection of the kernels of all monomials of degree n in
// the variables of p
inline std::vector<Matrix> colon_power_bases(const Frame& M, const CoordinatePrime& p, int n) {
    const DegreeBox& box = M.box();
    int k = static_cast<int>(p.vars().size());
    // exponent vectors alpha with |alpha| = n supported on p
    std::vector<std::vector<int>> alphas;
    std::vector<int> cur(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            alphas.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
    std::vector<Matrix> bases(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        Matrix stacked(0, static_cast<std::size_t>(M.dim_at(u)), M.field());
        for (const auto& alpha : alphas) {
            Degree to = u;
            for (int t = 0; t < k; ++t) to[p.vars()[static_cast<std::size_t>(t)]] += alpha[static_cast<std::size_t>(t)];
            stacked = Matrix::vstack(stacked, M.transport(u, box.clamp(to)));
        }
        bases[idx] = kernel_basis(stacked);
    }
    return bases;
}

}  // namespace detail

inline LocalCohomology local_cohomology_H0(const Frame& M, const CoordinatePrime& p) {
    check(!p.is_zero_ideal(), "local cohomology needs a nonzero coordinate prime");
    const DegreeBox& box = M.box();
    int bound = 1;
    for (int i = 0; i < box.r(); ++i) bound = std::max(bound, box.upper()[i] + 1);

    auto dims_of = [&](const std::vector<Matrix>& bases) {
        std::vector<int> d(bases.size());
        for (std::size_t i = 0; i < bases.size(); ++i) d[i] = static_cast<int>(bases[i].cols());
        return d;
    };
    std::vector<Matrix> bases = detail::colon_power_bases(M, p, 1);
    int n = 1;
    while (true) {
        std::vector<Matrix> next = detail::colon_power_bases(M, p, n + 1);
        if (dims_of(next) == dims_of(bases)) break;
        bases = std::move(next);
        ++n;
        check(n <= bound, "local cohomology power exceeded its bound");
    }

    LocalCohomology out;
    out.prime = p;
    out.power = n;
    out.sub.frame = Frame(box, M.field());
    out.sub.embed.resize(box.size());
    std::vector<SpanBasis> sb(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        sb[idx] = SpanBasis(bases[idx]);
        out.sub.embed[idx] = sb[idx].basis();
        out.sub.frame.set_dim(idx, static_cast<int>(sb[idx].dim()));
    }
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int i = 0; i < box.r(); ++i) {
            if (!out.sub.frame.has_step(u, i)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), i));
            Matrix moved = M.step(u, i) * out.sub.embed[idx];
            Matrix m(sb[vidx].dim(), sb[idx].dim(), M.field());
            for (std::size_t c = 0; c < sb[idx].dim(); ++c)
                m.set_col(c, sb[vidx].coords(moved.col(c)));
            out.sub.frame.set_step(u, i, std::move(m));
        }
    }
    out.sub.frame.verify();
    return out;
}

// Hilbert series numerator of H^0_p(M) over the partial denominator
// prod_{i not in p}(1-t_i); the p variables appear in the numerator only.
inline IntPoly hs_of_H0(const LocalCohomology& L) {
    std::vector<int> dirs;
    for (int i = 0; i < L.sub.frame.r(); ++i)
        if (!L.prime.contains_var(i)) dirs.push_back(i);
    return hs_numerator_dirs(hilbert_function(L.sub.frame), dirs);
}

// rank of H^0_p(M) over S_{c_p}, cross-checked against the numerator at 1
inline long long cp_rank(const Frame& M, const CoordinatePrime& p) {
    LocalCohomology L = local_cohomology_H0(M, p);
    long long by_slices = residue_rank(L.sub.frame, p);
    Integer by_series = hs_of_H0(L).eval_at_one();
    check(by_series == by_slices, "c_p-rank mismatch between slice sums and series numerator");
    return by_slices;
}

// ---- rank invariant ----

// rank of the transition M_u -> M_v, degrees clamped by the extension rule
inline long long rank_invariant(const Frame& M, const Degree& u, const Degree& v) {
    if (!leq(u, v)) throw parse_error("rank invariant requires " + u.str() + " <= " + v.str());
    return static_cast<long long>(rank(M.transport(u, v)));
}

// ---- associated primes through the cokernel shortcut ----

struct CokernelAssReport {
    AssPoset via_cokernel;  // Ass(coker d_{i+1})
    AssPoset direct;        // Ass(H_i)
    bool added_zero = false;
    std::string note;
};

inline CokernelAssReport ass_via_cokernel(const MultifilteredComplex& K, int i,
                                          const DegreeBox& box) {
    CokernelAssReport rep;
    FrameMap upper = boundary_frame_map(K, i + 1, box);
    rep.via_cokernel = associated_primes(cokernel_frame(upper).frame);
    rep.direct = associated_primes(homology_frame(K, i, box));
    if (rep.via_cokernel == rep.direct) {
        rep.note = "cokernel route agrees with Ass(H_i)";
    } else {
        AssPoset expect = rep.direct;
        CoordinatePrime zero(box.r(), {});
        if (!expect.contains(zero)) {
            expect.primes.insert(expect.primes.begin(), zero);
            std::sort(expect.primes.begin(), expect.primes.end());
        }
        check(expect == rep.via_cokernel, "cokernel Ass differs by more than the zero ideal");
        rep.added_zero = true;
        rep.note = "cokernel route adds the zero ideal (its torsion-free part is larger)";
    }
    return rep;
}

inline CokernelAssReport ass_via_cokernel(const MultifilteredComplex& K, int i) {
    return ass_via_cokernel(K, i, DegreeBox(K.stabilization_degree()));
}

}  // namespace mph
