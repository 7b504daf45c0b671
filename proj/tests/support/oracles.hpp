#pragma once

// Test-only oracles, independent of the library paths they check.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mph/field.hpp"
#include "mph/filtration.hpp"
#include "mph/frame.hpp"
#include "mph/monomial.hpp"
#include "mph/onepar.hpp"
#include "mph/presentation.hpp"

namespace oracle {

using mph::BigRational;
using mph::Degree;

// plain fraction-based forward elimination, written separately from
// mph::Matrix on purpose
inline std::size_t rational_rank(std::vector<std::vector<BigRational>> a) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            BigRational f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

// dim H_i(K_u) by rank-nullity on the snapshot boundary matrices
inline long long snapshot_homology_dim(const mph::MultifilteredComplex& K, int i, const Degree& u) {
    auto to_rows = [](const mph::Matrix& m) {
        std::vector<std::vector<BigRational>> rows(m.rows(), std::vector<BigRational>(m.cols(), 0));
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) rows[a][b] = m.at(a, b).rational_value();
        return rows;
    };
    mph::Matrix di = K.boundary_at(u, i).matrix;
    mph::Matrix di1 = K.boundary_at(u, i + 1).matrix;
    long long cycles = static_cast<long long>(di.cols()) -
                       static_cast<long long>(rational_rank(to_rows(di)));
    return cycles - static_cast<long long>(rational_rank(to_rows(di1)));
}

// ---- classic one-parameter persistence by column reduction ----

struct FilteredSimplex {
    std::vector<int> verts;  // sorted
    int entry = 0;
};

struct OneParFiltration {
    std::vector<FilteredSimplex> simplices;
};

// standard persistence pairing over Q: simplices ordered by (entry, dim,
// verts); each column is reduced against earlier columns with the same low
inline std::vector<mph::Bar> classic_barcode(const OneParFiltration& F, int want_dim) {
    std::vector<FilteredSimplex> order = F.simplices;
    std::sort(order.begin(), order.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
        if (a.entry != b.entry) return a.entry < b.entry;
        if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
        return a.verts < b.verts;
    });
    std::map<std::vector<int>, int> index;
    for (std::size_t j = 0; j < order.size(); ++j) index[order[j].verts] = static_cast<int>(j);

    std::size_t n = order.size();
    // sparse columns of the full boundary matrix
    std::vector<std::map<int, BigRational>> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& verts = order[j].verts;
        if (verts.size() == 1) continue;
        int sign = 1;
        for (std::size_t drop = 0; drop < verts.size(); ++drop) {
            std::vector<int> face = verts;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            col[j][index.at(face)] = BigRational(sign);
            sign = -sign;
        }
    }
    auto low = [&](std::size_t j) -> int {
        if (col[j].empty()) return -1;
        return col[j].rbegin()->first;
    };
    std::vector<int> low_owner(n, -1);
    std::vector<int> killed_by(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
        while (!col[j].empty() && low_owner[static_cast<std::size_t>(low(j))] >= 0) {
            std::size_t k = static_cast<std::size_t>(low_owner[static_cast<std::size_t>(low(j))]);
            BigRational f = col[j].rbegin()->second / col[k].rbegin()->second;
            for (const auto& [row, val] : col[k]) {
                auto it = col[j].find(row);
                BigRational nv = (it == col[j].end() ? BigRational(0) : it->second) - f * val;
                if (nv == 0) {
                    if (it != col[j].end()) col[j].erase(it);
                } else {
                    col[j][row] = nv;
                }
            }
        }
        if (!col[j].empty()) {
            int l = low(j);
            low_owner[static_cast<std::size_t>(l)] = static_cast<int>(j);
            killed_by[static_cast<std::size_t>(l)] = static_cast<int>(j);
        }
    }
    std::vector<mph::Bar> bars;
    for (std::size_t j = 0; j < n; ++j) {
        if (static_cast<int>(order[j].verts.size()) - 1 != want_dim) continue;
        if (!col[j].empty()) continue;  // j creates a class
        if (killed_by[j] >= 0) {
            int death = order[static_cast<std::size_t>(killed_by[j])].entry;
            if (death > order[j].entry) bars.push_back({order[j].entry, death});
        } else {
            bars.push_back({order[j].entry, std::nullopt});
        }
    }
    std::sort(bars.begin(), bars.end());
    return bars;
}

inline mph::MultifilteredComplex to_mfsc(const OneParFiltration& F, const mph::FieldSpec& field) {
    std::string text = "r 1\nfield " + field.str() + "\n";
    for (const auto& s : F.simplices) {
        text += "simplex";
        for (int v : s.verts) text += " v" + std::to_string(v);
        text += " ; (" + std::to_string(s.entry) + ")\n";
    }
    return mph::MultifilteredComplex::parse_string(text);
}

// random flag-like filtration: vertices, then edges, then triangles whose
// edges are all present
inline OneParFiltration random_filtration(std::mt19937& rng, int nverts, int max_entry) {
    OneParFiltration F;
    auto rnd = [&](int m) { return static_cast<int>(rng() % static_cast<unsigned>(m)); };
    std::map<std::pair<int, int>, int> edge_entry;
    for (int v = 0; v < nverts; ++v) F.simplices.push_back({{v}, rnd(max_entry)});
    for (int a = 0; a < nverts; ++a)
        for (int b = a + 1; b < nverts; ++b) {
            if (rnd(100) < 55) continue;
            int e = std::max({F.simplices[static_cast<std::size_t>(a)].entry,
                              F.simplices[static_cast<std::size_t>(b)].entry, rnd(max_entry)});
            F.simplices.push_back({{a, b}, e});
            edge_entry[{a, b}] = e;
        }
    for (int a = 0; a < nverts; ++a)
        for (int b = a + 1; b < nverts; ++b)
            for (int c = b + 1; c < nverts; ++c) {
                auto ab = edge_entry.find({a, b});
                auto ac = edge_entry.find({a, c});
                auto bc = edge_entry.find({b, c});
                if (ab == edge_entry.end() || ac == edge_entry.end() || bc == edge_entry.end())
                    continue;
                if (rnd(100) < 40) continue;
                int e = std::max({ab->second, ac->second, bc->second, rnd(max_entry)});
                F.simplices.push_back({{a, b, c}, e});
            }
    return F;
}

// ---- random presentations ----

inline mph::GradedModulePresentation random_presentation(std::mt19937& rng, int r,
                                                         const mph::FieldSpec& field,
                                                         int max_gen_coord = 2, int max_bump = 2) {
    auto rnd = [&](int m) { return static_cast<int>(rng() % static_cast<unsigned>(m)); };
    mph::GradedModulePresentation P;
    P.r = r;
    P.field = field;
    int ngens = 1 + rnd(3);
    for (int k = 0; k < ngens; ++k) {
        std::vector<int> c(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = rnd(max_gen_coord + 1);
        P.gens.emplace_back(c);
    }
    int nrels = rnd(4);
    for (int j = 0; j < nrels; ++j) {
        const Degree& base = P.gens[static_cast<std::size_t>(rnd(ngens))];
        std::vector<int> c(static_cast<std::size_t>(r));
        bool bumped = false;
        for (int i = 0; i < r; ++i) {
            int b = rnd(max_bump + 1);
            if (b) bumped = true;
            c[static_cast<std::size_t>(i)] = base[i] + b;
        }
        if (!bumped) c[static_cast<std::size_t>(rnd(r))] += 1;
        P.rels.emplace_back(c);
    }
    P.coeffs = mph::Matrix(P.gens.size(), P.rels.size(), field);
    for (std::size_t j = 0; j < P.rels.size(); ++j) {
        bool any = false;
        for (std::size_t i = 0; i < P.gens.size(); ++i) {
            if (!mph::leq(P.gens[i], P.rels[j])) continue;
            int v = rnd(5) - 2;
            if (v != 0) any = true;
            P.coeffs.at(i, j) = mph::Scalar::of_int(field, v);
        }
        if (!any) {
            for (std::size_t i = 0; i < P.gens.size(); ++i)
                if (mph::leq(P.gens[i], P.rels[j])) {
                    P.coeffs.at(i, j) = mph::Scalar::one(field);
                    break;
                }
        }
    }
    P.validate();
    return P;
}

inline mph::MonomialIdeal random_ideal(std::mt19937& rng, int r, int max_coord, int ngens) {
    auto rnd = [&](int m) { return static_cast<int>(rng() % static_cast<unsigned>(m)); };
    std::vector<Degree> gens;
    for (int k = 0; k < ngens; ++k) {
        std::vector<int> c(static_cast<std::size_t>(r));
        bool nz = false;
        for (int i = 0; i < r; ++i) {
            c[static_cast<std::size_t>(i)] = rnd(max_coord + 1);
            if (c[static_cast<std::size_t>(i)]) nz = true;
        }
        if (!nz) c[static_cast<std::size_t>(rnd(r))] = 1;
        gens.emplace_back(c);
    }
    return mph::MonomialIdeal::from_gens(r, gens);
}

// ---- brute-force associated primes over F2 ----

// enumerate every nonzero homogeneous element, compute its annihilator
// staircase directly from the transports, and keep the staircases that are
// coordinate primes
inline std::vector<mph::CoordinatePrime> brute_force_ass(const mph::Frame& M) {
    using mph::CoordinatePrime;
    mph::check(M.field().characteristic() == 2, "brute-force Ass oracle expects F2");
    const mph::DegreeBox& box = M.box();
    int r = box.r();
    std::vector<CoordinatePrime> found;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        int n = M.dim_at(u);
        if (n == 0) continue;
        mph::check(n <= 16, "degree dimension too large for brute force");
        for (std::size_t bits = 1; bits < (std::size_t{1} << n); ++bits) {
            mph::Vec a(static_cast<std::size_t>(n), mph::Scalar::zero(M.field()));
            for (int t = 0; t < n; ++t)
                if ((bits >> t) & 1) a[static_cast<std::size_t>(t)] = mph::Scalar::one(M.field());
            // staircase membership of x^v
            auto member = [&](const Degree& v) {
                mph::Vec moved = M.transport_vec(u, box.clamp(u + v), a);
                for (const auto& x : moved)
                    if (!x.is_zero()) return false;
                return true;
            };
            // Ann is a coordinate prime iff membership is the union of the
            // half-spaces of the variables that kill immediately
            std::vector<int> P;
            for (int i = 0; i < r; ++i)
                if (member(mph::unit_degree(r, i))) P.push_back(i);
            bool is_prime = true;
            for (std::size_t vidx = 0; vidx < box.size() && is_prime; ++vidx) {
                Degree v = box.degree(vidx);
                bool in_union = false;
                for (int i : P)
                    if (v[i] >= 1) in_union = true;
                if (member(v) != in_union) is_prime = false;
            }
            if (is_prime) {
                CoordinatePrime p(r, P);
                if (std::find(found.begin(), found.end(), p) == found.end()) found.push_back(p);
            }
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace oracle
