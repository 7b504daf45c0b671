#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mph/degree.hpp"
#include "mph/frame.hpp"
#include "mph/matrix.hpp"
#include "mph/monomial.hpp"

namespace mph {

// "S" / "S(-1,-2)"
inline std::string shift_str(const Degree& g) {
    if (g == Degree::zero(g.r())) return "S";
    std::string s = "S(";
    for (int i = 0; i < g.r(); ++i) {
        if (i) s += ",";
        s += "-" + std::to_string(g[i]);
    }
    return s + ")";
}

// A graded presentation  (+)_j S(-rel_j) --coeffs--> (+)_i S(-gen_i):
// entry (i,j) is the scalar coefficient of generator i in relation j, the
// monomial x^(rel_j - gen_i) being implied by the degrees. An entry must be
// zero unless gen_i <= rel_j. The presentation is minimal iff no entry with
// gen_i = rel_j is nonzero.
struct GradedModulePresentation {
    int r = 1;
    FieldSpec field;
    std::vector<Degree> gens;
    std::vector<Degree> rels;
    Matrix coeffs;  // gens.size() x rels.size()

    void validate() const {
        check(coeffs.rows() == gens.size() && coeffs.cols() == rels.size(),
              "presentation matrix shape mismatch");
        for (const Degree& g : gens)
            if (g.r() != r) throw parse_error("generator degree dimension mismatch");
        for (const Degree& d : rels)
            if (d.r() != r) throw parse_error("relation degree dimension mismatch");
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < rels.size(); ++j)
                if (!coeffs.at(i, j).is_zero() && !leq(gens[i], rels[j]))
                    throw parse_error("nonzero coefficient where gen " + gens[i].str() +
                                      " does not divide rel " + rels[j].str());
    }

    bool is_minimal() const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < rels.size(); ++j)
                if (!coeffs.at(i, j).is_zero() && gens[i] == rels[j]) return false;
        return true;
    }

    // join of all generator and relation degrees: the natural box upper
    Degree degree_span() const {
        Degree s = Degree::zero(r);
        for (const Degree& g : gens) s = join(s, g);
        for (const Degree& d : rels) s = join(s, d);
        return s;
    }

    std::string to_gpres_text() const {
        std::ostringstream out;
        out << "r " << r << "\n";
        out << "field " << field.str() << "\n";
        out << "gens";
        for (const Degree& g : gens) out << " " << g.str();
        out << "\n";
        for (std::size_t j = 0; j < rels.size(); ++j) {
            out << "rel " << rels[j].str() << " :";
            bool first = true;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (coeffs.at(i, j).is_zero()) continue;
                out << (first ? " " : ", ") << (i + 1) << "=" << coeffs.at(i, j).str();
                first = false;
            }
            if (first) out << " 0";  // zero relation (never minimal, but representable)
            out << "\n";
        }
        return out.str();
    }

    static GradedModulePresentation parse(std::istream& in) {
        GradedModulePresentation P;
        std::string line;
        int lineno = 0;
        bool have_r = false, have_gens = false;
        std::vector<std::pair<Degree, std::vector<std::pair<int, Scalar>>>> raw_rels;
        std::vector<std::pair<int, std::string>> pending;  // rel lines before gens seen
        while (std::getline(in, line)) {
            ++lineno;
            std::string body = line.substr(0, line.find('#'));
            std::size_t a = body.find_first_not_of(" \t\r\n");
            if (a == std::string::npos) continue;
            std::size_t b = body.find_last_not_of(" \t\r\n");
            body = body.substr(a, b - a + 1);
            std::istringstream ls(body);
            std::string key;
            ls >> key;
            if (key == "r") {
                if (!(ls >> P.r) || P.r < 1) throw parse_error("bad parameter count", lineno);
                have_r = true;
            } else if (key == "field") {
                std::string f;
                if (!(ls >> f)) throw parse_error("missing field spec", lineno);
                P.field = FieldSpec::parse(f);
            } else if (key == "gens") {
                if (!have_r) throw parse_error("'gens' before 'r'", lineno);
                std::string rest;
                std::getline(ls, rest);
                std::istringstream gs(rest);
                std::string tok;
                while (gs >> tok) {
                    Degree g = Degree::parse(tok);
                    if (g.r() != P.r) throw parse_error("generator degree dimension", lineno);
                    P.gens.push_back(g);
                }
                have_gens = true;
            } else if (key == "rel") {
                if (!have_r || !have_gens) throw parse_error("'rel' before 'gens'", lineno);
                auto colon = body.find(':');
                if (colon == std::string::npos) throw parse_error("rel line needs ':'", lineno);
                Degree d = Degree::parse(trim(body.substr(3, colon - 3)));
                if (d.r() != P.r) throw parse_error("relation degree dimension", lineno);
                std::vector<std::pair<int, Scalar>> terms;
                std::string expr = body.substr(colon + 1);
                std::istringstream ts(expr);
                std::string term;
                while (std::getline(ts, term, ',')) {
                    std::string t = trim(term);
                    if (t.empty() || t == "0") continue;
                    auto eq = t.find('=');
                    if (eq == std::string::npos)
                        throw parse_error("rel term must be genIndex=scalar", lineno);
                    int gi = 0;
                    try {
                        gi = std::stoi(trim(t.substr(0, eq)));
                    } catch (...) {
                        throw parse_error("bad generator index in rel", lineno);
                    }
                    if (gi < 1 || gi > static_cast<int>(P.gens.size()))
                        throw parse_error("generator index out of range", lineno);
                    terms.emplace_back(gi - 1, parse_scalar(P.field, trim(t.substr(eq + 1)), lineno));
                }
                raw_rels.emplace_back(d, std::move(terms));
            } else {
                throw parse_error("unknown keyword '" + key + "'", lineno);
            }
        }
        if (!have_r) throw parse_error("missing 'r' header line");
        if (!have_gens) throw parse_error("missing 'gens' line");
        P.coeffs = Matrix(P.gens.size(), raw_rels.size(), P.field);
        for (std::size_t j = 0; j < raw_rels.size(); ++j) {
            P.rels.push_back(raw_rels[j].first);
            for (const auto& [gi, sc] : raw_rels[j].second)
                P.coeffs.at(static_cast<std::size_t>(gi), j) = sc;
        }
        P.validate();
        return P;
    }

    static GradedModulePresentation parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    // re-express over another field (integer/rational coefficients reinterpreted)
    GradedModulePresentation with_field(const FieldSpec& f) const;

private:
    static std::string trim(const std::string& s) {
        std::size_t a = s.find_first_not_of(" \t");
        if (a == std::string::npos) return "";
        std::size_t b = s.find_last_not_of(" \t");
        return s.substr(a, b - a + 1);
    }

    static Scalar parse_scalar(const FieldSpec& f, const std::string& t, int lineno) {
        if (t.empty()) throw parse_error("empty scalar", lineno);
        auto slash = t.find('/');
        try {
            if (slash == std::string::npos) return Scalar::of_integer(f, Integer(t));
            return Scalar::of_fraction(f, Integer(t.substr(0, slash)), Integer(t.substr(slash + 1)));
        } catch (const parse_error&) {
            throw;
        } catch (...) {
            throw parse_error("bad scalar '" + t + "'", lineno);
        }
    }
};

// degreewise cokernel of the relation map, with induced steps
inline Frame frame_of_presentation(const GradedModulePresentation& P, const DegreeBox& box) {
    P.validate();
    if (!leq(P.degree_span(), box.upper()))
        throw parse_error("box " + box.upper().str() + " too small for presentation span " +
                          P.degree_span().str());
    Frame M(box, P.field);
    std::vector<Quotient> quot(box.size());
    std::vector<std::vector<int>> basis(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        basis[idx] = free_basis_at(P.gens, u);
        std::vector<Vec> relcols;
        for (std::size_t j = 0; j < P.rels.size(); ++j) {
            if (!leq(P.rels[j], u)) continue;
            Vec col(basis[idx].size(), Scalar::zero(P.field));
            for (std::size_t a = 0; a < basis[idx].size(); ++a)
                col[a] = P.coeffs.at(static_cast<std::size_t>(basis[idx][a]), j);
            relcols.push_back(std::move(col));
        }
        quot[idx] = Quotient(basis[idx].size(),
                             Matrix::from_columns(basis[idx].size(), relcols, P.field), P.field);
        M.set_dim(idx, static_cast<int>(quot[idx].dim()));
    }
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int i = 0; i < box.r(); ++i) {
            if (!M.has_step(u, i)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), i));
            Matrix m(quot[vidx].dim(), quot[idx].dim(), P.field);
            for (std::size_t k = 0; k < quot[idx].dim(); ++k) {
                Vec lift = quot[idx].rep(k);
                Vec inj(basis[vidx].size(), Scalar::zero(P.field));
                for (std::size_t a = 0; a < basis[idx].size(); ++a) {
                    auto it = std::lower_bound(basis[vidx].begin(), basis[vidx].end(), basis[idx][a]);
                    inj[static_cast<std::size_t>(it - basis[vidx].begin())] = lift[a];
                }
                m.set_col(k, quot[vidx].reduce(inj));
            }
            M.set_step(u, i, std::move(m));
        }
    }
    M.verify();
    return M;
}

inline Frame frame_of_presentation(const GradedModulePresentation& P) {
    return frame_of_presentation(P, DegreeBox(P.degree_span()));
}

// the presentation matrix as a map of free frames
inline FrameMap free_map_of_presentation(const GradedModulePresentation& P, const DegreeBox& box) {
    Frame src = free_frame(P.rels, box, P.field);
    Frame tgt = free_frame(P.gens, box, P.field);
    std::vector<Matrix> comps(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        std::vector<int> rb = free_basis_at(P.rels, u);
        std::vector<int> gb = free_basis_at(P.gens, u);
        Matrix m(gb.size(), rb.size(), P.field);
        for (std::size_t j = 0; j < rb.size(); ++j)
            for (std::size_t i = 0; i < gb.size(); ++i)
                m.at(i, j) = P.coeffs.at(static_cast<std::size_t>(gb[i]),
                                         static_cast<std::size_t>(rb[j]));
        comps[idx] = std::move(m);
    }
    return FrameMap(std::move(src), std::move(tgt), std::move(comps));
}

struct MinimalPresentationResult {
    GradedModulePresentation pres;
    std::vector<MinGen> gen_elements;  // representatives inside the source frame
};

// Minimal presentation of a frame: minimal generators, then the minimal
// generators of the kernel of the induced free cover.
inline MinimalPresentationResult minimal_presentation(const Frame& M) {
    const DegreeBox& box = M.box();
    const FieldSpec& field = M.field();
    std::vector<MinGen> gens = minimal_generators(M);
    std::vector<Degree> gdegs;
    for (const auto& g : gens) gdegs.push_back(g.degree);

    Frame F0 = free_frame(gdegs, box, field);
    std::vector<Matrix> comps(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        std::vector<int> fb = free_basis_at(gdegs, u);
        Matrix m(static_cast<std::size_t>(M.dim_at(u)), fb.size(), field);
        for (std::size_t a = 0; a < fb.size(); ++a) {
            const MinGen& g = gens[static_cast<std::size_t>(fb[a])];
            m.set_col(a, M.transport_vec(g.degree, u, g.rep));
        }
        comps[idx] = std::move(m);
    }
    FrameMap cover(F0, M, std::move(comps));

    SubFrame K = kernel_frame(cover);
    std::vector<MinGen> rel_gens = minimal_generators(K.frame);

    GradedModulePresentation P;
    P.r = box.r();
    P.field = field;
    P.gens = gdegs;
    for (const auto& rg : rel_gens) P.rels.push_back(rg.degree);
    P.coeffs = Matrix(P.gens.size(), P.rels.size(), field);
    for (std::size_t j = 0; j < rel_gens.size(); ++j) {
        std::size_t idx = box.index(rel_gens[j].degree);
        Vec in_f0 = K.embed[idx].apply(rel_gens[j].rep);
        std::vector<int> fb = free_basis_at(gdegs, rel_gens[j].degree);
        for (std::size_t a = 0; a < fb.size(); ++a)
            P.coeffs.at(static_cast<std::size_t>(fb[a]), j) = in_f0[a];
    }
    P.validate();
    check(P.is_minimal(), "presentation is not minimal");
    return {std::move(P), std::move(gens)};
}

// A minimal graded free resolution 0 -> F_n -> ... -> F_0. maps[k] holds the
// matrix F_{k+1} -> F_k in presentation form (gens = degrees of F_k).
struct FreeResolution {
    std::vector<std::vector<Degree>> free_degrees;   // F_0 .. F_n
    std::vector<GradedModulePresentation> maps;      // size n

    std::size_t length() const { return maps.size(); }
};

inline FreeResolution minimal_free_resolution_of_frame(const Frame& M) {
    const DegreeBox& box = M.box();
    FreeResolution res;
    MinimalPresentationResult mp = minimal_presentation(M);
    res.free_degrees.push_back(mp.pres.gens);
    GradedModulePresentation cur = mp.pres;
    while (!cur.rels.empty()) {
        res.free_degrees.push_back(cur.rels);
        res.maps.push_back(cur);
        if (res.maps.size() > static_cast<std::size_t>(box.r()) + 1)
            throw invariant_error("free resolution exceeds r+1 steps");
        FrameMap d = free_map_of_presentation(cur, box);
        SubFrame K = kernel_frame(d);
        std::vector<MinGen> syz = minimal_generators(K.frame);
        GradedModulePresentation next;
        next.r = box.r();
        next.field = M.field();
        next.gens = cur.rels;
        for (const auto& s : syz) next.rels.push_back(s.degree);
        next.coeffs = Matrix(next.gens.size(), next.rels.size(), M.field());
        for (std::size_t j = 0; j < syz.size(); ++j) {
            std::size_t idx = box.index(syz[j].degree);
            Vec in_f = K.embed[idx].apply(syz[j].rep);
            std::vector<int> fb = free_basis_at(next.gens, syz[j].degree);
            for (std::size_t a = 0; a < fb.size(); ++a)
                next.coeffs.at(static_cast<std::size_t>(fb[a]), j) = in_f[a];
        }
        next.validate();
        check(next.is_minimal(), "resolution map is not minimal");
        cur = std::move(next);
    }
    check(res.length() <= static_cast<std::size_t>(box.r()),
          "resolution length exceeds the number of parameters");
    return res;
}

inline FreeResolution minimal_free_resolution(const GradedModulePresentation& P,
                                              const DegreeBox& box) {
    return minimal_free_resolution_of_frame(frame_of_presentation(P, box));
}

struct BettiEntry {
    int index;  // homological position i
    Degree degree;
    int multiplicity;
};

inline std::vector<BettiEntry> betti_numbers(const FreeResolution& res) {
    std::vector<BettiEntry> out;
    for (std::size_t i = 0; i < res.free_degrees.size(); ++i) {
        std::map<Degree, int> counts;
        for (const Degree& d : res.free_degrees[i]) counts[d] += 1;
        for (const auto& [d, m] : counts) out.push_back({static_cast<int>(i), d, m});
    }
    return out;
}

// When every relation column touches a single generator the module splits
// into cyclic monomial summands S(-g)/I; report them. Returns nothing when
// the matrix does not have that shape.
struct CyclicSummand {
    Degree gen;
    MonomialIdeal ann;

    std::string str() const {
        if (ann.is_zero_ideal()) return shift_str(gen);
        std::string body = ann.min_gens().size() == 1 ? monomial_str(ann.min_gens()[0]) : ann.str();
        return shift_str(gen) + "/" + body;
    }
};

inline std::optional<std::vector<CyclicSummand>> cyclic_decomposition(
    const GradedModulePresentation& P) {
    std::vector<std::vector<Degree>> ann_gens(P.gens.size());
    for (std::size_t j = 0; j < P.rels.size(); ++j) {
        int hit = -1;
        for (std::size_t i = 0; i < P.gens.size(); ++i) {
            if (P.coeffs.at(i, j).is_zero()) continue;
            if (hit >= 0) return std::nullopt;
            hit = static_cast<int>(i);
        }
        if (hit < 0) return std::nullopt;  // zero relation
        ann_gens[static_cast<std::size_t>(hit)].push_back(P.rels[j] - P.gens[static_cast<std::size_t>(hit)]);
    }
    std::vector<CyclicSummand> out;
    for (std::size_t i = 0; i < P.gens.size(); ++i)
        out.push_back({P.gens[i], MonomialIdeal::from_gens(P.r, ann_gens[i])});
    return out;
}

// --- canonical form and equivalence up to permutation and unit scaling ---

// sort generators and relations by degree (stable); scale each relation
// column so its first nonzero entry is 1
inline GradedModulePresentation canonical_form(const GradedModulePresentation& P) {
    std::vector<std::size_t> gperm(P.gens.size()), rperm(P.rels.size());
    for (std::size_t i = 0; i < gperm.size(); ++i) gperm[i] = i;
    for (std::size_t j = 0; j < rperm.size(); ++j) rperm[j] = j;
    std::stable_sort(gperm.begin(), gperm.end(),
                     [&](std::size_t a, std::size_t b) { return P.gens[a] < P.gens[b]; });
    std::stable_sort(rperm.begin(), rperm.end(),
                     [&](std::size_t a, std::size_t b) { return P.rels[a] < P.rels[b]; });
    GradedModulePresentation Q;
    Q.r = P.r;
    Q.field = P.field;
    for (std::size_t i : gperm) Q.gens.push_back(P.gens[i]);
    for (std::size_t j : rperm) Q.rels.push_back(P.rels[j]);
    Q.coeffs = Matrix(Q.gens.size(), Q.rels.size(), P.field);
    for (std::size_t i = 0; i < Q.gens.size(); ++i)
        for (std::size_t j = 0; j < Q.rels.size(); ++j)
            Q.coeffs.at(i, j) = P.coeffs.at(gperm[i], rperm[j]);
    for (std::size_t j = 0; j < Q.rels.size(); ++j) {
        for (std::size_t i = 0; i < Q.gens.size(); ++i) {
            if (Q.coeffs.at(i, j).is_zero()) continue;
            Scalar inv = Q.coeffs.at(i, j).inverse();
            for (std::size_t k = 0; k < Q.gens.size(); ++k) Q.coeffs.at(k, j) *= inv;
            break;
        }
    }
    return Q;
}

namespace detail {

// does a diagonal row scaling D_r and column scaling D_c exist with
// D_r A D_c = B ?  (zero patterns must match; factors propagate by BFS)
inline bool scaling_equivalent(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
    const FieldSpec& f = A.field();
    std::size_t n = A.rows(), m = A.cols();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (A.at(i, j).is_zero() != B.at(i, j).is_zero()) return false;
    std::vector<std::optional<Scalar>> row(n), col(m);
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (row[seed].has_value()) continue;
        row[seed] = Scalar::one(f);
        // propagate through the bipartite graph of nonzero entries
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    if (A.at(i, j).is_zero()) continue;
                    Scalar ratio = B.at(i, j) / A.at(i, j);  // = row_i * col_j
                    if (row[i].has_value() && !col[j].has_value()) {
                        col[j] = ratio / *row[i];
                        changed = true;
                    } else if (col[j].has_value() && !row[i].has_value()) {
                        row[i] = ratio / *col[j];
                        changed = true;
                    } else if (row[i].has_value() && col[j].has_value()) {
                        if (!(*row[i] * *col[j] == ratio)) return false;
                    }
                }
        }
    }
    return true;
}

inline bool permutations_within_blocks(const std::vector<Degree>& degs,
                                       std::vector<std::vector<std::size_t>>& perms_out) {
    // group indices by equal degree; enumerate permutations inside groups
    perms_out.clear();
    std::map<Degree, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < degs.size(); ++i) groups[degs[i]].push_back(i);
    std::vector<std::vector<std::vector<std::size_t>>> group_perms;
    long long total = 1;
    for (auto& [d, idxs] : groups) {
        std::vector<std::vector<std::size_t>> ps;
        std::vector<std::size_t> p = idxs;
        std::sort(p.begin(), p.end());
        do {
            ps.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        total *= static_cast<long long>(ps.size());
        if (total > 100000) return false;  // give up on absurd tie groups
        group_perms.push_back(std::move(ps));
    }
    // cartesian product, reassembled into full index permutations
    std::vector<std::size_t> choice(group_perms.size(), 0);
    while (true) {
        std::vector<std::size_t> perm(degs.size());
        std::size_t g = 0;
        for (auto& [d, idxs] : groups) {
            const auto& p = group_perms[g][choice[g]];
            for (std::size_t k = 0; k < idxs.size(); ++k) perm[idxs[k]] = p[k];
            ++g;
        }
        perms_out.push_back(std::move(perm));
        std::size_t pos = 0;
        while (pos < choice.size()) {
            if (++choice[pos] < group_perms[pos].size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) break;
    }
    return true;
}

}  // namespace detail

// equality of presentations up to permutation of equal-degree generators and
// relations and unit row/column scaling
inline bool presentations_equivalent(const GradedModulePresentation& A,
                                     const GradedModulePresentation& B) {
    if (A.r != B.r || A.field != B.field) return false;
    GradedModulePresentation a = canonical_form(A);
    GradedModulePresentation b = canonical_form(B);
    if (a.gens != b.gens || a.rels != b.rels) return false;
    std::vector<std::vector<std::size_t>> gperms, rperms;
    if (!detail::permutations_within_blocks(a.gens, gperms)) return false;
    if (!detail::permutations_within_blocks(a.rels, rperms)) return false;
    for (const auto& gp : gperms)
        for (const auto& rp : rperms) {
            Matrix m(a.gens.size(), a.rels.size(), a.field);
            for (std::size_t i = 0; i < a.gens.size(); ++i)
                for (std::size_t j = 0; j < a.rels.size(); ++j)
                    m.at(i, j) = a.coeffs.at(gp[i], rp[j]);
            if (detail::scaling_equivalent(m, b.coeffs)) return true;
        }
    return false;
}

inline GradedModulePresentation GradedModulePresentation::with_field(const FieldSpec& f) const {
    GradedModulePresentation Q;
    Q.r = r;
    Q.field = f;
    Q.gens = gens;
    Q.rels = rels;
    Q.coeffs = Matrix(gens.size(), rels.size(), f);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < rels.size(); ++j) {
            const Scalar& s = coeffs.at(i, j);
            if (s.is_zero()) continue;
            if (field.is_rationals()) {
                BigRational q = s.rational_value();
                Q.coeffs.at(i, j) =
                    Scalar::of_fraction(f, boost::multiprecision::numerator(q),
                                        boost::multiprecision::denominator(q));
            } else {
                Q.coeffs.at(i, j) = Scalar::of_integer(f, Integer(s.str()));
            }
        }
    return Q;
}

}  // namespace mph
