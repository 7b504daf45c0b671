#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mph/degree.hpp"
#include "mph/field.hpp"
#include "mph/filtration.hpp"
#include "mph/matrix.hpp"
#include "mph/parallel.hpp"

namespace mph {

// Degreewise representation of an N^r-graded module on a finite box: one
// vector space dimension per degree and a matrix per one-step transition.
// Beyond the box the module is declared constant: evaluation clamps each
// coordinate to the box upper corner, which is sound whenever the module is
// presented in degrees inside the box (see docs/theory.md).
//
// Frames are immutable once built; all derived constructions verify the
// commuting-square condition on the whole box.
class Frame {
public:
    Frame() = default;
    Frame(DegreeBox box, FieldSpec field)
        : box_(std::move(box)),
          field_(std::move(field)),
          dims_(box_.size(), 0),
          steps_(box_.size(), std::vector<Matrix>(static_cast<std::size_t>(box_.r()))) {}

    const DegreeBox& box() const { return box_; }
    const FieldSpec& field() const { return field_; }
    int r() const { return box_.r(); }

    int dim_index(std::size_t idx) const { return dims_[idx]; }
    void set_dim(std::size_t idx, int d) { dims_[idx] = d; }

    // dimension at any degree, via the extension rule
    int dim_at(const Degree& u) const { return dims_[box_.index(box_.clamp(u))]; }

    bool has_step(const Degree& u, int dir) const {
        return u[dir] < box_.upper()[dir];
    }

    const Matrix& step(const Degree& u, int dir) const {
        check(has_step(u, dir), "step leaves the box");
        return steps_[box_.index(u)][static_cast<std::size_t>(dir)];
    }

    void set_step(const Degree& u, int dir, Matrix m) {
        check(has_step(u, dir), "step leaves the box");
        steps_[box_.index(u)][static_cast<std::size_t>(dir)] = std::move(m);
    }

    bool is_zero() const {
        for (int d : dims_)
            if (d != 0) return false;
        return true;
    }

    std::size_t total_dimension() const {
        std::size_t t = 0;
        for (int d : dims_) t += static_cast<std::size_t>(d);
        return t;
    }

    // composite transition matrix from degree `from` to degree `to` (both
    // clamped to the box); steps beyond the box are the identity
    Matrix transport(const Degree& from, const Degree& to) const {
        Degree a = box_.clamp(from);
        Degree b = box_.clamp(to);
        if (!leq(a, b)) throw parse_error("transport requires " + from.str() + " <= " + to.str());
        Matrix m = Matrix::identity(static_cast<std::size_t>(dim_at(a)), field_);
        Degree cur = a;
        for (int i = 0; i < r(); ++i) {
            while (cur[i] < b[i]) {
                m = step(cur, i) * m;
                cur[i] += 1;
            }
        }
        return m;
    }

    Vec transport_vec(const Degree& from, const Degree& to, const Vec& v) const {
        Degree a = box_.clamp(from);
        Degree b = box_.clamp(to);
        if (!leq(a, b)) throw parse_error("transport requires " + from.str() + " <= " + to.str());
        Vec cur = v;
        Degree pos = a;
        for (int i = 0; i < r(); ++i) {
            while (pos[i] < b[i]) {
                cur = step(pos, i).apply(cur);
                pos[i] += 1;
            }
        }
        return cur;
    }

    // exhaustive check of step shapes and commuting squares
    void verify() const {
        for (std::size_t idx = 0; idx < box_.size(); ++idx) {
            Degree u = box_.degree(idx);
            for (int i = 0; i < r(); ++i) {
                if (!has_step(u, i)) continue;
                const Matrix& s = step(u, i);
                Degree ui = u + unit_degree(r(), i);
                check(s.rows() == static_cast<std::size_t>(dim_at(ui)) &&
                          s.cols() == static_cast<std::size_t>(dim_at(u)),
                      "step shape mismatch at " + u.str());
                for (int j = i + 1; j < r(); ++j) {
                    if (!has_step(u, j)) continue;
                    Degree uj = u + unit_degree(r(), j);
                    if (!(step(ui, j) * s == step(uj, i) * step(u, j)))
                        throw invariant_error("frame square does not commute at " + u.str());
                }
            }
        }
    }

private:
    DegreeBox box_;
    FieldSpec field_;
    std::vector<int> dims_;
    std::vector<std::vector<Matrix>> steps_;
};

inline Frame zero_frame(const DegreeBox& box, const FieldSpec& f) { return Frame(box, f); }

// basis of the free module (+)S(-g_k) at degree u: the k with g_k <= u,
// in generator order
inline std::vector<int> free_basis_at(const std::vector<Degree>& gens, const Degree& u) {
    std::vector<int> idx;
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (leq(gens[k], u)) idx.push_back(static_cast<int>(k));
    return idx;
}

inline Frame free_frame(const std::vector<Degree>& gens, const DegreeBox& box, const FieldSpec& f) {
    Frame F(box, f);
    for (std::size_t idx = 0; idx < box.size(); ++idx)
        F.set_dim(idx, static_cast<int>(free_basis_at(gens, box.degree(idx)).size()));
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        std::vector<int> src = free_basis_at(gens, u);
        for (int i = 0; i < box.r(); ++i) {
            if (!F.has_step(u, i)) continue;
            Degree v = u + unit_degree(box.r(), i);
            std::vector<int> dst = free_basis_at(gens, v);
            Matrix m(dst.size(), src.size(), f);
            for (std::size_t a = 0; a < src.size(); ++a) {
                auto it = std::lower_bound(dst.begin(), dst.end(), src[a]);
                check(it != dst.end() && *it == src[a], "free basis not nested");
                m.at(static_cast<std::size_t>(it - dst.begin()), a) = Scalar::one(f);
            }
            F.set_step(u, i, std::move(m));
        }
    }
    return F;
}

// A morphism of frames on a common box: one component matrix per degree,
// natural with respect to the steps.
class FrameMap {
public:
    FrameMap() = default;
    FrameMap(Frame src, Frame tgt, std::vector<Matrix> comps)
        : src_(std::move(src)), tgt_(std::move(tgt)), comps_(std::move(comps)) {
        check(src_.box() == tgt_.box(), "frame map boxes differ");
        check(comps_.size() == src_.box().size(), "frame map component count");
        verify();
    }

    const Frame& source() const { return src_; }
    const Frame& target() const { return tgt_; }
    const DegreeBox& box() const { return src_.box(); }
    const Matrix& at(std::size_t idx) const { return comps_[idx]; }
    const Matrix& at(const Degree& u) const { return comps_[box().index(u)]; }

    void verify() const {
        const DegreeBox& box = src_.box();
        for (std::size_t idx = 0; idx < box.size(); ++idx) {
            Degree u = box.degree(idx);
            const Matrix& c = comps_[idx];
            check(c.rows() == static_cast<std::size_t>(tgt_.dim_at(u)) &&
                      c.cols() == static_cast<std::size_t>(src_.dim_at(u)),
                  "frame map component shape at " + u.str());
            for (int i = 0; i < box.r(); ++i) {
                if (!src_.has_step(u, i)) continue;
                Degree v = u + unit_degree(box.r(), i);
                if (!(tgt_.step(u, i) * c == comps_[box.index(v)] * src_.step(u, i)))
                    throw invariant_error("frame map not natural at " + u.str());
            }
        }
    }

private:
    Frame src_, tgt_;
    std::vector<Matrix> comps_;
};

// A frame together with a degreewise embedding into an ambient frame.
struct SubFrame {
    Frame frame;
    std::vector<Matrix> embed;  // ambient_dim x sub_dim per degree
};

// A frame presented as a degreewise quotient of an ambient frame.
struct QuotientFrame {
    Frame frame;
    std::vector<Quotient> quot;
};

inline SubFrame kernel_frame(const FrameMap& f) {
    const DegreeBox& box = f.box();
    const FieldSpec& field = f.source().field();
    SubFrame out{Frame(box, field), std::vector<Matrix>(box.size())};
    std::vector<SpanBasis> bases(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        bases[idx] = SpanBasis(kernel_basis(f.at(idx)));
        out.embed[idx] = bases[idx].basis();
        out.frame.set_dim(idx, static_cast<int>(bases[idx].dim()));
    }
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int i = 0; i < box.r(); ++i) {
            if (!out.frame.has_step(u, i)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), i));
            Matrix moved = f.source().step(u, i) * out.embed[idx];
            Matrix m(bases[vidx].dim(), bases[idx].dim(), field);
            for (std::size_t k = 0; k < bases[idx].dim(); ++k)
                m.set_col(k, bases[vidx].coords(moved.col(k)));
            out.frame.set_step(u, i, std::move(m));
        }
    }
    out.frame.verify();
    return out;
}

inline SubFrame image_frame(const FrameMap& f) {
    const DegreeBox& box = f.box();
    const FieldSpec& field = f.source().field();
    SubFrame out{Frame(box, field), std::vector<Matrix>(box.size())};
    std::vector<SpanBasis> bases(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        bases[idx] = SpanBasis(f.at(idx));
        out.embed[idx] = bases[idx].basis();
        out.frame.set_dim(idx, static_cast<int>(bases[idx].dim()));
    }
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int i = 0; i < box.r(); ++i) {
            if (!out.frame.has_step(u, i)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), i));
            Matrix moved = f.target().step(u, i) * out.embed[idx];
            Matrix m(bases[vidx].dim(), bases[idx].dim(), field);
            for (std::size_t k = 0; k < bases[idx].dim(); ++k)
                m.set_col(k, bases[vidx].coords(moved.col(k)));
            out.frame.set_step(u, i, std::move(m));
        }
    }
    out.frame.verify();
    return out;
}

inline QuotientFrame cokernel_frame(const FrameMap& f) {
    const DegreeBox& box = f.box();
    const FieldSpec& field = f.source().field();
    QuotientFrame out{Frame(box, field), std::vector<Quotient>(box.size())};
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        out.quot[idx] =
            Quotient(static_cast<std::size_t>(f.target().dim_at(box.degree(idx))), f.at(idx), field);
        out.frame.set_dim(idx, static_cast<int>(out.quot[idx].dim()));
    }
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int i = 0; i < box.r(); ++i) {
            if (!out.frame.has_step(u, i)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), i));
            Matrix m(out.quot[vidx].dim(), out.quot[idx].dim(), field);
            for (std::size_t k = 0; k < out.quot[idx].dim(); ++k)
                m.set_col(k, out.quot[vidx].reduce(f.target().step(u, i).apply(out.quot[idx].rep(k))));
            out.frame.set_step(u, i, std::move(m));
        }
    }
    out.frame.verify();
    return out;
}

// ker(lower) / im(upper) for composable maps with lower o upper = 0.
// `reps` holds a chosen cycle representative (in ambient coordinates) per
// homology basis vector.
struct SubquotientFrame {
    Frame frame;
    std::vector<Matrix> reps;
};

inline SubquotientFrame homology_of(const FrameMap& upper, const FrameMap& lower) {
    const DegreeBox& box = lower.box();
    const FieldSpec& field = lower.source().field();
    check(upper.box() == box, "homology maps on different boxes");
    SubquotientFrame out{Frame(box, field), std::vector<Matrix>(box.size())};
    std::vector<SpanBasis> cycles(box.size());
    std::vector<Quotient> quot(box.size());

    parallel_for(box.size(), [&](std::size_t idx) {
        check((lower.at(idx) * upper.at(idx)).is_zero(), "maps do not compose to zero");
        cycles[idx] = SpanBasis(kernel_basis(lower.at(idx)));
        const Matrix& b = upper.at(idx);
        Matrix b_in_z(cycles[idx].dim(), b.cols(), field);
        for (std::size_t j = 0; j < b.cols(); ++j)
            b_in_z.set_col(j, cycles[idx].coords(b.col(j)));
        quot[idx] = Quotient(cycles[idx].dim(), b_in_z, field);
    });
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        out.frame.set_dim(idx, static_cast<int>(quot[idx].dim()));
        Matrix reps(cycles[idx].ambient_dim(), quot[idx].dim(), field);
        for (std::size_t j = 0; j < quot[idx].dim(); ++j)
            reps.set_col(j, cycles[idx].basis().apply(quot[idx].rep(j)));
        out.reps[idx] = std::move(reps);
    }
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int i = 0; i < box.r(); ++i) {
            if (!out.frame.has_step(u, i)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), i));
            Matrix moved = lower.source().step(u, i) * out.reps[idx];
            Matrix m(quot[vidx].dim(), quot[idx].dim(), field);
            for (std::size_t k = 0; k < quot[idx].dim(); ++k)
                m.set_col(k, quot[vidx].reduce(cycles[vidx].coords(moved.col(k))));
            out.frame.set_step(u, i, std::move(m));
        }
    }
    out.frame.verify();
    return out;
}

// chain module C_i(K_u) as a frame, with inclusion steps
inline Frame chain_frame(const MultifilteredComplex& K, int i, const DegreeBox& box) {
    Frame F(box, K.field());
    if (i < 0) return F;
    std::vector<SnapshotComplex> snaps(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        snaps[idx] = K.complex_at(box.degree(idx));
        F.set_dim(idx, static_cast<int>(snaps[idx].count(i)));
    }
    static const std::vector<int> kEmpty;
    auto cells = [&](std::size_t idx) -> const std::vector<int>& {
        if (i >= static_cast<int>(snaps[idx].by_dim.size())) return kEmpty;
        return snaps[idx].by_dim[static_cast<std::size_t>(i)];
    };
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        for (int dir = 0; dir < box.r(); ++dir) {
            if (!F.has_step(u, dir)) continue;
            std::size_t vidx = box.index(u + unit_degree(box.r(), dir));
            const std::vector<int>& src = cells(idx);
            const std::vector<int>& dst = cells(vidx);
            Matrix m(dst.size(), src.size(), K.field());
            for (std::size_t a = 0; a < src.size(); ++a) {
                auto it = std::lower_bound(dst.begin(), dst.end(), src[a]);
                check(it != dst.end() && *it == src[a], "snapshot bases not nested");
                m.at(static_cast<std::size_t>(it - dst.begin()), a) = Scalar::one(K.field());
            }
            F.set_step(u, dir, std::move(m));
        }
    }
    return F;
}

// the boundary d_i : C_i -> C_{i-1} as a frame map
inline FrameMap boundary_frame_map(const MultifilteredComplex& K, int i, const DegreeBox& box) {
    Frame src = chain_frame(K, i, box);
    Frame tgt = chain_frame(K, i - 1, box);
    std::vector<Matrix> comps(box.size());
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        SnapshotComplex snap = K.complex_at(box.degree(idx));
        comps[idx] = K.boundary_of_snapshot(snap, i).matrix;
    }
    return FrameMap(std::move(src), std::move(tgt), std::move(comps));
}

// simplicial homology of the multifiltration as a frame on the box
inline SubquotientFrame homology_frame_with_reps(const MultifilteredComplex& K, int i,
                                                 const DegreeBox& box) {
    check(leq(K.stabilization_degree(), box.upper()),
          "box must dominate the stabilization degree");
    FrameMap lower = boundary_frame_map(K, i, box);
    FrameMap upper = boundary_frame_map(K, i + 1, box);
    return homology_of(upper, lower);
}

inline Frame homology_frame(const MultifilteredComplex& K, int i, const DegreeBox& box) {
    return homology_frame_with_reps(K, i, box).frame;
}

inline Frame homology_frame(const MultifilteredComplex& K, int i) {
    return homology_frame(K, i, DegreeBox(K.stabilization_degree()));
}

// A minimal homogeneous generator: a degree and an element of M at that
// degree (coordinates in the frame basis).
struct MinGen {
    Degree degree;
    Vec rep;
};

namespace detail {

// subspace of M_u killed by the prescribed powers: the intersection over
// i in P of ker(M_u -> M_{u + kappa_i * e_i})
inline Matrix torsion_subspace(const Frame& M, const Degree& u, const std::vector<int>& dirs,
                               const std::vector<int>& kappa) {
    Matrix stacked(0, static_cast<std::size_t>(M.dim_at(u)), M.field());
    for (std::size_t t = 0; t < dirs.size(); ++t) {
        Degree to = u;
        to[dirs[t]] += kappa[t];
        stacked = Matrix::vstack(stacked, M.transport(u, to));
    }
    return kernel_basis(stacked);
}

}  // namespace detail

// Minimal homogeneous generators of M: at each degree a complement of the
// sum of the images of the incoming one-step maps. Representatives are drawn
// greedily from the most-annihilated subspaces first (unit vectors where
// possible), which keeps presentation matrices sparse and aligned with
// direct-sum decompositions when one exists.
inline std::vector<MinGen> minimal_generators(const Frame& M) {
    std::vector<MinGen> out;
    const DegreeBox& box = M.box();
    const Degree& s = box.upper();
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Degree u = box.degree(idx);
        std::size_t n = static_cast<std::size_t>(M.dim_at(u));
        if (n == 0) continue;
        IncrementalSpan span(n, M.field());
        for (int i = 0; i < box.r(); ++i) {
            if (u[i] == 0) continue;
            Degree prev = u - unit_degree(box.r(), i);
            const Matrix& st = M.step(prev, i);
            for (std::size_t c = 0; c < st.cols(); ++c) span.add(st.col(c));
        }
        if (span.dim() == n) continue;

        // enumerate (P, kappa) candidates, most-annihilated first
        std::vector<int> dirs;
        for (int i = 0; i < box.r(); ++i)
            if (u[i] < s[i]) dirs.push_back(i);
        struct Cand {
            std::vector<int> P, kappa;
            int total;
        };
        std::vector<Cand> cands;
        for (int mask = 1; mask < (1 << dirs.size()); ++mask) {
            std::vector<int> P;
            for (std::size_t t = 0; t < dirs.size(); ++t)
                if ((mask >> t) & 1) P.push_back(dirs[t]);
            std::vector<int> kappa(P.size(), 1);
            while (true) {
                int total = 0;
                for (int k : kappa) total += k;
                cands.push_back({P, kappa, total});
                std::size_t pos = kappa.size();
                while (pos > 0) {
                    --pos;
                    if (kappa[pos] < s[P[pos]] - u[P[pos]]) {
                        ++kappa[pos];
                        for (std::size_t q = pos + 1; q < kappa.size(); ++q) kappa[q] = 1;
                        break;
                    }
                    if (pos == 0) {
                        kappa.clear();
                        break;
                    }
                }
                if (kappa.empty()) break;
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.P.size() != b.P.size()) return a.P.size() > b.P.size();
            if (a.total != b.total) return a.total < b.total;
            if (a.P != b.P) return a.P < b.P;
            return a.kappa < b.kappa;
        });
        for (const Cand& c : cands) {
            if (span.dim() == n) break;
            Matrix basis = detail::torsion_subspace(M, u, c.P, c.kappa);
            for (std::size_t j = 0; j < basis.cols(); ++j) {
                Vec v = basis.col(j);
                if (span.add(v)) out.push_back({u, std::move(v)});
            }
        }
        for (std::size_t j = 0; j < n && span.dim() < n; ++j) {
            Vec v(n, Scalar::zero(M.field()));
            v[j] = Scalar::one(M.field());
            if (span.add(v)) out.push_back({u, std::move(v)});
        }
        check(span.dim() == n, "generator search did not span M_u");
    }
    return out;
}

}  // namespace mph
