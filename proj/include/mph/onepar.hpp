#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "mph/degree.hpp"
#include "mph/frame.hpp"
#include "mph/presentation.hpp"

namespace mph {

// l(i) = i * direction + offset
struct LineMap {
    Degree direction;
    Degree offset;

    LineMap(Degree dir, Degree off) : direction(std::move(dir)), offset(std::move(off)) {
        check_same_r(direction, offset);
        if (direction == Degree::zero(direction.r()))
            throw parse_error("line direction must be nonzero");
    }

    Degree at(int i) const {
        std::vector<int> c(static_cast<std::size_t>(direction.r()));
        for (int j = 0; j < direction.r(); ++j) c[static_cast<std::size_t>(j)] = i * direction[j] + offset[j];
        return Degree(c);
    }
};

// finite strictly increasing sequence of degrees, extended constantly past
// its end
struct MonotonePath {
    std::vector<Degree> points;

    explicit MonotonePath(std::vector<Degree> pts) : points(std::move(pts)) {
        if (points.empty()) throw parse_error("empty path");
        for (std::size_t k = 0; k + 1 < points.size(); ++k) {
            if (!leq(points[k], points[k + 1]) || points[k] == points[k + 1])
                throw parse_error("path must be strictly increasing at step " + std::to_string(k));
        }
    }
};

// A one-parameter persistence module given degreewise: dims[0..n] and a step
// matrix per degree, constant (identity steps) beyond the stabilization
// index n.
struct OneParamModule {
    FieldSpec field;
    std::vector<int> dims;
    std::vector<Matrix> steps;  // steps[k] : k -> k+1

    int stabilization_index() const { return static_cast<int>(dims.size()) - 1; }

    int dim_at(int i) const {
        if (i < 0) return 0;
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(i), dims.size() - 1);
        return dims[k];
    }

    bool is_zero() const {
        for (int d : dims)
            if (d) return false;
        return true;
    }

    void verify() const {
        check(!dims.empty(), "one-parameter module with no degrees");
        check(steps.size() + 1 == dims.size(), "one-parameter step count mismatch");
        for (std::size_t k = 0; k < steps.size(); ++k)
            check(steps[k].rows() == static_cast<std::size_t>(dims[k + 1]) &&
                      steps[k].cols() == static_cast<std::size_t>(dims[k]),
                  "one-parameter step shape mismatch");
    }
};

// (M o l)_i = M_{l(i)}, evaluation clamped to the box; the step is the
// composite of the frame steps along any staircase path (path-independent by
// frame commutativity). Stabilizes once every moving coordinate has cleared
// the box.
inline OneParamModule restrict_to_line(const Frame& M, const LineMap& l) {
    check_same_r(l.direction, M.box().upper());
    const Degree& s = M.box().upper();
    int n = 0;
    for (int j = 0; j < M.r(); ++j) {
        if (l.direction[j] == 0) continue;
        int need = s[j] - l.offset[j];
        if (need > 0) n = std::max(n, (need + l.direction[j] - 1) / l.direction[j]);
    }
    OneParamModule out;
    out.field = M.field();
    for (int i = 0; i <= n; ++i) out.dims.push_back(M.dim_at(l.at(i)));
    for (int i = 0; i < n; ++i) out.steps.push_back(M.transport(l.at(i), l.at(i + 1)));
    out.verify();
    return out;
}

inline OneParamModule restrict_to_path(const Frame& M, const MonotonePath& f) {
    OneParamModule out;
    out.field = M.field();
    for (const Degree& u : f.points) out.dims.push_back(M.dim_at(u));
    for (std::size_t k = 0; k + 1 < f.points.size(); ++k)
        out.steps.push_back(M.transport(f.points[k], f.points[k + 1]));
    out.verify();
    return out;
}

// a frame over r = 1 as a one-parameter module
inline OneParamModule one_param_of_frame(const Frame& M) {
    check(M.r() == 1, "expected a one-parameter frame");
    OneParamModule out;
    out.field = M.field();
    int n = M.box().upper()[0];
    for (int i = 0; i <= n; ++i) out.dims.push_back(M.dim_at(Degree({i})));
    for (int i = 0; i < n; ++i) out.steps.push_back(M.step(Degree({i}), 0));
    out.verify();
    return out;
}

// M (x)_S S/(x_1 - x_2, ..., x_{r-1} - x_r): identify all variables. On a
// presentation this regrades every generator and relation to its total
// degree and keeps the scalar matrix; the result presents the tensor product
// as an N-graded module over K[x].
inline GradedModulePresentation diagonal_presentation(const GradedModulePresentation& P) {
    GradedModulePresentation Q;
    Q.r = 1;
    Q.field = P.field;
    for (const Degree& g : P.gens) Q.gens.push_back(Degree({g.total()}));
    for (const Degree& d : P.rels) Q.rels.push_back(Degree({d.total()}));
    Q.coeffs = P.coeffs;
    Q.validate();
    return Q;
}

inline OneParamModule diagonal_tensor(const GradedModulePresentation& P) {
    GradedModulePresentation Q = diagonal_presentation(P);
    return one_param_of_frame(frame_of_presentation(Q));
}

// ---- barcodes ----

struct Bar {
    int birth = 0;
    std::optional<int> death;  // absent = infinite

    bool operator==(const Bar& o) const { return birth == o.birth && death == o.death; }
    bool operator<(const Bar& o) const {
        if (birth != o.birth) return birth < o.birth;
        if (death.has_value() != o.death.has_value()) return death.has_value();
        if (!death.has_value()) return false;
        return *death < *o.death;
    }

    std::string str() const {
        return "[" + std::to_string(birth) + ", " + (death ? std::to_string(*death) : "inf") + ")";
    }
};

struct Barcode {
    std::vector<Bar> bars;  // sorted by birth then death, infinite last

    std::size_t infinite_count() const {
        std::size_t n = 0;
        for (const auto& b : bars)
            if (!b.death) ++n;
        return n;
    }

    bool operator==(const Barcode& o) const { return bars == o.bars; }

    // dimension at index i implied by the interval decomposition
    int dim_at(int i) const {
        int d = 0;
        for (const auto& b : bars)
            if (b.birth <= i && (!b.death || i < *b.death)) ++d;
        return d;
    }
};

// Interval decomposition of a one-parameter module from the ranks of its
// composite transition maps: the multiplicity of [b, d) is an inclusion-
// exclusion of four ranks. All multiplicities must come out nonnegative and
// the intervals must reassemble the dimension at every index.
inline Barcode barcode(const OneParamModule& N) {
    N.verify();
    int n = N.stabilization_index();
    // rho[i][j] = rank of the composite i -> j, for 0 <= i <= j <= n
    std::vector<std::vector<long long>> rho(static_cast<std::size_t>(n) + 1,
                                            std::vector<long long>(static_cast<std::size_t>(n) + 1, 0));
    for (int i = 0; i <= n; ++i) {
        Matrix t = Matrix::identity(static_cast<std::size_t>(N.dims[static_cast<std::size_t>(i)]), N.field);
        rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            N.dims[static_cast<std::size_t>(i)];
        for (int j = i + 1; j <= n; ++j) {
            t = N.steps[static_cast<std::size_t>(j - 1)] * t;
            rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<long long>(rank(t));
        }
    }
    auto R = [&](int i, int j) -> long long {
        if (i < 0) return 0;
        return rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    Barcode bc;
    for (int b = 0; b <= n; ++b) {
        for (int d = b + 1; d <= n; ++d) {
            long long m = R(b, d - 1) - R(b, d) - R(b - 1, d - 1) + R(b - 1, d);
            check(m >= 0, "negative interval multiplicity");
            for (long long k = 0; k < m; ++k) bc.bars.push_back({b, d});
        }
        long long inf = R(b, n) - R(b - 1, n);
        check(inf >= 0, "negative infinite-interval multiplicity");
        for (long long k = 0; k < inf; ++k) bc.bars.push_back({b, std::nullopt});
    }
    std::sort(bc.bars.begin(), bc.bars.end());
    for (int i = 0; i <= n; ++i)
        check(bc.dim_at(i) == N.dims[static_cast<std::size_t>(i)],
              "barcode does not reassemble the module dimensions");
    return bc;
}

}  // namespace mph
