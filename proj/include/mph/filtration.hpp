#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mph/degree.hpp"
#include "mph/field.hpp"
#include "mph/matrix.hpp"

namespace mph {

// A simplex with its entry degrees: the antichain of minimal degrees at
// which it is present. One entry degree means one-critical.
struct Simplex {
    std::vector<int> verts;       // sorted vertex ids
    std::vector<Degree> entries;  // antichain, sorted
    int line = 0;                 // source line, for diagnostics

    int dim() const { return static_cast<int>(verts.size()) - 1; }

    bool present_at(const Degree& u) const {
        for (const Degree& e : entries)
            if (leq(e, u)) return true;
        return false;
    }
};

// An ordinary simplicial complex snapshot K_u: per dimension, the indices of
// the simplices present, in the canonical (lexicographic) order.
struct SnapshotComplex {
    Degree degree;
    std::vector<std::vector<int>> by_dim;  // global simplex indices

    std::size_t count(int dim) const {
        if (dim < 0 || dim >= static_cast<int>(by_dim.size())) return 0;
        return by_dim[static_cast<std::size_t>(dim)].size();
    }
    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& v : by_dim) n += v.size();
        return n;
    }
};

struct BoundaryMatrixAt {
    Degree degree;
    int index = 0;  // homological index i
    Matrix matrix;  // C_i(K_u) -> C_{i-1}(K_u); 0 x n for i = 0
};

// A multifiltered simplicial complex over N^r: finite, closed under faces,
// monotone (every facet is present wherever its coface is). Immutable after
// parse; snapshots and boundary extraction are pure.
class MultifilteredComplex {
public:
    int r() const { return r_; }
    const FieldSpec& field() const { return field_; }
    const std::vector<std::string>& vertex_labels() const { return labels_; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    int top_dim() const {
        int d = -1;
        for (const auto& s : simplices_) d = std::max(d, s.dim());
        return d;
    }

    bool is_one_critical() const {
        for (const auto& s : simplices_)
            if (s.entries.size() != 1) return false;
        return true;
    }

    // join of all entry degrees; the filtration is constant beyond it
    Degree stabilization_degree() const {
        Degree s = Degree::zero(r_);
        for (const auto& sx : simplices_)
            for (const Degree& e : sx.entries) s = join(s, e);
        return s;
    }

    SnapshotComplex complex_at(const Degree& u) const {
        check_same_r(u, Degree::zero(r_));
        SnapshotComplex snap;
        snap.degree = u;
        snap.by_dim.assign(static_cast<std::size_t>(std::max(top_dim(), 0)) + 1, {});
        for (std::size_t i = 0; i < simplices_.size(); ++i)
            if (simplices_[i].present_at(u))
                snap.by_dim[static_cast<std::size_t>(simplices_[i].dim())].push_back(static_cast<int>(i));
        return snap;
    }

    // simplicial boundary over the session field, in the canonical bases of
    // the snapshot at u; the i = 0 boundary maps into the zero space
    BoundaryMatrixAt boundary_at(const Degree& u, int i) const {
        if (i < 0) throw parse_error("negative homological index");
        SnapshotComplex snap = complex_at(u);
        return boundary_of_snapshot(snap, i);
    }

    BoundaryMatrixAt boundary_of_snapshot(const SnapshotComplex& snap, int i) const {
        BoundaryMatrixAt out;
        out.degree = snap.degree;
        out.index = i;
        std::size_t ncols = snap.count(i);
        std::size_t nrows = i > 0 ? snap.count(i - 1) : 0;
        Matrix m(nrows, ncols, field_);
        if (i > 0 && ncols > 0) {
            const auto& faces = snap.by_dim[static_cast<std::size_t>(i - 1)];
            std::map<std::vector<int>, std::size_t> face_row;
            for (std::size_t k = 0; k < faces.size(); ++k)
                face_row[simplices_[static_cast<std::size_t>(faces[k])].verts] = k;
            const auto& cells = snap.by_dim[static_cast<std::size_t>(i)];
            for (std::size_t j = 0; j < cells.size(); ++j) {
                const auto& verts = simplices_[static_cast<std::size_t>(cells[j])].verts;
                int sign = 1;
                for (std::size_t drop = 0; drop < verts.size(); ++drop) {
                    std::vector<int> face = verts;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                    auto it = face_row.find(face);
                    check(it != face_row.end(), "face missing from snapshot");
                    m.at(it->second, j) = Scalar::of_int(field_, sign);
                    sign = -sign;
                }
            }
        }
        out.matrix = std::move(m);
        return out;
    }

    // .mfsc text format; see docs/formats.md
    static MultifilteredComplex parse(std::istream& in) {
        MultifilteredComplex K;
        std::string line;
        int lineno = 0;
        bool have_r = false, have_field = false;
        struct RawSimplex {
            std::vector<std::string> verts;
            std::vector<Degree> entries;
            int line;
        };
        std::vector<RawSimplex> raw;

        while (std::getline(in, line)) {
            ++lineno;
            std::string body = strip_comment(line);
            if (body.empty()) continue;
            std::istringstream ls(body);
            std::string key;
            ls >> key;
            if (key == "r") {
                if (have_r) throw parse_error("duplicate 'r' line", lineno);
                if (!(ls >> K.r_) || K.r_ < 1) throw parse_error("bad parameter count", lineno);
                have_r = true;
            } else if (key == "field") {
                if (have_field) throw parse_error("duplicate 'field' line", lineno);
                std::string f;
                if (!(ls >> f)) throw parse_error("missing field spec", lineno);
                K.field_ = FieldSpec::parse(f);
                have_field = true;
            } else if (key == "simplex") {
                if (!have_r) throw parse_error("'simplex' before 'r'", lineno);
                auto semi = body.find(';');
                if (semi == std::string::npos) throw parse_error("simplex line needs ';'", lineno);
                RawSimplex rs;
                rs.line = lineno;
                std::istringstream vs(body.substr(7, semi - 7));
                std::string v;
                while (vs >> v) rs.verts.push_back(v);
                if (rs.verts.empty()) throw parse_error("simplex with no vertices", lineno);
                std::sort(rs.verts.begin(), rs.verts.end());
                if (std::adjacent_find(rs.verts.begin(), rs.verts.end()) != rs.verts.end())
                    throw parse_error("repeated vertex in simplex", lineno);
                for (const std::string& dtext : split_degrees(body.substr(semi + 1), lineno)) {
                    Degree d = Degree::parse(dtext);
                    if (d.r() != K.r_)
                        throw parse_error("entry degree has wrong dimension: " + dtext, lineno);
                    rs.entries.push_back(d);
                }
                if (rs.entries.empty()) throw parse_error("simplex with no entry degrees", lineno);
                raw.push_back(std::move(rs));
            } else {
                throw parse_error("unknown keyword '" + key + "'", lineno);
            }
        }
        if (!have_r) throw parse_error("missing 'r' header line");

        // vertex ids: lexicographic on labels
        std::vector<std::string> labels;
        for (const auto& rs : raw)
            for (const auto& v : rs.verts) labels.push_back(v);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        K.labels_ = labels;
        std::map<std::string, int> vid;
        for (std::size_t i = 0; i < labels.size(); ++i) vid[labels[i]] = static_cast<int>(i);

        for (const auto& rs : raw) {
            Simplex s;
            s.line = rs.line;
            for (const auto& v : rs.verts) s.verts.push_back(vid[v]);
            std::sort(s.verts.begin(), s.verts.end());
            s.entries = reduce_to_antichain(rs.entries);
            if (s.entries.size() < rs.entries.size())
                K.warnings_.push_back("line " + std::to_string(rs.line) +
                                      ": dominated entry degrees dropped");
            K.simplices_.push_back(std::move(s));
        }

        // canonical order: dimension, then lexicographic vertex list
        std::sort(K.simplices_.begin(), K.simplices_.end(), [](const Simplex& a, const Simplex& b) {
            if (a.dim() != b.dim()) return a.dim() < b.dim();
            return a.verts < b.verts;
        });
        for (std::size_t i = 0; i + 1 < K.simplices_.size(); ++i)
            if (K.simplices_[i].verts == K.simplices_[i + 1].verts)
                throw parse_error("duplicate simplex", K.simplices_[i + 1].line);

        K.validate();
        return K;
    }

    static MultifilteredComplex parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    // same filtration over a different ground field
    MultifilteredComplex with_field(const FieldSpec& f) const {
        MultifilteredComplex K = *this;
        K.field_ = f;
        return K;
    }

private:
    static std::string strip_comment(const std::string& line) {
        std::string body = line.substr(0, line.find('#'));
        std::size_t a = body.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return "";
        std::size_t b = body.find_last_not_of(" \t\r\n");
        return body.substr(a, b - a + 1);
    }

    // "(1,2), (2,1)" -> {"(1,2)", "(2,1)"}
    static std::vector<std::string> split_degrees(const std::string& text, int lineno) {
        std::vector<std::string> out;
        std::string cur;
        int depth = 0;
        for (char c : text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty() && cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
        if (depth != 0) throw parse_error("unbalanced parentheses in entry degrees", lineno);
        std::vector<std::string> trimmed;
        for (auto& s : out) {
            std::size_t a = s.find_first_not_of(" \t");
            if (a == std::string::npos) throw parse_error("empty entry degree", lineno);
            std::size_t b = s.find_last_not_of(" \t");
            trimmed.push_back(s.substr(a, b - a + 1));
        }
        return trimmed;
    }

    static std::vector<Degree> reduce_to_antichain(std::vector<Degree> entries) {
        std::sort(entries.begin(), entries.end());
        entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
        std::vector<Degree> keep;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < entries.size() && !dominated; ++j)
                if (i != j && leq(entries[j], entries[i])) dominated = true;
            if (!dominated) keep.push_back(entries[i]);
        }
        return keep;
    }

    void validate() const {
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < simplices_.size(); ++i) index[simplices_[i].verts] = i;
        for (const auto& s : simplices_) {
            if (s.dim() == 0) continue;
            for (std::size_t drop = 0; drop < s.verts.size(); ++drop) {
                std::vector<int> face = s.verts;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                auto it = index.find(face);
                if (it == index.end())
                    throw parse_error("face closure violation: missing facet of simplex", s.line);
                const Simplex& tau = simplices_[it->second];
                // monotonicity: tau present wherever s is
                for (const Degree& e : s.entries)
                    if (!tau.present_at(e))
                        throw parse_error("monotonicity violation: facet enters after its coface",
                                          s.line);
            }
        }
    }

    int r_ = 1;
    FieldSpec field_;
    std::vector<std::string> labels_;
    std::vector<Simplex> simplices_;
    std::vector<std::string> warnings_;
};

}  // namespace mph
