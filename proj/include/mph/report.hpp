#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "mph/hilbert.hpp"
#include "mph/monomial.hpp"
#include "mph/onepar.hpp"
#include "mph/presentation.hpp"
#include "mph/strata.hpp"

namespace mph {

using Json = nlohmann::ordered_json;

inline Json poly_json(const IntPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exp"] = e;
        t["coeff"] = c.str();
        terms.push_back(t);
    }
    Json out;
    out["terms"] = terms;
    out["string"] = p.str();
    return out;
}

inline std::string denominator_str(int r, const std::vector<int>& dirs) {
    if (dirs.empty()) return "1";
    std::string s;
    for (int d : dirs) {
        (void)r;
        s += "(1-t" + std::to_string(d + 1) + ")";
    }
    return s;
}

inline std::string all_denominator_str(int r) {
    std::vector<int> dirs;
    for (int i = 0; i < r; ++i) dirs.push_back(i);
    return denominator_str(r, dirs);
}

inline std::string entry_str(const Scalar& c, const Degree& mono) {
    if (c.is_zero()) return ".";
    std::string m = monomial_str(mono);
    if (c.is_one()) return m;
    if ((-c).is_one() && m != "1") return "-" + m;
    if (m == "1") return c.str();
    return c.str() + "*" + m;
}

inline Json presentation_json(const GradedModulePresentation& P) {
    Json out;
    out["r"] = P.r;
    out["field"] = P.field.str();
    Json gens = Json::array();
    for (const Degree& g : P.gens) gens.push_back(g.str());
    out["gens"] = gens;
    Json rels = Json::array();
    for (const Degree& d : P.rels) rels.push_back(d.str());
    out["rels"] = rels;
    Json cols = Json::array();
    for (std::size_t j = 0; j < P.rels.size(); ++j) {
        Json col = Json::array();
        for (std::size_t i = 0; i < P.gens.size(); ++i) {
            if (P.coeffs.at(i, j).is_zero()) continue;
            Json e;
            e["gen"] = i + 1;
            e["coeff"] = P.coeffs.at(i, j).str();
            e["monomial"] = monomial_str(P.rels[j] - P.gens[i]);
            col.push_back(e);
        }
        cols.push_back(col);
    }
    out["columns"] = cols;
    out["minimal"] = P.is_minimal();
    return out;
}

inline std::string presentation_text(const GradedModulePresentation& P) {
    std::ostringstream out;
    out << "generators:";
    for (const Degree& g : P.gens) out << " " << g.str();
    if (P.gens.empty()) out << " (none; zero module)";
    out << "\nrelations:";
    for (const Degree& d : P.rels) out << " " << d.str();
    if (P.rels.empty()) out << " (none; free module)";
    out << "\n";
    if (!P.rels.empty() && !P.gens.empty()) {
        std::vector<std::vector<std::string>> cells(P.gens.size());
        std::vector<std::size_t> width(P.rels.size(), 0);
        for (std::size_t i = 0; i < P.gens.size(); ++i) {
            cells[i].resize(P.rels.size());
            for (std::size_t j = 0; j < P.rels.size(); ++j) {
                cells[i][j] = P.coeffs.at(i, j).is_zero()
                                  ? "."
                                  : entry_str(P.coeffs.at(i, j), P.rels[j] - P.gens[i]);
                width[j] = std::max(width[j], cells[i][j].size());
            }
        }
        out << "matrix (rows = generators, columns = relations):\n";
        for (std::size_t i = 0; i < P.gens.size(); ++i) {
            out << "  [ ";
            for (std::size_t j = 0; j < P.rels.size(); ++j) {
                out << cells[i][j] << std::string(width[j] - cells[i][j].size() + 1, ' ');
            }
            out << "]\n";
        }
    }
    return out.str();
}

inline Json barcode_json(const Barcode& bc) {
    Json bars = Json::array();
    for (const Bar& b : bc.bars) {
        Json e;
        e["birth"] = b.birth;
        if (b.death)
            e["death"] = *b.death;
        else
            e["death"] = nullptr;
        bars.push_back(e);
    }
    return bars;
}

inline std::string barcode_text(const Barcode& bc) {
    std::ostringstream out;
    if (bc.bars.empty()) out << "(empty barcode)\n";
    for (const Bar& b : bc.bars) out << b.str() << "\n";
    return out.str();
}

inline Json life_report_json(const ElementLifeReport& rep) {
    Json e;
    e["birth"] = rep.birth.str();
    e["minimal_generator"] = rep.is_minimal_generator;
    e["lives_forever"] = rep.lives_forever;
    Json deaths = Json::array();
    for (const Degree& d : rep.death_degrees) deaths.push_back(d.str());
    e["death_degrees"] = deaths;
    e["ann"] = rep.ann.str();
    e["radical"] = rep.radical.str();
    e["lives_along"] = rep.lives_along ? Json(rep.lives_along->str()) : Json("mixed");
    Json mp = Json::array();
    for (const CoordinatePrime& p : rep.minimal_primes) mp.push_back(p.str());
    e["minimal_primes"] = mp;
    e["support_dimension"] = rep.support_dimension;
    return e;
}

inline std::string life_report_text(const ElementLifeReport& rep) {
    std::ostringstream out;
    out << "born " << rep.birth.str();
    if (rep.lives_forever) {
        out << ", lives forever";
    } else {
        out << ", dies at";
        for (const Degree& d : rep.death_degrees) out << " " << d.str();
    }
    out << ", Ann = " << rep.ann.str() << ", radical = " << rep.radical.str();
    out << ", lives along " << (rep.lives_along ? rep.lives_along->str() : std::string("mixed"));
    out << ", support dimension " << rep.support_dimension;
    if (!rep.is_minimal_generator) out << " (not a minimal generator)";
    return out.str();
}

// ---- SVG ----

namespace svg_detail {

// region c_p inside an n x n grid: the cells with u_i = 0 for i in p
inline std::string region_rect(const CoordinatePrime& p, int n, double cell, const std::string& color,
                               double opacity) {
    double w = n * cell, h = n * cell;
    bool x0 = p.contains_var(0);
    bool y0 = p.r() >= 2 && p.contains_var(1);
    double rw = x0 ? cell : w;
    double rh = y0 ? cell : h;
    std::ostringstream out;
    out << "<rect x=\"0\" y=\"" << (h - rh) << "\" width=\"" << rw << "\" height=\"" << rh
        << "\" fill=\"" << color << "\" fill-opacity=\"" << opacity << "\" stroke=\"#336\"/>";
    return out.str();
}

}  // namespace svg_detail

// Fig-4 style region plot: grid dots plus one panel per chain with the nested
// regions of its primes. Deterministic; no timestamps or generated ids.
inline std::string strata_svg(const AssPoset& ass, const std::vector<std::vector<CoordinatePrime>>& chains,
                              int grid_n) {
    const double cell = 24.0;
    int panels = std::max<std::size_t>(chains.size(), 1);
    double pw = grid_n * cell + 30, ph = grid_n * cell + 40;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << panels * pw << "\" height=\"" << ph
        << "\" viewBox=\"0 0 " << panels * pw << " " << ph << "\">\n";
    for (int c = 0; c < panels; ++c) {
        out << "<g transform=\"translate(" << c * pw + 10 << ",10)\">\n";
        if (c < static_cast<int>(chains.size())) {
            double op = 0.18;
            for (const CoordinatePrime& p : chains[static_cast<std::size_t>(c)]) {
                out << svg_detail::region_rect(p, grid_n, cell, "#58c", op) << "\n";
                op += 0.18;
            }
        }
        for (int x = 0; x < grid_n; ++x)
            for (int y = 0; y < grid_n; ++y)
                out << "<circle cx=\"" << (x + 0.5) * cell << "\" cy=\"" << (grid_n - y - 0.5) * cell
                    << "\" r=\"1.5\" fill=\"#999\"/>\n";
        std::string label;
        if (c < static_cast<int>(chains.size())) {
            for (std::size_t k = 0; k < chains[static_cast<std::size_t>(c)].size(); ++k) {
                if (k) label += " ⊂ ";
                label += chains[static_cast<std::size_t>(c)][k].str();
            }
        } else {
            label = "Ass = {}";
        }
        out << "<text x=\"0\" y=\"" << grid_n * cell + 16 << "\" font-size=\"11\" font-family=\"monospace\">"
            << label << "</text>\n";
        out << "</g>\n";
    }
    (void)ass;
    out << "</svg>\n";
    return out.str();
}

inline std::string barcode_svg(const Barcode& bc, int stab_index) {
    const double cell = 26.0, rowh = 14.0;
    int n = stab_index + 2;
    double w = n * cell + 60, h = bc.bars.size() * rowh + 40;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    for (int i = 0; i <= n; ++i)
        out << "<line x1=\"" << 30 + i * cell << "\" y1=\"10\" x2=\"" << 30 + i * cell << "\" y2=\""
            << h - 30 << "\" stroke=\"#eee\"/>\n"
            << "<text x=\"" << 30 + i * cell << "\" y=\"" << h - 14
            << "\" font-size=\"9\" text-anchor=\"middle\" font-family=\"monospace\">" << i
            << "</text>\n";
    double y = 16;
    for (const Bar& b : bc.bars) {
        double x1 = 30 + b.birth * cell;
        double x2 = b.death ? 30 + *b.death * cell : 30 + n * cell + 10;
        out << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2 << "\" y2=\"" << y
            << "\" stroke=\"#36c\" stroke-width=\"4\"/>\n";
        if (!b.death)
            out << "<path d=\"M " << x2 << " " << y - 4 << " l 7 4 l -7 4 z\" fill=\"#36c\"/>\n";
        y += rowh;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace mph
