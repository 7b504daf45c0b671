#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mph/report.hpp"

namespace mph {

struct RunConfig {
    std::string command;
    std::string input_path;
    int homology_index = 1;
    std::string field_override;   // "", "q", "f<p>"
    std::string box_override;     // "", "(a,b)"
    std::string format = "text";  // text | json | svg
    std::string output_path;      // empty = stdout
    std::string prime_spec;       // cprank
    std::string from_spec, to_spec;  // rankinv
    std::string dir_spec, offset_spec;  // restrict
    std::string path_file;        // path
};

namespace cli_detail {

struct Input {
    int r = 1;
    FieldSpec field;
    bool is_complex = false;
    std::optional<MultifilteredComplex> complex;
    std::optional<GradedModulePresentation> pres;
    Degree natural_upper;  // stabilization degree / presentation span
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// .mfsc and .gpres share the two header lines; the first body keyword
// decides the format
inline Input load_input(const RunConfig& cfg) {
    std::string text = read_file(cfg.input_path);
    bool has_simplex = false, has_gens = false;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line.substr(0, line.find('#')));
            std::string key;
            if (!(ls >> key)) continue;
            if (key == "simplex") has_simplex = true;
            if (key == "gens") has_gens = true;
        }
    }
    if (has_simplex && has_gens) throw parse_error("input mixes 'simplex' and 'gens' lines");
    Input in;
    if (has_simplex || (!has_gens && cfg.input_path.size() >= 5 &&
                        cfg.input_path.substr(cfg.input_path.size() - 5) == ".mfsc")) {
        MultifilteredComplex K = MultifilteredComplex::parse_string(text);
        if (!cfg.field_override.empty()) K = K.with_field(FieldSpec::parse(cfg.field_override));
        in.is_complex = true;
        in.r = K.r();
        in.field = K.field();
        in.natural_upper = K.stabilization_degree();
        in.complex = std::move(K);
    } else if (has_gens) {
        GradedModulePresentation P = GradedModulePresentation::parse_string(text);
        if (!cfg.field_override.empty()) P = P.with_field(FieldSpec::parse(cfg.field_override));
        in.r = P.r;
        in.field = P.field;
        in.natural_upper = P.degree_span();
        in.pres = std::move(P);
    } else {
        throw parse_error("cannot detect input format (no 'simplex' or 'gens' line)");
    }
    return in;
}

inline DegreeBox working_box(const Input& in, const RunConfig& cfg) {
    Degree upper = in.natural_upper;
    if (!cfg.box_override.empty()) {
        Degree o = Degree::parse(cfg.box_override);
        if (o.r() != in.r) throw parse_error("--box has wrong dimension");
        if (!leq(upper, o))
            throw parse_error("--box " + o.str() + " must dominate " + upper.str());
        upper = o;
    }
    return DegreeBox(upper);
}

// the module a command operates on: homology of the complex, or the
// presented module
inline Frame module_frame(const Input& in, const RunConfig& cfg, const DegreeBox& box) {
    if (in.is_complex) return homology_frame(*in.complex, cfg.homology_index, box);
    return frame_of_presentation(*in.pres, box);
}

inline GradedModulePresentation module_presentation(const Input& in, const RunConfig& cfg,
                                                    const DegreeBox& box) {
    if (in.is_complex) return minimal_presentation(module_frame(in, cfg, box)).pres;
    return *in.pres;
}

inline Json base_report(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    Json rep;
    rep["schema"] = "mph-report/1";
    rep["command"] = cfg.command;
    rep["input"] = cfg.input_path;
    rep["field"] = in.field.str();
    rep["r"] = in.r;
    if (in.is_complex) rep["homology_index"] = cfg.homology_index;
    rep["box"] = box.upper().str();
    return rep;
}

inline std::string base_text(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    std::ostringstream out;
    out << "command: " << cfg.command << "\n";
    out << "input: " << cfg.input_path << "\n";
    out << "field: " << in.field.str() << "\n";
    if (in.is_complex) out << "homology index: " << cfg.homology_index << "\n";
    out << "box: " << box.upper().str() << "\n";
    return out.str();
}

struct CommandOutput {
    Json json;
    std::string text;
    std::string svg;  // empty when the command has no svg form
};

inline std::vector<std::string> summand_strings(const GradedModulePresentation& P) {
    std::vector<std::string> out;
    auto dec = cyclic_decomposition(P);
    if (!dec) return out;
    for (const CyclicSummand& s : *dec) out.push_back(s.str());
    return out;
}

inline CommandOutput cmd_homology(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    CommandOutput co;
    Frame M = module_frame(in, cfg, box);
    GradedModulePresentation P = minimal_presentation(M).pres;
    co.json = base_report(cfg, in, box);
    co.json["presentation"] = presentation_json(P);
    std::vector<std::string> sums = summand_strings(P);
    co.json["summands"] = sums.empty() ? Json(nullptr) : Json(sums);
    std::ostringstream text;
    text << base_text(cfg, in, box) << presentation_text(P);
    if (!sums.empty()) {
        text << "summands: ";
        for (std::size_t i = 0; i < sums.size(); ++i) text << (i ? " (+) " : "") << sums[i];
        text << "\n";
    } else {
        text << "summands: (no cyclic monomial decomposition detected)\n";
    }
    co.text = text.str();
    return co;
}

inline CommandOutput cmd_hilbert(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    CommandOutput co;
    Frame M = module_frame(in, cfg, box);
    HilbertFunction HF = hilbert_function(M);
    IntPoly P = hs_numerator(HF);
    long long rk = rank_of(M);
    co.json = base_report(cfg, in, box);
    Json table = Json::array();
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        Json e;
        e["degree"] = box.degree(idx).str();
        e["value"] = HF.at(box.degree(idx));
        table.push_back(e);
    }
    co.json["hilbert_function"] = table;
    co.json["numerator"] = poly_json(P);
    co.json["denominator"] = all_denominator_str(in.r);
    co.json["rank"] = rk;
    std::ostringstream text;
    text << base_text(cfg, in, box);
    text << "hilbert series: (" << P.str() << ") / " << all_denominator_str(in.r) << "\n";
    text << "rank: " << rk << "\n";
    if (in.r == 2) {
        TwoParamDecomposition D = decompose_2param(M);
        Json d;
        d["C"] = D.C.str();
        d["corner"] = D.corner.str();
        Json alpha = Json::array(), beta = Json::array();
        for (const auto& a : D.alpha) alpha.push_back(a.str());
        for (const auto& b : D.beta) beta.push_back(b.str());
        d["alpha"] = alpha;
        d["beta"] = beta;
        d["remainder"] = poly_json(D.R);
        co.json["decomposition"] = d;
        text << "decomposition: C=" << D.C.str() << " at " << D.corner.str();
        text << ", alpha = [";
        for (std::size_t i = 0; i < D.alpha.size(); ++i) text << (i ? "," : "") << D.alpha[i].str();
        text << "], beta = [";
        for (std::size_t j = 0; j < D.beta.size(); ++j) text << (j ? "," : "") << D.beta[j].str();
        text << "], remainder = " << D.R.str() << "\n";
    }
    HilbertPolynomial HP = hilbert_polynomial(HF);
    Json hp;
    Json coeffs = Json::array();
    for (const auto& c : HP.coeffs) coeffs.push_back(c.str());
    hp["coeffs"] = coeffs;
    hp["n0"] = HP.n0;
    hp["string"] = HP.str();
    co.json["hilbert_polynomial"] = hp;
    text << "hilbert polynomial: " << HP.str() << " (valid for n >= " << HP.n0 << ")\n";
    text << "hilbert function on the box:\n";
    for (std::size_t idx = 0; idx < box.size(); ++idx)
        text << "  " << box.degree(idx).str() << " " << HF.at(box.degree(idx)) << "\n";
    co.text = text.str();
    return co;
}

inline Json ass_json(const AssPoset& ass) {
    Json a = Json::array();
    for (const auto& p : ass.primes) a.push_back(p.str());
    return a;
}

inline CommandOutput cmd_ass(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    CommandOutput co;
    co.json = base_report(cfg, in, box);
    std::ostringstream text;
    text << base_text(cfg, in, box);
    if (in.is_complex) {
        CokernelAssReport rep = ass_via_cokernel(*in.complex, cfg.homology_index, box);
        co.json["ass"] = ass_json(rep.direct);
        co.json["via_cokernel"] = ass_json(rep.via_cokernel);
        co.json["note"] = rep.note;
        text << "Ass:";
        for (const auto& p : rep.direct.primes) text << " " << p.str();
        text << "\nvia cokernel:";
        for (const auto& p : rep.via_cokernel.primes) text << " " << p.str();
        text << "\nnote: " << rep.note << "\n";
    } else {
        AssPoset ass = associated_primes(module_frame(in, cfg, box));
        co.json["ass"] = ass_json(ass);
        co.json["via_cokernel"] = nullptr;
        co.json["note"] = "cokernel route requires a simplicial input";
        text << "Ass:";
        for (const auto& p : ass.primes) text << " " << p.str();
        text << "\n";
    }
    return co;
}

inline CommandOutput cmd_strata(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    CommandOutput co;
    Frame M = module_frame(in, cfg, box);
    AssPoset ass = associated_primes(M);
    SupportShape ss = support_shape(ass, in.r);
    auto chains = strata_chains(ass);
    MinimalPresentationResult mp = minimal_presentation(M);

    co.json = base_report(cfg, in, box);
    co.json["ass"] = ass_json(ass);
    Json mins = Json::array();
    for (const auto& p : ss.minimal) mins.push_back(p.str());
    co.json["minimal"] = mins;
    Json jchains = Json::array();
    for (const auto& ch : chains) {
        Json c = Json::array();
        for (const auto& p : ch) c.push_back(p.str());
        jchains.push_back(c);
    }
    co.json["chains"] = jchains;
    Json elements = Json::array();
    std::ostringstream text;
    text << base_text(cfg, in, box);
    text << "Ass:";
    for (const auto& p : ass.primes) text << " " << p.str();
    text << "\nminimal:";
    for (const auto& p : ss.minimal) text << " " << p.str();
    text << "\nchains:\n";
    for (const auto& ch : chains) {
        text << " ";
        for (std::size_t k = 0; k < ch.size(); ++k) text << (k ? " < " : " ") << ch[k].str();
        text << "\n";
    }
    text << "minimal generators:\n";
    for (const MinGen& g : mp.gen_elements) {
        ElementLifeReport rep = life_report(M, g.degree, g.rep);
        elements.push_back(life_report_json(rep));
        text << "  " << life_report_text(rep) << "\n";
    }
    co.json["elements"] = elements;
    Json cpr;
    text << "cp-ranks:\n";
    for (const auto& p : ass.primes) {
        if (p.is_zero_ideal()) continue;
        long long rk = cp_rank(M, p);
        cpr[p.str()] = rk;
        text << "  " << p.str() << " " << rk << "\n";
    }
    co.json["cp_ranks"] = cpr;
    co.text = text.str();
    if (in.r == 2) {
        int grid = std::max(box.upper()[0], box.upper()[1]) + 2;
        co.svg = strata_svg(ass, chains, grid);
    }
    return co;
}

inline CommandOutput cmd_cprank(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    if (cfg.prime_spec.empty()) throw parse_error("cprank requires --prime");
    CoordinatePrime p = CoordinatePrime::parse(in.r, cfg.prime_spec);
    if (p.is_zero_ideal()) throw parse_error("cprank needs a nonzero prime");
    CommandOutput co;
    Frame M = module_frame(in, cfg, box);
    LocalCohomology L = local_cohomology_H0(M, p);
    IntPoly num = hs_of_H0(L);
    long long rk = cp_rank(M, p);
    std::vector<int> dirs;
    for (int i = 0; i < in.r; ++i)
        if (!p.contains_var(i)) dirs.push_back(i);
    co.json = base_report(cfg, in, box);
    co.json["prime"] = p.str();
    co.json["cp_rank"] = rk;
    co.json["h0_numerator"] = poly_json(num);
    co.json["h0_denominator"] = denominator_str(in.r, dirs);
    co.json["colon_power"] = L.power;
    std::ostringstream text;
    text << base_text(cfg, in, box);
    text << "prime: " << p.str() << "\n";
    text << "H0 hilbert series: (" << num.str() << ") / " << denominator_str(in.r, dirs) << "\n";
    text << "cp-rank: " << rk << "\n";
    co.text = text.str();
    return co;
}

inline CommandOutput cmd_rankinv(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    if (cfg.from_spec.empty() || cfg.to_spec.empty())
        throw parse_error("rankinv requires --from and --to");
    Degree u = Degree::parse(cfg.from_spec), v = Degree::parse(cfg.to_spec);
    if (u.r() != in.r || v.r() != in.r) throw parse_error("rankinv degrees have wrong dimension");
    Frame M = module_frame(in, cfg, box);
    long long rho = rank_invariant(M, u, v);
    CommandOutput co;
    co.json = base_report(cfg, in, box);
    co.json["from"] = u.str();
    co.json["to"] = v.str();
    co.json["rank"] = rho;
    std::ostringstream text;
    text << base_text(cfg, in, box);
    text << "rank(" << u.str() << " -> " << v.str() << ") = " << rho << "\n";
    co.text = text.str();
    return co;
}

inline CommandOutput barcode_output(const RunConfig& cfg, const Input& in, const DegreeBox& box,
                                    const OneParamModule& N, Json extra = Json()) {
    Barcode bc = barcode(N);
    CommandOutput co;
    co.json = base_report(cfg, in, box);
    Json dims = Json::array();
    for (int d : N.dims) dims.push_back(d);
    co.json["dims"] = dims;
    co.json["barcode"] = barcode_json(bc);
    co.json["infinite_bars"] = bc.infinite_count();
    for (auto& [k, v] : extra.items()) co.json[k] = v;
    std::ostringstream text;
    text << base_text(cfg, in, box) << barcode_text(bc);
    text << "infinite bars: " << bc.infinite_count() << "\n";
    for (auto& [k, v] : extra.items()) text << k << ": " << v.dump() << "\n";
    co.text = text.str();
    co.svg = barcode_svg(bc, N.stabilization_index());
    return co;
}

inline CommandOutput cmd_restrict(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    if (cfg.dir_spec.empty()) throw parse_error("restrict requires --dir");
    Degree dir = Degree::parse(cfg.dir_spec);
    Degree off = cfg.offset_spec.empty() ? Degree::zero(in.r) : Degree::parse(cfg.offset_spec);
    if (dir.r() != in.r || off.r() != in.r) throw parse_error("--dir/--offset have wrong dimension");
    Frame M = module_frame(in, cfg, box);
    OneParamModule N = restrict_to_line(M, LineMap(dir, off));
    Json extra;
    extra["direction"] = dir.str();
    extra["offset"] = off.str();
    return barcode_output(cfg, in, box, N, extra);
}

inline CommandOutput cmd_path(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    if (cfg.path_file.empty()) throw parse_error("path requires --file");
    std::istringstream pf(read_file(cfg.path_file));
    std::vector<Degree> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(pf, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        std::size_t a = body.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) continue;
        std::size_t b = body.find_last_not_of(" \t\r\n");
        Degree d = Degree::parse(body.substr(a, b - a + 1));
        if (d.r() != in.r) throw parse_error("path degree has wrong dimension", lineno);
        pts.push_back(d);
    }
    Frame M = module_frame(in, cfg, box);
    OneParamModule N = restrict_to_path(M, MonotonePath(pts));
    return barcode_output(cfg, in, box, N);
}

inline CommandOutput cmd_diagonal(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    GradedModulePresentation P = module_presentation(in, cfg, box);
    OneParamModule N = diagonal_tensor(P);
    long long rk = rank_of(frame_of_presentation(P, box));
    Barcode bc = barcode(N);
    check(static_cast<long long>(bc.infinite_count()) == rk,
          "diagonal tensor infinite bars disagree with the module rank");
    Json extra;
    extra["rank"] = rk;
    extra["rank_check"] = "infinite bars = rank";
    return barcode_output(cfg, in, box, N, extra);
}

inline CommandOutput cmd_resolve(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    Frame M = module_frame(in, cfg, box);
    FreeResolution res = minimal_free_resolution_of_frame(M);
    CommandOutput co;
    co.json = base_report(cfg, in, box);
    co.json["length"] = res.length();
    Json mods = Json::array();
    for (const auto& fd : res.free_degrees) {
        Json m = Json::array();
        for (const Degree& d : fd) m.push_back(d.str());
        mods.push_back(m);
    }
    co.json["free_modules"] = mods;
    Json maps = Json::array();
    for (const auto& pm : res.maps) maps.push_back(presentation_json(pm));
    co.json["maps"] = maps;
    Json betti = Json::array();
    for (const BettiEntry& b : betti_numbers(res)) {
        Json e;
        e["index"] = b.index;
        e["degree"] = b.degree.str();
        e["multiplicity"] = b.multiplicity;
        betti.push_back(e);
    }
    co.json["betti"] = betti;
    std::ostringstream text;
    text << base_text(cfg, in, box);
    text << "resolution length: " << res.length() << "\n";
    for (std::size_t i = 0; i < res.free_degrees.size(); ++i) {
        text << "  F" << i << " =";
        if (res.free_degrees[i].empty()) text << " 0";
        for (std::size_t k = 0; k < res.free_degrees[i].size(); ++k)
            text << (k ? " (+) " : " ") << shift_str(res.free_degrees[i][k]);
        text << "\n";
    }
    text << "betti table (index, degree, multiplicity):\n";
    for (const BettiEntry& b : betti_numbers(res))
        text << "  " << b.index << " " << b.degree.str() << " " << b.multiplicity << "\n";
    co.text = text.str();
    return co;
}

inline CommandOutput cmd_canon(const RunConfig& cfg, const Input& in, const DegreeBox& box) {
    GradedModulePresentation P = canonical_form(module_presentation(in, cfg, box));
    CommandOutput co;
    co.json = base_report(cfg, in, box);
    co.json["presentation"] = presentation_json(P);
    co.json["gpres"] = P.to_gpres_text();
    co.text = P.to_gpres_text();
    return co;
}

}  // namespace cli_detail

// Parse argv-style arguments (without the program name) and run. Output goes
// to `out`; errors and the text-mode timing note go to `err`. Returns the
// process exit code: 0 success, 2 parse/validation error, 3 internal
// invariant failure.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"exact invariants of multiparameter persistence modules"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool wants_index) {
        sub->add_option("input", cfg.input_path, "input file (.mfsc or .gpres)")->required();
        if (wants_index)
            sub->add_option("-i,--index", cfg.homology_index, "homology index (default 1)");
        sub->add_option("--field", cfg.field_override, "override the ground field: q or f<p>");
        sub->add_option("--box", cfg.box_override, "enlarge the computation box, e.g. (4,4)");
        sub->add_option("--format", cfg.format, "output format: text, json, svg")
            ->check(CLI::IsMember({"text", "json", "svg"}));
        sub->add_flag_callback("--json", [&] { cfg.format = "json"; }, "shorthand for --format json");
        sub->add_flag_callback("--svg", [&] { cfg.format = "svg"; }, "shorthand for --format svg");
        sub->add_option("-o,--output", cfg.output_path, "write the report to a file");
    };

    CLI::App* homology = app.add_subcommand("homology", "minimal presentation and decomposition summary");
    add_common(homology, true);
    CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert function, series, rank, polynomial");
    add_common(hilbert, true);
    CLI::App* ass = app.add_subcommand("ass", "associated primes, direct and via the cokernel");
    add_common(ass, true);
    CLI::App* strata = app.add_subcommand("strata", "stratification report and life reports");
    add_common(strata, true);
    CLI::App* cprank = app.add_subcommand("cprank", "c_p-rank and H^0 Hilbert series");
    add_common(cprank, true);
    cprank->add_option("--prime", cfg.prime_spec, "coordinate prime, e.g. x1 or x1,x2")->required();
    CLI::App* rankinv = app.add_subcommand("rankinv", "rank invariant of one transition");
    add_common(rankinv, true);
    rankinv->add_option("--from", cfg.from_spec, "source degree")->required();
    rankinv->add_option("--to", cfg.to_spec, "target degree")->required();
    CLI::App* restrict_cmd = app.add_subcommand("restrict", "restrict to a line and compute the barcode");
    add_common(restrict_cmd, true);
    restrict_cmd->add_option("--dir", cfg.dir_spec, "line direction, e.g. (1,1)")->required();
    restrict_cmd->add_option("--offset", cfg.offset_spec, "line offset (default 0)");
    CLI::App* path = app.add_subcommand("path", "restrict to a monotone path and compute the barcode");
    add_common(path, true);
    path->add_option("--file", cfg.path_file, "path file: one degree per line")->required();
    CLI::App* diagonal = app.add_subcommand("diagonal", "diagonal tensor reduction and barcode");
    add_common(diagonal, true);
    CLI::App* resolve = app.add_subcommand("resolve", "minimal free resolution and Betti table");
    add_common(resolve, true);
    CLI::App* canon = app.add_subcommand("canon", "canonical form of a presentation");
    add_common(canon, true);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto started = std::chrono::steady_clock::now();
    try {
        cli_detail::Input in = cli_detail::load_input(cfg);
        cfg.command = app.get_subcommands().front()->get_name();
        DegreeBox box = cli_detail::working_box(in, cfg);
        for (const std::string& w : in.is_complex ? in.complex->warnings() : std::vector<std::string>{})
            err << "warning: " << w << "\n";

        cli_detail::CommandOutput co;
        if (cfg.command == "homology") co = cli_detail::cmd_homology(cfg, in, box);
        else if (cfg.command == "hilbert") co = cli_detail::cmd_hilbert(cfg, in, box);
        else if (cfg.command == "ass") co = cli_detail::cmd_ass(cfg, in, box);
        else if (cfg.command == "strata") co = cli_detail::cmd_strata(cfg, in, box);
        else if (cfg.command == "cprank") co = cli_detail::cmd_cprank(cfg, in, box);
        else if (cfg.command == "rankinv") co = cli_detail::cmd_rankinv(cfg, in, box);
        else if (cfg.command == "restrict") co = cli_detail::cmd_restrict(cfg, in, box);
        else if (cfg.command == "path") co = cli_detail::cmd_path(cfg, in, box);
        else if (cfg.command == "diagonal") co = cli_detail::cmd_diagonal(cfg, in, box);
        else if (cfg.command == "resolve") co = cli_detail::cmd_resolve(cfg, in, box);
        else if (cfg.command == "canon") co = cli_detail::cmd_canon(cfg, in, box);
        else throw parse_error("unknown command");

        std::string payload;
        if (cfg.format == "json") {
            payload = co.json.dump(2) + "\n";
        } else if (cfg.format == "svg") {
            if (co.svg.empty()) throw parse_error("command '" + cfg.command + "' has no svg output");
            payload = co.svg;
        } else {
            payload = co.text;
        }
        if (!cfg.output_path.empty()) {
            std::ofstream f(cfg.output_path, std::ios::binary);
            if (!f) throw parse_error("cannot open output file '" + cfg.output_path + "'");
            f << payload;
        } else {
            out << payload;
        }
        if (cfg.format == "text") {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
            err << "elapsed_ms: " << ms << "\n";
        }
        return 0;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        err << "internal invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace mph
