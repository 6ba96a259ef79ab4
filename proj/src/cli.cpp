#include "masseylab/cli.hpp"

#include "masseylab/expr.hpp"
#include "masseylab/massey.hpp"
#include "masseylab/specfile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <optional>
#include <sstream>

namespace masseylab {

namespace {

using nlohmann::json;

// One algebra source per subcommand: either a spec file or a parameterized
// built-in model.
struct SourceOptions {
    std::string algebra_file;
    std::string model_kind;
    int k = 1;
    int l = 1;
    std::string lambdas;
    std::string sign = "minus";
};

std::vector<Rational> parse_lambdas(const std::string& csv) {
    std::vector<Rational> out;
    if (csv.empty()) return out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto first = tok.find_first_not_of(" \t");
        const auto last = tok.find_last_not_of(" \t");
        const std::string trimmed =
            first == std::string::npos ? "" : tok.substr(first, last - first + 1);
        auto r = rational_from_string(trimmed);
        if (!r) throw CLI::ValidationError("--lambdas", "bad rational '" + tok + "'");
        out.push_back(*r);
    }
    return out;
}

RelationSign sign_from(const std::string& s) {
    return s == "plus" ? RelationSign::plus : RelationSign::minus;
}

ModelSpec model_spec_from(const SourceOptions& src) {
    if (src.model_kind == "qk") return QKOrbifoldSpec{src.k, parse_lambdas(src.lambdas)};
    if (src.model_kind == "three-sasakian")
        return ThreeSasakianSpec{{src.k, parse_lambdas(src.lambdas)}};
    if (src.model_kind == "blowup") return BlowupSpec{src.k, sign_from(src.sign)};
    if (src.model_kind == "sasaki-circle")
        return CircleBundleSpec{src.k, src.l, sign_from(src.sign)};
    throw ParseError("unknown model kind '" + src.model_kind + "'", 0);
}

AlgebraHandle resolve_algebra(const SourceOptions& src) {
    if (!src.algebra_file.empty()) return load_algebra_file(src.algebra_file);
    if (!src.model_kind.empty()) return build_model(model_spec_from(src));
    throw CLI::RequiredError("one of --algebra or --model");
}

void add_model_params(CLI::App* sub, SourceOptions& src) {
    sub->add_option("--k", src.k, "number of a_i generators")->check(CLI::Range(1, 64));
    sub->add_option("--lambdas", src.lambdas,
                    "comma-separated nonzero rationals (qk / three-sasakian)");
    sub->add_option("--l", src.l, "Euler coefficient (sasaki-circle)");
    sub->add_option("--sign", src.sign, "cube relation sign (blowup / sasaki-circle)")
        ->check(CLI::IsMember({"minus", "plus"}));
}

void add_source_options(CLI::App* sub, SourceOptions& src) {
    auto* alg = sub->add_option("--algebra", src.algebra_file, "algebra spec file (JSON)");
    auto* model = sub->add_option("--model", src.model_kind, "built-in model kind")
                      ->check(CLI::IsMember({"qk", "three-sasakian", "blowup", "sasaki-circle"}));
    alg->excludes(model);
    add_model_params(sub, src);
}

std::string betti_line(const std::vector<std::size_t>& betti) {
    std::string out;
    for (std::size_t i = 0; i < betti.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(betti[i]);
    }
    return out;
}

json coords_json(const Vec& coords) {
    json arr = json::array();
    for (const Rational& c : coords) arr.push_back(rational_to_string(c));
    return arr;
}

json entry_json(const AlgebraHandle& a, const ScanEntry& e) {
    json j;
    j["degrees"] = e.degrees;
    j["indices"] = e.indices;
    j["triple"] = triple_name(a, e);
    if (e.result.status == MasseyStatus::defined) {
        j["status"] = "defined";
        j["trivial"] = e.result.trivial;
        j["representative"] = e.result.representative->representative().to_string();
        j["indeterminacy_dim"] = e.result.indeterminacy.dim();
    } else {
        j["status"] = "undefined";
        j["obstruction"] = e.result.obstruction == MasseyObstruction::first_pair
                               ? "first_pair"
                               : "second_pair";
    }
    return j;
}

json scan_json(const AlgebraHandle& a, const ScanReport& scan, bool include_entries) {
    json j;
    j["algebra"] = scan.algebra_label;
    j["top_degree"] = scan.top_degree;
    j["examined"] = scan.examined;
    j["defined"] = scan.defined;
    j["undefined"] = scan.undefined;
    j["trivial"] = scan.trivial;
    j["nontrivial"] = scan.nontrivial;
    if (scan.first_nontrivial) {
        j["first_nontrivial"] = *scan.first_nontrivial;
        j["first_nontrivial_triple"] = triple_name(a, scan.entries[*scan.first_nontrivial]);
    } else {
        j["first_nontrivial"] = nullptr;
    }
    if (include_entries) {
        json entries = json::array();
        for (const ScanEntry& e : scan.entries) entries.push_back(entry_json(a, e));
        j["entries"] = std::move(entries);
    }
    return j;
}

void print_dump(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void print_scan_human(std::ostream& out, const AlgebraHandle& a, const ScanReport& scan) {
    out << "algebra: " << scan.algebra_label << "\n";
    out << "scan through degree " << scan.top_degree << "\n";
    out << "examined " << scan.examined << "\n";
    out << "defined " << scan.defined << "\n";
    out << "undefined " << scan.undefined << "\n";
    out << "trivial " << scan.trivial << "\n";
    out << "nontrivial " << scan.nontrivial << "\n";
    if (scan.first_nontrivial) {
        const ScanEntry& e = scan.entries[*scan.first_nontrivial];
        out << "first nontrivial: " << triple_name(a, e) << " (degrees " << e.degrees[0] << " "
            << e.degrees[1] << " " << e.degrees[2] << ", indices " << e.indices[0] << " "
            << e.indices[1] << " " << e.indices[2] << ")\n";
    } else {
        out << "first nontrivial: (none)\n";
    }
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic cohomology, Massey products and formality verdicts "
                 "for finite CDGA models"};
    app.name("masseylab");
    app.require_subcommand(1);

    bool json_output = false;
    unsigned threads = 1;
    app.add_flag("--json", json_output, "machine-readable output (sorted keys, exact rationals)");
    app.add_option("--threads", threads, "worker threads for scans")
        ->envname("MASSEYLAB_THREADS")
        ->check(CLI::Range(1u, 256u));

    int exit_code = 0;

    // validate ---------------------------------------------------------------
    auto src_validate = std::make_shared<SourceOptions>();
    CLI::App* cmd_validate = app.add_subcommand("validate", "run the axiom suite on an algebra");
    cmd_validate->fallthrough();
    add_source_options(cmd_validate, *src_validate);
    cmd_validate->callback([&, src_validate] {
        std::string label;
        AxiomReport report;
        try {
            AlgebraHandle a = resolve_algebra(*src_validate);
            label = a->label();
            report = verify_axioms(a);
        } catch (const AlgebraError& e) {
            label = e.what();
            report = e.report();
            if (report.violations.empty())
                report.violations.push_back({"table", e.what()});
        }
        if (json_output) {
            json j;
            j["algebra"] = label;
            j["ok"] = report.ok();
            j["checks_run"] = report.checks_run;
            json vs = json::array();
            for (const AxiomViolation& v : report.violations)
                vs.push_back(json{{"axiom", v.axiom}, {"witness", v.witness}});
            j["violations"] = std::move(vs);
            print_dump(out, j);
        } else {
            out << "algebra: " << label << "\n";
            for (const AxiomViolation& v : report.violations)
                out << "violation[" << v.axiom << "]: " << v.witness << "\n";
            if (report.ok())
                out << "OK (" << report.checks_run << " checks)\n";
            else
                out << "INVALID (" << report.violations.size() << " violation(s))\n";
        }
        if (!report.ok()) exit_code = 1;
    });

    // cohomology ---------------------------------------------------------------
    auto src_cohomology = std::make_shared<SourceOptions>();
    auto degree_filter = std::make_shared<int>(-1);
    CLI::App* cmd_cohomology =
        app.add_subcommand("cohomology", "Betti numbers and canonical class representatives");
    cmd_cohomology->fallthrough();
    add_source_options(cmd_cohomology, *src_cohomology);
    cmd_cohomology->add_option("--degree", *degree_filter, "report a single degree");
    cmd_cohomology->callback([&, src_cohomology, degree_filter] {
        AlgebraHandle a = resolve_algebra(*src_cohomology);
        const int top = max_analyzable_degree(a);
        const int lo = *degree_filter >= 0 ? *degree_filter : 0;
        const int hi = *degree_filter >= 0 ? *degree_filter : top;
        if (json_output) {
            json j;
            j["algebra"] = a->label();
            j["top_degree"] = top;
            json classes = json::array();
            json betti = json::array();
            for (int q = lo; q <= hi; ++q) {
                CohomologyBasis basis = cohomology_basis(a, q);
                betti.push_back(basis.dim());
                json reps = json::array();
                for (const Cochain& rep : basis.representatives) reps.push_back(rep.to_string());
                classes.push_back(
                    json{{"degree", q}, {"dim", basis.dim()}, {"representatives", std::move(reps)}});
            }
            j["betti"] = std::move(betti);
            j["classes"] = std::move(classes);
            print_dump(out, j);
        } else {
            out << "algebra: " << a->label() << "\n";
            std::vector<std::size_t> betti;
            for (int q = lo; q <= hi; ++q) betti.push_back(betti_number(a, q));
            out << "betti: " << betti_line(betti) << "\n";
            for (int q = lo; q <= hi; ++q) {
                CohomologyBasis basis = cohomology_basis(a, q);
                if (basis.dim() == 0 && *degree_filter < 0) continue;
                out << "H^" << q << ":";
                for (std::size_t i = 0; i < basis.dim(); ++i)
                    out << (i ? ", " : " ") << basis.representatives[i].to_string();
                if (basis.dim() == 0) out << " (zero)";
                out << "\n";
            }
        }
    });

    // massey ---------------------------------------------------------------
    auto src_massey = std::make_shared<SourceOptions>();
    auto class_exprs = std::make_shared<std::vector<std::string>>();
    CLI::App* cmd_massey =
        app.add_subcommand("massey", "triple Massey product of three cohomology classes");
    cmd_massey->fallthrough();
    add_source_options(cmd_massey, *src_massey);
    cmd_massey->add_option("--classes", *class_exprs, "three closed class expressions")
        ->required()
        ->expected(3);
    cmd_massey->callback([&, src_massey, class_exprs] {
        AlgebraHandle a = resolve_algebra(*src_massey);
        std::vector<CohomologyClass> classes;
        for (const std::string& expr : *class_exprs) {
            Cochain cocycle = parse_expression(expr, a);
            auto cls = class_of(cocycle);
            if (!cls) throw DomainError("class expression '" + expr + "' is not a cocycle");
            classes.push_back(*cls);
        }
        MasseyResult r = massey_triple(classes[0], classes[1], classes[2]);
        if (json_output) {
            json j;
            j["algebra"] = a->label();
            j["classes"] = *class_exprs;
            j["degrees"] =
                json::array({classes[0].degree(), classes[1].degree(), classes[2].degree()});
            if (r.status == MasseyStatus::defined) {
                j["status"] = "defined";
                j["trivial"] = r.trivial;
                j["representative"] = r.representative->representative().to_string();
                j["representative_coords"] = coords_json(r.representative->coords());
                j["indeterminacy_dim"] = r.indeterminacy.dim();
                json basis = json::array();
                for (std::size_t i = 0; i < r.indeterminacy.dim(); ++i)
                    basis.push_back(coords_json(r.indeterminacy.basis_vector(i)));
                j["indeterminacy_basis"] = std::move(basis);
                j["witness_x"] = r.witness_x->to_string();
                j["witness_y"] = r.witness_y->to_string();
            } else {
                j["status"] = "undefined";
                j["obstruction"] = r.obstruction == MasseyObstruction::first_pair
                                       ? "first_pair"
                                       : "second_pair";
            }
            print_dump(out, j);
        } else {
            if (r.status == MasseyStatus::defined) {
                out << (r.trivial ? "TRIVIAL" : "NONTRIVIAL") << "; representative "
                    << r.representative->representative().to_string() << "; indeterminacy dim "
                    << r.indeterminacy.dim() << "\n";
            } else {
                out << "UNDEFINED; obstruction cup(c"
                    << (r.obstruction == MasseyObstruction::first_pair ? "1, c2" : "2, c3")
                    << ") != 0\n";
            }
        }
        if (r.status == MasseyStatus::undefined) exit_code = 1;
    });

    // scan ---------------------------------------------------------------
    auto src_scan = std::make_shared<SourceOptions>();
    auto scan_top = std::make_shared<int>(-1);
    CLI::App* cmd_scan =
        app.add_subcommand("scan", "Massey scan over all basis-class triples");
    cmd_scan->fallthrough();
    add_source_options(cmd_scan, *src_scan);
    cmd_scan->add_option("--top", *scan_top, "top target degree (default: degree bound - 1)");
    cmd_scan->callback([&, src_scan, scan_top] {
        AlgebraHandle a = resolve_algebra(*src_scan);
        const int top = *scan_top >= 0 ? *scan_top : max_analyzable_degree(a);
        ScanReport scan = massey_scan(a, top, threads);
        if (json_output)
            print_dump(out, scan_json(a, scan, true));
        else
            print_scan_human(out, a, scan);
    });

    // ideal-scan ---------------------------------------------------------------
    auto src_ideal = std::make_shared<SourceOptions>();
    auto ideal_gens = std::make_shared<std::vector<std::string>>();
    auto ideal_min = std::make_shared<int>(0);
    auto ideal_max = std::make_shared<int>(-1);
    CLI::App* cmd_ideal = app.add_subcommand(
        "ideal-scan", "closed non-exact elements of a generator ideal, degree by degree");
    cmd_ideal->fallthrough();
    add_source_options(cmd_ideal, *src_ideal);
    cmd_ideal->add_option("--generators", *ideal_gens, "ideal generator names");
    cmd_ideal->add_option("--min", *ideal_min, "lowest degree scanned");
    cmd_ideal->add_option("--max", *ideal_max, "highest degree scanned (default: bound - 1)");
    cmd_ideal->callback([&, src_ideal, ideal_gens, ideal_min, ideal_max] {
        AlgebraHandle a = resolve_algebra(*src_ideal);
        const int hi = *ideal_max >= 0 ? *ideal_max : max_analyzable_degree(a);
        auto rows = ideal_closed_scan({a, *ideal_gens, *ideal_min, hi});
        std::size_t total = 0;
        for (const auto& row : rows) total += row.closed_non_exact.size();
        if (json_output) {
            json j;
            j["algebra"] = a->label();
            j["generators"] = *ideal_gens;
            j["min_degree"] = *ideal_min;
            j["max_degree"] = hi;
            json degrees = json::array();
            for (const auto& row : rows) {
                json elems = json::array();
                for (const Cochain& c : row.closed_non_exact) elems.push_back(c.to_string());
                degrees.push_back(json{{"degree", row.degree}, {"elements", std::move(elems)}});
            }
            j["degrees"] = std::move(degrees);
            j["total"] = total;
            print_dump(out, j);
        } else {
            out << "algebra: " << a->label() << "\n";
            out << "ideal generators:";
            for (const std::string& g : *ideal_gens) out << " " << g;
            if (ideal_gens->empty()) out << " (none)";
            out << "\n";
            out << "window: degrees " << *ideal_min << ".." << hi << "\n";
            for (const auto& row : rows) {
                out << "degree " << row.degree << ":";
                for (std::size_t i = 0; i < row.closed_non_exact.size(); ++i)
                    out << (i ? ", " : " ") << row.closed_non_exact[i].to_string();
                if (row.closed_non_exact.empty()) out << " (none)";
                out << "\n";
            }
            out << "total closed non-exact classes: " << total << "\n";
        }
    });

    // model ---------------------------------------------------------------
    auto src_model = std::make_shared<SourceOptions>();
    auto want_betti = std::make_shared<bool>(false);
    auto want_verdict = std::make_shared<bool>(false);
    CLI::App* cmd_model = app.add_subcommand("model", "built-in models of the studied manifolds");
    cmd_model->fallthrough();
    cmd_model->add_option("kind", src_model->model_kind, "qk | three-sasakian | blowup | sasaki-circle")
        ->required()
        ->check(CLI::IsMember({"qk", "three-sasakian", "blowup", "sasaki-circle"}));
    add_model_params(cmd_model, *src_model);
    auto* opt_betti = cmd_model->add_flag("--betti", *want_betti, "print the Betti vector only");
    auto* opt_verdict =
        cmd_model->add_flag("--verdict", *want_verdict, "print the formality verdict only");
    opt_betti->excludes(opt_verdict);
    cmd_model->callback([&, src_model, want_betti, want_verdict] {
        ModelSpec spec = model_spec_from(*src_model);
        if (*want_verdict) {
            VerdictReport report = verdict_report(spec);
            if (json_output) {
                json j;
                j["model"] = report.model;
                j["formal"] = report.formal;
                j["verdict"] = report.verdict_line;
                j["notes"] = report.notes;
                AlgebraHandle a = build_model(spec);
                j["scan"] = scan_json(a, report.scan, false);
                j["witness"] =
                    report.witness ? entry_json(a, *report.witness) : json(nullptr);
                print_dump(out, j);
            } else {
                out << report.verdict_line << "\n";
            }
            return;
        }
        AlgebraHandle a = build_model(spec);
        auto betti = betti_vector(a, max_analyzable_degree(a));
        if (*want_betti && !json_output) {
            out << betti_line(betti) << "\n";
            return;
        }
        if (json_output) {
            json j;
            j["algebra"] = a->label();
            j["betti"] = betti;
            print_dump(out, j);
        } else {
            out << "algebra: " << a->label() << "\n";
            out << "betti: " << betti_line(betti) << "\n";
        }
    });

    // export ---------------------------------------------------------------
    auto src_export = std::make_shared<SourceOptions>();
    auto export_path = std::make_shared<std::string>();
    CLI::App* cmd_export =
        app.add_subcommand("export", "write an algebra as a spec file document");
    cmd_export->fallthrough();
    add_source_options(cmd_export, *src_export);
    cmd_export->add_option("--out", *export_path, "output path (default: stdout)");
    cmd_export->callback([&, src_export, export_path] {
        AlgebraHandle a = resolve_algebra(*src_export);
        if (export_path->empty())
            out << export_algebra(a);
        else
            save_algebra_file(a, *export_path);
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const MasseylabError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

} // namespace masseylab
