// loopforge: exact computation in finite and free nonassociative loops.
//
// Exit codes: 0 success, 1 a verified property was violated, 2 input error.

#include "loopforge/catalog.hpp"
#include "loopforge/cayley.hpp"
#include "loopforge/graded.hpp"
#include "loopforge/higman.hpp"
#include "loopforge/series.hpp"
#include "loopforge/term.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using loopforge::CayleyLoop;
using nlohmann::json;

void write_json(const std::string& path, const json& doc) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw loopforge::LoopError("cannot write " + path);
    out << doc.dump(2) << "\n";
}

CayleyLoop load_input(const std::string& file) { return loopforge::load_loop(file); }

void print_chain(const loopforge::Filtration& f, const std::string& label) {
    std::cout << label << ":";
    for (int i = 1; i <= f.depth(); ++i) {
        std::cout << " " << f.term(i).size();
        if (!f.term_exact(i)) std::cout << "(lower bound)";
    }
    std::cout << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"exact commutator-associator calculus on finite and free loops"};
    app.require_subcommand(1);
    app.fallthrough(); // parent options (e.g. --json) usable after a subcommand
    std::string json_path;
    app.add_option("--json", json_path, "write the JSON report to this path");

    std::string file, kind = "ca", bind_spec, term_text, emit_name;
    int depth = 5, level = 0, wm = 1, wn = 0;
    std::uint64_t max_evals = loopforge::SeriesOptions{}.max_evals;
    bool dev_count = false, dev_list = false;
    std::string akivis_spec;

    auto* check = app.add_subcommand("check", "validate a table and report its axiom flags");
    check->add_option("file", file, "loop table (JSON or text)")->required();

    auto* series = app.add_subcommand("series", "compute a filtration");
    series->add_option("--kind", kind, "gamma | ca | naive")->check(CLI::IsMember({"gamma", "ca", "naive"}));
    series->add_option("--depth", depth, "number of terms (default 5)");
    series->add_option("--max-evals", max_evals, "per-term enumeration budget");
    series->add_option("file", file)->required();

    auto* compare = app.add_subcommand("compare", "gamma vs ca vs naive, with containment checks");
    compare->add_option("--depth", depth);
    compare->add_option("--max-evals", max_evals);
    compare->add_option("file", file)->required();

    auto* graded = app.add_subcommand("graded", "associated graded group and its checks");
    graded->add_option("--depth", depth);
    graded->add_option("--max-evals", max_evals);
    graded->add_option("--akivis", akivis_spec, "degrees p,q,r for the Akivis check (default 1,1,1)");
    graded->add_option("file", file)->required();

    auto* eval = app.add_subcommand("eval", "evaluate a term in a finite loop");
    eval->add_option("--table", file, "loop table")->required();
    eval->add_option("--bind", bind_spec, "generator bindings a=NAME,b=NAME,...")->required();
    eval->add_option("term", term_text, "term, e.g. \"com(a,b)\"")->required();

    auto* deviation = app.add_subcommand("deviation", "alpha sequences of one level");
    deviation->add_option("--level", level)->required();
    deviation->add_flag("--count", dev_count, "print only the count (n+2)!/2");
    deviation->add_flag("--list", dev_list, "print every alpha sequence");

    auto* witness = app.add_subcommand("higman-witness",
                                       "delta of (y^m,y,...,y) with n ones over ambient Z");
    witness->add_option("-m", wm, "power of the first argument")->required();
    witness->add_option("-n", wn, "deviation level")->required();

    auto* cat = app.add_subcommand("catalog", "built-in loops");
    auto* cat_list = cat->add_subcommand("list", "names of the built-in loops");
    auto* cat_emit = cat->add_subcommand("emit", "print a built-in table as JSON");
    cat_emit->add_option("name", emit_name)->required();
    cat->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // flag errors are input errors
    }

    int exit_code = 0;
    json report;

    if (*check) {
        CayleyLoop loop = load_input(file);
        auto ax = loopforge::check_axioms(loop);
        report = loopforge::axiom_report_to_json(loop, ax);
        std::cout << loop.loop_name() << ": order " << loop.order() << ", identity "
                  << loop.name(loop.identity()) << "\n"
                  << "  quasigroup=" << ax.quasigroup << " identity=" << ax.identity
                  << " associative=" << ax.associative << " commutative=" << ax.commutative
                  << " moufang=" << ax.moufang << "\n";
    } else if (*series) {
        CayleyLoop loop = load_input(file);
        loopforge::SeriesOptions opts;
        opts.depth = depth;
        opts.max_evals = max_evals;
        loopforge::Filtration f;
        if (kind == "gamma") f = loopforge::lower_central_series(loop, opts);
        else if (kind == "naive") f = loopforge::naive_filtration(loop, opts);
        else f = loopforge::ca_filtration(loop, opts);
        report = loopforge::filtration_to_json(f);
        print_chain(f, loop.loop_name() + " " + kind);
        if (f.lower_bound)
            std::cout << "warning: budget exceeded; sampled terms are lower bounds "
                         "(raise --max-evals for exact values)\n";
    } else if (*compare) {
        CayleyLoop loop = load_input(file);
        loopforge::SeriesOptions opts;
        opts.depth = depth;
        opts.max_evals = max_evals;
        auto c = loopforge::compare_series(loop, opts);
        report = loopforge::comparison_to_json(c);
        print_chain(c.gamma, "gamma");
        print_chain(c.ca, "ca   ");
        print_chain(c.naive, "naive");
        std::cout << "gamma2 == ca2: " << c.gamma2_eq_ca2
                  << "  containments ok: " << c.containments_ok
                  << "  gamma == ca: " << c.gamma_eq_ca << "  naive == ca: " << c.naive_eq_ca
                  << "\n";
        if (!c.gamma2_eq_ca2 || !c.containments_ok) exit_code = 1;
    } else if (*graded) {
        CayleyLoop loop = load_input(file);
        loopforge::SeriesOptions opts;
        opts.depth = depth;
        opts.max_evals = max_evals;
        auto f = loopforge::ca_filtration(loop, opts);
        auto g = loopforge::graded_group(f);
        loopforge::CheckReport bilinear, trilinear, dev, akivis;
        for (int p = 1; p <= g.max_degree(); ++p)
            for (int q = 1; p + q <= g.max_degree(); ++q)
                loopforge::merge_into(bilinear, loopforge::check_bracket_bilinear(g, p, q, 64));
        for (int p = 1; p <= g.max_degree(); ++p)
            for (int q = 1; p + q < g.max_degree(); ++q)
                for (int r = 1; p + q + r <= g.max_degree(); ++r)
                    loopforge::merge_into(trilinear,
                                          loopforge::check_associator_trilinear(g, p, q, r, 64));
        if (g.max_degree() >= 4)
            for (const auto& a : loopforge::enumerate_alphas(1)) {
                std::vector<int> ones(4, 1);
                loopforge::merge_into(
                    dev, loopforge::check_deviation_multilinear(g, a, ones, 64, 20000));
            }
        int ap = 1, aq = 1, ar = 1;
        if (!akivis_spec.empty()) {
            if (std::sscanf(akivis_spec.c_str(), "%d,%d,%d", &ap, &aq, &ar) != 3)
                throw loopforge::LoopError("--akivis expects p,q,r");
        }
        if (g.max_degree() >= ap + aq + ar)
            akivis = loopforge::check_akivis(g, ap, aq, ar);
        report = loopforge::graded_to_json(g, bilinear, trilinear, dev, akivis);
        for (const auto& comp : g.components()) {
            std::cout << "degree " << comp.degree << ": order " << comp.order()
                      << ", invariant factors (";
            for (std::size_t i = 0; i < comp.invariant_factors.size(); ++i)
                std::cout << (i ? "," : "") << comp.invariant_factors[i];
            std::cout << ")\n";
        }
        auto show = [&](const char* name, const loopforge::CheckReport& r) {
            std::cout << name << ": checked " << r.checked << ", violations "
                      << r.violations.size() << "\n";
            if (!r.ok()) exit_code = 1;
        };
        show("bilinear", bilinear);
        show("trilinear", trilinear);
        show("deviation multilinear", dev);
        show("akivis", akivis);
    } else if (*eval) {
        CayleyLoop loop = load_input(file);
        std::map<std::string, int> env;
        std::stringstream ss(bind_spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw loopforge::LoopError("bad binding '" + item + "' (want gen=ELEMENT)");
            std::string gen = item.substr(0, eq), el = item.substr(eq + 1);
            int idx = loop.index_of(el);
            if (idx < 0) throw loopforge::LoopError("unknown element '" + el + "'");
            env[gen] = idx;
        }
        auto t = loopforge::parse_term(term_text);
        int value = loopforge::eval_term(*t, env, loop);
        report = json{{"loop", loop.loop_name()},
                      {"term", loopforge::print_term(t)},
                      {"value", loop.name(value)}};
        std::cout << loopforge::print_term(t) << " = " << loop.name(value) << "\n";
    } else if (*deviation) {
        std::uint64_t count = loopforge::deviation_count(level);
        report = json{{"level", level}, {"count", count}};
        if (dev_list) {
            json seqs = json::array();
            std::cout << "level " << level << ": " << count << " deviations\n";
            for (const auto& a : loopforge::enumerate_alphas(level)) {
                seqs.push_back(a.values());
                std::cout << "  " << a.to_string() << "\n";
            }
            report["alphas"] = std::move(seqs);
        } else {
            std::cout << count << "\n";
        }
        (void)dev_count;
    } else if (*witness) {
        auto r = loopforge::higman_witness(wm, wn);
        report = loopforge::witness_to_json(r);
        std::cout << "delta (y^" << r.m << ",y,...,y) with " << r.n << " ones = ("
                  << r.loop_part.get_str() << ", " << loopforge::ab_vector_to_string(r.value.b)
                  << ")\n"
                  << "leading symbol f(" << r.leading_p.get_str() << "," << r.leading_q.get_str()
                  << ") coeff " << r.leading_coeff.get_str() << ", verdict: " << r.verdict << "\n";
    } else if (*cat) {
        if (*cat_list) {
            json names = json::array();
            for (const auto& n : loopforge::catalog_names()) {
                names.push_back(n);
                std::cout << n << "\n";
            }
            report = json{{"catalog", std::move(names)}};
        } else if (*cat_emit) {
            CayleyLoop loop = loopforge::catalog(emit_name);
            report = loopforge::loop_to_json(loop);
            std::cout << report.dump(2) << "\n";
        }
    }

    write_json(json_path, report);
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const loopforge::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const loopforge::EvalError& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return 2;
    } catch (const loopforge::LoopError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
