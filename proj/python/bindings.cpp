#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symdyn/arith.hpp"
#include "symdyn/experiment.hpp"
#include "symdyn/frontend.hpp"
#include "symdyn/morse.hpp"
#include "symdyn/permgrp.hpp"
#include "symdyn/spectral.hpp"
#include "symdyn/subst.hpp"

namespace py = pybind11;
using namespace symdyn;

namespace {

// Systems come from a spec text when one is given, otherwise from the built-in library.
frontend::SpecDocument document(const std::string& spec) {
    if (spec.empty()) return frontend::builtin_library();
    auto r = frontend::parse_spec(spec);
    if (!r.ok()) {
        std::string msg;
        for (const auto& d : r.diagnostics) msg += frontend::format_diagnostic(d, "<spec>") + "\n";
        throw std::invalid_argument(msg);
    }
    return *r.document;
}

frontend::System resolve(const std::string& name, const std::string& spec) {
    const auto doc = document(spec);
    if (name.rfind("hat(", 0) == 0 && name.back() == ')') {
        const auto inner = name.substr(4, name.size() - 5);
        return frontend::build_hat(frontend::build_system(doc, inner), name);
    }
    return frontend::build_system(doc, name);
}

spectral::Observable observable(const std::string& expr, std::size_t alphabet) {
    auto r = frontend::parse_observable_expr(expr);
    if (!r.ok()) throw std::invalid_argument("bad observable expression: " + expr);
    return frontend::build_observable(std::get<frontend::ObservableDecl>(r.document->declarations.front().body),
                                      alphabet);
}

py::dict report_dict(const experiment::ConvergenceReport& rep) {
    py::dict d;
    d["checkpoints"] = rep.checkpoints;
    d["values"] = rep.values;
    d["N"] = rep.sample_size;
    d["system"] = rep.metadata.system;
    d["observable"] = rep.metadata.observable;
    d["weight"] = rep.metadata.weight;
    return d;
}

}  // namespace

PYBIND11_MODULE(_symdyn, m) {
    m.doc() = "Symbolic dynamics and Moebius-disjointness numerics";

    py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<UndefinedAtPoint>(m, "UndefinedAtPoint", PyExc_ArithmeticError);

    m.def(
        "weights",
        [](const std::string& kind, std::uint64_t limit) {
            const auto t = arith::build_weight_table(arith::parse_weight_kind(kind), limit);
            const auto v = t.values();
            return std::vector<int>(v.begin(), v.end());
        },
        py::arg("kind"), py::arg("limit"), "mu(n) or lambda(n) for n <= limit; index 0 holds 0.");

    m.def(
        "pattern_parity",
        [](std::uint64_t n, const std::string& pattern) { return arith::pattern_parity(n, arith::DigitPattern(pattern)); },
        py::arg("n"), py::arg("pattern"));

    m.def(
        "generate",
        [](const std::string& system, std::uint64_t n, const std::string& spec) {
            const auto s = resolve(system, spec);
            return frontend::spell(s, s.source->prefix(n));
        },
        py::arg("system"), py::arg("n"), py::arg("spec") = "",
        "Prefix of a system, spelled with its letters. `system` may be hat(NAME).");

    m.def(
        "fixed_point",
        [](const std::string& alphabet, const std::vector<std::string>& rows, std::uint64_t n) {
            const auto sub = subst::Substitution::from_strings(alphabet, rows, alphabet.front());
            return sub.spell(subst::fixed_point(sub, n));
        },
        py::arg("alphabet"), py::arg("rows"), py::arg("n"));

    m.def(
        "language",
        [](const std::string& system, std::size_t k, const std::string& spec) {
            const auto s = resolve(system, spec);
            if (!s.substitution) throw std::invalid_argument("language needs a substitution system");
            std::vector<std::string> out;
            for (const auto& w : subst::language_exact(*s.substitution, k)) out.push_back(frontend::spell(s, w));
            return out;
        },
        py::arg("system"), py::arg("k"), py::arg("spec") = "");

    m.def(
        "group_cover",
        [](const std::string& system, const std::string& spec) {
            const auto s = resolve(system, spec);
            if (!s.substitution) throw std::invalid_argument("group_cover needs a substitution system");
            const auto c = subst::group_cover(*s.substitution);
            py::dict d;
            std::vector<std::string> names, block;
            for (const auto& p : c.cover.embedding.images) names.push_back(p.cycles(s.substitution->letters()));
            for (auto g : c.cover.block) block.push_back(names[g]);
            d["order"] = c.cover.group.order();
            d["elements"] = names;
            d["block"] = block;
            return d;
        },
        py::arg("system"), py::arg("spec") = "");

    m.def(
        "centralizer_order",
        [](const std::string& system, const std::string& spec) {
            const auto s = resolve(system, spec);
            if (!s.substitution) throw std::invalid_argument("centralizer_order needs a substitution system");
            const auto cols = subst::column_maps(*s.substitution);
            if (!cols.bijective) throw std::invalid_argument("columns are not bijective");
            return permgrp::centralizer_in_sym(cols.perms(), s.substitution->alphabet_size()).group.order();
        },
        py::arg("system"), py::arg("spec") = "");

    m.def(
        "autocorrelation",
        [](const std::string& system, const std::string& obs, std::uint64_t n, std::size_t lag, unsigned threads,
           const std::string& spec) {
            const auto s = resolve(system, spec);
            return spectral::autocorrelation(*s.source, observable(obs, s.source->alphabet_size()), n, lag, threads)
                .values;
        },
        py::arg("system"), py::arg("observable") = "walsh {0}", py::arg("n") = 65536, py::arg("lag") = 64,
        py::arg("threads") = 1, py::arg("spec") = "");

    m.def(
        "atom_mass",
        [](const std::string& system, const std::string& obs, std::int64_t p, std::uint64_t q, std::uint64_t n,
           const std::string& spec) {
            const auto s = resolve(system, spec);
            return spectral::atom_mass(*s.source, observable(obs, s.source->alphabet_size()), p, q, n);
        },
        py::arg("system"), py::arg("observable") = "walsh {0}", py::arg("p") = 0, py::arg("q") = 1,
        py::arg("n") = 65536, py::arg("spec") = "");

    m.def(
        "sarnak",
        [](const std::string& system, const std::string& obs, const std::string& weight, std::uint64_t n,
           unsigned threads, const std::string& spec) {
            const auto s = resolve(system, spec);
            experiment::ExperimentConfig cfg;
            cfg.system = s.source;
            cfg.system_name = system;
            cfg.observable = observable(obs, s.source->alphabet_size());
            cfg.observable_name = obs;
            if (weight != "none") cfg.weight = arith::parse_weight_kind(weight);
            cfg.sample_size = n;
            cfg.threads = threads;
            return report_dict(experiment::run_experiment(cfg));
        },
        py::arg("system"), py::arg("observable") = "walsh {0}", py::arg("weight") = "moebius", py::arg("n") = 65536,
        py::arg("threads") = 1, py::arg("spec") = "");

    m.def(
        "kbsz",
        [](const std::string& system, const std::string& obs, std::uint32_t r, std::uint32_t s_, std::uint64_t n,
           unsigned threads, const std::string& spec) {
            const auto s = resolve(system, spec);
            experiment::ExperimentConfig cfg;
            cfg.system = s.source;
            cfg.system_name = system;
            cfg.observable = observable(obs, s.source->alphabet_size());
            cfg.observable_name = obs;
            cfg.sample_size = n;
            cfg.kbsz = std::pair{r, s_};
            cfg.threads = threads;
            return report_dict(experiment::run_experiment(cfg));
        },
        py::arg("system"), py::arg("observable") = "walsh {0}", py::arg("r") = 3, py::arg("s") = 5,
        py::arg("n") = 65536, py::arg("threads") = 1, py::arg("spec") = "");

    m.def(
        "run",
        [](const std::string& spec, const std::string& name, unsigned threads, const std::string& format) {
            const auto doc = document(spec);
            const auto rep = experiment::run_experiment(frontend::build_experiment(doc, name, threads));
            if (format == "json") return experiment::to_json(rep);
            if (format == "csv") return experiment::to_csv(rep);
            throw std::invalid_argument("format must be csv or json");
        },
        py::arg("spec"), py::arg("experiment"), py::arg("threads") = 1, py::arg("format") = "csv",
        "Runs a named experiment of a spec text and returns the report text.");

    m.def(
        "check",
        [](const std::string& text) {
            const auto r = frontend::parse_spec(text);
            std::vector<std::string> out;
            for (const auto& d : r.diagnostics) out.push_back(frontend::format_diagnostic(d, "<spec>"));
            return py::make_tuple(r.ok(), out);
        },
        py::arg("text"), "Parses a spec: (ok, formatted diagnostics).");

    m.def(
        "format_spec", [](const std::string& text) { return frontend::print_spec(document(text)); }, py::arg("text"),
        "Canonical text form of a spec.");
}
