// symdyn command line: generate sequences, covers and run experiments.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <list>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "symdyn/experiment.hpp"
#include "symdyn/frontend.hpp"
#include "symdyn/reduce.hpp"
#include "symdyn/spectral.hpp"
#include "symdyn/subst.hpp"

namespace fe = symdyn::frontend;
namespace ex = symdyn::experiment;

namespace {

// Raised for user-facing diagnostics (exit code 1).
struct DiagnosticsFailed {};

struct Common {
    std::string file;
    std::string system = "thue-morse";
    std::string observable = "walsh {0}";
    std::uint64_t n = 32;
    std::string out;
    std::string format = "csv";
    std::string checkpoints = "pow2";
    std::string primes = "3,5";
    std::string weight = "moebius";
    std::size_t lag = 64;
    std::size_t grid = 256;
    std::size_t k = 2;
    unsigned threads = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void print_diagnostics(const std::vector<fe::Diagnostic>& diags, const std::string& name) {
    for (const auto& d : diags) std::cerr << fe::format_diagnostic(d, name);
}

fe::SpecDocument load(const std::string& path) {
    const auto r = fe::parse_spec(read_file(path));
    print_diagnostics(r.diagnostics, path);
    if (!r.ok()) throw DiagnosticsFailed{};
    return *r.document;
}

// Looks NAME up in the user file first, then in the built-in library.
fe::System resolve_system(const Common& c, const std::optional<fe::SpecDocument>& doc) {
    std::string name = c.system;
    bool hat = false;
    if (name.rfind("hat(", 0) == 0 && name.back() == ')') {
        name = name.substr(4, name.size() - 5);
        hat = true;
    }
    const fe::SpecDocument* where = nullptr;
    if (doc && doc->find(name)) where = &*doc;
    else if (fe::builtin_library().find(name)) where = &fe::builtin_library();
    if (!where) {
        std::cerr << "error: unknown system '" << name << "'\n";
        throw DiagnosticsFailed{};
    }
    auto sys = fe::build_system(*where, name);
    return hat ? fe::build_hat(sys, name) : sys;
}

symdyn::spectral::Observable resolve_observable(const Common& c, const std::optional<fe::SpecDocument>& doc,
                                                std::size_t alphabet) {
    if (doc) {
        if (const auto* d = doc->find(c.observable)) {
            if (const auto* o = std::get_if<fe::ObservableDecl>(&d->body)) return fe::build_observable(*o, alphabet);
        }
    }
    const auto r = fe::parse_observable_expr(c.observable);
    print_diagnostics(r.diagnostics, "--observable");
    if (!r.ok()) throw DiagnosticsFailed{};
    return fe::build_observable(std::get<fe::ObservableDecl>(r.document->declarations.front().body), alphabet);
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& text, std::uint64_t n) {
    if (text == "pow2") return ex::pow2_checkpoints(n);
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    if (out.empty() || out.back() != n) {
        if (!out.empty() && out.back() > n) throw std::invalid_argument("checkpoint beyond --n");
        out.push_back(n);
    }
    return out;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("write to '" + out + "' failed");
}

std::string report_text(const ex::ConvergenceReport& rep, const std::string& format) {
    if (format == "csv") return ex::to_csv(rep);
    if (format == "json") return ex::to_json(rep);
    throw std::invalid_argument("unknown --format '" + format + "'");
}

std::optional<fe::SpecDocument> maybe_load(const Common& c) {
    if (c.file.empty()) return std::nullopt;
    return load(c.file);
}

int cmd_gen(const Common& c) {
    const auto doc = maybe_load(c);
    const auto sys = resolve_system(c, doc);
    emit(fe::spell(sys, sys.source->prefix(c.n)) + "\n", c.out);
    return 0;
}

int cmd_cover(const Common& c) {
    const auto doc = maybe_load(c);
    const auto sys = resolve_system(c, doc);
    if (!sys.substitution) throw std::invalid_argument("'" + c.system + "' is not a substitution");
    const auto res = symdyn::subst::group_cover(*sys.substitution);
    const auto& g = res.cover.group;
    std::ostringstream os;
    os << "|G| = " << g.order() << "\n";
    os << "elements:";
    for (const auto& name : g.names()) os << ' ' << name;
    os << "\nblock:";
    for (auto b : res.cover.block) os << ' ' << g.name(b);
    os << "\n";
    emit(os.str(), c.out);
    return 0;
}

int cmd_hat(const Common& c) {
    const auto doc = maybe_load(c);
    Common cc = c;
    cc.system = "hat(" + c.system + ")";
    const auto sys = resolve_system(cc, doc);
    emit(fe::spell(sys, sys.source->prefix(c.n)) + "\n", c.out);
    return 0;
}

int cmd_skeleton(std::uint64_t lambda, unsigned level, std::uint64_t k, const std::string& out) {
    emit(std::to_string(symdyn::subst::skeleton_index(lambda, level, k)) + "\n", out);
    return 0;
}

int cmd_blocks(const Common& c, bool n_given) {
    const auto doc = maybe_load(c);
    const auto sys = resolve_system(c, doc);
    std::set<symdyn::Word> words;
    if (sys.substitution && !n_given) {
        words = symdyn::subst::language_exact(*sys.substitution, c.k);
    } else {
        const auto prefix = sys.source->prefix(c.n + c.k - 1);
        for (std::size_t i = 0; i + c.k <= prefix.size(); ++i) words.emplace(prefix.begin() + i, prefix.begin() + i + c.k);
    }
    std::ostringstream os;
    os << words.size() << "\n";
    for (const auto& w : words) os << fe::spell(sys, w) << "\n";
    emit(os.str(), c.out);
    return 0;
}

int cmd_corr(const Common& c, bool spectrum) {
    const auto doc = maybe_load(c);
    const auto sys = resolve_system(c, doc);
    const auto obs = resolve_observable(c, doc, sys.source->alphabet_size());
    const auto est = symdyn::spectral::autocorrelation(*sys.source, obs, c.n, c.lag, c.threads);
    std::ostringstream os;
    char buf[96];
    if (spectrum) {
        const auto dens = symdyn::spectral::periodogram(est, c.grid);
        os << "frequency,density\n";
        for (std::size_t j = 0; j < dens.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", static_cast<double>(j) / static_cast<double>(c.grid), dens[j]);
            os << buf;
        }
    } else {
        os << "lag,real,imag\n";
        for (std::size_t n = 0; n < est.values.size(); ++n) {
            std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", n, est.values[n].real(), est.values[n].imag());
            os << buf;
        }
    }
    emit(os.str(), c.out);
    return 0;
}

int cmd_series(const Common& c, bool kbsz) {
    const auto doc = maybe_load(c);
    const auto sys = resolve_system(c, doc);
    ex::ExperimentConfig cfg;
    cfg.system = sys.source;
    cfg.system_name = c.system;
    cfg.observable = resolve_observable(c, doc, sys.source->alphabet_size());
    cfg.observable_name = c.observable;
    cfg.sample_size = c.n;
    cfg.checkpoints = parse_checkpoints(c.checkpoints, c.n);
    cfg.threads = c.threads;
    if (kbsz) {
        const auto comma = c.primes.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--primes expects R,S");
        cfg.kbsz.emplace(std::stoul(c.primes.substr(0, comma)), std::stoul(c.primes.substr(comma + 1)));
    } else if (c.weight != "none") {
        cfg.weight = symdyn::arith::parse_weight_kind(c.weight);
    }
    emit(report_text(ex::run_experiment(cfg), c.format), c.out);
    return 0;
}

int cmd_run(const Common& c, const std::string& only) {
    const auto doc = load(c.file);
    bool any = false;
    for (const auto& d : doc.declarations) {
        if (!std::holds_alternative<fe::ExperimentDecl>(d.body)) continue;
        if (!only.empty() && d.name != only) continue;
        any = true;
        const auto rep = ex::run_experiment(fe::build_experiment(doc, d.name, c.threads));
        const auto text = report_text(rep, c.format);
        if (c.out.empty() || c.out == "-") {
            std::cout << text;
        } else {
            std::filesystem::create_directories(c.out);
            emit(text, (std::filesystem::path(c.out) / (d.name + "." + c.format)).string());
        }
    }
    if (!any) {
        std::cerr << c.file << ": error: no experiment" << (only.empty() ? "" : " named '" + only + "'") << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic dynamics and Moebius-disjointness experiments"};
    app.require_subcommand(1);
    std::list<Common> opts;  // one option set per subcommand
    std::string only;
    std::uint64_t lambda = 2, k = 0;
    unsigned level = 1;

    auto sub = [&](const char* name, const char* help) -> std::pair<CLI::App*, Common*> {
        return {app.add_subcommand(name, help), &opts.emplace_back()};
    };
    auto add_system = [](CLI::App* s, Common& c) {
        s->add_option("--file", c.file, "Spec file with declarations");
        s->add_option("--system", c.system, "System name (file or built-in; hat(NAME) allowed)");
    };
    auto add_out = [](CLI::App* s, Common& c) { s->add_option("--out", c.out, "Output path ('-' for stdout)"); };
    auto add_obs = [](CLI::App* s, Common& c) {
        s->add_option("--observable", c.observable, "Observable name or expression, e.g. 'walsh {0,1}'");
        s->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    };

    auto [gen, gen_c] = sub("gen", "Print a prefix of a system");
    add_system(gen, *gen_c);
    gen->add_option("--n", gen_c->n, "Number of symbols");
    add_out(gen, *gen_c);

    auto [cover, cover_c] = sub("cover", "Group cover of a bijective substitution");
    cover_c->system = "herning";
    add_system(cover, *cover_c);
    add_out(cover, *cover_c);

    auto [hat, hat_c] = sub("hat", "Print a prefix of the hat of a system");
    add_system(hat, *hat_c);
    hat->add_option("--n", hat_c->n, "Number of symbols");
    add_out(hat, *hat_c);

    auto [skel, skel_c] = sub("skeleton", "Skeleton offset i_t of S^k x");
    skel->add_option("--lambda", lambda, "Substitution length")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
    skel->add_option("--level", level, "Level t")->check(CLI::Range(0u, 40u));
    skel->add_option("--k", k, "Shift")->required();
    add_out(skel, *skel_c);

    auto [blocks, blocks_c] = sub("blocks", "Words of length k in the language");
    add_system(blocks, *blocks_c);
    blocks->add_option("--k", blocks_c->k, "Block length")->check(CLI::Range(std::size_t{1}, std::size_t{32}));
    auto* blocks_n = blocks->add_option("--n", blocks_c->n, "Scan this prefix instead of the exact language");
    add_out(blocks, *blocks_c);

    auto [spectrum, spectrum_c] = sub("spectrum", "Fejer periodogram of an observable");
    auto [corr, corr_c] = sub("corr", "Autocorrelations of an observable");
    for (auto [s, c] : {std::pair{spectrum, spectrum_c}, std::pair{corr, corr_c}}) {
        c->n = std::uint64_t{1} << 16;
        add_system(s, *c);
        add_obs(s, *c);
        s->add_option("--n", c->n, "Sample size N");
        s->add_option("--lag", c->lag, "Maximal lag L");
        add_out(s, *c);
    }
    spectrum->add_option("--grid", spectrum_c->grid, "Frequency grid size M");

    auto [sarnak, sarnak_c] = sub("sarnak", "Sarnak averages (1/M) sum f(S^n x) w(n)");
    auto [kbsz, kbsz_c] = sub("kbsz", "KBSZ averages (1/M) sum f(S^{nr} x) conj f(S^{ns} x)");
    for (auto [s, c] : {std::pair{sarnak, sarnak_c}, std::pair{kbsz, kbsz_c}}) {
        c->n = std::uint64_t{1} << 16;
        add_system(s, *c);
        add_obs(s, *c);
        s->add_option("--n", c->n, "Sample size N");
        s->add_option("--checkpoints", c->checkpoints, "pow2 or a comma separated list");
        s->add_option("--format", c->format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        add_out(s, *c);
    }
    sarnak->add_option("--weight", sarnak_c->weight, "moebius, liouville or none")
        ->check(CLI::IsMember({"moebius", "liouville", "none"}));
    kbsz->add_option("--primes", kbsz_c->primes, "Prime pair R,S");

    auto [run, run_c] = sub("run", "Run the experiments of a spec file");
    run->add_option("FILE", run_c->file, "Spec file")->required();
    run->add_option("--experiment", only, "Run only this experiment");
    run->add_option("--out", run_c->out, "Output directory ('-' or empty for stdout)");
    run->add_option("--format", run_c->format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--threads", run_c->threads, "Worker threads")->check(CLI::Range(1u, 256u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) return cmd_gen(*gen_c);
        if (*cover) return cmd_cover(*cover_c);
        if (*hat) return cmd_hat(*hat_c);
        if (*skel) return cmd_skeleton(lambda, level, k, skel_c->out);
        if (*blocks) return cmd_blocks(*blocks_c, blocks_n->count() > 0);
        if (*spectrum) return cmd_corr(*spectrum_c, true);
        if (*corr) return cmd_corr(*corr_c, false);
        if (*sarnak) return cmd_series(*sarnak_c, false);
        if (*kbsz) return cmd_series(*kbsz_c, true);
        if (*run) return cmd_run(*run_c, only);
    } catch (const DiagnosticsFailed&) {
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
