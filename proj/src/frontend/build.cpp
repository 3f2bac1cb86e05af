#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "symdyn/arith.hpp"
#include "symdyn/frontend.hpp"
#include "symdyn/odometer.hpp"
#include "symdyn/permgrp.hpp"

namespace symdyn::frontend {

namespace {

// Shortest of %.15g / %.17g that reads back exactly.
std::string real_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string complex_text(std::complex<double> z) {
    if (z.imag() == 0.0) return real_text(z.real());
    std::string im = real_text(std::abs(z.imag())) + "i";
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im;
    return real_text(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string group_text(const GroupRef& g) {
    switch (g.kind) {
        case GroupRef::Kind::z2: return "Z2";
        case GroupRef::Kind::zn: return "Zn(" + std::to_string(g.degree) + ")";
        case GroupRef::Kind::sym: return "Sym(" + std::to_string(g.degree) + ")";
        case GroupRef::Kind::cover_of: return "cover-of " + g.cover_name;
    }
    return "";
}

Word word36(std::string_view s) {
    Word w;
    for (char c : s) {
        if (c >= '0' && c <= '9') w.push_back(static_cast<Symbol>(c - '0'));
        else if (c >= 'a' && c <= 'z') w.push_back(static_cast<Symbol>(c - 'a' + 10));
        else throw std::invalid_argument(std::string("'") + c + "' is not a base-36 symbol");
    }
    return w;
}

std::vector<std::string> digit_letters(std::size_t n) {
    std::vector<std::string> out;
    for (Symbol s = 0; s < n; ++s) out.push_back(format_word({s}));
    return out;
}

const Declaration& lookup(const SpecDocument& doc, std::string_view name) {
    const auto* d = doc.find(name);
    if (!d) throw std::invalid_argument("unknown name '" + std::string(name) + "'");
    return *d;
}

subst::Substitution build_substitution(const SubstitutionDecl& s) {
    std::map<std::string, Symbol> index;
    for (Symbol a = 0; a < s.letters.size(); ++a) index[s.letters[a]] = a;
    std::vector<Word> rows;
    for (const auto& row : s.rows) {
        Word w;
        for (const auto& l : row) w.push_back(index.at(l));
        rows.push_back(std::move(w));
    }
    const Symbol seed = s.seed ? index.at(*s.seed) : 0;
    return subst::Substitution(s.letters, std::move(rows), seed);
}

}  // namespace

std::string print_declaration(const Declaration& decl) {
    std::ostringstream os;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SubstitutionDecl>) {
                os << "substitution " << decl.name << " on {";
                for (std::size_t a = 0; a < b.letters.size(); ++a) os << (a ? "," : "") << b.letters[a];
                os << "}";
                if (b.seed) os << " seed " << *b.seed;
                os << " {\n";
                for (std::size_t a = 0; a < b.letters.size(); ++a) {
                    std::string row;
                    for (const auto& l : b.rows[a]) row += l;
                    os << "    " << b.letters[a] << " -> " << quoted(row) << ";\n";
                }
                os << "}\n";
            } else if constexpr (std::is_same_v<T, MorseDecl>) {
                os << "morse " << decl.name << " over " << group_text(b.group) << " blocks [";
                bool first = true;
                for (const auto& p : b.prefix) {
                    os << (first ? "" : ", ") << quoted(p);
                    first = false;
                }
                for (std::size_t k = 0; k < b.cycle.size(); ++k) {
                    os << (first ? "" : ", ") << (k == 0 ? "repeat " : "") << quoted(b.cycle[k]);
                    first = false;
                }
                os << "]\n";
            } else if constexpr (std::is_same_v<T, RsDecl>) {
                os << "rs " << decl.name << " pattern " << quoted(b.pattern) << "\n";
            } else if constexpr (std::is_same_v<T, VeechDecl>) {
                os << "veech " << decl.name << " base " << b.base << " group " << group_text(b.group) << " psi ";
                if (!b.psi_prefix.empty()) os << quoted(b.psi_prefix) << " ";
                os << "repeat " << quoted(b.psi_cycle) << "\n";
            } else if constexpr (std::is_same_v<T, ObservableDecl>) {
                os << "observable " << decl.name << " = ";
                switch (b.kind) {
                    case ObservableDecl::Kind::constant: os << "constant " << complex_text(b.constant); break;
                    case ObservableDecl::Kind::walsh:
                        os << "walsh {";
                        for (std::size_t k = 0; k < b.offsets.size(); ++k) os << (k ? "," : "") << b.offsets[k];
                        os << "}";
                        break;
                    case ObservableDecl::Kind::indicator: os << "indicator " << quoted(b.block) << " at " << b.at; break;
                    case ObservableDecl::Kind::table:
                        os << "table {";
                        for (std::size_t k = 0; k < b.table.size(); ++k)
                            os << (k ? ", " : "") << b.table[k].first << ": " << complex_text(b.table[k].second);
                        os << "}";
                        break;
                }
                os << "\n";
            } else {
                os << "experiment " << decl.name << " {\n";
                os << "    system: " << (b.system.hat ? "hat(" + b.system.name + ")" : b.system.name) << ";\n";
                os << "    observable: " << b.observable << ";\n";
                os << "    weight: " << b.weight << ";\n";
                os << "    N: " << b.sample_size << ";\n";
                os << "    checkpoints: ";
                if (!b.checkpoints) {
                    os << "pow2";
                } else {
                    os << "[";
                    for (std::size_t k = 0; k < b.checkpoints->size(); ++k) os << (k ? ", " : "") << (*b.checkpoints)[k];
                    os << "]";
                }
                os << ";\n";
                if (b.kbsz) os << "    kbsz: (" << b.kbsz->first << "," << b.kbsz->second << ");\n";
                os << "}\n";
            }
        },
        decl.body);
    return os.str();
}

std::string print_spec(const SpecDocument& doc) {
    std::string out;
    for (std::size_t i = 0; i < doc.declarations.size(); ++i) {
        if (i) out += "\n";
        out += print_declaration(doc.declarations[i]);
    }
    return out;
}

permgrp::FiniteGroup build_group(const SpecDocument& doc, const GroupRef& ref) {
    switch (ref.kind) {
        case GroupRef::Kind::z2: return permgrp::FiniteGroup::cyclic(2);
        case GroupRef::Kind::zn: return permgrp::FiniteGroup::cyclic(ref.degree);
        case GroupRef::Kind::sym: return permgrp::symmetric_group(ref.degree).group;
        case GroupRef::Kind::cover_of: {
            const auto& d = lookup(doc, ref.cover_name);
            const auto* s = std::get_if<SubstitutionDecl>(&d.body);
            if (!s) throw std::invalid_argument("'" + ref.cover_name + "' is not a substitution");
            return subst::group_cover(build_substitution(*s)).cover.group;
        }
    }
    throw std::invalid_argument("bad group reference");
}

System build_system(const SpecDocument& doc, std::string_view name) {
    const auto& d = lookup(doc, name);
    System sys;
    if (const auto* s = std::get_if<SubstitutionDecl>(&d.body)) {
        auto sub = build_substitution(*s);
        sys.source = subst::fixed_point_source(sub);
        sys.letters = sub.letters();
        sys.substitution = std::move(sub);
    } else if (const auto* m = std::get_if<MorseDecl>(&d.body)) {
        auto group = build_group(doc, m->group);
        EventuallyPeriodic<Word> blocks;
        for (const auto& b : m->prefix) blocks.prefix.push_back(word36(b));
        for (const auto& b : m->cycle) blocks.cycle.push_back(word36(b));
        sys.source = morse::morse_source(morse::MorseSpec(group, std::move(blocks)));
        sys.letters = digit_letters(group.order());
        sys.group = std::move(group);
    } else if (const auto* r = std::get_if<RsDecl>(&d.body)) {
        sys.source = std::make_shared<arith::PatternParitySource>(arith::DigitPattern(r->pattern));
        sys.letters = digit_letters(2);
    } else if (const auto* v = std::get_if<VeechDecl>(&d.body)) {
        auto group = build_group(doc, v->group);
        const auto prefix = word36(v->psi_prefix);
        const auto cycle = word36(v->psi_cycle);
        odometer::VeechSpec spec{odometer::OdometerSpec::constant(v->base), group,
                                 EventuallyPeriodic<permgrp::Element>(prefix, cycle)};
        sys.source = odometer::veech_source(spec, odometer::OdometerPoint::from_integer(spec.odometer, 0));
        sys.letters = digit_letters(group.order());
        sys.group = std::move(group);
    } else {
        throw std::invalid_argument("'" + std::string(name) + "' is not a system");
    }
    return sys;
}

System build_hat(const System& system, std::string_view name) {
    permgrp::FiniteGroup group = system.group ? *system.group : permgrp::FiniteGroup::cyclic(2);
    if (!system.group && system.source->alphabet_size() != 2) {
        throw std::invalid_argument("hat(" + std::string(name) + ") needs a group system or a binary alphabet");
    }
    System out;
    out.source = morse::hat_source(system.source, group);
    out.letters = digit_letters(group.order());
    out.group = std::move(group);
    return out;
}

spectral::Observable build_observable(const ObservableDecl& decl, std::size_t alphabet_size) {
    switch (decl.kind) {
        case ObservableDecl::Kind::constant: return spectral::make_constant(decl.constant);
        case ObservableDecl::Kind::walsh: return spectral::make_walsh(decl.offsets, alphabet_size);
        case ObservableDecl::Kind::indicator: return spectral::make_block_indicator(word36(decl.block), decl.at);
        case ObservableDecl::Kind::table: {
            std::map<Symbol, spectral::Complex> values(decl.table.begin(), decl.table.end());
            return spectral::make_symbol_table(values, alphabet_size);
        }
    }
    throw std::invalid_argument("bad observable");
}

experiment::ExperimentConfig build_experiment(const SpecDocument& doc, std::string_view name, unsigned threads) {
    const auto& d = lookup(doc, name);
    const auto* e = std::get_if<ExperimentDecl>(&d.body);
    if (!e) throw std::invalid_argument("'" + std::string(name) + "' is not an experiment");
    auto sys = build_system(doc, e->system.name);
    if (e->system.hat) sys = build_hat(sys, e->system.name);
    const auto& od = lookup(doc, e->observable);
    const auto* o = std::get_if<ObservableDecl>(&od.body);
    if (!o) throw std::invalid_argument("'" + e->observable + "' is not an observable");

    experiment::ExperimentConfig cfg;
    cfg.system = sys.source;
    cfg.system_name = e->system.hat ? "hat(" + e->system.name + ")" : e->system.name;
    cfg.observable = build_observable(*o, sys.source->alphabet_size());
    cfg.observable_name = e->observable;
    if (e->weight != "none") cfg.weight = arith::parse_weight_kind(e->weight);
    cfg.sample_size = e->sample_size;
    if (e->checkpoints) cfg.checkpoints = *e->checkpoints;
    cfg.kbsz = e->kbsz;
    cfg.threads = threads;
    return cfg;
}

const SpecDocument& builtin_library() {
    static const SpecDocument doc = [] {
        static constexpr std::string_view kText = R"(
substitution thue-morse on {0,1} {
    0 -> "01";
    1 -> "10";
}
substitution rudin-shapiro on {a,b,c,d} {
    a -> "ab";
    b -> "ac";
    c -> "db";
    d -> "dc";
}
substitution herning on {a,b,c} {
    a -> "aabaa";
    b -> "bcabb";
    c -> "cbccc";
}
morse tm-morse over Z2 blocks [repeat "01"]
rs rs-pattern pattern "11"
veech period-doubling-veech base 2 group Z2 psi repeat "10"
)";
        auto r = parse_spec(kText);
        if (!r.ok()) throw std::logic_error("builtin library does not parse");
        return *r.document;
    }();
    return doc;
}

std::string spell(const System& system, const Word& w) {
    std::string out;
    for (Symbol s : w) out += s < system.letters.size() ? system.letters[s] : "<" + std::to_string(s) + ">";
    return out;
}

}  // namespace symdyn::frontend
