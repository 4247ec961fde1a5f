#pragma once

// The CLI commands as library functions. Each returns a human-readable
// report, a JSON object and an exit code (0 pass, 1 verification failure).
// Bad arguments throw UsageError (exit code 2).

#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sixv/io.hpp"
#include "sixv/numeric.hpp"
#include "sixv/render.hpp"
#include "sixv/unitarity.hpp"

namespace sixv {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandResult {
    std::string text;
    json report;
    int exit_code = 0;
};

namespace detail {

inline json to_json(const Signature& s) { return json::array({s.low(), s.high()}); }

inline json to_json(VertexRef v) { return json::array({v.x, v.y}); }

inline json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::vector<Component> conserving_components(const Configuration& cfg) {
    if (!cfg.check_conservation().empty())
        throw UsageError("the configuration violates current conservation; run `check` for details");
    return components(cfg);
}

inline const Component& pick(const std::vector<Component>& comps, int id) {
    if (id < 0 || id >= static_cast<int>(comps.size()))
        throw UsageError("unknown component id " + std::to_string(id) + " (valid ids 0.." +
                         std::to_string(comps.size() - 1) + ")");
    return comps[static_cast<std::size_t>(id)];
}

inline std::optional<WeightWindow> window_for(const Component& c, std::optional<WeightWindow> win) {
    if (c.finite()) return std::nullopt;
    if (!win)
        throw UsageError("component " + std::to_string(c.id) + " is infinite; pass --window <lo> <hi>");
    if (win->lo > win->hi) throw UsageError("empty window");
    return win;
}

inline std::string weight_list(const std::vector<Int>& ws) {
    std::string out;
    for (std::size_t k = 0; k < ws.size(); ++k) out += (k ? "," : "") + std::to_string(ws[k]);
    return out;
}

}  // namespace detail

inline CommandResult cmd_check(const ConfigFile& file) {
    Configuration cfg = file.configuration();
    CommandResult res;
    auto cons = cfg.check_conservation();
    auto mp = cfg.check_mte(MteMode::P);
    auto mq = cfg.check_mte(MteMode::Q);
    std::ostringstream os;
    os << "period (" << cfg.lattice().m() << "," << cfg.lattice().n() << "), " << cfg.edges().size()
       << " supported edges\n";
    auto line = [&](const char* name, const std::vector<VertexRef>& bad, const char* key) {
        json vs = json::array();
        for (auto v : bad) vs.push_back(detail::to_json(v));
        res.report[key] = {{"ok", bad.empty()}, {"violations", vs}};
        os << name << ": ";
        if (bad.empty()) {
            os << "ok\n";
            return;
        }
        os << bad.size() << " violation" << (bad.size() == 1 ? "" : "s") << " at";
        for (std::size_t k = 0; k < bad.size() && k < 8; ++k) os << ' ' << bad[k];
        os << (bad.size() > 8 ? " ..." : "") << '\n';
    };
    res.report["command"] = "check";
    res.report["period"] = {cfg.lattice().m(), cfg.lattice().n()};
    res.report["edges"] = cfg.edges().size();
    line("conservation", cons, "conservation");
    line("mte(P)", mp, "mte_p");
    line("mte(q)", mq, "mte_q");
    bool ok = cons.empty() && mp.empty() && mq.empty();
    res.report["ok"] = ok;
    res.exit_code = ok ? 0 : 1;
    res.text = os.str();
    return res;
}

inline CommandResult cmd_components(const ConfigFile& file) {
    Configuration cfg = file.configuration();
    auto comps = detail::conserving_components(cfg);
    CommandResult res;
    std::ostringstream os;
    os << "id  region  finite  contractible  dim  weights\n";
    json arr = json::array();
    for (const auto& c : comps) {
        std::string dim = c.finite() ? std::to_string(c.size()) : "inf";
        std::string ws = detail::weight_list(c.weights);
        if (c.region == Region::Bottom) ws = "..." + std::string(ws.empty() ? "" : ",") + ws;
        if (c.region == Region::Top) ws += std::string(ws.empty() ? "" : ",") + "...";
        if (c.region == Region::Whole) ws = "all";
        os << c.id << "  " << to_string(c.region) << "  " << detail::yes_no(c.finite()) << "  "
           << detail::yes_no(c.contractible) << "  " << dim << "  " << ws << '\n';
        json o = {{"id", c.id},
                  {"region", to_string(c.region)},
                  {"finite", c.finite()},
                  {"contractible", c.contractible},
                  {"weights", c.weights}};
        o["dim"] = c.finite() ? json(c.size()) : json(nullptr);
        arr.push_back(o);
    }
    res.report = {{"command", "components"}, {"components", arr}};
    res.text = os.str();
    return res;
}

inline CommandResult cmd_module(const ConfigFile& file, int id, std::optional<WeightWindow> win) {
    Configuration cfg = file.configuration();
    auto comps = detail::conserving_components(cfg);
    const Component& comp = detail::pick(comps, id);
    ModuleRep rep(cfg, comp, detail::window_for(comp, win));
    auto rel = verify_relations(rep);
    CommandResult res;
    std::ostringstream os;
    os << "component " << id << ": dim " << rep.dim() << (rep.windowed() ? " (windowed)" : "") << '\n';
    os << "basis weights: " << detail::weight_list(rep.basis()) << '\n';
    json mats = json::object();
    for (Gen g : {Gen::X1p, Gen::X1m, Gen::X2p, Gen::X2m, Gen::H}) {
        os << to_string(g) << ":\n" << rep.matrix(g).triplets();
        json entries = json::array();
        for (const auto& [r, c, v] : rep.matrix(g).entries()) entries.push_back({r, c, v.str()});
        mats[to_string(g)] = entries;
    }
    os << "relations: " << rel.checked << " checked, " << rel.skipped << " skipped, " << rel.failures.size()
       << " failures\n";
    for (const auto& f : rel.failures) os << "  " << f << '\n';
    bool ok = rel.ok();
    json inv_json;
    try {
        auto inv = verify_invariance(rep, gram(rep, file.involution), file.involution);
        os << "invariant form (" << to_string(file.involution) << "): " << inv.checked << " checked, "
           << inv.failures.size() << " failures\n";
        for (const auto& f : inv.failures) os << "  " << f << '\n';
        inv_json = {{"checked", inv.checked}, {"skipped", inv.skipped}, {"failures", inv.failures}};
        ok = ok && inv.ok();
    } catch (const FormError& e) {
        os << "invariant form (" << to_string(file.involution) << "): none (" << e.what() << ")\n";
        inv_json = {{"error", e.what()}};
    }
    res.report = {{"command", "module"},
                  {"component", id},
                  {"dim", rep.dim()},
                  {"windowed", rep.windowed()},
                  {"basis", rep.basis()},
                  {"matrices", mats},
                  {"relations", {{"checked", rel.checked}, {"skipped", rel.skipped}, {"failures", rel.failures}}},
                  {"invariance", inv_json},
                  {"ok", ok}};
    res.exit_code = ok ? 0 : 1;
    res.text = os.str();
    return res;
}

inline CommandResult cmd_signature(const ConfigFile& file, int id, std::optional<WeightWindow> win) {
    Configuration cfg = file.configuration();
    auto comps = detail::conserving_components(cfg);
    const Component& comp = detail::pick(comps, id);
    const Involution inv = file.involution;
    CommandResult res;
    std::ostringstream os;
    res.report = {{"command", "signature"}, {"component", id}, {"involution", to_string(inv)}};
    bool ok = true;

    auto dual = dual_invariants(comp, file.xi);
    auto pseudo_line = [&] {
        os << "pseudo-unitarizable=" << (dual.pseudo_unitarizable ? "true" : "false");
        if (!dual.contractible) os << (file.xi ? " (concrete xi)" : " (formal unit xi)");
        os << '\n';
        res.report["pseudo_unitarizable"] = dual.pseudo_unitarizable;
    };

    try {
        if (!comp.finite()) {
            auto w = *detail::window_for(comp, win);
            Signature d = signature_direct_window(cfg, comp, w, inv);
            os << "direct=" << d.str() << " on window [" << w.lo << "," << w.hi
               << "] coloring=n/a unitarizable=n/a\n";
            res.report["window"] = {w.lo, w.hi};
            res.report["direct"] = detail::to_json(d);
            res.report["coloring"] = nullptr;
            res.report["unitarizable"] = nullptr;
        } else {
            Signature d = signature_direct(cfg, comp, inv);
            Signature c = signature_coloring(cfg, comp, inv);
            auto u = unitarizability_report(cfg, comp, inv);
            os << "direct=" << d.str() << " coloring=" << c.str()
               << " unitarizable=" << (u.verdict() ? "true" : "false") << '\n';
            os << "conditions: signature definite=" << detail::yes_no(u.signature_definite)
               << ", w constant=" << detail::yes_no(u.w_constant)
               << ", P sign=" << detail::yes_no(u.p_positive) << ", l parity=" << detail::yes_no(u.l_even)
               << ", line parity=" << detail::yes_no(u.lines_even) << "; agree=" << detail::yes_no(u.agree())
               << '\n';
            res.report["direct"] = detail::to_json(d);
            res.report["coloring"] = detail::to_json(c);
            res.report["unitarizable"] = u.verdict();
            res.report["conditions"] = {{"signature_definite", u.signature_definite},
                                        {"w_constant", u.w_constant},
                                        {"p_sign", u.p_positive},
                                        {"l_parity", u.l_even},
                                        {"line_parity", u.lines_even},
                                        {"agree", u.agree()}};
            ok = d == c && u.agree();
            if (file.xi && std::abs(std::abs(*file.xi) - 1.0) <= 1e-12 && comp.size() <= 16) {
                auto ns = numeric_signature(build_module(cfg, comp), *file.xi, inv);
                os << "numeric=" << ns.signature.str() << " at xi=(" << file.xi->real() << ","
                   << file.xi->imag() << "), form space dim " << ns.nullity << '\n';
                res.report["numeric"] = {{"signature", detail::to_json(ns.signature)},
                                         {"xi", detail::to_json(*file.xi)},
                                         {"form_space_dim", ns.nullity}};
                ok = ok && ns.ok() && ns.signature == d;
            }
        }
    } catch (const FormError& e) {
        os << "no diagonal invariant form under " << to_string(inv) << ": " << e.what() << '\n';
        res.report["error"] = e.what();
        ok = false;
    }
    pseudo_line();
    res.report["ok"] = ok;
    res.exit_code = ok ? 0 : 1;
    res.text = os.str();
    return res;
}

/// The two staircase words 1^m 2^n and 2^n 1^m.
inline std::vector<SeqWord> default_words(const Lattice& lat) {
    SeqWord a = std::string(static_cast<std::size_t>(lat.m()), '1') + std::string(static_cast<std::size_t>(lat.n()), '2');
    SeqWord b = std::string(static_cast<std::size_t>(lat.n()), '2') + std::string(static_cast<std::size_t>(lat.m()), '1');
    return {a, b};
}

inline CommandResult cmd_casimir(const ConfigFile& file, int id, std::optional<WeightWindow> win, bool all_words) {
    Configuration cfg = file.configuration();
    auto comps = detail::conserving_components(cfg);
    const Component& comp = detail::pick(comps, id);
    ModuleRep rep(cfg, comp, detail::window_for(comp, win));
    const Lattice& lat = cfg.lattice();
    auto words = all_words ? enumerate_seq(lat.m(), lat.n()) : default_words(lat);
    CommandResult res;
    std::ostringstream os;
    json per_word = json::array();
    std::optional<Radical> common;
    bool independent = true, ok = true;
    std::size_t matching = 0;
    for (const auto& w : words) {
        auto c = casimir(rep, w);
        ok = ok && c.ok() && c.consistent && c.diagonal;
        if (!common) common = c.scalar;
        if (c.consistent && c.scalar == *common) {
            ++matching;
        } else {
            independent = false;
        }
        os << "word " << w << ": " << (c.consistent ? c.scalar.str() : "inconsistent") << " (" << c.checked
           << " faces checked, " << c.skipped << " skipped, " << c.singular << " singular)\n";
        per_word.push_back({{"word", w},
                            {"scalar", c.scalar.str()},
                            {"consistent", c.consistent},
                            {"diagonal", c.diagonal},
                            {"checked", c.checked},
                            {"skipped", c.skipped},
                            {"singular", c.singular},
                            {"failures", c.failures}});
    }
    std::string scalar = common ? common->str() : "none";
    os << scalar << " for " << matching << "/" << words.size() << " words; independent=" << (independent ? "yes" : "no")
       << '\n';
    ok = ok && independent;
    res.report = {{"command", "casimir"}, {"component", id},   {"scalar", scalar},
                  {"words", per_word},    {"independent", independent}, {"ok", ok}};
    res.exit_code = ok ? 0 : 1;
    res.text = os.str();
    return res;
}

inline CommandResult cmd_render(const ConfigFile& file, std::optional<int> id) {
    Configuration cfg = file.configuration();
    auto comps = detail::conserving_components(cfg);
    if (id) detail::pick(comps, *id);
    CommandResult res;
    RenderOptions opt{id, file.involution};
    res.text = render_ascii(cfg, opt);
    res.report = {{"command", "render"}, {"ascii", res.text}};
    if (id) res.report["component"] = *id;
    return res;
}

struct CatalogSummary {
    std::size_t samples = 0;
    std::size_t records = 0;
    std::size_t failures = 0;
};

/// One record per component of each random sample; `emit` receives them in
/// sample order. Sample s uses seed `seed + s`.
template <class Emit>
CatalogSummary catalog(Int m, Int n, Int k, std::size_t samples, std::uint64_t seed, Emit&& emit) {
    Lattice lat(m, n);
    if (k < 1) throw UsageError("the number of paths must be at least 1");
    CatalogSummary sum;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::uint64_t sample_seed = seed + s;
        auto paths = random_paths(lat, k, sample_seed);
        Configuration cfg = Configuration::from_paths(lat, paths);
        json pj = json::array();
        for (const auto& p : paths) pj.push_back({{"start", {p.start.x, p.start.y}}, {"steps", p.steps}});
        ++sum.samples;
        for (const auto& c : components(cfg)) {
            json rec = {{"m", m},          {"n", n},       {"sample", s},
                        {"seed", sample_seed}, {"paths", pj},  {"component", c.id},
                        {"region", to_string(c.region)}, {"contractible", c.contractible}};
            if (c.finite()) {
                Signature d = signature_direct(cfg, c);
                Signature col = signature_coloring(cfg, c);
                auto u = unitarizability_report(cfg, c);
                bool ok = d == col && u.agree();
                if (!ok) ++sum.failures;
                rec["dim"] = c.size();
                rec["signature"] = detail::to_json(d);
                rec["unitarizable"] = u.verdict();
                rec["checks_ok"] = ok;
            } else {
                rec["dim"] = nullptr;
                rec["signature"] = nullptr;
                rec["unitarizable"] = nullptr;
            }
            emit(rec);
            ++sum.records;
        }
    }
    return sum;
}

}  // namespace sixv
