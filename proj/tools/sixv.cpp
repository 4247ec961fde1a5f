#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sixv/commands.hpp"

namespace {

sixv::ConfigFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sixv::UsageError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return sixv::parse_config(buf.str());
}

std::optional<sixv::WeightWindow> to_window(const std::vector<sixv::Int>& w) {
    if (w.empty()) return std::nullopt;
    return sixv::WeightWindow{w[0], w[1]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic six-vertex configurations and their weight modules"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "print the report as one JSON object");

    std::string file;
    int component = 0;
    std::vector<sixv::Int> window;
    bool all_words = false;
    std::string svg_out;
    std::optional<int> render_component;

    auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "configuration file")->required(); };
    auto add_component = [&](CLI::App* sub) {
        sub->add_option("--component", component, "component id from `components`")->required();
    };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--window", window, "weight window for infinite components")->expected(2);
    };

    auto* check = app.add_subcommand("check", "conservation and MTE checks");
    add_file(check);
    auto* comps = app.add_subcommand("components", "list the components");
    add_file(comps);
    auto* module = app.add_subcommand("module", "build a module, verify relations, print matrices");
    add_file(module);
    add_component(module);
    add_window(module);
    auto* signature = app.add_subcommand("signature", "signature by both methods, unitarizability");
    add_file(signature);
    add_component(signature);
    add_window(signature);
    auto* cas = app.add_subcommand("casimir", "Casimir scalar per word");
    add_file(cas);
    add_component(cas);
    add_window(cas);
    cas->add_flag("--all-words", all_words, "use every word instead of the two staircase words");
    auto* render = app.add_subcommand("render", "draw a fundamental domain");
    add_file(render);
    render->add_option("--svg", svg_out, "also write an SVG picture to this path");
    render->add_option("--component", render_component, "hatch this component by subcomponent color");

    sixv::Int cm = 0, cn = 0, ck = 0;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    std::string out_path;
    auto* cat = app.add_subcommand("catalog", "summaries of random configurations");
    cat->add_option("m", cm)->required();
    cat->add_option("n", cn)->required();
    cat->add_option("k", ck, "paths per configuration")->required();
    cat->add_option("--samples", samples)->capture_default_str();
    cat->add_option("--seed", seed)->capture_default_str();
    cat->add_option("--out", out_path, "newline-delimited JSON file, appended to")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        sixv::CommandResult res;
        if (cat->parsed()) {
            std::ofstream out(out_path, std::ios::app);
            if (!out) throw sixv::UsageError("cannot open " + out_path);
            auto sum = sixv::catalog(cm, cn, ck, samples, seed,
                                     [&](const sixv::json& rec) { out << rec.dump() << '\n'; });
            res.report = {{"command", "catalog"},
                          {"samples", sum.samples},
                          {"records", sum.records},
                          {"failures", sum.failures},
                          {"out", out_path}};
            res.text = std::to_string(sum.samples) + " samples, " + std::to_string(sum.records) +
                       " records appended to " + out_path + ", " + std::to_string(sum.failures) +
                       " check failures\n";
            res.exit_code = sum.failures == 0 ? 0 : 1;
        } else {
            auto cfgfile = load(file);
            if (check->parsed()) {
                res = sixv::cmd_check(cfgfile);
            } else if (comps->parsed()) {
                res = sixv::cmd_components(cfgfile);
            } else if (module->parsed()) {
                res = sixv::cmd_module(cfgfile, component, to_window(window));
            } else if (signature->parsed()) {
                res = sixv::cmd_signature(cfgfile, component, to_window(window));
            } else if (cas->parsed()) {
                res = sixv::cmd_casimir(cfgfile, component, to_window(window), all_words);
            } else if (render->parsed()) {
                res = sixv::cmd_render(cfgfile, render_component);
                if (!svg_out.empty()) {
                    std::ofstream svg(svg_out);
                    if (!svg) throw sixv::UsageError("cannot open " + svg_out);
                    svg << sixv::render_svg(cfgfile.configuration(), {render_component, cfgfile.involution});
                    res.report["svg"] = svg_out;
                }
            }
        }
        if (as_json) {
            std::cout << res.report.dump(2) << '\n';
        } else {
            std::cout << res.text;
        }
        return res.exit_code;
    } catch (const sixv::ParseError& e) {
        std::cerr << file << ":" << e.what() << '\n';
        return 2;
    } catch (const sixv::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification error: " << e.what() << '\n';
        return 1;
    }
}
