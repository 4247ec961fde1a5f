#pragma once

// Pictures of one fundamental domain: the faces (x,y) with 1 <= x <= m, for
// the rows that meet the support. The configuration is drawn solid, red
// overlay edges dashed, and the faces of a selected finite component hatched
// by subcomponent color.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sixv/configuration.hpp"
#include "sixv/topology.hpp"

namespace sixv {

struct RenderOptions {
    std::optional<int> component;
    Involution involution = Involution::Star;
};

namespace detail {

struct Scene {
    Int m = 1;
    Int ybot = 0, ytop = 0;                         // face rows
    std::map<FaceRef, char> label;                  // face -> component id character
    std::map<FaceRef, int> hatch;                   // face -> subcomponent color
    std::map<std::pair<int, Int>, bool> red;        // (i, mid2) -> red overlay edge
};

inline char id_char(int id) {
    if (id < 10) return static_cast<char>('0' + id);
    if (id < 36) return static_cast<char>('a' + id - 10);
    return '?';
}

inline Scene make_scene(const Configuration& cfg, const RenderOptions& opt) {
    const Lattice& lat = cfg.lattice();
    Scene sc;
    sc.m = lat.m();
    auto comps = components(cfg);
    if (opt.component && (*opt.component < 0 || *opt.component >= static_cast<int>(comps.size())))
        throw std::out_of_range("unknown component id " + std::to_string(*opt.component));

    const Int pad = std::max(lat.m(), lat.n());
    Int lo = -pad, hi = pad;
    if (auto r = cfg.support_weight_range()) lo = r->first - pad, hi = r->second + pad;
    sc.ybot = std::numeric_limits<Int>::max();
    sc.ytop = std::numeric_limits<Int>::min();
    for (Int x = 1; x <= lat.m(); ++x) {
        sc.ybot = std::min(sc.ybot, -floor_div(-(lo + lat.n() * x), lat.m()));
        sc.ytop = std::max(sc.ytop, floor_div(hi + lat.n() * x, lat.m()));
    }

    for (Int y = sc.ybot; y <= sc.ytop; ++y) {
        for (Int x = 1; x <= lat.m(); ++x) {
            Int w = lat.face_weight({x, y});
            for (const auto& c : comps)
                if (c.contains(w)) sc.label[{x, y}] = id_char(c.id);
        }
    }
    for (const auto& c : comps) {
        if (!c.finite()) continue;
        if (opt.component && c.id != *opt.component) continue;
        auto inner = internal_elements(cfg, c);
        auto ov = overlay(cfg, inner, opt.involution);
        for (const auto& [key, s] : ov.signs) sc.red[key] = s < 0;
        if (opt.component) {
            for (const auto& sub : subcomponents(cfg, c, ov))
                for (Int w : sub.weights) {
                    FaceRef f = lat.face_at_weight(w);
                    // Move the representative into the drawn strip.
                    Int k = floor_div(f.x - 1, lat.m());
                    f = {f.x - k * lat.m(), f.y - k * lat.n()};
                    sc.hatch[f] = sub.color;
                }
        }
    }
    return sc;
}

inline bool is_red(const Scene& sc, const Lattice& lat, EdgeRef e) {
    auto it = sc.red.find({index_of(e.orientation), lat.edge_midpoint2(e)});
    return it != sc.red.end() && it->second;
}

}  // namespace detail

inline std::string render_ascii(const Configuration& cfg, const RenderOptions& opt = {}) {
    const Lattice& lat = cfg.lattice();
    auto sc = detail::make_scene(cfg, opt);
    const Int rows = 2 * (sc.ytop - sc.ybot + 1) + 1;
    const Int cols = 4 * lat.m() + 1;
    std::vector<std::string> canvas(static_cast<std::size_t>(rows), std::string(static_cast<std::size_t>(cols), ' '));
    auto put = [&](Int r, Int c, char ch) { canvas[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = ch; };
    auto row_of_vertex = [&](Int y) { return 2 * (sc.ytop - y); };

    for (Int y = sc.ybot - 1; y <= sc.ytop; ++y)
        for (Int x = 0; x <= lat.m(); ++x) put(row_of_vertex(y), 4 * x, '.');
    for (Int y = sc.ybot; y <= sc.ytop; ++y) {
        for (Int x = 0; x <= lat.m(); ++x) {
            EdgeRef e = EdgeRef::V(x, y);
            Int k = cfg.mult(e);
            Int r = row_of_vertex(y) + 1;
            if (k > 0) {
                put(r, 4 * x, k == 1 ? '|' : static_cast<char>('0' + std::min<Int>(k, 9)));
            } else if (detail::is_red(sc, lat, e)) {
                put(r, 4 * x, ':');
            }
        }
        for (Int x = 1; x <= lat.m(); ++x) {
            Int r = row_of_vertex(y) + 1;
            auto hit = sc.hatch.find({x, y});
            if (hit != sc.hatch.end()) {
                char ch = hit->second > 0 ? '/' : '\\';
                for (Int c = 4 * x - 3; c <= 4 * x - 1; ++c) put(r, c, ch);
            } else if (!opt.component) {
                put(r, 4 * x - 2, sc.label.at({x, y}));
            }
        }
    }
    for (Int y = sc.ybot - 1; y <= sc.ytop; ++y) {
        for (Int x = 1; x <= lat.m(); ++x) {
            EdgeRef e = EdgeRef::H(x, y);
            Int k = cfg.mult(e);
            Int r = row_of_vertex(y);
            if (k > 0) {
                for (Int c = 4 * x - 3; c <= 4 * x - 1; ++c) put(r, c, '=');
                if (k > 1) put(r, 4 * x - 2, static_cast<char>('0' + std::min<Int>(k, 9)));
            } else if (detail::is_red(sc, lat, e)) {
                put(r, 4 * x - 3, '-');
                put(r, 4 * x - 1, '-');
            }
        }
    }

    std::ostringstream os;
    os << "period (" << lat.m() << "," << lat.n() << "), faces x = 1.." << lat.m() << ", y = " << sc.ybot
       << ".." << sc.ytop << '\n';
    for (Int r = 0; r < rows; ++r) {
        if (r % 2 == 1) {
            Int y = sc.ytop - r / 2;
            std::string lab = std::to_string(y);
            os << std::string(lab.size() < 5 ? 5 - lab.size() : 0, ' ') << lab << "  ";
        } else {
            os << "       ";
        }
        std::string s = canvas[static_cast<std::size_t>(r)];
        s.erase(s.find_last_not_of(' ') + 1);
        os << s << '\n';
    }
    os << "legend: | === configuration (digit = multiplicity), : - - red overlay edge, ";
    if (opt.component) {
        os << "/// and \\\\\\ subcomponent colors +1 and -1 of component " << *opt.component << '\n';
    } else {
        os << "face labels = component ids\n";
    }
    return os.str();
}

inline std::string render_svg(const Configuration& cfg, const RenderOptions& opt = {}) {
    const Lattice& lat = cfg.lattice();
    auto sc = detail::make_scene(cfg, opt);
    const int s = 40, margin = 30;
    const Int height = sc.ytop - sc.ybot + 2;
    auto px = [&](Int x) { return margin + s * x; };
    auto py = [&](Int y) { return margin + s * (sc.ytop - y); };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << 2 * margin + s * lat.m()
       << "\" height=\"" << 2 * margin + s * (height - 1) << "\">\n"
       << "<defs>\n"
       << "<pattern id=\"hatch-plus\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\">"
          "<path d=\"M0,8 L8,0\" stroke=\"#3060c0\" stroke-width=\"1\"/></pattern>\n"
       << "<pattern id=\"hatch-minus\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\">"
          "<path d=\"M0,0 L8,8\" stroke=\"#c06030\" stroke-width=\"1\"/></pattern>\n"
       << "</defs>\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& [f, color] : sc.hatch)
        os << "<rect x=\"" << px(f.x - 1) << "\" y=\"" << py(f.y) << "\" width=\"" << s << "\" height=\"" << s
           << "\" fill=\"url(#hatch-" << (color > 0 ? "plus" : "minus") << ")\"/>\n";
    if (!opt.component) {
        for (const auto& [f, ch] : sc.label)
            os << "<text x=\"" << px(f.x) - s / 2 << "\" y=\"" << py(f.y) + s / 2 + 4
               << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#808080\" text-anchor=\"middle\">" << ch
               << "</text>\n";
    }
    auto line = [&](Int x1, Int y1, Int x2, Int y2, const std::string& style) {
        os << "<line x1=\"" << px(x1) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(x2) << "\" y2=\"" << py(y2)
           << "\" " << style << "/>\n";
    };
    const std::string grid = "stroke=\"#d0d0d0\" stroke-width=\"1\"";
    const std::string red = "stroke=\"#e02020\" stroke-width=\"2\" stroke-dasharray=\"6,4\"";
    auto solid = [](Int k) {
        return "stroke=\"black\" stroke-width=\"" + std::to_string(2 + 2 * (k - 1)) + "\"";
    };
    for (Int y = sc.ybot; y <= sc.ytop; ++y) {
        for (Int x = 0; x <= lat.m(); ++x) {
            EdgeRef e = EdgeRef::V(x, y);
            Int k = cfg.mult(e);
            line(x, y - 1, x, y, k > 0 ? solid(k) : detail::is_red(sc, lat, e) ? red : grid);
        }
    }
    for (Int y = sc.ybot - 1; y <= sc.ytop; ++y) {
        for (Int x = 1; x <= lat.m(); ++x) {
            EdgeRef e = EdgeRef::H(x, y);
            Int k = cfg.mult(e);
            line(x - 1, y, x, y, k > 0 ? solid(k) : detail::is_red(sc, lat, e) ? red : grid);
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace sixv
