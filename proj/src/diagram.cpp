#include "jacobi/diagram.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

namespace jacobi {

std::string color_name(Color c) {
    if (c == 0) throw DiagramError("color 0 is invalid");
    return std::to_string(color_index(c)) + (c > 0 ? "+" : "-");
}

Color parse_color_token(const std::string& tok) {
    if (tok.size() < 2) throw DiagramError("bad color token '" + tok + "'");
    char s = tok.back();
    if (s != '+' && s != '-') throw DiagramError("bad color sign in '" + tok + "'");
    int idx = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size() - 1, idx);
    if (ec != std::errc() || p != tok.data() + tok.size() - 1 || idx <= 0)
        throw DiagramError("bad color index in '" + tok + "'");
    return s == '+' ? idx : -idx;
}

void Diagram::check() const {
    int n = num_darts();
    if (static_cast<int>(mate.size()) != n)
        throw DiagramError("mate size mismatch");
    for (int d = 0; d < n; ++d) {
        if (mate[d] < 0 || mate[d] >= n || mate[d] == d)
            throw DiagramError("mate out of range or fixed point");
        if (mate[mate[d]] != d)
            throw DiagramError("mate is not an involution");
    }
    for (Color c : legs)
        if (c == 0) throw DiagramError("leg color 0");
}

bool Diagram::has_self_loop() const {
    for (int d = 0; d < 3 * T; ++d)
        if (!is_leg_dart(mate[d]) && dart_vertex(mate[d]) == dart_vertex(d) && mate[d] != d)
            return true;
    return false;
}

std::vector<int> Diagram::component_of_vertex() const {
    int U = static_cast<int>(legs.size());
    int V = T + U;
    std::vector<int> comp(V, -1);
    auto vertex_of_dart = [&](int d) { return is_leg_dart(d) ? T + leg_of_dart(d) : dart_vertex(d); };
    int nc = 0;
    for (int s = 0; s < V; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            std::vector<int> ds;
            if (v < T) ds = {3 * v, 3 * v + 1, 3 * v + 2};
            else ds = {leg_dart(v - T)};
            for (int d : ds) {
                int w = vertex_of_dart(mate[d]);
                if (comp[w] == -1) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
        }
        ++nc;
    }
    return comp;
}

int Diagram::num_components() const {
    auto c = component_of_vertex();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

int Diagram::b1() const {
    int V = T + static_cast<int>(legs.size());
    return num_edges() - V + num_components();
}

Diagram reverse_vertex(const Diagram& d, int v) {
    Diagram r = d;
    auto pi = [&](int x) {
        if (x == 3 * v + 1) return 3 * v + 2;
        if (x == 3 * v + 2) return 3 * v + 1;
        return x;
    };
    for (int x = 0; x < d.num_darts(); ++x) r.mate[pi(x)] = pi(d.mate[x]);
    return r;
}

// ---------------------------------------------------------------------------
// Canonicalization: per connected component, minimize a certificate over all
// rooted traversals.  A traversal fixes a label order on the trivalent
// vertices and an ordered arrangement of each vertex's darts which is a
// rotation of the stored cyclic order (flip parity tracked for AS signs).
// ---------------------------------------------------------------------------

namespace {

struct ComponentCanon {
    std::vector<int32_t> block;  // [T, U, mate-ids(3T), colors(U)]
    bool plus_seen = false, minus_seen = false;
};

struct CompSearch {
    const Diagram* d;
    std::vector<int> tris;  // original tri vertices of this component
    int Tc = 0;

    std::vector<int32_t> best;
    bool have_best = false;
    bool plus_seen = false, minus_seen = false;

    // per-run state
    std::vector<int> vlabel;                   // orig tri vertex -> label (-1 unset)
    std::vector<std::array<int, 3>> arr;       // label -> ordered original darts
    std::vector<int32_t> cert;
    std::vector<Color> legcols;

    int32_t cyc_next(int od, int step, bool flip) const {
        int v = od / 3, i = od % 3;
        int j = flip ? (i - step + 6) % 3 : (i + step) % 3;
        return 3 * v + j;
    }

    void run() {
        for (int r : tris)
            for (int f0 = 0; f0 < 3; ++f0)
                for (int flip = 0; flip < 2; ++flip) {
                    for (int t : tris) vlabel[t] = -1;
                    arr.clear();
                    cert.clear();
                    legcols.clear();
                    int root_first = 3 * r + f0;
                    vlabel[r] = 0;
                    arr.push_back({root_first, static_cast<int>(cyc_next(root_first, 1, flip)),
                                   static_cast<int>(cyc_next(root_first, 2, flip))});
                    dfs(0, flip ? -1 : 1, false);
                }
    }

    void dfs(int k, int sign, bool already_less) {
        if (k == 3 * Tc) {
            finish(sign, already_less);
            return;
        }
        int od = arr[k / 3][k % 3];
        int om = d->mate[od];
        int32_t entry;
        bool new_vertex = false;
        if (d->is_leg_dart(om)) {
            entry = 3 * Tc + static_cast<int32_t>(legcols.size());
        } else {
            int w = om / 3;
            if (vlabel[w] >= 0) {
                int L = vlabel[w];
                int pos = 0;
                while (arr[L][pos] != om) ++pos;
                entry = 3 * L + pos;
            } else {
                entry = 3 * static_cast<int32_t>(arr.size());
                new_vertex = true;
            }
        }
        if (have_best && !already_less) {
            if (entry > best[2 + k]) return;
            if (entry < best[2 + k]) already_less = true;
        }
        cert.push_back(entry);
        if (d->is_leg_dart(om)) legcols.push_back(d->legs[d->leg_of_dart(om)]);

        if (!new_vertex) {
            dfs(k + 1, sign, already_less);
        } else {
            int w = om / 3;
            int L = static_cast<int>(arr.size());
            for (int flip = 0; flip < 2; ++flip) {
                vlabel[w] = L;
                arr.push_back({om, static_cast<int>(cyc_next(om, 1, flip)),
                               static_cast<int>(cyc_next(om, 2, flip))});
                dfs(k + 1, flip ? -sign : sign, already_less);
                arr.pop_back();
                vlabel[w] = -1;
            }
        }
        cert.pop_back();
        if (d->is_leg_dart(om)) legcols.pop_back();
    }

    void finish(int sign, bool already_less) {
        // full candidate block: [T, U, mates..., colors...]
        if (have_best && !already_less) {
            // mates tie with best; compare colors
            for (size_t i = 0; i < legcols.size(); ++i) {
                int32_t c = legcols[i];
                int32_t b = best[2 + 3 * Tc + i];
                if (c > b) return;
                if (c < b) { already_less = true; break; }
            }
        }
        if (have_best && !already_less) {  // equal to best
            (sign > 0 ? plus_seen : minus_seen) = true;
            return;
        }
        best.clear();
        best.push_back(Tc);
        best.push_back(static_cast<int32_t>(legcols.size()));
        best.insert(best.end(), cert.begin(), cert.end());
        for (Color c : legcols) best.push_back(c);
        have_best = true;
        plus_seen = sign > 0;
        minus_seen = sign < 0;
    }
};

ComponentCanon canon_component(const Diagram& d, const std::vector<int>& tris,
                               const std::vector<int>& legdarts) {
    ComponentCanon out;
    if (tris.empty()) {
        // strut component: two legs joined by an edge
        if (legdarts.size() != 2) throw DiagramError("component without trivalent vertices is not a strut");
        Color a = d.legs[d.leg_of_dart(legdarts[0])];
        Color b = d.legs[d.leg_of_dart(legdarts[1])];
        if (b < a) std::swap(a, b);
        out.block = {0, 2, a, b};
        out.plus_seen = true;
        return out;
    }
    CompSearch s;
    s.d = &d;
    s.tris = tris;
    s.Tc = static_cast<int>(tris.size());
    s.vlabel.assign(d.T, -1);
    s.run();
    out.block = std::move(s.best);
    out.plus_seen = s.plus_seen;
    out.minus_seen = s.minus_seen;
    return out;
}

}  // namespace

CanonResult canonicalize(const Diagram& d) {
    d.check();
    auto comp = d.component_of_vertex();
    int U = static_cast<int>(d.legs.size());
    int nc = (d.T + U) == 0 ? 0 : 1 + *std::max_element(comp.begin(), comp.end());

    std::vector<std::vector<int>> ctris(nc), clegs(nc);
    for (int v = 0; v < d.T; ++v) ctris[comp[v]].push_back(v);
    for (int u = 0; u < U; ++u) clegs[comp[d.T + u]].push_back(d.leg_dart(u));

    std::vector<ComponentCanon> parts;
    parts.reserve(nc);
    int sign = 1;
    bool asym = false;
    for (int c = 0; c < nc; ++c) {
        ComponentCanon cc = canon_component(d, ctris[c], clegs[c]);
        if (cc.plus_seen && cc.minus_seen) asym = true;
        if (!cc.plus_seen && cc.minus_seen) sign = -sign;
        parts.push_back(std::move(cc));
    }
    std::sort(parts.begin(), parts.end(),
              [](const ComponentCanon& a, const ComponentCanon& b) { return a.block < b.block; });

    CanonResult res;
    res.canon.as_symmetric = asym;
    res.sign = asym ? 1 : sign;
    res.canon.cert.push_back(nc);
    for (auto& p : parts)
        res.canon.cert.insert(res.canon.cert.end(), p.block.begin(), p.block.end());
    return res;
}

Diagram CanonicalDiagram::diagram() const {
    Diagram d;
    size_t i = 1;  // skip ncomp
    struct Block { int T, U; std::vector<int32_t> mates; std::vector<int32_t> cols; };
    std::vector<Block> blocks;
    while (i < cert.size()) {
        Block b;
        b.T = cert[i++];
        b.U = cert[i++];
        if (b.T == 0) {
            b.cols = {cert[i], cert[i + 1]};
            i += 2;
        } else {
            b.mates.assign(cert.begin() + i, cert.begin() + i + 3 * b.T);
            i += 3 * b.T;
            b.cols.assign(cert.begin() + i, cert.begin() + i + b.U);
            i += b.U;
        }
        blocks.push_back(std::move(b));
    }
    int totT = 0;
    for (auto& b : blocks) totT += b.T;
    d.T = totT;
    int triBase = 0, legBase = 0;
    std::vector<std::pair<int, int>> edges;  // global darts
    for (auto& b : blocks) {
        auto glob = [&](int32_t local) {
            if (local < 3 * b.T) return 3 * triBase + static_cast<int>(local);
            return 3 * totT + legBase + (static_cast<int>(local) - 3 * b.T);
        };
        if (b.T == 0) {
            int u0 = 3 * totT + legBase, u1 = u0 + 1;
            edges.emplace_back(u0, u1);
        } else {
            for (int k = 0; k < 3 * b.T; ++k) {
                int a = 3 * triBase + k, m = glob(b.mates[k]);
                if (a < m) edges.emplace_back(a, m);
            }
        }
        for (int32_t c : b.cols) d.legs.push_back(c);
        triBase += b.T;
        legBase += b.U;
    }
    d.mate.assign(d.num_darts(), -1);
    for (auto [a, b] : edges) {
        d.mate[a] = b;
        d.mate[b] = a;
    }
    return d;
}

int CanonicalDiagram::ideg() const {
    int i = 1, T = 0;
    size_t p = 1;
    (void)i;
    while (p < cert.size()) {
        int t = cert[p], u = cert[p + 1];
        T += t;
        p += 2 + (t == 0 ? 2 : 3 * t + u);
    }
    return T;
}

int CanonicalDiagram::num_legs() const {
    size_t p = 1;
    int U = 0;
    while (p < cert.size()) {
        int t = cert[p], u = cert[p + 1];
        U += u;
        p += 2 + (t == 0 ? 2 : 3 * t + u);
    }
    return U;
}

std::vector<Color> CanonicalDiagram::leg_colors() const {
    auto d = diagram();
    return d.legs;
}

std::string diagram_to_json(const Diagram& d) {
    nlohmann::json j;
    j["tri"] = nlohmann::json::array();
    for (int v = 0; v < d.T; ++v) j["tri"].push_back({3 * v, 3 * v + 1, 3 * v + 2});
    j["uni"] = nlohmann::json::array();
    for (size_t u = 0; u < d.legs.size(); ++u)
        j["uni"].push_back({d.leg_dart(static_cast<int>(u)), color_name(d.legs[u])});
    j["edges"] = nlohmann::json::array();
    for (int a = 0; a < d.num_darts(); ++a)
        if (a < d.mate[a]) j["edges"].push_back({a, d.mate[a]});
    return j.dump();
}

Diagram diagram_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Diagram d;
    d.T = static_cast<int>(j.at("tri").size());
    std::vector<std::pair<int64_t, int>> dartmap;  // (external dart, internal dart)
    int slot = 0;
    for (auto& t : j.at("tri")) {
        if (t.size() != 3) throw DiagramError("tri vertex needs 3 half-edges");
        for (auto& h : t) dartmap.emplace_back(h.get<int64_t>(), slot++);
    }
    for (auto& u : j.at("uni")) {
        d.legs.push_back(parse_color_token(u.at(1).get<std::string>()));
        dartmap.emplace_back(u.at(0).get<int64_t>(), slot++);
    }
    std::sort(dartmap.begin(), dartmap.end());
    for (size_t i = 1; i < dartmap.size(); ++i)
        if (dartmap[i].first == dartmap[i - 1].first)
            throw DiagramError("half-edge appears in two vertex records");
    auto lookup = [&](int64_t h) {
        auto it = std::lower_bound(dartmap.begin(), dartmap.end(), std::make_pair(h, -1));
        if (it == dartmap.end() || it->first != h) throw DiagramError("edge references unknown half-edge");
        return it->second;
    };
    d.mate.assign(d.num_darts(), -1);
    for (auto& e : j.at("edges")) {
        int a = lookup(e.at(0).get<int64_t>()), b = lookup(e.at(1).get<int64_t>());
        if (d.mate[a] != -1 || d.mate[b] != -1 || a == b) throw DiagramError("bad edge list");
        d.mate[a] = b;
        d.mate[b] = a;
    }
    d.check();
    return d;
}

}  // namespace jacobi
