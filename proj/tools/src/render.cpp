#include "wgkm_cli/render.hpp"

namespace wgkm::cli {

json rat_json(const Rat& q) {
    if (rat_fits_json_int(q)) return rat_to_int64(q);
    return rat_to_string(q);
}

json character_json(const Character& chi) {
    json out = json::array();
    for (Int x : chi.coords()) out.push_back(static_cast<std::int64_t>(x));
    return out;
}

json polynomial_json(const Polynomial& f) {
    json out = json::array();
    const auto& terms = f.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        json exps = json::array();
        for (int v = 0; v < f.nvars(); ++v) exps.push_back(it->first.exponent(v));
        out.push_back(json::array({rat_json(it->second), exps}));
    }
    return out;
}

json class_json(const EqClass& c) {
    json out = json::array();
    for (int v = 0; v < c.graph().num_vertices(); ++v)
        out.push_back({{"vertex", c.graph().vertex(v).label},
                       {"value", polynomial_json(c.at(v))}});
    return out;
}

json graph_json(const GkmGraph& g) {
    json vertices = json::array();
    for (int v = 0; v < g.num_vertices(); ++v) {
        json tangent = json::array();
        for (const Character& chi : g.vertex(v).tangent) tangent.push_back(character_json(chi));
        vertices.push_back({{"label", g.vertex(v).label}, {"tangent", tangent}});
    }
    json edges = json::array();
    for (int e = 0; e < g.num_edges(); ++e) {
        const GkmEdge& ed = g.edge(e);
        edges.push_back({{"u", g.vertex(ed.u).label},
                         {"v", g.vertex(ed.v).label},
                         {"weight", character_json(ed.weight)}});
    }
    return {{"nvars", g.nvars()},
            {"dim", g.dim()},
            {"vertices", vertices},
            {"edges", edges}};
}

} // namespace wgkm::cli
