#include "wgkm_cli/commands.hpp"

#include <algorithm>
#include <filesystem>

#include "wgkm/gkm.hpp"
#include "wgkm/symmetric_space.hpp"
#include "wgkm/weyl.hpp"
#include "wgkm/wonderful.hpp"

namespace wgkm::cli {

namespace fs = std::filesystem;

int exit_code_of(ErrorKind k) {
    switch (k) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Computation: return 2;
    case ErrorKind::Verification: return 3;
    }
    return 2;
}

namespace {

json header(const SymmetricSpace& sp) {
    return {{"schema", "wgkm/1"}, {"space", sp.name()}};
}

Bundle bundle_of(const std::string& s) {
    if (s == "T") return Bundle::Tangent;
    if (s == "S") return Bundle::Log;
    throw Error(ErrorKind::Usage, "unknown bundle '" + s + "' (expected T or S)");
}

const GkmGraph& graph_of(const WonderfulVariety& wv, const std::string& variety) {
    if (variety == "X") return wv.x_graph();
    if (variety == "Y") return wv.y_graph();
    throw Error(ErrorKind::Usage, "unknown variety '" + variety + "' (expected X or Y)");
}

/** Resolves the truncation degree for full-space series: beyond rank-4 ambient
 *  lattices the untruncated expansions exceed the exact-arithmetic budget, so an
 *  explicit --max-degree is required there. */
std::uint32_t resolve_cap(const SymmetricSpace& sp, std::optional<std::uint32_t> md,
                          const std::string& what) {
    const auto dim = static_cast<std::uint32_t>(sp.dim_x());
    if (!md) {
        require(sp.rank_g() <= 4, ErrorKind::Usage,
                what + " on " + sp.name() + " needs an explicit --max-degree: the full degree-" +
                    std::to_string(dim) + " expansion on a rank-" + std::to_string(sp.rank_g()) +
                    " ambient lattice exceeds the exact-arithmetic budget");
        return dim;
    }
    return std::min(*md, dim);
}

std::string at_pos(const ExprAtom& a) {
    return a.to_string() + " (position " + std::to_string(a.source_pos) + ")";
}

/** A graded Chern part is exact, but it inherits the tight series truncation it was
 *  cut from, and products combine truncation bounds by minimum; restate it as valid
 *  up to the full graph dimension so higher-degree products survive. */
EqClass rebound(const EqClass& c) {
    EqClass out(c.graph());
    for (int v = 0; v < c.graph().num_vertices(); ++v) out.set(v, c.at(v).without_truncation());
    return out;
}

EqClass atom_class(const ExprAtom& a, const WonderfulVariety& wv, bool slice) {
    const SymmetricSpace& sp = wv.space();
    switch (a.kind) {
    case ExprAtom::Kind::Chern: {
        const auto k = static_cast<std::uint32_t>(a.index);
        EqClass total = slice ? wv.chern_x_on_y(a.bundle, k) : wv.chern_x(a.bundle, k);
        return rebound(total.graded_part(k));
    }
    case ExprAtom::Kind::Todd:
        return slice ? wv.todd_x_on_y(a.bundle) : wv.todd_x(a.bundle);
    case ExprAtom::Kind::BoundaryX: {
        require(a.index <= sp.rank_restricted(), ErrorKind::Usage,
                at_pos(a) + ": this space has " + std::to_string(sp.rank_restricted()) +
                    " boundary divisor classes (X1..X" + std::to_string(sp.rank_restricted()) +
                    ")");
        EqClass c = wv.boundary_x(a.index - 1);
        return slice ? wv.restrict_to_y(c) : c;
    }
    case ExprAtom::Kind::BoundaryY: {
        require(a.index <= sp.rank_restricted(), ErrorKind::Usage,
                at_pos(a) + ": this space has " + std::to_string(sp.rank_restricted()) +
                    " slice divisor families (Y1..Y" + std::to_string(sp.rank_restricted()) +
                    ")");
        const WeylGroup& wr = sp.weyl_restricted();
        int elem = wr.element_of_name(a.element);
        require(elem >= 0, ErrorKind::Usage,
                at_pos(a) + ": unknown restricted Weyl element '" + a.element + "'");
        int pos = sp.divisor_position(a.index - 1, elem);
        if (pos < 0) {
            std::string valid;
            for (int w : sp.w_upper(a.index - 1)) {
                if (!valid.empty()) valid += ", ";
                valid += wr.name(w);
            }
            throw Error(ErrorKind::Usage, at_pos(a) + ": '" + a.element +
                                              "' is not a minimal coset representative here; "
                                              "valid elements: " +
                                              valid);
        }
        return wv.boundary_y(pos);
    }
    case ExprAtom::Kind::Line:
        require(a.index < sp.num_betas(), ErrorKind::Usage,
                at_pos(a) + ": this space has " + std::to_string(sp.num_betas()) +
                    " line bundle classes (L(0)..L(" + std::to_string(sp.num_betas() - 1) +
                    "))");
        return wv.l_beta_direct(a.index);
    }
    throw Error(ErrorKind::Computation, "unhandled expression atom");
}

} // namespace

EqClass evaluate_expr(const ClassExpr& expr, const WonderfulVariety& wv, bool on_slice) {
    const GkmGraph& g = on_slice ? wv.y_graph() : wv.x_graph();
    EqClass acc = EqClass::constant(g, Rat(1));
    for (const ExprTerm& t : expr.terms)
        acc = acc * atom_class(t.atom, wv, on_slice).pow(static_cast<uint32_t>(t.exponent));
    return acc;
}

CommandResult cmd_describe(const std::string& space) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    SymmetricSpace::Report r = sp.report();
    json body = header(sp);
    body["types"] = {{"G", r.type_g},
                     {"L", r.type_l},
                     {"K", r.type_k},
                     {"K_minus_L", r.type_k_minus_l},
                     {"G_over_K", r.type_restricted}};
    body["ranks"] = {{"G", r.rank_g}, {"K", r.rank_k}, {"G_over_K", r.rank_restricted}};
    body["weyl_orders"] = {{"W_G", r.order_w_g},
                           {"W_K", r.order_w_k},
                           {"W_L", r.order_w_l},
                           {"W_G_over_K", r.order_w_gk}};
    body["fixed_points"] = {{"X", r.x_vertices}, {"Y", r.y_vertices}};
    body["dim"] = {{"X", r.dim_x}, {"Y", r.dim_y}};
    body["line_bundles"] = r.num_betas;
    body["slice_divisors"] = r.num_divisors;
    return {body, 0};
}

CommandResult cmd_gkm(const std::string& space, const std::string& variety) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    json body = header(sp);
    body["variety"] = variety;
    body.update(graph_json(graph_of(wv, variety)));
    return {body, 0};
}

CommandResult cmd_chern(const std::string& space, const std::string& bundle,
                        const std::string& mode, std::optional<std::uint32_t> max_degree) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    Bundle b = bundle_of(bundle);
    json body = header(sp);
    body["bundle"] = bundle;
    body["mode"] = mode;
    if (mode == "direct") {
        std::uint32_t cap = resolve_cap(sp, max_degree, "chern --mode direct");
        body["variety"] = "X";
        body["max_degree"] = cap;
        body["values"] = class_json(wv.chern_x(b, cap));
    } else if (mode == "formula") {
        auto dim_y = static_cast<std::uint32_t>(sp.dim_y());
        std::uint32_t cap = std::min(max_degree.value_or(dim_y), dim_y);
        body["variety"] = "Y";
        body["max_degree"] = cap;
        body["values"] = class_json(wv.chern_y_formula(b, cap));
    } else {
        throw Error(ErrorKind::Usage, "unknown mode '" + mode + "' (expected direct or formula)");
    }
    return {body, 0};
}

CommandResult cmd_todd(const std::string& space, const std::string& bundle,
                       std::optional<std::uint32_t> max_degree) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    Bundle b = bundle_of(bundle);
    std::uint32_t cap = resolve_cap(sp, max_degree, "todd");
    json body = header(sp);
    body["bundle"] = bundle;
    body["variety"] = "X";
    body["max_degree"] = cap;
    body["values"] = class_json(wv.todd_x(b, cap));
    return {body, 0};
}

CommandResult cmd_integrate(const std::string& space, const std::string& expr_text) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    ClassExpr expr = ClassExpr::parse(expr_text);
    const bool slice = expr.on_slice();
    const GkmGraph& g = slice ? wv.y_graph() : wv.x_graph();
    std::optional<int> deg = expr.degree();
    if (deg) {
        require(*deg == g.dim(), ErrorKind::Usage,
                "expression degree " + std::to_string(*deg) + " does not match the dimension " +
                    std::to_string(g.dim()) + " of the integration domain " +
                    (slice ? "Y" : "X"));
    } else if (!slice) {
        require(sp.rank_g() <= 4, ErrorKind::Usage,
                "Todd atoms integrate over X at full degree " + std::to_string(g.dim()) +
                    ", which exceeds the exact-arithmetic budget on a rank-" +
                    std::to_string(sp.rank_g()) + " ambient lattice");
    }
    Rat value = localize_integral(evaluate_expr(expr, wv, slice));
    json body = header(sp);
    body["expr"] = expr.to_string();
    body["domain"] = slice ? "Y" : "X";
    body["dim"] = g.dim();
    body["degree"] = deg ? json(*deg) : json(nullptr);
    body["integral"] = rat_json(value);
    return {body, 0};
}

CommandResult cmd_euler(const std::string& space) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    json body = header(sp);
    body["vertices"] = wv.x_graph().num_vertices();
    body["euler"] = euler_characteristic(wv.x_graph());
    return {body, 0};
}

CommandResult cmd_betti(const std::string& space, const std::string& variety) {
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    const GkmGraph& g = graph_of(wv, variety);
    json body = header(sp);
    body["variety"] = variety;
    body["dim"] = g.dim();
    body["vertices"] = g.num_vertices();
    body["betti"] = bb_betti(g);
    return {body, 0};
}

CommandResult cmd_verify(const std::string& space, const std::string& level) {
    require(level == "fast" || level == "full", ErrorKind::Usage,
            "unknown level '" + level + "' (expected fast or full)");
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    std::vector<CheckResult> checks = run_verification(wv, level == "full");
    json rows = json::array();
    bool all_passed = true;
    for (const CheckResult& c : checks) {
        rows.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"warning", c.warning},
                        {"detail", c.detail}});
        all_passed = all_passed && c.passed;
    }
    json body = header(sp);
    body["level"] = level;
    body["passed"] = all_passed;
    body["checks"] = rows;
    return {body, all_passed ? 0 : 3};
}

CommandResult cmd_dims(const std::string& space, int max_degree) {
    require(max_degree >= 0, ErrorKind::Usage, "--max-degree must be nonnegative");
    SymmetricSpace sp = SymmetricSpace::build(space);
    WonderfulVariety wv(sp);
    json rows = json::array();
    for (int d = 0; d <= max_degree; ++d) {
        WonderfulVariety::GradedDim gd = wv.graded_dimension(d);
        rows.push_back({{"degree", d},
                        {"via_x", gd.via_x},
                        {"via_y", gd.via_y},
                        {"agree", gd.via_x == gd.via_y}});
    }
    json body = header(sp);
    body["max_degree"] = max_degree;
    body["dims"] = rows;
    return {body, 0};
}

CommandResult cmd_cache_rebuild(const std::string& space) {
    // A fresh build below either misses the cache (and re-enumerates + rewrites) or
    // loads it; in the second case the file is removed first so enumeration reruns.
    std::string path;
    long order = 0;
    {
        SymmetricSpace sp = SymmetricSpace::build(space);
        path = sp.weyl_g().cache_path();
        order = sp.order_w_g();
        if (!sp.weyl_g().loaded_from_cache()) {
            json body = header(sp);
            body["action"] = "rebuild";
            body["cache_dir"] = WeylGroup::cache_directory();
            body["cache_file"] = path.empty() ? json(nullptr) : json(path);
            body["weyl_order"] = order;
            body["cached"] = !path.empty() && fs::exists(path);
            return {body, 0};
        }
    }
    fs::remove(path);
    SymmetricSpace sp = SymmetricSpace::build(space);
    internal_check(!sp.weyl_g().loaded_from_cache(), "cache rebuild still read the old file");
    json body = header(sp);
    body["action"] = "rebuild";
    body["cache_dir"] = WeylGroup::cache_directory();
    body["cache_file"] = path.empty() ? json(nullptr) : json(path);
    body["weyl_order"] = order;
    body["cached"] = !path.empty() && fs::exists(path);
    return {body, 0};
}

CommandResult cmd_cache_clear() {
    std::string dir = WeylGroup::cache_directory();
    int removed = 0;
    if (!dir.empty() && fs::exists(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            std::string name = entry.path().filename().string();
            if (name.rfind("weyl-", 0) == 0 && name.size() > 4 &&
                name.compare(name.size() - 4, 4, ".bin") == 0) {
                fs::remove(entry.path());
                ++removed;
            }
        }
    }
    json body = {{"schema", "wgkm/1"},
                 {"action", "clear"},
                 {"cache_dir", dir},
                 {"removed", removed}};
    return {body, 0};
}

} // namespace wgkm::cli
