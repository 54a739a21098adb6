#include "wgkm/gkm.hpp"

#include <algorithm>
#include <sstream>

#include "wgkm/error.hpp"
#include "wgkm/series.hpp"

namespace wgkm {

namespace {

std::string char_str(const Character& c) {
    std::ostringstream os;
    os << "(";
    for (int j = 0; j < c.rank(); ++j) {
        if (j) os << ",";
        os << c[j];
    }
    os << ")";
    return os.str();
}

RatVec point_at(long t, int nvars) {
    RatVec p(nvars);
    Rat powr(t);
    for (int j = 0; j < nvars; ++j) {
        p[j] = powr;
        powr *= t;
    }
    return p;
}

Rat char_eval(const Character& c, const RatVec& p) {
    Rat acc(0);
    for (int j = 0; j < c.rank(); ++j)
        if (c[j] != 0) acc += Rat(static_cast<long>(c[j])) * p[j];
    return acc;
}

bool all_weights_nonzero(const GkmGraph& g, const RatVec& p) {
    for (int v = 0; v < g.num_vertices(); ++v)
        for (const Character& chi : g.vertex(v).tangent)
            if (char_eval(chi, p) == 0) return false;
    return true;
}

} // namespace

int GkmGraph::add_vertex(std::string label, std::vector<Character> tangent) {
    internal_check(!finalized_, "add_vertex after finalize");
    int id = static_cast<int>(vertices_.size());
    auto [it, inserted] = by_label_.emplace(label, id);
    internal_check(inserted, "duplicate vertex label " + label);
    vertices_.push_back(GkmVertex{std::move(label), std::move(tangent)});
    return id;
}

void GkmGraph::add_edge(int u, int v, const Character& weight) {
    internal_check(!finalized_, "add_edge after finalize");
    internal_check(u != v, "self-loop edge");
    edges_.push_back(GkmEdge{u, v, weight.sign_canonical()});
}

void GkmGraph::finalize() {
    internal_check(!finalized_, "finalize called twice");
    adj_.assign(vertices_.size(), {});
    for (int e = 0; e < num_edges(); ++e) {
        adj_[edges_[e].u].push_back(e);
        adj_[edges_[e].v].push_back(e);
    }
    for (int v = 0; v < num_vertices(); ++v) {
        const GkmVertex& vx = vertices_[v];
        internal_check(static_cast<int>(vx.tangent.size()) == dim_,
                       "vertex " + vx.label + " has " + std::to_string(vx.tangent.size()) +
                           " tangent weights, expected " + std::to_string(dim_));
        for (size_t a = 0; a < vx.tangent.size(); ++a) {
            internal_check(!vx.tangent[a].is_zero(), "zero tangent weight at " + vx.label);
            for (size_t b = a + 1; b < vx.tangent.size(); ++b)
                internal_check(!vx.tangent[a].parallel_up_to_sign(vx.tangent[b]),
                               "parallel tangent weights at vertex " + vx.label + ": " +
                                   char_str(vx.tangent[a]) + " and " + char_str(vx.tangent[b]));
        }
        // The edge weights at a vertex must match its tangent weights one-to-one.
        internal_check(adj_[v].size() == vx.tangent.size(),
                       "vertex " + vx.label + " meets " + std::to_string(adj_[v].size()) +
                           " edges, expected " + std::to_string(vx.tangent.size()));
        std::vector<IntVec> from_edges, from_tangent;
        for (int e : adj_[v]) from_edges.push_back(edges_[e].weight.coords());
        for (const Character& chi : vx.tangent)
            from_tangent.push_back(chi.sign_canonical().coords());
        std::sort(from_edges.begin(), from_edges.end());
        std::sort(from_tangent.begin(), from_tangent.end());
        internal_check(from_edges == from_tangent,
                       "edge weights do not match tangent weights at vertex " + vx.label);
    }
    finalized_ = true;
}

int GkmGraph::vertex_by_label(const std::string& label) const {
    auto it = by_label_.find(label);
    return it == by_label_.end() ? -1 : it->second;
}

EqClass::EqClass(const GkmGraph& g, uint32_t trunc) : g_(&g), trunc_(trunc) {
    internal_check(g.finalized(), "EqClass over unfinalized graph");
    f_.assign(g.num_vertices(), Polynomial(g.nvars(), trunc));
}

EqClass EqClass::constant(const GkmGraph& g, const Rat& c) {
    EqClass r(g);
    for (auto& f : r.f_) f = Polynomial::constant(g.nvars(), c).truncated(r.trunc_);
    return r;
}

void EqClass::set(int v, const Polynomial& f) {
    internal_check(v >= 0 && v < static_cast<int>(f_.size()), "vertex index out of range");
    internal_check(f.nvars() == g_->nvars(), "polynomial variable count mismatch");
    f_[v] = f.truncated(trunc_);
}

EqClass EqClass::operator+(const EqClass& o) const {
    internal_check(g_ == o.g_, "classes over different graphs");
    EqClass r(*g_, std::min(trunc_, o.trunc_));
    for (size_t v = 0; v < f_.size(); ++v) r.f_[v] = (f_[v] + o.f_[v]).truncated(r.trunc_);
    return r;
}

EqClass EqClass::operator-(const EqClass& o) const {
    internal_check(g_ == o.g_, "classes over different graphs");
    EqClass r(*g_, std::min(trunc_, o.trunc_));
    for (size_t v = 0; v < f_.size(); ++v) r.f_[v] = (f_[v] - o.f_[v]).truncated(r.trunc_);
    return r;
}

EqClass EqClass::operator*(const EqClass& o) const {
    internal_check(g_ == o.g_, "classes over different graphs");
    EqClass r(*g_, std::min(trunc_, o.trunc_));
    for (size_t v = 0; v < f_.size(); ++v) r.f_[v] = (f_[v] * o.f_[v]).truncated(r.trunc_);
    return r;
}

EqClass EqClass::scaled(const Rat& c) const {
    EqClass r(*g_, trunc_);
    for (size_t v = 0; v < f_.size(); ++v) r.f_[v] = f_[v].scaled(c);
    return r;
}

EqClass EqClass::pow(uint32_t e) const {
    EqClass r = EqClass::constant(*g_, Rat(1));
    r.trunc_ = trunc_;
    for (size_t v = 0; v < f_.size(); ++v) r.f_[v] = f_[v].pow(e);
    return r;
}

EqClass EqClass::graded_part(uint32_t d) const {
    EqClass r(*g_, trunc_);
    for (size_t v = 0; v < f_.size(); ++v) r.f_[v] = f_[v].homogeneous_part(d);
    return r;
}

bool EqClass::operator==(const EqClass& o) const {
    if (g_ != o.g_) return false;
    for (size_t v = 0; v < f_.size(); ++v)
        if (!(f_[v] == o.f_[v])) return false;
    return true;
}

std::optional<int> EqClass::first_violation() const {
    for (int e = 0; e < g_->num_edges(); ++e) {
        const GkmEdge& ed = g_->edge(e);
        Polynomial d = f_[ed.u] - f_[ed.v];
        if (!divides_linear(d, ed.weight)) return e;
    }
    return std::nullopt;
}

void EqClass::require_valid(const std::string& what) const {
    if (auto e = first_violation()) {
        const GkmEdge& ed = g_->edge(*e);
        throw Error(ErrorKind::Verification,
                    what + " violates the congruence along edge " +
                        g_->vertex(ed.u).label + " -- " + g_->vertex(ed.v).label +
                        " of weight " + char_str(ed.weight));
    }
}

namespace {

Rat localization_sum(const EqClass& c, const RatVec& p) {
    const GkmGraph& g = c.graph();
    Rat total(0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        Rat denom(1);
        for (const Character& chi : g.vertex(v).tangent) denom *= char_eval(chi, p);
        total += c.at(v).eval(p) / denom;
    }
    return total;
}

} // namespace

Rat localize_integral(const EqClass& c) {
    const GkmGraph& g = c.graph();
    internal_check(g.num_vertices() > 0, "integral over empty graph");
    // Only the parts of degree <= dim contribute to the ordinary integral; the
    // higher parts push forward to positive-degree classes and would spoil the
    // constancy of the localization sum.
    EqClass cut(g, static_cast<uint32_t>(g.dim()));
    for (int v = 0; v < g.num_vertices(); ++v) cut.set(v, c.at(v));

    std::vector<Rat> values;
    for (long t = 2; t < 2000 && values.size() < 2; ++t) {
        RatVec p = point_at(t, g.nvars());
        if (!all_weights_nonzero(g, p)) continue;
        values.push_back(localization_sum(cut, p));
    }
    internal_check(values.size() == 2, "could not find two regular evaluation points");
    if (values[0] != values[1])
        throw Error(ErrorKind::Verification,
                    "localization sum is not constant: " + rat_to_string(values[0]) + " vs " +
                        rat_to_string(values[1]) + " (the class is not a valid GKM class)");
    return values[0];
}

std::vector<long> bb_betti(const GkmGraph& g) {
    internal_check(g.finalized(), "betti of unfinalized graph");
    std::vector<std::vector<long>> results;
    for (long t = 2; t < 2000 && results.size() < 2; ++t) {
        RatVec xi = point_at(t, g.nvars());
        std::vector<long> counts(g.dim() + 1, 0);
        bool regular = true;
        for (int v = 0; v < g.num_vertices() && regular; ++v) {
            int neg = 0;
            for (const Character& chi : g.vertex(v).tangent) {
                Rat val = char_eval(chi, xi);
                if (val == 0) {
                    regular = false;
                    break;
                }
                if (val < 0) ++neg;
            }
            if (regular) ++counts[neg];
        }
        if (regular) results.push_back(counts);
    }
    internal_check(results.size() == 2, "could not find two regular cocharacters");
    internal_check(results[0] == results[1], "cell counts differ between generic cocharacters");
    const std::vector<long>& b = results[0];
    long total = 0;
    for (long x : b) total += x;
    internal_check(total == g.num_vertices(), "cell counts do not sum to the vertex count");
    for (int k = 0; k <= g.dim(); ++k)
        internal_check(b[k] == b[g.dim() - k], "cell counts are not palindromic");
    return b;
}

long euler_characteristic(const GkmGraph& g) {
    internal_check(g.finalized(), "euler of unfinalized graph");
    // Integrate the top Chern class in factored form: each vertex contributes
    // (product of its weights)/(product of its weights) = 1 at a regular point.
    Rat total(0);
    for (long t = 2; t < 2000; ++t) {
        RatVec p = point_at(t, g.nvars());
        if (!all_weights_nonzero(g, p)) continue;
        for (int v = 0; v < g.num_vertices(); ++v) {
            Rat num(1), den(1);
            for (const Character& chi : g.vertex(v).tangent) {
                Rat val = char_eval(chi, p);
                num *= val;
                den *= val;
            }
            total += num / den;
        }
        break;
    }
    internal_check(rat_is_integer(total), "euler localization is not an integer");
    long value = static_cast<long>(rat_to_int64(total));
    internal_check(value == g.num_vertices(), "euler localization does not equal the vertex count");
    return value;
}

EqClass top_chern(const GkmGraph& g) {
    EqClass r(g, static_cast<uint32_t>(g.dim()));
    for (int v = 0; v < g.num_vertices(); ++v) {
        Polynomial f = Polynomial::constant(g.nvars(), Rat(1)).truncated(r.truncation_bound());
        for (const Character& chi : g.vertex(v).tangent)
            f = f * Polynomial::from_character(chi);
        r.set(v, f);
    }
    return r;
}

EqClass series_product(const GkmGraph& g, const std::vector<std::vector<Character>>& weights,
                       const std::vector<Rat>& series, uint32_t trunc) {
    internal_check(static_cast<int>(weights.size()) == g.num_vertices(),
                   "weight table size mismatch");
    EqClass r(g, trunc);
    for (int v = 0; v < g.num_vertices(); ++v) {
        Polynomial f = Polynomial::constant(g.nvars(), Rat(1)).truncated(trunc);
        for (const Character& chi : weights[v]) f = f * series_in_character(series, chi, trunc);
        r.set(v, f);
    }
    return r;
}

EqClass one_plus_product(const GkmGraph& g, const std::vector<std::vector<Character>>& weights,
                         uint32_t trunc) {
    return series_product(g, weights, {Rat(1), Rat(1)}, trunc);
}

} // namespace wgkm
