#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wgkm/character.hpp"
#include "wgkm/polynomial.hpp"

namespace wgkm {

struct GkmVertex {
    std::string label;
    std::vector<Character> tangent; // exactly dim() weights, pairwise non-parallel
};

struct GkmEdge {
    int u = -1, v = -1;
    Character weight; // sign-canonical representative of the curve weight
};

/**
 * A GKM graph: fixed points with their tangent weights, and invariant curves as
 * edges labelled by the weight (up to sign) of the curve. finalize() checks the
 * regularity conditions: every vertex carries dim() pairwise non-parallel weights,
 * and the edge weights at a vertex match its tangent weights exactly.
 */
class GkmGraph {
public:
    GkmGraph(int nvars, int dim) : nvars_(nvars), dim_(dim) {}

    int nvars() const { return nvars_; }
    int dim() const { return dim_; }

    int add_vertex(std::string label, std::vector<Character> tangent);
    void add_edge(int u, int v, const Character& weight);
    /** Validates the graph; must be called once after construction. */
    void finalize();
    bool finalized() const { return finalized_; }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const GkmVertex& vertex(int v) const { return vertices_[v]; }
    const GkmEdge& edge(int e) const { return edges_[e]; }
    const std::vector<int>& edges_at(int v) const { return adj_[v]; }
    int vertex_by_label(const std::string& label) const;

private:
    int nvars_, dim_;
    bool finalized_ = false;
    std::vector<GkmVertex> vertices_;
    std::vector<GkmEdge> edges_;
    std::vector<std::vector<int>> adj_;
    std::map<std::string, int> by_label_;
};

/**
 * An equivariant cohomology class in GKM presentation: one polynomial per fixed
 * point, all with the same truncation bound. Validity (the congruence along every
 * edge) is a property checked on demand, not an invariant of the container.
 */
class EqClass {
public:
    explicit EqClass(const GkmGraph& g) : EqClass(g, static_cast<uint32_t>(g.dim())) {}
    EqClass(const GkmGraph& g, uint32_t trunc);
    static EqClass constant(const GkmGraph& g, const Rat& c);

    const GkmGraph& graph() const { return *g_; }
    uint32_t truncation_bound() const { return trunc_; }
    const Polynomial& at(int v) const { return f_[v]; }
    void set(int v, const Polynomial& f);

    EqClass operator+(const EqClass& o) const;
    EqClass operator-(const EqClass& o) const;
    EqClass operator*(const EqClass& o) const;
    EqClass scaled(const Rat& c) const;
    EqClass pow(uint32_t e) const;
    /** Per-vertex homogeneous part of degree d. */
    EqClass graded_part(uint32_t d) const;
    bool operator==(const EqClass& o) const;

    /** Index of the first edge whose congruence fails, if any. */
    std::optional<int> first_violation() const;
    /** Throws a Verification error naming the offending edge. */
    void require_valid(const std::string& what) const;

private:
    const GkmGraph* g_;
    uint32_t trunc_;
    std::vector<Polynomial> f_;
};

/**
 * Exact integral over the space underlying the graph: the class is cut to degree
 * dim() (higher parts push forward to positive-degree classes, which vanish under
 * the ordinary integral) and the localization sum is evaluated at two generic
 * points, which must agree. Throws a Verification error when they do not.
 */
Rat localize_integral(const EqClass& c);

/** Betti numbers b_0..b_dim from attracting-cell dimensions of a generic cocharacter. */
std::vector<long> bb_betti(const GkmGraph& g);

/** Fixed-point count cross-checked by the localization of the top Chern class in factored form. */
long euler_characteristic(const GkmGraph& g);

/** Product of the tangent weights at each vertex (the top equivariant Chern class). */
EqClass top_chern(const GkmGraph& g);

/** Per-vertex product of series(chi) over the given weights; series given by coefficients. */
EqClass series_product(const GkmGraph& g, const std::vector<std::vector<Character>>& weights,
                       const std::vector<Rat>& series, uint32_t trunc);

/** Per-vertex product of (1 + chi): the total Chern class of a sum of line bundles. */
EqClass one_plus_product(const GkmGraph& g, const std::vector<std::vector<Character>>& weights,
                         uint32_t trunc);

} // namespace wgkm
