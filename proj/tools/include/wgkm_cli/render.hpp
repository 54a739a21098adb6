#pragma once

#include <nlohmann/json.hpp>

#include "wgkm/character.hpp"
#include "wgkm/gkm.hpp"
#include "wgkm/polynomial.hpp"
#include "wgkm/rational.hpp"

namespace wgkm::cli {

using json = nlohmann::ordered_json;

/** Exact rational: a JSON integer when it fits safely, else a "p/q" string. */
json rat_json(const Rat& q);

/** Character as its integer coordinate vector in the simple-root basis. */
json character_json(const Character& chi);

/** Polynomial as an array of [coefficient, [exponents...]] pairs, leading term first. */
json polynomial_json(const Polynomial& f);

/** Equivariant class as an array of {"vertex": label, "value": polynomial} entries. */
json class_json(const EqClass& c);

/** Fixed-point graph: vertices with tangent weights, edges with curve weights. */
json graph_json(const GkmGraph& g);

} // namespace wgkm::cli
