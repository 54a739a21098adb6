#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wgkm/root_system.hpp"

namespace wgkm {

/**
 * A Weyl group enumerated as permutations of the root list of a RootSystem.
 * Element 0 is the identity; element indices are assigned in BFS order by
 * right multiplication with the simple reflections of the basis current at
 * enumeration time, so they are deterministic for a given system.
 *
 * The permutation realization is independent of the chosen positive system;
 * lengths, descents, names and coset representatives refer to the RootSystem's
 * current basis and are refreshed via refresh_basis() after a rebase().
 *
 * Groups above kCacheThreshold elements are persisted to a binary disk cache
 * (WONDERFUL_CACHE_DIR, default ~/.cache/wgkm) and fully validated on reload;
 * a corrupt or stale file is silently re-enumerated and overwritten.
 */
class WeylGroup {
public:
    static constexpr long kMaxOrder = 2000000;
    static constexpr long kCacheThreshold = 10000;

    static WeylGroup enumerate(const RootSystem& rs, bool allow_cache = true);
    /** Resolved cache directory ("" when caching is unavailable). */
    static std::string cache_directory();
    bool loaded_from_cache() const { return loaded_from_cache_; }
    /** Cache file this group would use ("" when caching is unavailable). */
    std::string cache_path() const;

    int order() const { return static_cast<int>(count_); }
    int identity() const { return 0; }

    /** Image of root x under element e, as a root index. */
    int apply(int e, int x) const { return elems_[static_cast<size_t>(e) * nroots_ + x]; }
    const uint16_t* perm(int e) const { return &elems_[static_cast<size_t>(e) * nroots_]; }

    int compose(int a, int b) const; // (a . b)(x) = a(b(x))
    int inverse(int a) const;
    int element_of_permutation(const std::vector<uint16_t>& p) const; // -1 if absent

    /** Element realizing the reflection in the given root. */
    int reflection_element(int root_idx) const;
    /** Element of s_{alpha_j}, alpha_j the j-th simple root of the current basis. */
    int simple_element(int j) const { return simple_elems_[j]; }
    int multiply_simple_right(int e, int j) const;

    /** Length wrt the current basis: number of positive roots sent negative. */
    int length(int e) const { return lengths_[e]; }

    /** Canonical reduced word, "e" or e.g. "s2s1s3", via greedy smallest right descent. */
    std::string name(int e) const;
    /** Element with the given canonical (or any valid) word, -1 if the word is malformed. */
    int element_of_name(const std::string& word) const;

    /**
     * Matrix of e on the character lattice in simple-root coordinates: column j holds
     * the coordinates of e(alpha_j), so coords(e(chi)) = matrix(e) * coords(chi).
     */
    IntMat matrix(int e) const;

    /** Minimal-length representative of e * W_S, S a set of simple-root positions. */
    int min_coset_rep(int e, const std::vector<int>& simple_positions) const;
    /** All minimal-length representatives of W / W_S, ascending element order. */
    std::vector<int> coset_min_reps(const std::vector<int>& simple_positions) const;
    /** Subgroup closure of the given elements, sorted ascending (includes identity). */
    std::vector<int> subgroup_generated(const std::vector<int>& generators) const;

    /** Recomputes basis-dependent tables after the root system was rebased. */
    void refresh_basis();

    const RootSystem& roots() const { return *rs_; }

private:
    const RootSystem* rs_ = nullptr;
    int nroots_ = 0;
    long count_ = 0;
    bool loaded_from_cache_ = false;
    std::vector<uint16_t> elems_; // permutations, stride nroots_
    std::unordered_map<uint64_t, std::vector<int>> index_;
    std::vector<int> simple_elems_;
    std::vector<int> lengths_;

    uint64_t hash_perm(const uint16_t* p) const;
    int lookup(const uint16_t* p) const;
    void build_index();
    void bfs_enumerate();
    bool try_load_cache(const std::string& path);
    void write_cache(const std::string& path) const;
};

} // namespace wgkm
