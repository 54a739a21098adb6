#include "wgkm/cartan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wgkm/error.hpp"

namespace wgkm {

namespace {

void validate_simple(const SimpleType& t) {
    auto bad = [&](const std::string& why) {
        throw Error(ErrorKind::Usage, "invalid Cartan type " + t.to_string() + ": " + why);
    };
    switch (t.letter) {
        case 'A':
        case 'B':
        case 'C':
            if (t.rank < 1) bad("rank must be >= 1");
            break;
        case 'D':
            if (t.rank < 2) bad("rank must be >= 2");
            break;
        case 'E':
            if (t.rank < 6 || t.rank > 8) bad("rank must be 6, 7 or 8");
            break;
        case 'F':
            if (t.rank != 4) bad("rank must be 4");
            break;
        case 'G':
            if (t.rank != 2) bad("rank must be 2");
            break;
        default:
            bad("unknown family letter");
    }
}

// Resolve the classical low-rank coincidences to one name per isomorphism class.
std::vector<SimpleType> canonical_factors(const SimpleType& t) {
    if ((t.letter == 'B' || t.letter == 'C') && t.rank == 1) return {{'A', 1}};
    if (t.letter == 'C' && t.rank == 2) return {{'B', 2}};
    if (t.letter == 'D' && t.rank == 2) return {{'A', 1}, {'A', 1}};
    if (t.letter == 'D' && t.rank == 3) return {{'A', 3}};
    return {t};
}

} // namespace

long long simple_root_count(const SimpleType& t) {
    long long n = t.rank;
    switch (t.letter) {
        case 'A': return n * (n + 1);
        case 'B':
        case 'C': return 2 * n * n;
        case 'D': return 2 * n * (n - 1);
        case 'E': return t.rank == 6 ? 72 : (t.rank == 7 ? 126 : 240);
        case 'F': return 48;
        case 'G': return 12;
    }
    internal_check(false, "unreachable");
    return 0;
}

long long simple_weyl_order(const SimpleType& t) {
    long long n = t.rank;
    auto fact = [](long long k) {
        long long f = 1;
        for (long long i = 2; i <= k; ++i) f *= i;
        return f;
    };
    switch (t.letter) {
        case 'A': return fact(n + 1);
        case 'B':
        case 'C': return (1LL << n) * fact(n);
        case 'D': return (1LL << (n - 1)) * fact(n);
        case 'E': return t.rank == 6 ? 51840LL : (t.rank == 7 ? 2903040LL : 696729600LL);
        case 'F': return 1152;
        case 'G': return 12;
    }
    internal_check(false, "unreachable");
    return 0;
}

CartanType CartanType::parse(const std::string& s) {
    CartanType t;
    size_t i = 0;
    if (s.empty()) return t;
    while (i < s.size()) {
        char letter = s[i];
        require(letter >= 'A' && letter <= 'G', ErrorKind::Usage,
                "bad Cartan type '" + s + "' at position " + std::to_string(i + 1) +
                    ": expected a family letter A-G");
        ++i;
        size_t start = i;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        require(i > start, ErrorKind::Usage,
                "bad Cartan type '" + s + "' at position " + std::to_string(start + 1) +
                    ": expected a rank");
        SimpleType st{letter, std::stoi(s.substr(start, i - start))};
        validate_simple(st);
        t.factors.push_back(st);
        if (i < s.size()) {
            require(s[i] == 'x', ErrorKind::Usage,
                    "bad Cartan type '" + s + "' at position " + std::to_string(i + 1) +
                        ": expected 'x' between factors");
            ++i;
            require(i < s.size(), ErrorKind::Usage, "bad Cartan type '" + s + "': trailing 'x'");
        }
    }
    return t;
}

CartanType CartanType::canonical() const {
    CartanType out;
    for (const auto& f : factors) {
        validate_simple(f);
        auto parts = canonical_factors(f);
        out.factors.insert(out.factors.end(), parts.begin(), parts.end());
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

std::string CartanType::to_string() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += 'x';
        s += factors[i].to_string();
    }
    return s;
}

int CartanType::rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
}

long long CartanType::root_count() const {
    long long n = 0;
    for (const auto& f : factors) n += simple_root_count(f);
    return n;
}

long long CartanType::weyl_order() const {
    long long n = 1;
    for (const auto& f : factors) n *= simple_weyl_order(f);
    return n;
}

std::string canonical_type_string(const std::string& name) {
    return CartanType::parse(name).canonical().to_string();
}

namespace {

Rat dot(const RatVec& a, const RatVec& b, const RatMat& form) {
    Rat s(0);
    for (int i = 0; i < form.rows(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < form.cols(); ++j)
            if (b[j] != 0) s += a[i] * form.at(i, j) * b[j];
    }
    return s;
}

} // namespace

CartanType recognize_cartan_type(const std::vector<RatVec>& roots, const RatMat& form) {
    CartanType result;
    if (roots.empty()) return result;

    const int dim = static_cast<int>(roots[0].size());
    require(form.rows() == dim && form.cols() == dim, ErrorKind::Computation,
            "recognize_cartan_type: form dimension mismatch");

    std::map<RatVec, int> index;
    for (size_t i = 0; i < roots.size(); ++i) {
        require(static_cast<int>(roots[i].size()) == dim, ErrorKind::Computation,
                "recognize_cartan_type: mixed vector dimensions");
        require(!std::all_of(roots[i].begin(), roots[i].end(), [](const Rat& q) { return q == 0; }),
                ErrorKind::Computation, "recognize_cartan_type: zero vector in input");
        require(index.emplace(roots[i], static_cast<int>(i)).second, ErrorKind::Computation,
                "recognize_cartan_type: duplicate root");
    }

    // Reflection closure + crystallographic pairing checks.
    std::vector<Rat> norm(roots.size());
    for (size_t i = 0; i < roots.size(); ++i) {
        norm[i] = dot(roots[i], roots[i], form);
        require(norm[i] > 0, ErrorKind::Computation, "recognize_cartan_type: form not positive on roots");
    }
    for (size_t a = 0; a < roots.size(); ++a)
        for (size_t b = 0; b < roots.size(); ++b) {
            Rat n = 2 * dot(roots[b], roots[a], form) / norm[a];
            require(rat_is_integer(n), ErrorKind::Computation,
                    "input is not a root system: non-integral Cartan number");
            RatVec refl = roots[b];
            for (int i = 0; i < dim; ++i) refl[i] -= n * roots[a][i];
            require(index.count(refl) > 0, ErrorKind::Computation,
                    "input is not a root system: reflection closure fails");
        }
    // Reduced: no root is a non-unit rational multiple of another.
    for (size_t a = 0; a < roots.size(); ++a) {
        RatVec twice = roots[a];
        for (auto& q : twice) q *= 2;
        require(index.count(twice) == 0, ErrorKind::Computation,
                "input is not a reduced root system");
    }

    // Deterministic generic positivity: weights (dim+2)^j on coordinates, grown on collision.
    std::vector<int> positive;
    for (long base = dim + 2;; ++base) {
        positive.clear();
        bool ok = true;
        for (size_t i = 0; i < roots.size() && ok; ++i) {
            Rat key(0), p(1);
            for (int j = 0; j < dim; ++j) {
                key += roots[i][j] * p;
                p *= base;
            }
            if (key == 0) ok = false;
            else if (key > 0) positive.push_back(static_cast<int>(i));
        }
        if (ok) break;
        require(base < dim + 1000, ErrorKind::Computation, "could not separate roots");
    }

    // Simple roots: positive roots that are not sums of two positive roots.
    std::set<RatVec> pos_set;
    for (int i : positive) pos_set.insert(roots[i]);
    std::vector<int> simples;
    for (int i : positive) {
        bool decomposable = false;
        for (int j : positive) {
            if (j == i) continue;
            RatVec diff = roots[i];
            for (int k = 0; k < dim; ++k) diff[k] -= roots[j][k];
            if (pos_set.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simples.push_back(i);
    }

    // Connected components of the Dynkin diagram on the simple roots.
    const int ns = static_cast<int>(simples.size());
    std::vector<int> comp(ns, -1);
    int ncomp = 0;
    for (int i = 0; i < ns; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < ns; ++v)
                if (comp[v] < 0 && dot(roots[simples[u]], roots[simples[v]], form) != 0) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }

    // Assign every root to the unique component it pairs with.
    std::vector<long long> comp_count(ncomp, 0);
    std::vector<std::set<Rat>> comp_norms(ncomp);
    std::vector<std::map<Rat, long long>> comp_norm_count(ncomp);
    for (size_t r = 0; r < roots.size(); ++r) {
        int owner = -1;
        for (int s = 0; s < ns; ++s)
            if (dot(roots[r], roots[simples[s]], form) != 0) {
                require(owner == -1 || owner == comp[s], ErrorKind::Computation,
                        "root pairs with two components");
                owner = comp[s];
            }
        require(owner >= 0, ErrorKind::Computation, "root orthogonal to all simple roots");
        comp_count[owner]++;
        comp_norms[owner].insert(norm[r]);
        comp_norm_count[owner][norm[r]]++;
    }

    for (int c = 0; c < ncomp; ++c) {
        int rank = static_cast<int>(std::count(comp.begin(), comp.end(), c));
        long long count = comp_count[c];
        const auto& norms = comp_norms[c];
        SimpleType t;
        if (norms.size() == 1) {
            // Simply laced: A, D, E (with A3=D3 reported as A3).
            if (count == static_cast<long long>(rank) * (rank + 1)) t = {'A', rank};
            else if (rank >= 4 && count == 2LL * rank * (rank - 1)) t = {'D', rank};
            else if (rank >= 6 && rank <= 8 &&
                     count == simple_root_count({'E', rank})) t = {'E', rank};
            else
                throw Error(ErrorKind::Computation, "unrecognized simply-laced component");
        } else {
            require(norms.size() == 2, ErrorKind::Computation, "more than two root lengths");
            Rat ratio = *norms.rbegin() / *norms.begin();
            long long nlong = comp_norm_count[c][*norms.rbegin()];
            long long nshort = comp_norm_count[c][*norms.begin()];
            if (ratio == 3) {
                require(rank == 2 && count == 12, ErrorKind::Computation, "unrecognized G2-like component");
                t = {'G', 2};
            } else {
                require(ratio == 2, ErrorKind::Computation, "unsupported length ratio");
                if (rank == 4 && count == 48 && nlong == 24) t = {'F', 4};
                else if (nshort == 2LL * rank && nlong == 2LL * rank * (rank - 1)) t = {'B', rank};
                else if (nlong == 2LL * rank && nshort == 2LL * rank * (rank - 1)) t = {'C', rank};
                else
                    throw Error(ErrorKind::Computation, "unrecognized two-length component");
            }
        }
        result.factors.push_back(t);
    }
    return result.canonical();
}

} // namespace wgkm
