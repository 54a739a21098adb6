#include "wgkm/root_system.hpp"

#include <algorithm>
#include <set>

#include "wgkm/error.hpp"

namespace wgkm {

namespace {

struct Model {
    int ambient;
    IntMat form;
    std::vector<IntVec> roots;
};

IntVec unit(int n, int i, Int v = 1) {
    IntVec e(n, 0);
    e[i] = v;
    return e;
}

Model classical_model(const SimpleType& t) {
    Model m;
    const int n = t.rank;
    switch (t.letter) {
        case 'A': {
            m.ambient = n + 1;
            m.form = IntMat::identity(n + 1);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j)
                    if (i != j) {
                        IntVec r(n + 1, 0);
                        r[i] = 1;
                        r[j] = -1;
                        m.roots.push_back(r);
                    }
            break;
        }
        case 'B': {
            m.ambient = n;
            m.form = IntMat(n, n);
            for (int i = 0; i < n; ++i) m.form.at(i, i) = 2; // keeps the form integral on short roots
            for (int i = 0; i < n; ++i)
                for (Int s : {1, -1}) m.roots.push_back(unit(n, i, s));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (Int si : {1, -1})
                        for (Int sj : {1, -1}) {
                            IntVec r(n, 0);
                            r[i] = si;
                            r[j] = sj;
                            m.roots.push_back(r);
                        }
            break;
        }
        case 'C': {
            m.ambient = n;
            m.form = IntMat::identity(n);
            for (int i = 0; i < n; ++i)
                for (Int s : {2, -2}) m.roots.push_back(unit(n, i, s));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (Int si : {1, -1})
                        for (Int sj : {1, -1}) {
                            IntVec r(n, 0);
                            r[i] = si;
                            r[j] = sj;
                            m.roots.push_back(r);
                        }
            break;
        }
        case 'D': {
            m.ambient = n;
            m.form = IntMat::identity(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (Int si : {1, -1})
                        for (Int sj : {1, -1}) {
                            IntVec r(n, 0);
                            r[i] = si;
                            r[j] = sj;
                            m.roots.push_back(r);
                        }
            break;
        }
        default:
            internal_check(false, "classical_model called with exceptional type");
    }
    return m;
}

// Exceptional types in the basis of their own simple roots; the form is the
// symmetrized Cartan matrix (entries (alpha_i, alpha_j), short roots of norm 2).
Model exceptional_model(const SimpleType& t) {
    Model m;
    const int n = t.rank;
    m.ambient = n;
    m.form = IntMat(n, n);

    auto bond = [&](int i, int j, Int v) {
        m.form.at(i, j) = v;
        m.form.at(j, i) = v;
    };
    if (t.letter == 'E') {
        for (int i = 0; i < n; ++i) m.form.at(i, i) = 2;
        // Bourbaki: chain 1-3-4-5-...-n with node 2 attached to node 4 (1-based).
        bond(0, 2, -1);
        for (int i = 2; i + 1 < n; ++i) bond(i, i + 1, -1);
        bond(1, 3, -1);
    } else if (t.letter == 'F') {
        // Nodes 1,2 long (norm 4), 3,4 short (norm 2); double bond between 2 and 3.
        m.form.at(0, 0) = 4;
        m.form.at(1, 1) = 4;
        m.form.at(2, 2) = 2;
        m.form.at(3, 3) = 2;
        bond(0, 1, -2);
        bond(1, 2, -2);
        bond(2, 3, -1);
    } else { // G2: node 1 short (norm 2), node 2 long (norm 6)
        m.form.at(0, 0) = 2;
        m.form.at(1, 1) = 6;
        bond(0, 1, -3);
    }

    auto inner = [&](const IntVec& a, const IntVec& b) {
        Int s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += a[i] * m.form.at(i, j) * b[j];
        return s;
    };

    std::set<IntVec> seen;
    std::vector<IntVec> work;
    for (int i = 0; i < n; ++i) {
        work.push_back(unit(n, i));
        seen.insert(work.back());
    }
    while (!work.empty()) {
        IntVec x = work.back();
        work.pop_back();
        for (int i = 0; i < n; ++i) {
            IntVec e = unit(n, i);
            Int num = 2 * inner(x, e);
            Int den = m.form.at(i, i);
            internal_check(num % den == 0, "non-crystallographic pairing in closure");
            IntVec img = vec_sub(x, vec_scale(e, num / den));
            if (seen.insert(img).second) work.push_back(img);
        }
    }
    m.roots.assign(seen.begin(), seen.end());
    return m;
}

Model simple_model(const SimpleType& t) {
    if (t.letter == 'E' || t.letter == 'F' || t.letter == 'G') return exceptional_model(t);
    return classical_model(t);
}

// Deterministic total order on roots: by coordinate sum, then lexicographic.
bool root_order(const IntVec& a, const IntVec& b) {
    Int sa = 0, sb = 0;
    for (Int x : a) sa += x;
    for (Int x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
}

} // namespace

RootSystem RootSystem::build(const std::string& type_descriptor) {
    return build(CartanType::parse(type_descriptor));
}

RootSystem RootSystem::build(const CartanType& type) {
    std::vector<Model> parts;
    int ambient = 0;
    for (const auto& f : type.factors) {
        parts.push_back(simple_model(f));
        ambient += parts.back().ambient;
    }
    IntMat form(ambient, ambient);
    std::vector<IntVec> roots;
    int off = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.ambient; ++i)
            for (int j = 0; j < p.ambient; ++j) form.at(off + i, off + j) = p.form.at(i, j);
        for (const auto& r : p.roots) {
            IntVec v(ambient, 0);
            for (int i = 0; i < p.ambient; ++i) v[off + i] = r[i];
            roots.push_back(v);
        }
        off += p.ambient;
    }
    RootSystem rs = from_root_list(ambient, form, std::move(roots), type.to_string());
    internal_check(rs.size() == type.root_count(), "root count mismatch for " + type.to_string());
    internal_check(rs.rank() == type.rank(), "rank mismatch for " + type.to_string());
    return rs;
}

RootSystem RootSystem::from_root_list(int ambient, IntMat form, std::vector<IntVec> roots,
                                      std::string descriptor) {
    RootSystem rs;
    rs.ambient_ = ambient;
    rs.form_ = std::move(form);
    rs.descriptor_ = std::move(descriptor);
    std::sort(roots.begin(), roots.end(), root_order);
    rs.roots_ = std::move(roots);
    rs.finalize_tables();
    rs.derive_default_basis();
    return rs;
}

RootSystem RootSystem::from_simple_system(int ambient, IntMat form, std::vector<IntVec> roots,
                                          std::vector<IntVec> declared_simples,
                                          std::string descriptor) {
    RootSystem rs;
    rs.ambient_ = ambient;
    rs.form_ = std::move(form);
    rs.descriptor_ = std::move(descriptor);
    std::sort(roots.begin(), roots.end(), root_order);
    rs.roots_ = std::move(roots);
    rs.finalize_tables();
    rs.set_positive_from_simples(declared_simples);
    rs.derive_basis_from_positive();
    return rs;
}

int RootSystem::index_of(const IntVec& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

Int RootSystem::inner(const IntVec& a, const IntVec& b) const {
    Int s = 0;
    for (int i = 0; i < ambient_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < ambient_; ++j)
            if (b[j] != 0) s += a[i] * form_.at(i, j) * b[j];
    }
    return s;
}

Int RootSystem::cartan_int(const IntVec& x, int root_idx) const {
    Int num = 2 * inner(x, roots_[root_idx]);
    Int den = inner(roots_[root_idx], roots_[root_idx]);
    internal_check(num % den == 0, "non-integral Cartan number");
    return num / den;
}

IntVec RootSystem::reflect_vec(const IntVec& x, int root_idx) const {
    return vec_sub(x, vec_scale(roots_[root_idx], cartan_int(x, root_idx)));
}

void RootSystem::finalize_tables() {
    const int N = size();
    require(N > 0, ErrorKind::Computation, "empty root system");
    require(N <= 65535, ErrorKind::Computation, "root system too large for index tables");
    index_.clear();
    for (int i = 0; i < N; ++i) {
        require(!is_zero_vec(roots_[i]), ErrorKind::Computation, "zero vector among roots");
        require(index_.emplace(roots_[i], i).second, ErrorKind::Computation, "duplicate root");
    }
    neg_.assign(N, -1);
    for (int i = 0; i < N; ++i) {
        neg_[i] = index_of(vec_neg(roots_[i]));
        require(neg_[i] >= 0, ErrorKind::Computation, "root system not symmetric under negation");
    }
    refl_.assign(N, {});
    for (int a = 0; a < N; ++a) {
        refl_[a].resize(N);
        for (int x = 0; x < N; ++x) {
            int img = index_of(reflect_vec(roots_[x], a));
            require(img >= 0, ErrorKind::Computation, "root system not closed under reflections");
            refl_[a][x] = static_cast<uint16_t>(img);
        }
    }
    // Rational rank of the span.
    RatMat M(N, ambient_);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < ambient_; ++j) M.at(i, j) = Rat(static_cast<long>(roots_[i][j]));
    rank_ = rat_rank(M);
}

void RootSystem::derive_default_basis() {
    // Generic functional with growing base; every root must get a nonzero key.
    for (long base = ambient_ + 2;; ++base) {
        bool ok = true;
        positive_.assign(size(), false);
        for (int i = 0; i < size() && ok; ++i) {
            Rat key(0), p(1);
            for (int j = 0; j < ambient_; ++j) {
                key += Rat(static_cast<long>(roots_[i][j])) * p;
                p *= base;
            }
            if (key == 0) ok = false;
            else positive_[i] = key > 0;
        }
        if (ok) break;
        require(base < ambient_ + 1000, ErrorKind::Computation, "could not separate roots");
    }
    derive_basis_from_positive();
}

void RootSystem::set_positive_from_simples(const std::vector<IntVec>& declared) {
    // Every root must be a uniform-sign integer combination of the declared simples.
    RatMat S(ambient_, static_cast<int>(declared.size()));
    for (int j = 0; j < static_cast<int>(declared.size()); ++j)
        for (int i = 0; i < ambient_; ++i) S.at(i, j) = Rat(static_cast<long>(declared[j][i]));
    positive_.assign(size(), false);
    for (int i = 0; i < size(); ++i) {
        RatVec b(ambient_);
        for (int k = 0; k < ambient_; ++k) b[k] = Rat(static_cast<long>(roots_[i][k]));
        RatVec x = rat_solve(S, b);
        int sign = 0;
        for (const auto& q : x) {
            require(rat_is_integer(q), ErrorKind::Computation,
                    "root not an integer combination of the declared simple system");
            if (q > 0) { require(sign >= 0, ErrorKind::Computation, "mixed-sign root coordinates"); sign = 1; }
            if (q < 0) { require(sign <= 0, ErrorKind::Computation, "mixed-sign root coordinates"); sign = -1; }
        }
        require(sign != 0, ErrorKind::Computation, "zero root");
        positive_[i] = sign > 0;
    }
}

void RootSystem::derive_basis_from_positive() {
    internal_check(2 * static_cast<int>(std::count(positive_.begin(), positive_.end(), true)) ==
                       size(),
                   "positive system is not half the roots");
    std::set<IntVec> pos;
    for (int i = 0; i < size(); ++i)
        if (positive_[i]) pos.insert(roots_[i]);

    simples_.clear();
    for (int i = 0; i < size(); ++i) {
        if (!positive_[i]) continue;
        bool decomposable = false;
        for (const auto& q : pos) {
            if (q == roots_[i]) continue;
            if (pos.count(vec_sub(roots_[i], q))) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simples_.push_back(i);
    }
    require(static_cast<int>(simples_.size()) == rank_, ErrorKind::Computation,
            "simple system size does not match the rank");

    // Coordinates of every root in the simple basis (exact; asserts integrality).
    RatMat S(ambient_, rank_);
    for (int j = 0; j < rank_; ++j)
        for (int i = 0; i < ambient_; ++i)
            S.at(i, j) = Rat(static_cast<long>(roots_[simples_[j]][i]));
    delta_.assign(size(), {});
    for (int i = 0; i < size(); ++i) {
        RatVec b(ambient_);
        for (int k = 0; k < ambient_; ++k) b[k] = Rat(static_cast<long>(roots_[i][k]));
        RatVec x = rat_solve(S, b);
        IntVec d(rank_);
        for (int j = 0; j < rank_; ++j) {
            require(rat_is_integer(x[j]), ErrorKind::Computation,
                    "root has non-integral simple-root coordinates");
            d[j] = static_cast<Int>(x[j].get_num().get_si());
        }
        delta_[i] = std::move(d);
    }

    cartan_ = IntMat(rank_, rank_);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            cartan_.at(i, j) = cartan_int(roots_[simples_[j]], simples_[i]);
}

IntMat RootSystem::simple_matrix() const {
    IntMat S(ambient_, rank_);
    for (int j = 0; j < rank_; ++j)
        for (int i = 0; i < ambient_; ++i) S.at(i, j) = roots_[simples_[j]][i];
    return S;
}

void RootSystem::rebase(const std::vector<std::pair<Rat, Rat>>& keys) {
    internal_check(static_cast<int>(keys.size()) == size(), "rebase key count mismatch");
    positive_.assign(size(), false);
    for (int i = 0; i < size(); ++i) {
        const auto& [k1, k2] = keys[i];
        require(k1 != 0 || k2 != 0, ErrorKind::Computation, "rebase key vanishes on a root");
        positive_[i] = k1 > 0 || (k1 == 0 && k2 > 0);
    }
    derive_basis_from_positive();
}

std::vector<RatVec> RootSystem::roots_rational() const {
    std::vector<RatVec> out;
    out.reserve(size());
    for (const auto& r : roots_) {
        RatVec v(ambient_);
        for (int i = 0; i < ambient_; ++i) v[i] = Rat(static_cast<long>(r[i]));
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace wgkm
