#include "wgkm/weyl.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>

#include "wgkm/error.hpp"

namespace wgkm {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[5] = {'W', 'G', 'K', 'M', '1'};

uint64_t fnv1a(uint64_t h, const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_i64(std::string& out, int64_t v) { put_u64(out, static_cast<uint64_t>(v)); }
void put_u16(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

struct Reader {
    const unsigned char* p;
    size_t n;
    size_t pos = 0;
    bool ok = true;

    bool take(void* dst, size_t k) {
        if (!ok || pos + k > n) {
            ok = false;
            return false;
        }
        std::memcpy(dst, p + pos, k);
        pos += k;
        return true;
    }
    uint32_t u32() {
        unsigned char b[4] = {};
        take(b, 4);
        return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
               (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    }
    uint64_t u64() {
        uint64_t v = u32();
        return v | (static_cast<uint64_t>(u32()) << 32);
    }
    int64_t i64() { return static_cast<int64_t>(u64()); }
    uint16_t u16() {
        unsigned char b[2] = {};
        take(b, 2);
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }
};

} // namespace

std::string WeylGroup::cache_directory() {
    if (const char* dir = std::getenv("WONDERFUL_CACHE_DIR")) return dir;
    if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/wgkm";
    return "";
}

std::string WeylGroup::cache_path() const {
    std::string dir = cache_directory();
    if (dir.empty()) return "";
    uint64_t h = 1469598103934665603ULL;
    int64_t dims[2] = {rs_->ambient_dim(), rs_->size()};
    h = fnv1a(h, dims, sizeof dims);
    for (const auto& r : rs_->roots())
        for (Int x : r) {
            int64_t v = x;
            h = fnv1a(h, &v, sizeof v);
        }
    for (int s : rs_->simple_indices()) {
        int64_t v = s;
        h = fnv1a(h, &v, sizeof v);
    }
    char name[64];
    std::snprintf(name, sizeof name, "weyl-%016llx.bin", static_cast<unsigned long long>(h));
    return dir + "/" + name;
}

WeylGroup WeylGroup::enumerate(const RootSystem& rs, bool allow_cache) {
    WeylGroup w;
    w.rs_ = &rs;
    w.nroots_ = rs.size();
    std::string path = w.cache_path();
    if (allow_cache && !path.empty() && w.try_load_cache(path)) {
        w.loaded_from_cache_ = true;
        w.refresh_basis();
        return w;
    }
    w.bfs_enumerate();
    w.refresh_basis();
    if (allow_cache && !path.empty() && w.count_ > kCacheThreshold) w.write_cache(path);
    return w;
}

void WeylGroup::bfs_enumerate() {
    const int N = nroots_;
    std::vector<const std::vector<uint16_t>*> gens;
    for (int s : rs_->simple_indices()) gens.push_back(&rs_->reflection(s));

    elems_.clear();
    index_.clear();
    elems_.reserve(static_cast<size_t>(N) * 1024);
    for (int x = 0; x < N; ++x) elems_.push_back(static_cast<uint16_t>(x));
    index_[hash_perm(elems_.data())].push_back(0);
    count_ = 1;

    std::vector<uint16_t> scratch(N);
    for (long head = 0; head < count_; ++head) {
        for (const auto* g : gens) {
            const uint16_t* cur = &elems_[static_cast<size_t>(head) * N];
            for (int x = 0; x < N; ++x) scratch[x] = cur[(*g)[x]];
            if (lookup(scratch.data()) >= 0) continue;
            require(count_ < kMaxOrder, ErrorKind::Computation,
                    "Weyl group exceeds the enumeration cap of 2000000 elements");
            elems_.insert(elems_.end(), scratch.begin(), scratch.end());
            index_[hash_perm(scratch.data())].push_back(static_cast<int>(count_));
            ++count_;
        }
    }
}

uint64_t WeylGroup::hash_perm(const uint16_t* p) const {
    return fnv1a(1469598103934665603ULL, p, static_cast<size_t>(nroots_) * sizeof(uint16_t));
}

int WeylGroup::lookup(const uint16_t* p) const {
    auto it = index_.find(hash_perm(p));
    if (it == index_.end()) return -1;
    for (int id : it->second)
        if (std::memcmp(perm(id), p, static_cast<size_t>(nroots_) * sizeof(uint16_t)) == 0)
            return id;
    return -1;
}

void WeylGroup::build_index() {
    index_.clear();
    for (long e = 0; e < count_; ++e)
        index_[hash_perm(perm(static_cast<int>(e)))].push_back(static_cast<int>(e));
}

int WeylGroup::compose(int a, int b) const {
    std::vector<uint16_t> scratch(nroots_);
    const uint16_t* pa = perm(a);
    const uint16_t* pb = perm(b);
    for (int x = 0; x < nroots_; ++x) scratch[x] = pa[pb[x]];
    int id = lookup(scratch.data());
    internal_check(id >= 0, "Weyl group not closed under composition");
    return id;
}

int WeylGroup::inverse(int a) const {
    std::vector<uint16_t> scratch(nroots_);
    const uint16_t* pa = perm(a);
    for (int x = 0; x < nroots_; ++x) scratch[pa[x]] = static_cast<uint16_t>(x);
    int id = lookup(scratch.data());
    internal_check(id >= 0, "Weyl group not closed under inversion");
    return id;
}

int WeylGroup::element_of_permutation(const std::vector<uint16_t>& p) const {
    if (static_cast<int>(p.size()) != nroots_) return -1;
    return lookup(p.data());
}

int WeylGroup::reflection_element(int root_idx) const {
    int id = lookup(rs_->reflection(root_idx).data());
    internal_check(id >= 0, "reflection not found in Weyl group");
    return id;
}

int WeylGroup::multiply_simple_right(int e, int j) const {
    const auto& g = rs_->reflection(rs_->simple_indices()[j]);
    std::vector<uint16_t> scratch(nroots_);
    const uint16_t* pe = perm(e);
    for (int x = 0; x < nroots_; ++x) scratch[x] = pe[g[x]];
    int id = lookup(scratch.data());
    internal_check(id >= 0, "Weyl group not closed under composition");
    return id;
}

void WeylGroup::refresh_basis() {
    const int rank = rs_->rank();
    simple_elems_.assign(rank, -1);
    for (int j = 0; j < rank; ++j) simple_elems_[j] = reflection_element(rs_->simple_indices()[j]);

    lengths_.assign(count_, 0);
    for (long e = 0; e < count_; ++e) {
        const uint16_t* p = perm(static_cast<int>(e));
        int len = 0;
        for (int x = 0; x < nroots_; ++x)
            if (rs_->is_positive(x) && !rs_->is_positive(p[x])) ++len;
        lengths_[e] = len;
    }
    internal_check(lengths_[0] == 0, "identity has nonzero length");
}

std::string WeylGroup::name(int e) const {
    if (e == identity()) return "e";
    std::vector<int> letters;
    int cur = e;
    while (cur != identity()) {
        int descent = -1;
        for (int j = 0; j < rs_->rank(); ++j) {
            int img = apply(cur, rs_->simple_indices()[j]);
            if (!rs_->is_positive(img)) {
                descent = j;
                break;
            }
        }
        internal_check(descent >= 0, "non-identity element without right descent");
        letters.push_back(descent);
        int next = multiply_simple_right(cur, descent);
        internal_check(length(next) == length(cur) - 1, "descent did not shorten the word");
        cur = next;
    }
    std::reverse(letters.begin(), letters.end());
    std::string out;
    for (int j : letters) out += "s" + std::to_string(j + 1);
    return out;
}

int WeylGroup::element_of_name(const std::string& word) const {
    if (word == "e") return identity();
    int acc = identity();
    size_t pos = 0;
    while (pos < word.size()) {
        if (word[pos] != 's') return -1;
        ++pos;
        size_t start = pos;
        while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
        if (pos == start || pos - start > 6) return -1;
        int j = std::stoi(word.substr(start, pos - start));
        if (j < 1 || j > rs_->rank()) return -1;
        acc = compose(acc, simple_element(j - 1));
    }
    return acc;
}

IntMat WeylGroup::matrix(int e) const {
    const int rank = rs_->rank();
    IntMat m(rank, rank);
    for (int j = 0; j < rank; ++j) {
        const IntVec& col = rs_->delta_coords(apply(e, rs_->simple_indices()[j]));
        for (int i = 0; i < rank; ++i) m.at(i, j) = col[i];
    }
    return m;
}

int WeylGroup::min_coset_rep(int e, const std::vector<int>& simple_positions) const {
    int cur = e;
    for (;;) {
        int descent = -1;
        for (int j : simple_positions) {
            int img = apply(cur, rs_->simple_indices()[j]);
            if (!rs_->is_positive(img)) {
                descent = j;
                break;
            }
        }
        if (descent < 0) return cur;
        cur = multiply_simple_right(cur, descent);
    }
}

std::vector<int> WeylGroup::coset_min_reps(const std::vector<int>& simple_positions) const {
    std::vector<int> reps;
    for (long e = 0; e < count_; ++e) {
        bool minimal = true;
        for (int j : simple_positions) {
            int img = apply(static_cast<int>(e), rs_->simple_indices()[j]);
            if (!rs_->is_positive(img)) {
                minimal = false;
                break;
            }
        }
        if (minimal) reps.push_back(static_cast<int>(e));
    }
    internal_check(!reps.empty() && reps[0] == identity(), "identity is not a minimal coset rep");
    internal_check(count_ % reps.size() == 0, "coset representative count does not divide |W|");
    return reps;
}

std::vector<int> WeylGroup::subgroup_generated(const std::vector<int>& generators) const {
    std::set<int> seen{identity()};
    std::vector<int> work{identity()};
    while (!work.empty()) {
        int e = work.back();
        work.pop_back();
        for (int g : generators) {
            int h = compose(e, g);
            if (seen.insert(h).second) work.push_back(h);
        }
    }
    return {seen.begin(), seen.end()};
}

bool WeylGroup::try_load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r{reinterpret_cast<const unsigned char*>(data.data()), data.size()};

    char magic[5] = {};
    if (!r.take(magic, 5) || std::memcmp(magic, kMagic, 5) != 0) return false;
    if (r.u32() != static_cast<uint32_t>(rs_->ambient_dim())) return false;
    if (r.u32() != static_cast<uint32_t>(rs_->size())) return false;
    if (r.u32() != static_cast<uint32_t>(rs_->rank())) return false;
    uint64_t order = r.u64();
    if (!r.ok || order == 0 || order > static_cast<uint64_t>(kMaxOrder)) return false;
    for (const auto& root : rs_->roots())
        for (Int x : root)
            if (r.i64() != static_cast<int64_t>(x)) return false;
    for (int s : rs_->simple_indices())
        if (r.u32() != static_cast<uint32_t>(s)) return false;
    if (!r.ok) return false;

    const int N = nroots_;
    std::vector<uint16_t> elems(order * static_cast<uint64_t>(N));
    for (auto& v : elems) {
        v = r.u16();
        if (v >= N) return false;
    }
    if (!r.ok || r.pos != r.n) return false;
    for (int x = 0; x < N; ++x)
        if (elems[x] != static_cast<uint16_t>(x)) return false;

    elems_ = std::move(elems);
    count_ = static_cast<long>(order);
    build_index();
    return true;
}

void WeylGroup::write_cache(const std::string& path) const {
    std::string out;
    out.reserve(32 + elems_.size() * 2);
    out.append(kMagic, 5);
    put_u32(out, static_cast<uint32_t>(rs_->ambient_dim()));
    put_u32(out, static_cast<uint32_t>(rs_->size()));
    put_u32(out, static_cast<uint32_t>(rs_->rank()));
    put_u64(out, static_cast<uint64_t>(count_));
    for (const auto& root : rs_->roots())
        for (Int x : root) put_i64(out, static_cast<int64_t>(x));
    for (int s : rs_->simple_indices()) put_u32(out, static_cast<uint32_t>(s));
    for (uint16_t v : elems_) put_u16(out, v);

    std::error_code ec;
    fs::path target(path);
    fs::create_directories(target.parent_path(), ec);
    if (ec) return; // caching is best-effort; never fail the computation
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(static_cast<long>(::getpid()));
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) return;
        o.write(out.data(), static_cast<std::streamsize>(out.size()));
        if (!o) {
            o.close();
            fs::remove(tmp, ec);
            return;
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) fs::remove(tmp, ec);
}

} // namespace wgkm
