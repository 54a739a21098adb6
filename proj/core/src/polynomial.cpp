#include "wgkm/polynomial.hpp"

#include <algorithm>

namespace wgkm {

Monomial Monomial::var(int i, int exp) {
    Monomial m;
    m.set_exponent(i, exp);
    m.deg_ = static_cast<uint32_t>(exp);
    return m;
}

int Monomial::exponent(int i) const {
    internal_check(i >= 0 && i < kMaxVars, "monomial variable index out of range");
    if (i < 8) return static_cast<int>((hi_ >> (8 * (7 - i))) & 0xff);
    return static_cast<int>((lo_ >> (8 * (15 - i))) & 0xff);
}

void Monomial::set_exponent(int i, int e) {
    internal_check(i >= 0 && i < kMaxVars, "monomial variable index out of range");
    require(e >= 0 && e <= kMaxExponent, ErrorKind::Computation, "monomial exponent out of range");
    if (i < 8) {
        int shift = 8 * (7 - i);
        hi_ = (hi_ & ~(0xffULL << shift)) | (static_cast<uint64_t>(e) << shift);
    } else {
        int shift = 8 * (15 - i);
        lo_ = (lo_ & ~(0xffULL << shift)) | (static_cast<uint64_t>(e) << shift);
    }
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial m;
    m.deg_ = deg_ + o.deg_;
    m.hi_ = hi_ + o.hi_;
    m.lo_ = lo_ + o.lo_;
    // Byte-parallel carry detection: a carry out of any exponent byte means overflow.
    constexpr uint64_t top = 0x8080808080808080ULL;
    uint64_t carry_hi = ((hi_ & o.hi_) | ((hi_ | o.hi_) & ~m.hi_)) & top;
    uint64_t carry_lo = ((lo_ & o.lo_) | ((lo_ | o.lo_) & ~m.lo_)) & top;
    require(carry_hi == 0 && carry_lo == 0, ErrorKind::Computation, "monomial exponent overflow");
    return m;
}

Monomial Monomial::divided_by_var(int i) const {
    internal_check(exponent(i) > 0, "dividing monomial by absent variable");
    Monomial m = *this;
    m.set_exponent(i, exponent(i) - 1);
    m.deg_ -= 1;
    return m;
}

size_t Monomial::hash() const {
    uint64_t h = hi_ * 0x9e3779b97f4a7c15ULL;
    h ^= lo_ + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
}

Polynomial::Polynomial(int nvars, std::optional<uint32_t> trunc) : nvars_(nvars), trunc_(trunc) {
    require(nvars >= 0 && nvars <= Monomial::kMaxVars, ErrorKind::Computation,
            "polynomial ring rank out of supported range (max 16 variables)");
}

Polynomial Polynomial::constant(int nvars, const Rat& c) {
    Polynomial p(nvars);
    if (c != 0) p.t_.emplace_back(Monomial::one(), c);
    return p;
}

Polynomial Polynomial::monomial(int nvars, const Monomial& m, const Rat& c) {
    Polynomial p(nvars);
    if (c != 0) p.t_.emplace_back(m, c);
    return p;
}

Polynomial Polynomial::from_character(const Character& chi) {
    Polynomial p(chi.rank());
    std::vector<Term> raw;
    for (int i = 0; i < chi.rank(); ++i)
        if (chi[i] != 0) raw.emplace_back(Monomial::var(i), Rat(static_cast<long>(chi[i])));
    p.canonicalize_from(std::move(raw));
    return p;
}

Polynomial Polynomial::linear_form(const RatVec& coeffs) {
    Polynomial p(static_cast<int>(coeffs.size()));
    std::vector<Term> raw;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) raw.emplace_back(Monomial::var(static_cast<int>(i)), coeffs[i]);
    p.canonicalize_from(std::move(raw));
    return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms, std::optional<uint32_t> trunc) {
    Polynomial p(nvars, trunc);
    p.canonicalize_from(std::move(terms));
    return p;
}

void Polynomial::canonicalize_from(std::vector<Term>&& raw) {
    if (trunc_) {
        raw.erase(std::remove_if(raw.begin(), raw.end(),
                                 [&](const Term& t) { return t.first.degree() > *trunc_; }),
                  raw.end());
    }
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    t_.clear();
    for (auto& term : raw) {
        if (!t_.empty() && t_.back().first == term.first)
            t_.back().second += term.second;
        else
            t_.push_back(std::move(term));
        if (!t_.empty() && t_.back().second == 0) t_.pop_back();
    }
}

int Polynomial::degree() const { return t_.empty() ? -1 : static_cast<int>(t_.back().first.degree()); }

bool Polynomial::is_homogeneous() const {
    if (t_.empty()) return true;
    uint32_t d = t_.front().first.degree();
    return t_.back().first.degree() == d;
}

Rat Polynomial::constant_term() const {
    if (!t_.empty() && t_.front().first.is_one()) return t_.front().second;
    return Rat(0);
}

std::optional<uint32_t> Polynomial::combine_trunc(const std::optional<uint32_t>& a,
                                                  const std::optional<uint32_t>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    internal_check(nvars_ == o.nvars_, "polynomial ring mismatch in +");
    Polynomial r(nvars_, combine_trunc(trunc_, o.trunc_));
    std::vector<Term> raw;
    raw.reserve(t_.size() + o.t_.size());
    raw.insert(raw.end(), t_.begin(), t_.end());
    raw.insert(raw.end(), o.t_.begin(), o.t_.end());
    r.canonicalize_from(std::move(raw));
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

Polynomial Polynomial::scaled(const Rat& c) const {
    Polynomial r(nvars_, trunc_);
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& t : r.t_) t.second *= c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    internal_check(nvars_ == o.nvars_, "polynomial ring mismatch in *");
    auto bound = combine_trunc(trunc_, o.trunc_);
    Polynomial r(nvars_, bound);
    if (t_.empty() || o.t_.empty()) return r;
    std::vector<Term> raw;
    raw.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
        for (const auto& b : o.t_) {
            if (bound && a.first.degree() + b.first.degree() > *bound) continue;
            raw.emplace_back(a.first * b.first, a.second * b.second);
        }
    r.canonicalize_from(std::move(raw));
    return r;
}

Polynomial Polynomial::truncated(uint32_t N) const {
    Polynomial r(nvars_, trunc_ ? std::min(*trunc_, N) : N);
    std::vector<Term> raw(t_.begin(), t_.end());
    r.canonicalize_from(std::move(raw));
    return r;
}

Polynomial Polynomial::without_truncation() const {
    Polynomial r(nvars_);
    r.t_ = t_;
    return r;
}

Polynomial Polynomial::homogeneous_part(uint32_t d) const {
    Polynomial r(nvars_);
    for (const auto& t : t_)
        if (t.first.degree() == d) r.t_.push_back(t);
    return r;
}

Polynomial Polynomial::pow(uint32_t e) const {
    Polynomial acc = Polynomial::constant(nvars_, Rat(1));
    if (trunc_) acc = Polynomial::from_terms(nvars_, {{Monomial::one(), Rat(1)}}, trunc_);
    for (uint32_t i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
}

Rat Polynomial::eval(const RatVec& point) const {
    require(static_cast<int>(point.size()) == nvars_, ErrorKind::Computation,
            "evaluation point dimension mismatch");
    // Per-variable power cache.
    std::vector<std::vector<Rat>> pow(nvars_);
    for (int i = 0; i < nvars_; ++i) pow[i].push_back(Rat(1));
    Rat sum(0);
    for (const auto& t : t_) {
        Rat v = t.second;
        for (int i = 0; i < nvars_; ++i) {
            int e = t.first.exponent(i);
            if (e == 0) continue;
            auto& p = pow[i];
            while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * point[i]);
            v *= p[e];
        }
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::subst_var(int k, const RatVec& lf) const {
    internal_check(k >= 0 && k < nvars_, "subst_var index out of range");
    Polynomial repl(nvars_);
    {
        std::vector<Term> raw;
        for (int i = 0; i < nvars_; ++i) {
            if (i == k || lf[i] == 0) continue;
            raw.emplace_back(Monomial::var(i), lf[i]);
        }
        repl.canonicalize_from(std::move(raw));
    }
    std::vector<Polynomial> powers{Polynomial::constant(nvars_, Rat(1))};
    Polynomial out(nvars_, trunc_);
    std::vector<Term> raw;
    for (const auto& t : t_) {
        int e = t.first.exponent(k);
        if (e == 0) {
            raw.push_back(t);
            continue;
        }
        while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * repl);
        Monomial rest = t.first;
        for (int j = 0; j < e; ++j) rest = rest.divided_by_var(k);
        for (const auto& pt : powers[e].t_)
            raw.emplace_back(rest * pt.first, t.second * pt.second);
    }
    out.canonicalize_from(std::move(raw));
    return out;
}

Polynomial Polynomial::subst_linear_forms(const std::vector<Polynomial>& forms) const {
    internal_check(static_cast<int>(forms.size()) == nvars_, "substitution arity mismatch");
    // Power cache per variable, grown on demand.
    std::vector<std::vector<Polynomial>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Polynomial::constant(nvars_, Rat(1)));
    Polynomial out(nvars_, trunc_);
    std::vector<Term> raw;
    for (const auto& t : t_) {
        Polynomial prod = Polynomial::constant(nvars_, t.second);
        if (trunc_) prod = Polynomial::from_terms(nvars_, {{Monomial::one(), t.second}}, trunc_);
        for (int i = 0; i < nvars_; ++i) {
            int e = t.first.exponent(i);
            if (e == 0) continue;
            auto& p = powers[i];
            while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * forms[i]);
            prod = prod * p[e];
        }
        raw.insert(raw.end(), prod.t_.begin(), prod.t_.end());
    }
    out.canonicalize_from(std::move(raw));
    return out;
}

Polynomial Polynomial::apply_lattice_map(const IntMat& A) const {
    internal_check(A.rows() == nvars_ && A.cols() == nvars_, "lattice map shape mismatch");
    std::vector<Polynomial> forms;
    forms.reserve(nvars_);
    for (int j = 0; j < nvars_; ++j) forms.push_back(Polynomial::from_character(Character(A.col(j))));
    return subst_linear_forms(forms);
}

LinearDivision divisible_by_linear(const Polynomial& f, const Character& chi) {
    require(!chi.is_zero(), ErrorKind::Computation, "divisibility by the zero character");
    require(chi.rank() == f.nvars(), ErrorKind::Computation, "character rank mismatch");
    if (f.is_zero()) return {true, Polynomial::zero(f.nvars())};

    const Int g = chi.content();
    IntVec prim = chi.coords();
    for (auto& x : prim) x /= g;

    // Unimodular change of coordinates y = M^{-T} x sending the (primitivized) form to y_1:
    // substitute x_i = sum_j (M^T)_{ij} y_j, i.e. x_i <- column i of M read as a linear form.
    UnimodularCompletion u = complete_to_unimodular(prim);
    const int n = f.nvars();
    std::vector<Polynomial> fwd, back;
    for (int i = 0; i < n; ++i) {
        fwd.push_back(Polynomial::from_character(Character(u.M.col(i))));
        back.push_back(Polynomial::from_character(Character(u.Minv.col(i))));
    }
    Polynomial in_y = f.without_truncation().subst_linear_forms(fwd);

    std::vector<Polynomial::Term> shifted;
    for (const auto& t : in_y.terms()) {
        if (t.first.exponent(0) == 0) return {false, Polynomial::zero(n)};
        shifted.emplace_back(t.first.divided_by_var(0), t.second);
    }
    Polynomial h = Polynomial::from_terms(n, std::move(shifted));
    Polynomial q = h.subst_linear_forms(back).scaled(make_rat(1, static_cast<long>(g)));
    internal_check(q * Polynomial::from_character(chi) == f.without_truncation(),
                   "linear division verification failed");
    if (f.truncation()) q = q.truncated(*f.truncation());
    return {true, q};
}

bool divides_linear(const Polynomial& f, const Character& chi) {
    require(!chi.is_zero(), ErrorKind::Computation, "divisibility by the zero character");
    require(chi.rank() == f.nvars(), ErrorKind::Computation, "character rank mismatch");
    if (f.is_zero()) return true;
    int k = -1;
    for (int i = 0; i < chi.rank(); ++i)
        if (chi[i] != 0) {
            k = i;
            break;
        }
    // Parameterize the hyperplane chi = 0 by x_k = -(sum_{i != k} chi_i x_i) / chi_k.
    RatVec lf(chi.rank(), Rat(0));
    for (int i = 0; i < chi.rank(); ++i)
        if (i != k) lf[i] = make_rat(static_cast<long>(-chi[i]), static_cast<long>(chi[k]));
    return f.subst_var(k, lf).is_zero();
}

} // namespace wgkm
