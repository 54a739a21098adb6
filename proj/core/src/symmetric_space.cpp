#include "wgkm/symmetric_space.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "wgkm/error.hpp"
#include "wgkm/polynomial.hpp"

namespace wgkm {

namespace {

RatMat rat_transposed(const RatMat& a) {
    RatMat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
    return t;
}

RatMat rat_sub_from_identity(const IntMat& m) { // I - m
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(static_cast<long>((i == j ? 1 : 0) - m.at(i, j)));
    return r;
}

/** Everything one descriptor factor contributes to the ambient assembly. */
struct FactorModel {
    int ambient = 0;
    IntMat form;
    std::vector<IntVec> roots;
    RatMat theta; // ambient x ambient
    int restricted_rank = 0;
    CartanType g_type;
};

FactorModel model_group(const SimpleType& t) {
    RootSystem rs = RootSystem::build(CartanType{{t}});
    const int m = rs.ambient_dim();
    FactorModel fm;
    fm.ambient = 2 * m;
    fm.form = IntMat(2 * m, 2 * m);
    fm.theta = RatMat(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            fm.form.at(i, j) = rs.form().at(i, j);
            fm.form.at(m + i, m + j) = rs.form().at(i, j);
        }
    for (int i = 0; i < m; ++i) {
        fm.theta.at(i, m + i) = 1;
        fm.theta.at(m + i, i) = 1;
    }
    for (const IntVec& r : rs.roots()) {
        IntVec a(2 * m, 0), b(2 * m, 0);
        for (int i = 0; i < m; ++i) {
            a[i] = r[i];
            b[m + i] = r[i];
        }
        fm.roots.push_back(a);
        fm.roots.push_back(b);
    }
    fm.restricted_rank = t.rank;
    fm.g_type = CartanType{{t, t}};
    return fm;
}

FactorModel model_ac(int n) {
    SimpleType t{'A', 2 * n - 1};
    RootSystem rs = RootSystem::build(CartanType{{t}}); // ambient Z^{2n}, euclidean form
    FactorModel fm;
    fm.ambient = rs.ambient_dim();
    fm.form = rs.form();
    fm.roots = rs.roots();
    fm.theta = RatMat(fm.ambient, fm.ambient);
    for (int i = 0; i < n; ++i) {
        fm.theta.at(2 * i, 2 * i + 1) = -1;
        fm.theta.at(2 * i + 1, 2 * i) = -1;
    }
    fm.restricted_rank = n - 1;
    fm.g_type = CartanType{{t}};
    return fm;
}

FactorModel model_db(int n) {
    SimpleType t{'D', n};
    RootSystem rs = RootSystem::build(CartanType{{t}}); // ambient Z^n, euclidean form
    FactorModel fm;
    fm.ambient = rs.ambient_dim();
    fm.form = rs.form();
    fm.roots = rs.roots();
    fm.theta = RatMat(fm.ambient, fm.ambient);
    fm.theta.at(0, 0) = -1;
    for (int i = 1; i < n; ++i) fm.theta.at(i, i) = 1;
    fm.restricted_rank = 1;
    fm.g_type = CartanType{{t}};
    return fm;
}

FactorModel model_ef6() {
    RootSystem rs = RootSystem::build(CartanType{{SimpleType{'E', 6}}});
    FactorModel fm;
    fm.ambient = rs.ambient_dim(); // 6, basis = the E6 simple roots themselves
    fm.form = rs.form();
    fm.roots = rs.roots();
    // theta = reflection through the span of the interior D4 subsystem
    // (simple positions 1..4 in this model's Bourbaki-ordered basis), an
    // isometry for the invariant form: theta = 2 * proj - id.
    const std::vector<int> d4 = {1, 2, 3, 4};
    RatMat b(6, 4), f = RatMat::from(fm.form);
    for (int k = 0; k < 4; ++k) b.at(d4[k], k) = 1;
    RatMat bt = rat_transposed(b);
    RatMat gram = bt * (f * b);           // 4 x 4
    RatMat proj = b * (rat_inverse(gram) * (bt * f)); // 6 x 6
    fm.theta = RatMat(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) fm.theta.at(i, j) = 2 * proj.at(i, j) - Rat(i == j ? 1 : 0);
    fm.restricted_rank = 2;
    fm.g_type = CartanType{{SimpleType{'E', 6}}};
    return fm;
}

FactorModel make_model(const SpaceFactor& f) {
    switch (f.family) {
        case SpaceFactor::Family::Group: return model_group(f.group_type);
        case SpaceFactor::Family::AC: return model_ac(f.n);
        case SpaceFactor::Family::DB: return model_db(f.n);
        case SpaceFactor::Family::EF6: return model_ef6();
    }
    internal_check(false, "unhandled factor family");
    return {};
}

} // namespace

// ---------------------------------------------------------------------------
// descriptor grammar

std::string SpaceFactor::to_string() const {
    switch (family) {
        case Family::Group: return "group:" + group_type.to_string();
        case Family::AC: return "AC:" + std::to_string(n);
        case Family::DB: return "DB:" + std::to_string(n);
        case Family::EF6: return "EF6";
    }
    return "";
}

std::string SpaceDescriptor::to_string() const {
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ",";
        out += factors[i].to_string();
    }
    return out;
}

namespace {

[[noreturn]] void bad_space(const std::string& s, size_t pos, const std::string& what) {
    throw Error(ErrorKind::Usage, "invalid space descriptor \"" + s + "\" at position " +
                                      std::to_string(pos + 1) + ": " + what);
}

int parse_factor_int(const std::string& s, size_t start, size_t end, size_t abs_pos) {
    if (start == end) bad_space(s, abs_pos, "expected an integer");
    for (size_t i = start; i < end; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            bad_space(s, i, "expected a digit");
    if (s[start] == '0') bad_space(s, abs_pos, "integer may not have a leading zero");
    if (end - start > 4) bad_space(s, abs_pos, "integer out of range");
    return std::stoi(s.substr(start, end - start));
}

} // namespace

SpaceDescriptor SpaceDescriptor::parse(const std::string& s) {
    SpaceDescriptor d;
    if (s.empty()) bad_space(s, 0, "empty descriptor");
    size_t pos = 0;
    while (true) {
        size_t comma = s.find(',', pos);
        size_t end = comma == std::string::npos ? s.size() : comma;
        std::string piece = s.substr(pos, end - pos);
        SpaceFactor f;
        if (piece.rfind("group:", 0) == 0) {
            f.family = SpaceFactor::Family::Group;
            std::string type = piece.substr(6);
            if (type.empty()) bad_space(s, pos + 6, "expected a simple type after \"group:\"");
            CartanType ct;
            try {
                ct = CartanType::parse(type);
            } catch (const Error& e) {
                bad_space(s, pos + 6, std::string("bad type \"") + type + "\"");
            }
            if (ct.factors.size() != 1)
                bad_space(s, pos + 6, "group factor takes a single simple type");
            f.group_type = ct.factors[0];
        } else if (piece.rfind("AC:", 0) == 0) {
            f.family = SpaceFactor::Family::AC;
            f.n = parse_factor_int(s, pos + 3, end, pos + 3);
            if (f.n < 2) bad_space(s, pos + 3, "AC:n requires n >= 2");
        } else if (piece.rfind("DB:", 0) == 0) {
            f.family = SpaceFactor::Family::DB;
            f.n = parse_factor_int(s, pos + 3, end, pos + 3);
            if (f.n < 3) bad_space(s, pos + 3, "DB:n requires n >= 3");
        } else if (piece == "EF6") {
            f.family = SpaceFactor::Family::EF6;
        } else {
            bad_space(s, pos, "expected \"group:<type>\", \"AC:<n>\", \"DB:<n>\" or \"EF6\"");
        }
        d.factors.push_back(f);
        if (comma == std::string::npos) break;
        pos = comma + 1;
        if (pos >= s.size()) bad_space(s, pos, "trailing comma");
    }
    return d;
}

// ---------------------------------------------------------------------------
// construction

SymmetricSpace SymmetricSpace::build(const std::string& descriptor, bool allow_cache) {
    return build(SpaceDescriptor::parse(descriptor), allow_cache);
}

SymmetricSpace SymmetricSpace::build(const SpaceDescriptor& descriptor, bool allow_cache) {
    SymmetricSpace sp;
    sp.desc_ = descriptor;
    sp.assemble(descriptor);
    sp.adapt_basis();
    sp.build_theta_tables();
    sp.build_quotient();
    sp.build_restricted();
    sp.build_weyl_layers(allow_cache);
    sp.build_divisor_set();
    sp.classify_types();
    sp.validate();
    return sp;
}

void SymmetricSpace::assemble(const SpaceDescriptor& desc) {
    std::vector<FactorModel> models;
    int ambient = 0;
    std::vector<SimpleType> g_factors;
    for (const SpaceFactor& f : desc.factors) {
        models.push_back(make_model(f));
        ambient += models.back().ambient;
        expected_rank_drop_.push_back(models.back().restricted_rank);
        for (const SimpleType& t : models.back().g_type.factors) g_factors.push_back(t);
    }
    type_g_ = CartanType{g_factors}.canonical();
    require(type_g_.rank() <= Monomial::kMaxVars, ErrorKind::Usage,
            "space \"" + desc.to_string() + "\" needs rank " + std::to_string(type_g_.rank()) +
                " > " + std::to_string(Monomial::kMaxVars) + " polynomial variables");
    require(type_g_.weyl_order() <= WeylGroup::kMaxOrder, ErrorKind::Usage,
            "space \"" + desc.to_string() + "\" has Weyl order " +
                std::to_string(type_g_.weyl_order()) + " beyond the supported cap " +
                std::to_string(WeylGroup::kMaxOrder));

    IntMat form(ambient, ambient);
    theta_amb_ = RatMat(ambient, ambient);
    std::vector<IntVec> roots;
    int off = 0;
    for (const FactorModel& m : models) {
        for (int i = 0; i < m.ambient; ++i)
            for (int j = 0; j < m.ambient; ++j) {
                form.at(off + i, off + j) = m.form.at(i, j);
                theta_amb_.at(off + i, off + j) = m.theta.at(i, j);
            }
        for (const IntVec& r : m.roots) {
            IntVec v(ambient, 0);
            for (int i = 0; i < m.ambient; ++i) v[off + i] = r[i];
            roots.push_back(std::move(v));
        }
        off += m.ambient;
    }
    g_ = std::make_unique<RootSystem>(
        RootSystem::from_root_list(ambient, std::move(form), std::move(roots), desc.to_string()));

    // theta must be an involutive isometry permuting the roots.
    RatMat f = g_->form_rational();
    RatMat t2 = theta_amb_ * theta_amb_;
    RatMat tft = rat_transposed(theta_amb_) * (f * theta_amb_);
    for (int i = 0; i < ambient; ++i)
        for (int j = 0; j < ambient; ++j) {
            require(t2.at(i, j) == Rat(i == j ? 1 : 0), ErrorKind::Computation,
                    "involution is not of order two");
            require(tft.at(i, j) == f.at(i, j), ErrorKind::Computation,
                    "involution does not preserve the invariant form");
        }
    theta_perm_.assign(g_->size(), -1);
    for (int i = 0; i < g_->size(); ++i) {
        RatVec img(ambient);
        for (int r = 0; r < ambient; ++r) {
            img[r] = 0;
            for (int c = 0; c < ambient; ++c) img[r] += theta_amb_.at(r, c) * Rat(static_cast<long>(g_->root(i)[c]));
        }
        IntVec iv(ambient);
        for (int r = 0; r < ambient; ++r) {
            require(rat_is_integer(img[r]), ErrorKind::Computation,
                    "involution does not preserve the root lattice");
            iv[r] = rat_to_int64(img[r]);
        }
        theta_perm_[i] = g_->index_of(iv);
        require(theta_perm_[i] >= 0, ErrorKind::Computation,
                "involution does not permute the roots");
    }
    for (int i = 0; i < g_->size(); ++i)
        internal_check(theta_perm_[theta_perm_[i]] == i, "root involution is not involutive");
}

void SymmetricSpace::adapt_basis() {
    const int ambient = g_->ambient_dim();
    const RatMat f = g_->form_rational();

    // lambda: a generic functional vanishing exactly on the theta-fixed directions,
    // taken from the (-1)-eigenspace so theta flips its sign on every non-fixed root.
    RatMat theta_plus(ambient, ambient);
    for (int i = 0; i < ambient; ++i)
        for (int j = 0; j < ambient; ++j)
            theta_plus.at(i, j) = theta_amb_.at(i, j) + Rat(i == j ? 1 : 0);
    std::vector<RatVec> minus_basis = rat_nullspace(theta_plus);
    internal_check(!minus_basis.empty() || g_->size() == 0, "involution has no moving part");

    auto pair_with = [&](const IntVec& root, const RatVec& v) {
        Rat s = 0;
        for (int i = 0; i < ambient; ++i)
            for (int j = 0; j < ambient; ++j) s += Rat(static_cast<long>(root[i])) * f.at(i, j) * v[j];
        return s;
    };

    std::vector<Rat> lam_val(g_->size()), mu_val(g_->size());
    bool ok = false;
    for (Int m = 2; m < 500 && !ok; ++m) {
        RatVec lambda(ambient, Rat(0));
        Rat power = 1;
        for (const RatVec& b : minus_basis) {
            for (int i = 0; i < ambient; ++i) lambda[i] += power * b[i];
            power *= static_cast<long>(m);
        }
        ok = true;
        for (int i = 0; i < g_->size() && ok; ++i) {
            lam_val[i] = pair_with(g_->root(i), lambda);
            if (theta_perm_[i] == i) {
                internal_check(lam_val[i] == 0, "theta-fixed root pairs with the moving part");
            } else if (lam_val[i] == 0) {
                ok = false;
            }
        }
    }
    require(ok, ErrorKind::Computation, "no generic functional separates the non-fixed roots");

    ok = false;
    for (Int m = 2; m < 500 && !ok; ++m) {
        RatVec mu(ambient, Rat(0));
        Rat power = 1;
        for (int j = 0; j < ambient; ++j) {
            mu[j] = power;
            power *= static_cast<long>(m);
        }
        ok = true;
        for (int i = 0; i < g_->size() && ok; ++i) {
            mu_val[i] = pair_with(g_->root(i), mu);
            if (theta_perm_[i] == i && mu_val[i] == 0) ok = false;
        }
    }
    require(ok, ErrorKind::Computation, "no generic functional separates the fixed roots");

    std::vector<std::pair<Rat, Rat>> keys(g_->size());
    for (int i = 0; i < g_->size(); ++i) keys[i] = {lam_val[i], mu_val[i]};
    g_->rebase(keys);

    delta_l_pos_.clear();
    delta_gl_pos_.clear();
    for (int j = 0; j < g_->rank(); ++j) {
        int idx = g_->simple_indices()[j];
        (theta_perm_[idx] == idx ? delta_l_pos_ : delta_gl_pos_).push_back(j);
    }

    // Adaptedness: theta maps positive non-fixed roots to negatives, and the simple
    // system of the fixed subsystem sits inside the simple system of G.
    std::vector<int> l_pos;
    for (int i = 0; i < g_->size(); ++i) {
        if (theta_perm_[i] == i) {
            if (g_->is_positive(i)) l_pos.push_back(i);
        } else if (g_->is_positive(i)) {
            internal_check(!g_->is_positive(theta_perm_[i]),
                           "positive system is not adapted to the involution");
        }
    }
    std::set<int> l_set(l_pos.begin(), l_pos.end());
    std::set<int> indecomposable;
    for (int a : l_pos) {
        bool decomposable = false;
        for (int b : l_pos) {
            if (decomposable) break;
            for (int c : l_pos) {
                IntVec sum = vec_add(g_->root(b), g_->root(c));
                if (sum == g_->root(a)) {
                    decomposable = true;
                    break;
                }
            }
        }
        if (!decomposable) indecomposable.insert(a);
    }
    std::set<int> l_simples;
    for (int j : delta_l_pos_) l_simples.insert(g_->simple_indices()[j]);
    internal_check(indecomposable == l_simples,
                   "fixed-subsystem simple roots are not simple in the ambient system");
}

void SymmetricSpace::build_theta_tables() {
    const int rank = g_->rank();
    theta_delta_ = IntMat(rank, rank);
    for (int j = 0; j < rank; ++j) {
        const IntVec& col = g_->delta_coords(theta_perm_[g_->simple_indices()[j]]);
        for (int i = 0; i < rank; ++i) theta_delta_.at(i, j) = col[i];
    }
    internal_check(theta_delta_ * theta_delta_ == IntMat::identity(rank),
                   "lattice involution is not of order two");

    int r = rat_rank(rat_sub_from_identity(theta_delta_));
    int expected = 0;
    for (int d : expected_rank_drop_) expected += d;
    require(r == expected, ErrorKind::Computation,
            "restricted rank " + std::to_string(r) + " does not match the minimal-rank value " +
                std::to_string(expected));
    rank_k_ = rank - r;
}

void SymmetricSpace::build_quotient() {
    const int rank = g_->rank();
    const int r = rank - rank_k_;

    IntMat one_minus_theta(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            one_minus_theta.at(i, j) = (i == j ? 1 : 0) - theta_delta_.at(i, j);
    SmithResult smith = smith_normal_form(one_minus_theta);
    internal_check(smith.rank == r, "Smith rank disagrees with the eigenvalue computation");

    q_ = IntMat(rank_k_, rank);
    for (int i = 0; i < rank_k_; ++i)
        for (int j = 0; j < rank; ++j) q_.at(i, j) = smith.U.at(r + i, j);
    IntMat composite = q_ * one_minus_theta;
    for (int i = 0; i < rank_k_; ++i)
        for (int j = 0; j < rank; ++j)
            internal_check(composite.at(i, j) == 0, "restriction does not kill chi - theta(chi)");
    internal_check(rat_rank(RatMat::from(q_)) == rank_k_, "restriction map is not surjective");

    // Fibers of q over the root images.
    fibers_.clear();
    fiber_of_.clear();
    std::vector<std::vector<int>> members;
    for (int i = 0; i < g_->size(); ++i) {
        IntVec beta = q_ * g_->delta_coords(i);
        require(!is_zero_vec(beta), ErrorKind::Computation,
                "a root restricts to zero; the space is not of minimal rank");
        auto it = fiber_of_.find(beta);
        if (it == fiber_of_.end()) {
            fiber_of_.emplace(beta, static_cast<int>(fibers_.size()));
            QFiber qf;
            qf.beta = beta;
            fibers_.push_back(qf);
            members.push_back({i});
        } else {
            members[it->second].push_back(i);
        }
    }
    for (size_t k = 0; k < fibers_.size(); ++k) {
        QFiber& qf = fibers_[k];
        const std::vector<int>& mem = members[k];
        if (mem.size() == 1) {
            int a = mem[0];
            require(theta_perm_[a] == a, ErrorKind::Computation,
                    "singleton fiber over a non-fixed root");
            qf.in_l = true;
            qf.alpha = a;
            qf.theta_alpha = a;
        } else {
            require(mem.size() == 2, ErrorKind::Computation,
                    "restriction fiber has more than two roots");
            int a = mem[0], b = mem[1];
            require(theta_perm_[a] == b && a != b, ErrorKind::Computation,
                    "two-root fiber is not a theta-orbit");
            qf.in_l = false;
            qf.alpha = g_->is_positive(a) ? a : b;
            qf.theta_alpha = theta_perm_[qf.alpha];
            require(g_->is_positive(qf.alpha) && !g_->is_positive(qf.theta_alpha),
                    ErrorKind::Computation, "theta-orbit fiber has no unique positive root");
            // strong orthogonality of {alpha, theta(alpha)}
            const IntVec& va = g_->root(qf.alpha);
            const IntVec& vb = g_->root(qf.theta_alpha);
            require(g_->inner(va, vb) == 0, ErrorKind::Computation,
                    "fiber pair is not orthogonal");
            require(g_->index_of(vec_add(va, vb)) < 0 && g_->index_of(vec_sub(va, vb)) < 0,
                    ErrorKind::Computation, "fiber pair is not strongly orthogonal");
        }
    }
    beta_fibers_.clear();
    for (size_t k = 0; k < fibers_.size(); ++k)
        if (!fibers_[k].in_l) beta_fibers_.push_back(static_cast<int>(k));
    std::sort(beta_fibers_.begin(), beta_fibers_.end(),
              [&](int a, int b) { return fibers_[a].alpha < fibers_[b].alpha; });
}

int SymmetricSpace::fiber_index(const IntVec& beta) const {
    auto it = fiber_of_.find(beta);
    return it == fiber_of_.end() ? -1 : it->second;
}

Character SymmetricSpace::gamma_of(int g_root) const {
    return Character(vec_sub(g_->delta_coords(g_root), g_->delta_coords(theta_perm_[g_root])));
}

Character SymmetricSpace::gamma_simple(int i) const {
    return Character(rest_->root(rest_->simple_indices()[i]));
}

int SymmetricSpace::restricted_index_of(const Character& chi) const {
    return rest_->index_of(chi.coords());
}

void SymmetricSpace::build_restricted() {
    const int rank = g_->rank();
    const int r = rank - rank_k_;

    std::set<IntVec> root_set;
    for (int i = 0; i < g_->size(); ++i)
        if (theta_perm_[i] != i) root_set.insert(gamma_of(i).coords());
    std::vector<IntVec> roots(root_set.begin(), root_set.end());

    std::vector<IntVec> declared;
    for (int j : delta_gl_pos_) {
        IntVec g = gamma_of(g_->simple_indices()[j]).coords();
        if (std::find(declared.begin(), declared.end(), g) == declared.end())
            declared.push_back(g);
    }
    require(static_cast<int>(declared.size()) == r, ErrorKind::Computation,
            "simple restricted roots do not form a basis of the expected rank");

    IntMat s = g_->simple_matrix();
    IntMat form_delta = s.transposed() * (g_->form() * s);
    rest_ = std::make_unique<RootSystem>(RootSystem::from_simple_system(
        rank, form_delta, std::move(roots), declared, "restricted(" + name() + ")"));
    internal_check(rest_->rank() == r, "restricted system has the wrong rank");

    g_simple_for_rest_.assign(r, -1);
    for (int i = 0; i < r; ++i) {
        IntVec gi = gamma_simple(i).coords();
        for (int j : delta_gl_pos_) {
            if (gamma_of(g_->simple_indices()[j]).coords() == gi) {
                g_simple_for_rest_[i] = j;
                break;
            }
        }
        internal_check(g_simple_for_rest_[i] >= 0, "simple restricted root without a source");
    }

    // Left inverse for coordinates in the simple restricted basis: the form-orthogonal
    // coordinate map P = (Gamma^T F Gamma)^{-1} Gamma^T F, exact on the restricted span.
    RatMat gamma(rank, r);
    for (int i = 0; i < r; ++i) {
        IntVec gi = gamma_simple(i).coords();
        for (int a = 0; a < rank; ++a) gamma.at(a, i) = Rat(static_cast<long>(gi[a]));
    }
    RatMat gt = rat_transposed(gamma);
    RatMat fd = RatMat::from(form_delta);
    rest_coords_ = rat_inverse(gt * (fd * gamma)) * (gt * fd);

    wrest_ = std::make_unique<WeylGroup>(WeylGroup::enumerate(*rest_, false));
}

RatVec SymmetricSpace::restricted_coords(const Character& chi) const {
    RatVec input(chi.rank());
    for (int a = 0; a < chi.rank(); ++a) input[a] = Rat(static_cast<long>(chi[a]));
    RatVec coords = rest_coords_ * input;
    // Guard against off-span input: the coordinates must reconstruct chi exactly.
    const int rank = g_->rank();
    RatVec back(rank, Rat(0));
    for (int i = 0; i < rank_restricted(); ++i) {
        IntVec gi = gamma_simple(i).coords();
        for (int a = 0; a < rank; ++a) back[a] += coords[i] * Rat(static_cast<long>(gi[a]));
    }
    for (int a = 0; a < rank; ++a)
        require(back[a] == Rat(static_cast<long>(chi[a])), ErrorKind::Computation,
                "character does not lie on the restricted span");
    return coords;
}

Character SymmetricSpace::act_restricted(int rest_elem, const Character& chi) const {
    // Any W_K lift acts the same way on the restricted span (the kernel W_L acts
    // trivially there), so act through the minimal one.
    return act(lift_of_restricted(rest_elem), chi);
}

void SymmetricSpace::build_weyl_layers(bool allow_cache) {
    wg_ = std::make_unique<WeylGroup>(WeylGroup::enumerate(*g_, allow_cache));
    const int order = wg_->order();
    const int nroots = g_->size();

    wk_.clear();
    wk_mask_.assign(order, 0);
    for (int e = 0; e < order; ++e) {
        const uint16_t* p = wg_->perm(e);
        bool commutes = true;
        for (int x = 0; x < nroots && commutes; ++x)
            commutes = theta_perm_[p[x]] == p[theta_perm_[x]];
        if (commutes) {
            wk_.push_back(e);
            wk_mask_[e] = 1;
        }
    }

    std::vector<int> l_gens;
    for (int j : delta_l_pos_) l_gens.push_back(wg_->simple_element(j));
    wl_ = wg_->subgroup_generated(l_gens);
    wl_mask_.assign(order, 0);
    for (int e : wl_) {
        wl_mask_[e] = 1;
        internal_check(wk_mask_[e], "Levi Weyl group does not centralize the involution");
    }

    x_reps_ = wg_->coset_min_reps(delta_l_pos_);
    x_index_.clear();
    for (size_t i = 0; i < x_reps_.size(); ++i) x_index_[x_reps_[i]] = static_cast<int>(i);
    y_reps_.clear();
    y_index_.clear();
    for (int e : x_reps_)
        if (wk_mask_[e]) {
            y_index_[e] = static_cast<int>(y_reps_.size());
            y_reps_.push_back(e);
        }

    // Image of W_K in the Weyl group of the restricted system.
    rest_of_wk_.assign(order, -1);
    const int nrest = rest_->size();
    for (int e : wk_) {
        IntMat m = wg_->matrix(e);
        std::vector<uint16_t> perm(nrest);
        for (int t = 0; t < nrest; ++t) {
            int idx = rest_->index_of(m * rest_->root(t));
            require(idx >= 0, ErrorKind::Computation,
                    "centralizer element does not stabilize the restricted roots");
            perm[t] = static_cast<uint16_t>(idx);
        }
        int img = wrest_->element_of_permutation(perm);
        require(img >= 0, ErrorKind::Computation,
                "restricted action is not realized by the restricted Weyl group");
        rest_of_wk_[e] = img;
    }
    for (int e : wk_) {
        bool trivial = rest_of_wk_[e] == wrest_->identity();
        internal_check(trivial == static_cast<bool>(wl_mask_[e]),
                       "kernel of the restricted action is not the Levi Weyl group");
    }

    lift_.assign(wrest_->order(), -1);
    for (int u : y_reps_) {
        int img = rest_of_wk_[u];
        internal_check(lift_[img] == -1, "two minimal representatives with one restricted image");
        lift_[img] = u;
    }
    for (int v = 0; v < wrest_->order(); ++v)
        internal_check(lift_[v] >= 0, "restricted Weyl element without a minimal representative");

    // The product of the reflections in alpha and theta(alpha) realizes the
    // reflection in the restricted root gamma = alpha - theta(alpha).
    for (int i = 0; i < rank_restricted(); ++i) {
        int j = g_simple_for_rest_[i];
        int a = g_->simple_indices()[j];
        int e = wg_->compose(wg_->reflection_element(a), wg_->reflection_element(theta_perm_[a]));
        internal_check(wk_mask_[e], "double reflection does not centralize the involution");
        internal_check(rest_of_wk_[e] == wrest_->simple_element(i),
                       "double reflection does not realize the restricted reflection");
    }
}

int SymmetricSpace::restricted_elem_of(int wk_elem) const {
    int img = rest_of_wk_[wk_elem];
    internal_check(img >= 0, "element does not centralize the involution");
    return img;
}

int SymmetricSpace::x_index(int rep) const {
    auto it = x_index_.find(rep);
    return it == x_index_.end() ? -1 : it->second;
}

int SymmetricSpace::y_index(int rep) const {
    auto it = y_index_.find(rep);
    return it == y_index_.end() ? -1 : it->second;
}

void SymmetricSpace::build_divisor_set() {
    const int r = rank_restricted();
    w_upper_.assign(r, {});
    divisors_.clear();
    divisor_pos_.clear();
    for (int i = 0; i < r; ++i) {
        std::vector<int> others;
        for (int j = 0; j < r; ++j)
            if (j != i) others.push_back(j);
        w_upper_[i] = wrest_->coset_min_reps(others);
        for (int w : w_upper_[i]) {
            divisor_pos_[{i, w}] = static_cast<int>(divisors_.size());
            divisors_.push_back({i, w});
        }
    }

    int l_positive = 0;
    for (int i = 0; i < g_->size(); ++i)
        if (theta_perm_[i] == i && g_->is_positive(i)) ++l_positive;
    dim_x_ = (g_->num_positive() - l_positive) + r;
}

int SymmetricSpace::divisor_position(int i, int w) const {
    auto it = divisor_pos_.find({i, w});
    return it == divisor_pos_.end() ? -1 : it->second;
}

void SymmetricSpace::classify_types() {
    CartanType recognized = recognize_cartan_type(g_->roots_rational(), g_->form_rational());
    internal_check(recognized == type_g_.canonical(), "ambient type does not match the descriptor");

    std::vector<RatVec> l_roots;
    std::vector<RatVec> all = g_->roots_rational();
    for (int i = 0; i < g_->size(); ++i)
        if (theta_perm_[i] == i) l_roots.push_back(all[i]);
    type_l_ = recognize_cartan_type(l_roots, g_->form_rational());

    type_rest_ = recognize_cartan_type(rest_->roots_rational(), rest_->form_rational());

    // Phi_K carries the form transported through the section of q landing in the
    // theta-fixed part of the rational character space.
    const int rank = g_->rank();
    std::vector<RatVec> plus_basis = rat_nullspace(rat_sub_from_identity(theta_delta_));
    internal_check(static_cast<int>(plus_basis.size()) == rank_k_,
                   "fixed eigenspace has unexpected dimension");
    RatMat u(rank, rank_k_);
    for (int c = 0; c < rank_k_; ++c)
        for (int a = 0; a < rank; ++a) u.at(a, c) = plus_basis[c][a];
    RatMat a = RatMat::from(q_) * u;
    RatMat section = u * rat_inverse(a);
    IntMat s = g_->simple_matrix();
    RatMat form_delta = RatMat::from(s.transposed() * (g_->form() * s));
    RatMat form_k = rat_transposed(section) * (form_delta * section);

    std::vector<RatVec> k_roots, kl_roots;
    for (const QFiber& qf : fibers_) {
        RatVec b(qf.beta.size());
        for (size_t i = 0; i < qf.beta.size(); ++i) b[i] = Rat(static_cast<long>(qf.beta[i]));
        k_roots.push_back(b);
        if (!qf.in_l) kl_roots.push_back(b);
    }
    type_k_ = recognize_cartan_type(k_roots, form_k);
    type_kl_ = recognize_cartan_type(kl_roots, form_k);
}

void SymmetricSpace::validate() {
    require(order_w_l() == type_l_.weyl_order(), ErrorKind::Computation,
            "Levi Weyl order does not match its type");
    require(order_w_gk() == type_rest_.weyl_order(), ErrorKind::Computation,
            "restricted Weyl order does not match its type");
    require(order_w_k() == order_w_l() * order_w_gk(), ErrorKind::Computation,
            "centralizer order is not |W_L| * |W_{G/K}|");
    require(static_cast<long>(x_reps_.size()) * order_w_l() == order_w_g(),
            ErrorKind::Computation, "wrong number of minimal coset representatives");
    require(static_cast<long>(y_reps_.size()) == order_w_gk(), ErrorKind::Computation,
            "wrong number of minimal representatives inside the centralizer");

    int l_count = 0;
    for (int i = 0; i < g_->size(); ++i)
        if (theta_perm_[i] == i) ++l_count;
    require(num_betas() == (g_->size() - l_count) / 2, ErrorKind::Computation,
            "wrong number of restricted line-bundle weights");
    require(num_betas() == dim_x_ - rank_restricted(), ErrorKind::Computation,
            "codimension of the closed orbit is inconsistent");
    require(static_cast<int>(fibers_.size()) == l_count + num_betas(), ErrorKind::Computation,
            "wrong number of restriction fibers");
    require(rest_->size() >= 2 * rank_restricted(), ErrorKind::Computation,
            "restricted system is degenerate");
}

SymmetricSpace::Report SymmetricSpace::report() const {
    Report r;
    r.descriptor = name();
    r.type_g = type_g_.canonical().to_string();
    r.type_l = type_l_.canonical().to_string();
    r.type_k = type_k_.canonical().to_string();
    r.type_k_minus_l = type_kl_.canonical().to_string();
    r.type_restricted = type_rest_.canonical().to_string();
    r.rank_g = rank_g();
    r.rank_k = rank_k();
    r.rank_restricted = rank_restricted();
    r.order_w_g = order_w_g();
    r.order_w_k = order_w_k();
    r.order_w_l = order_w_l();
    r.order_w_gk = order_w_gk();
    r.x_vertices = static_cast<int>(x_reps_.size());
    r.y_vertices = static_cast<int>(y_reps_.size());
    r.dim_x = dim_x();
    r.dim_y = dim_y();
    r.num_betas = num_betas();
    r.num_divisors = divisor_count();
    return r;
}

} // namespace wgkm
